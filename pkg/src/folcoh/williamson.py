"""Williamson normal forms: the quadratic basis h_i and their Hamiltonian fields.

Fields are applied in the real chart with the literal first-order operators.
On ``(x_i, y_i)`` these are::

    elliptic    X_i = 2(-y_i d/dx_i + x_i d/dy_i)            h_i = x_i^2 + y_i^2
    hyperbolic  X_i = -x_i d/dx_i + y_i d/dy_i               h_i = x_i y_i

and for a focus-focus pair ``(i, i+1)``::

    X_i     = -x_i d/dx_i + y_i d/dy_i - x_{i+1} d/dx_{i+1} + y_{i+1} d/dy_{i+1}
    X_{i+1} =  x_{i+1} d/dx_i + y_{i+1} d/dy_i - x_i d/dx_{i+1} - y_i d/dy_{i+1}

with ``h_i = x_i y_i + x_{i+1} y_{i+1}`` and ``h_{i+1} = x_i y_{i+1} - x_{i+1} y_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .polyring import CoordinateMismatch, CoordinateSystem, Polynomial
from .scalar import Scalar

__all__ = [
    "Block",
    "WilliamsonBasis",
    "hamiltonian_h",
    "vector_field_apply",
    "poisson_bracket",
    "eigenvalue",
]

KINDS = {"e": "elliptic", "h": "hyperbolic", "ff": "focus-focus"}


@dataclass(frozen=True)
class Block:
    kind: str  # "e", "h" or "ff"
    first: int  # 1-based pair index; a focus-focus block also owns first + 1

    @property
    def pairs(self) -> tuple[int, ...]:
        return (self.first, self.first + 1) if self.kind == "ff" else (self.first,)


@dataclass(frozen=True)
class WilliamsonBasis:
    blocks: tuple[Block, ...]
    coords: CoordinateSystem = field(init=False)

    def __post_init__(self):
        expected = 1
        for b in self.blocks:
            if b.kind not in KINDS:
                raise ValueError(f"unknown block kind {b.kind!r}")
            if b.first != expected:
                raise ValueError("blocks must partition the pairs 1..n in order")
            expected += len(b.pairs)
        if expected == 1:
            raise ValueError("a Williamson basis needs at least one block")
        object.__setattr__(self, "coords", CoordinateSystem.symplectic(expected - 1))

    @classmethod
    def from_kinds(cls, kinds: Sequence[str]) -> "WilliamsonBasis":
        blocks = []
        i = 1
        for k in kinds:
            blocks.append(Block(k, i))
            i += 2 if k == "ff" else 1
        return cls(tuple(blocks))

    @property
    def kinds(self) -> list[str]:
        return [b.kind for b in self.blocks]

    @property
    def n(self) -> int:
        return self.coords.n

    @property
    def k_e(self) -> int:
        return sum(b.kind == "e" for b in self.blocks)

    @property
    def k_h(self) -> int:
        return sum(b.kind == "h" for b in self.blocks)

    @property
    def k_f(self) -> int:
        return sum(b.kind == "ff" for b in self.blocks)

    def block_of(self, i: int) -> Block:
        if not 1 <= i <= self.n:
            raise IndexError(f"field index {i} out of range 1..{self.n}")
        for b in self.blocks:
            if i in b.pairs:
                return b
        raise AssertionError("unreachable")

    def sigma_indices(self, i: int) -> tuple[int, ...]:
        """Coordinate positions that all vanish on the zero set of X_i."""
        idx: list[int] = []
        for p in self.block_of(i).pairs:
            idx += self.coords.pair_indices(p)
        return tuple(idx)

    def field_terms(self, i: int) -> list[tuple[int, int, int]]:
        """X_i as a list of ``(c, s, t)`` meaning ``c * q_s d/dq_t``."""
        b = self.block_of(i)
        x, y = self.coords.pair_indices(b.first)
        if b.kind == "e":
            return [(-2, y, x), (2, x, y)]
        if b.kind == "h":
            return [(-1, x, x), (1, y, y)]
        x2, y2 = self.coords.pair_indices(b.first + 1)
        if i == b.first:
            return [(-1, x, x), (1, y, y), (-1, x2, x2), (1, y2, y2)]
        return [(1, x2, x), (1, y2, y), (-1, x, x2), (-1, y, y2)]

    def h(self, i: int) -> Polynomial:
        return hamiltonian_h(self, i)

    def apply(self, i: int, p: Polynomial) -> Polynomial:
        return vector_field_apply(self, i, p)

    def to_json(self) -> dict:
        return {"blocks": self.kinds}


def hamiltonian_h(basis: WilliamsonBasis, i: int) -> Polynomial:
    b = basis.block_of(i)
    c = basis.coords
    xv, yv = (Polynomial.var(c, j) for j in c.pair_indices(b.first))
    if b.kind == "e":
        return xv * xv + yv * yv
    if b.kind == "h":
        return xv * yv
    x2, y2 = (Polynomial.var(c, j) for j in c.pair_indices(b.first + 1))
    if i == b.first:
        return xv * yv + x2 * y2
    return xv * y2 - x2 * yv


def vector_field_apply(basis: WilliamsonBasis, i: int, p: Polynomial) -> Polynomial:
    if p.coords != basis.coords:
        raise CoordinateMismatch("polynomial is not over the basis coordinates")
    terms = basis.field_terms(i)
    out: dict = {}
    for m, c in p.terms.items():
        for k, s, t in terms:
            e = m[t]
            if not e:
                continue
            mm = list(m)
            mm[t] -= 1
            mm[s] += 1
            mm = tuple(mm)
            v = c * (k * e)
            w = out.get(mm)
            out[mm] = v if w is None else w + v
    return Polynomial._raw(p.coords, {m: c for m, c in out.items() if c})


def poisson_bracket(f: Polynomial, g: Polynomial) -> Polynomial:
    """``{f, g} = sum_i (df/dx_i dg/dy_i - df/dy_i dg/dx_i)``."""
    if f.coords != g.coords:
        raise CoordinateMismatch("bracket operands live on different coordinates")
    acc = Polynomial.zero(f.coords)
    for i in range(1, f.coords.n + 1):
        x, y = f.coords.pair_indices(i)
        acc = acc + f.partial(x) * g.partial(y) - f.partial(y) * g.partial(x)
    return acc


def eigenvalue(basis: WilliamsonBasis, i: int, m: Sequence[int]) -> Scalar:
    """Eigenvalue of X_i on a complex-chart monomial (see :mod:`folcoh.chart`)."""
    b = basis.block_of(i)
    x, y = basis.coords.pair_indices(b.first)
    if b.kind == "h":
        return Scalar(m[y] - m[x])
    if b.kind == "e":
        return Scalar(0, 2 * (m[x] - m[y]))
    x2, y2 = basis.coords.pair_indices(b.first + 1)
    # slots: u at x_i, v at y_i, ubar at x_{i+1}, vbar at y_{i+1}
    a, bb, c, d = m[x], m[x2], m[y], m[y2]
    if i == b.first:
        return Scalar(-a - bb + c + d)
    return Scalar(0, -a + bb - c + d)
