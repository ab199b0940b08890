"""Decompositions ``f = f_i + X_i(F_i)`` and the deformation-complex solver.

Everything runs in the complex chart, where each X_i multiplies a monomial by
its eigenvalue. The kernel part keeps the zero-eigenvalue monomials and the
potential divides the rest by their eigenvalues, so the potential never has a
component along ``ker X_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .chart import chart_for, complexify, realify
from .polyring import CoordinateMismatch, CoordinateSystem, Polynomial
from .scalar import ONE, Scalar
from .williamson import WilliamsonBasis, eigenvalue

__all__ = [
    "DecompositionResult",
    "DeformationCochain",
    "DeformationSolution",
    "NotInKernel",
    "NotACocycle",
    "KernelDependence",
    "solve_linear_pde",
    "decompose",
    "kernel_dependence",
    "cocycle_check",
    "solve_deformation",
]


class NotInKernel(ValueError):
    def __init__(self, residual: Polynomial):
        super().__init__(f"X_i(f) = {residual} is not zero")
        self.residual = residual


class NotACocycle(ValueError):
    def __init__(self, pair: tuple[int, int], residual: Polynomial):
        i, j = pair
        super().__init__(f"X_{i}(g_{j}) != X_{j}(g_{i}); difference {residual}")
        self.pair = pair
        self.residual = residual


@dataclass(frozen=True)
class DecompositionResult:
    kernel_part: Polynomial
    potential: Polynomial
    block: int

    def recombine(self, basis: WilliamsonBasis) -> Polynomial:
        return self.kernel_part + basis.apply(self.block, self.potential)


def _split(basis: WilliamsonBasis, i: int, f: Polynomial) -> tuple[Polynomial, Polynomial]:
    if f.coords != basis.coords:
        raise CoordinateMismatch("polynomial is not over the basis coordinates")
    P = complexify(f, basis)
    kern, pot = {}, {}
    for m, c in P.terms.items():
        lam = eigenvalue(basis, i, m)
        if lam:
            pot[m] = c / lam
        else:
            kern[m] = c
    real = f.is_real()
    ch = chart_for(basis).coords
    return (
        realify(Polynomial._raw(ch, kern), basis, require_real=real),
        realify(Polynomial._raw(ch, pot), basis, require_real=real),
    )


def solve_linear_pde(basis: WilliamsonBasis, i: int, g: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Solve ``X_i(F) = g`` up to an obstruction: returns ``(F, obstruction)``.

    ``g = obstruction + X_i(F)`` where the obstruction is the part of ``g`` that
    no polynomial can reach.
    """
    obstruction, F = _split(basis, i, g)
    return F, obstruction


def decompose(basis: WilliamsonBasis, i: int, f: Polynomial) -> DecompositionResult:
    kern, pot = _split(basis, i, f)
    return DecompositionResult(kern, pot, i)


@dataclass(frozen=True)
class KernelDependence:
    """``f`` rewritten through the block invariants.

    ``poly`` lives on ``coords``: the real coordinates of the other blocks
    followed by formal variables ``h<i>`` for the block's quadratic invariants.
    """

    poly: Polynomial
    coords: CoordinateSystem
    h_names: tuple[str, ...]
    block: int

    def expand(self, basis: WilliamsonBasis) -> Polynomial:
        """Substitute the actual h's back; recovers the original ``f``."""
        real = basis.coords
        images = []
        for name in self.coords.names:
            if name in self.h_names:
                images.append(basis.h(int(name[1:])))
            else:
                images.append(Polynomial.var(real, name))
        return self.poly.substitute(images, real)


def kernel_dependence(basis: WilliamsonBasis, i: int, f: Polynomial) -> KernelDependence:
    b = basis.block_of(i)
    # a focus-focus pair only rewrites through (h_i, h_{i+1}) on the joint kernel
    for j in b.pairs if b.kind == "ff" else (i,):
        residual = basis.apply(j, f)
        if residual:
            raise NotInKernel(residual)
    block_idx = basis.sigma_indices(i)
    rest = [j for j in range(basis.coords.size) if j not in block_idx]
    h_names = tuple(f"h{p}" for p in b.pairs)
    target = CoordinateSystem(tuple(basis.coords.names[j] for j in rest) + h_names)
    nrest = len(rest)

    def hvar(k):
        return Polynomial.var(target, nrest + k)

    ch = chart_for(basis)
    # chart coordinates outside the block map back to real ones; the block's
    # invariant monomials map to polynomials in the formal h's
    images = [None] * basis.coords.size
    for pos, j in enumerate(rest):
        img = ch.to_real[j]
        images[j] = img.substitute(
            [Polynomial.var(target, rest.index(t)) if t in rest else Polynomial.zero(target)
             for t in range(basis.coords.size)],
            target,
        )
    P = complexify(f, basis)
    x, y = basis.coords.pair_indices(b.first)
    acc = Polynomial.zero(target)
    if b.kind == "ff":
        x2, y2 = basis.coords.pair_indices(b.first + 1)
        # u*vb = h_i - I h_{i+1},  ub*v = h_i + I h_{i+1}
        w1 = hvar(0) - hvar(1).scale(Scalar(0, 1))
        w2 = hvar(0) + hvar(1).scale(Scalar(0, 1))
    for m, c in P.terms.items():
        if b.kind == "ff":
            a, bb, cc, d = m[x], m[x2], m[y], m[y2]
            if a != d or bb != cc:
                raise AssertionError("kernel monomial expected")
            block_part = (w1 ** a) * (w2 ** bb)
        else:
            if m[x] != m[y]:
                raise AssertionError("kernel monomial expected")
            block_part = hvar(0) ** m[x]
        other = Polynomial.constant(target, c)
        for j in rest:
            if m[j]:
                other = other * images[j] ** m[j]
        acc = acc + other * block_part
    return KernelDependence(acc, target, h_names, i)


@dataclass(frozen=True)
class DeformationCochain:
    components: tuple[Polynomial, ...]
    basis: WilliamsonBasis

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not 1 <= len(self.components) <= self.basis.n:
            raise ValueError("a cochain needs between 1 and n components")
        for g in self.components:
            if g.coords != self.basis.coords:
                raise CoordinateMismatch("cochain component off the basis coordinates")

    @property
    def r(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class DeformationSolution:
    potential: Polynomial
    basic_parts: tuple[Polynomial, ...]

    def residuals(self, cochain: DeformationCochain) -> list[Polynomial]:
        B = cochain.basis
        return [
            g - f - B.apply(i, self.potential)
            for i, (g, f) in enumerate(zip(cochain.components, self.basic_parts), start=1)
        ]


def cocycle_check(c: DeformationCochain) -> tuple[bool, tuple[int, int] | None]:
    B = c.basis
    g = c.components
    for i in range(1, c.r + 1):
        for j in range(i + 1, c.r + 1):
            if B.apply(i, g[j - 1]) != B.apply(j, g[i - 1]):
                return False, (i, j)
    return True, None


def solve_deformation(c: DeformationCochain, order: Sequence[int] | None = None) -> DeformationSolution:
    """Constructive ``H^1 = 0``: find G and basic f_i with ``g_i = f_i + X_i(G)``.

    Blocks are processed in ``order`` (default 1..r). Each step decomposes
    ``g_i - X_i(G)`` along X_i and adds the potential to G; the cocycle
    relations guarantee later potentials are invisible to earlier fields.
    """
    ok, pair = cocycle_check(c)
    if not ok:
        i, j = pair
        raise NotACocycle(pair, c.basis.apply(i, c.components[j - 1]) - c.basis.apply(j, c.components[i - 1]))
    B = c.basis
    order = list(order) if order is not None else list(range(1, c.r + 1))
    if sorted(order) != list(range(1, c.r + 1)):
        raise ValueError("order must be a permutation of 1..r")
    G = Polynomial.zero(B.coords)
    parts: dict[int, Polynomial] = {}
    for i in order:
        res = decompose(B, i, c.components[i - 1] - B.apply(i, G))
        parts[i] = res.kernel_part
        G = G + res.potential
    return DeformationSolution(G, tuple(parts[i] for i in range(1, c.r + 1)))
