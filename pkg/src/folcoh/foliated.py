"""Foliated forms on a Williamson linear model.

A k-form is stored by its values on the generator wedges: ``components[J]``
is ``alpha(X_{j1}, ..., X_{jk})`` for an increasing tuple ``J``. A form is
well defined when each ``components[J]`` vanishes on the zero set of every
``X_j`` with ``j`` in ``J``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Mapping

from .linalg import ExactMatrix
from .polyring import Polynomial, monomials_of_degree, vanishes_on_coords
from .williamson import WilliamsonBasis

__all__ = [
    "FoliatedKForm",
    "IllFormedForm",
    "GradedBasis",
    "alternating_differential",
    "d_F",
    "check_well_defined",
    "lie_derivative",
    "basis_forms",
    "assemble_matrix",
]

Subset = tuple


class IllFormedForm(ValueError):
    def __init__(self, subset, j):
        super().__init__(f"component {subset} does not vanish on Sigma_{j}")
        self.subset = subset
        self.j = j


def normalize_components(components: Mapping, k: int, n: int, coords) -> dict:
    out = {}
    for J, p in components.items():
        J = tuple(J)
        if len(J) != k or list(J) != sorted(set(J)) or any(not 1 <= j <= n for j in J):
            raise ValueError(f"bad subset {J} for a {k}-form on {n} generators")
        if p.coords != coords:
            raise ValueError(f"component {J} is over the wrong coordinates")
        if p:
            out[J] = p
    return out


def alternating_differential(
    components: Mapping[Subset, Polynomial], k: int, n: int, apply: Callable[[int, Polynomial], Polynomial]
) -> dict:
    """``(d a)[J'] = sum_s (-1)^s X_{j_s}(a[J' - j_s])`` (s counted from 0)."""
    out: dict = {}
    for J, p in components.items():
        for j in range(1, n + 1):
            if j in J:
                continue
            Jp = tuple(sorted(J + (j,)))
            s = Jp.index(j)
            term = apply(j, p)
            if not term:
                continue
            if s % 2:
                term = -term
            out[Jp] = out[Jp] + term if Jp in out else term
    return {J: p for J, p in out.items() if p}


@dataclass(frozen=True)
class FoliatedKForm:
    k: int
    components: dict
    basis: WilliamsonBasis

    def __post_init__(self):
        # degrees above n are allowed but can only hold the zero form
        if self.k < 0:
            raise ValueError(f"negative form degree {self.k}")
        object.__setattr__(
            self, "components", normalize_components(self.components, self.k, self.basis.n, self.basis.coords)
        )

    @classmethod
    def zero(cls, k: int, basis: WilliamsonBasis) -> "FoliatedKForm":
        return cls(k, {}, basis)

    @classmethod
    def function(cls, f: Polynomial, basis: WilliamsonBasis) -> "FoliatedKForm":
        return cls(0, {(): f}, basis)

    def __getitem__(self, J) -> Polynomial:
        return self.components.get(tuple(J), Polynomial.zero(self.basis.coords))

    def is_zero(self) -> bool:
        return not self.components

    def _combine(self, other: "FoliatedKForm", sign: int) -> "FoliatedKForm":
        if other.k != self.k or other.basis != self.basis:
            raise ValueError("forms of different degree or basis")
        out = dict(self.components)
        for J, p in other.components.items():
            q = p if sign > 0 else -p
            out[J] = out[J] + q if J in out else q
        return FoliatedKForm(self.k, out, self.basis)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return FoliatedKForm(self.k, {J: -p for J, p in self.components.items()}, self.basis)

    def scale(self, c) -> "FoliatedKForm":
        return FoliatedKForm(self.k, {J: p.scale(c) for J, p in self.components.items()}, self.basis)

    def __eq__(self, other):
        if not isinstance(other, FoliatedKForm):
            return NotImplemented
        return self.k == other.k and self.basis == other.basis and self.components == other.components

    def __hash__(self):
        return hash((self.k, frozenset(self.components.items())))

    def __str__(self):
        if not self.components:
            return f"0 ({self.k}-form)"
        return "; ".join(f"{','.join(map(str, J)) or '-'}: {p}" for J, p in sorted(self.components.items()))


def check_well_defined(alpha: FoliatedKForm) -> tuple[bool, tuple | None]:
    B = alpha.basis
    for J in sorted(alpha.components):
        p = alpha.components[J]
        for j in J:
            if not vanishes_on_coords(p, B.sigma_indices(j)):
                return False, (J, j)
    return True, None


def d_F(alpha: FoliatedKForm) -> FoliatedKForm:
    ok, where = check_well_defined(alpha)
    if not ok:
        raise IllFormedForm(*where)
    B = alpha.basis
    comps = alternating_differential(alpha.components, alpha.k, B.n, B.apply)
    return FoliatedKForm(alpha.k + 1, comps, B)


def lie_derivative(alpha: FoliatedKForm, i: int) -> FoliatedKForm:
    B = alpha.basis
    return FoliatedKForm(alpha.k, {J: B.apply(i, p) for J, p in alpha.components.items()}, B)


@dataclass(frozen=True)
class GradedBasis:
    """Elementary forms spanning the admissible (k, d) slice, in a fixed order."""

    k: int
    d: int
    basis: WilliamsonBasis
    elements: tuple  # (J, exponent tuple)

    def __len__(self):
        return len(self.elements)

    @property
    def index(self) -> dict:
        idx = self.__dict__.get("_index")
        if idx is None:
            idx = {e: i for i, e in enumerate(self.elements)}
            object.__setattr__(self, "_index", idx)
        return idx

    def form(self, pos: int) -> FoliatedKForm:
        J, m = self.elements[pos]
        return FoliatedKForm(self.k, {J: Polynomial.monomial(self.basis.coords, m)}, self.basis)

    def coordinates(self, alpha: FoliatedKForm) -> dict:
        """Coefficients of the degree-d part of ``alpha`` in this basis."""
        idx = self.index
        out = {}
        for J, p in alpha.components.items():
            for m, c in p.terms.items():
                if sum(m) == self.d:
                    out[idx[(J, m)]] = c
        return out

    def to_form(self, vec: Mapping[int, object]) -> FoliatedKForm:
        comps: dict = {}
        for pos, c in vec.items():
            J, m = self.elements[pos]
            comps.setdefault(J, {})[m] = c
        return FoliatedKForm(
            self.k, {J: Polynomial(self.basis.coords, t) for J, t in comps.items()}, self.basis
        )


@lru_cache(maxsize=4096)
def basis_forms(k: int, d: int, basis: WilliamsonBasis) -> GradedBasis:
    n = basis.n
    if not 0 <= k <= n + 1 or d < 0:
        raise ValueError(f"no slice (k={k}, d={d}) for n={n}")
    elems = []
    monos = monomials_of_degree(basis.coords.size, d)
    for J in combinations(range(1, n + 1), k) if k <= n else ():
        sig = [basis.sigma_indices(j) for j in J]
        for m in monos:
            if all(any(m[t] for t in idx) for idx in sig):
                elems.append((J, m))
    return GradedBasis(k, d, basis, tuple(elems))


@lru_cache(maxsize=4096)
def assemble_matrix(k: int, d: int, basis: WilliamsonBasis) -> ExactMatrix:
    """Matrix of ``d_F`` from the (k, d) slice to the (k+1, d) slice."""
    dom = basis_forms(k, d, basis)
    cod = basis_forms(k + 1, d, basis) if k < basis.n else GradedBasis(k + 1, d, basis, ())
    M = ExactMatrix(len(cod), len(dom))
    if not len(cod):
        return M
    cidx = cod.index
    for col, (J, m) in enumerate(dom.elements):
        comps = alternating_differential(
            {J: Polynomial.monomial(basis.coords, m)}, k, basis.n, basis.apply
        )
        for Jp, p in comps.items():
            for mm, c in p.terms.items():
                M.rows[cidx[(Jp, mm)]][col] = c
    return M
