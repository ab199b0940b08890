"""Foliated cohomology of Williamson linear models, one homogeneous degree at a time."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .decompose import decompose
from .foliated import (
    FoliatedKForm,
    IllFormedForm,
    assemble_matrix,
    basis_forms,
    check_well_defined,
    d_F,
    lie_derivative,
)
from .linalg import ExactMatrix
from .polyring import Polynomial
from .williamson import WilliamsonBasis

__all__ = [
    "NotClosed",
    "NoOracle",
    "CohomologySlice",
    "CohomologyReport",
    "NormalFormSplit",
    "slice_rank",
    "oracle_dimension",
    "invariant_forms",
    "cohomology",
    "cohomology_report",
    "normal_form_split",
    "is_exact",
]

NO_ORACLE = "no oracle"


class NotClosed(ValueError):
    def __init__(self, residual: FoliatedKForm):
        super().__init__(f"form is not closed: d_F alpha = {residual}")
        self.residual = residual


class NoOracle(ValueError):
    pass


@lru_cache(maxsize=None)
def slice_rank(k: int, d: int, basis: WilliamsonBasis) -> int:
    if k < 0 or k > basis.n:
        return 0
    return assemble_matrix(k, d, basis).rank()


def _h_exponents(n: int, total: int):
    """All m in N^n with |m| = total."""
    if n == 1:
        yield (total,)
        return
    for a in range(total, -1, -1):
        for rest in _h_exponents(n - 1, total - a):
            yield (a,) + rest


def oracle_dimension(basis: WilliamsonBasis, k: int, d: int) -> int:
    """Count of h-monomial k-forms: sum over k-subsets J of #{m : 2|m| = d, m_j >= 1 on J}."""
    if basis.k_f:
        raise NoOracle("no oracle for k_f>0")
    n = basis.n
    if d % 2 or not 0 <= k <= n:
        return 0
    monos = list(_h_exponents(n, d // 2))
    return sum(
        sum(1 for m in monos if all(m[j - 1] >= 1 for j in J))
        for J in combinations(range(1, n + 1), k)
    )


def invariant_forms(basis: WilliamsonBasis, k: int, d: int) -> list[FoliatedKForm]:
    """Admissible k-forms with h-monomial components of degree d.

    These are annihilated by every Lie derivative. For a focus-focus pair
    both of its h's count as factors for either field of the pair.
    """
    n = basis.n
    if d % 2 or not 0 <= k <= n:
        return []
    hs = [basis.h(i) for i in range(1, n + 1)]
    out = []
    monos = list(_h_exponents(n, d // 2)) if d else [(0,) * n]
    for J in combinations(range(1, n + 1), k):
        for m in monos:
            if all(sum(m[p - 1] for p in basis.block_of(j).pairs) >= 1 for j in J):
                f = Polynomial.constant(basis.coords, 1)
                for i, e in enumerate(m):
                    if e:
                        f = f * hs[i] ** e
                out.append(FoliatedKForm(k, {J: f}, basis))
    return out


@dataclass
class CohomologySlice:
    k: int
    d: int
    dim_space: int
    dim_kernel: int
    dim_image_from_below: int
    generators: list = field(default_factory=list)
    oracle_count: int | None = None
    flag: str | None = None
    generators_independent: bool = True

    @property
    def dim_H(self) -> int:
        return self.dim_kernel - self.dim_image_from_below

    @property
    def oracle_ok(self) -> bool | None:
        if self.oracle_count is None:
            return None
        return self.oracle_count == self.dim_H

    def to_json(self) -> dict:
        from .io import form_to_json

        return {
            "k": self.k,
            "d": self.d,
            "dimSpace": self.dim_space,
            "dimKernel": self.dim_kernel,
            "dimImage": self.dim_image_from_below,
            "dimH": self.dim_H,
            "oracle": self.oracle_count,
            "flag": self.flag,
            "generatorsIndependent": self.generators_independent,
            "generators": [form_to_json(g) for g in self.generators],
        }


@dataclass
class CohomologyReport:
    basis: WilliamsonBasis
    slices: list = field(default_factory=list)

    @property
    def oracle_ok(self) -> bool:
        return all(s.oracle_ok is not False for s in self.slices)

    def to_json(self) -> dict:
        b = self.basis
        return {
            "type": {"blocks": b.kinds, "k_e": b.k_e, "k_h": b.k_h, "k_f": b.k_f},
            "slices": [s.to_json() for s in self.slices],
        }


def _independent_mod_image(k: int, d: int, basis: WilliamsonBasis, gens: list[FoliatedKForm]) -> bool:
    space = basis_forms(k, d, basis)
    gen_cols = [space.coordinates(g) for g in gens]
    G = ExactMatrix.from_columns(len(space), gen_cols)
    if k == 0:
        return G.rank() == len(gens)
    below = assemble_matrix(k - 1, d, basis)
    return below.hstack(G).rank() == slice_rank(k - 1, d, basis) + len(gens)


def cohomology(basis: WilliamsonBasis, k: int, d: int, oracle: bool | None = None,
               generators: bool = True) -> CohomologySlice:
    """Dimensions of H^k in homogeneous degree d from exact ranks.

    ``oracle`` defaults to cross-checking whenever the type has no
    focus-focus block; asking for it with ``k_f > 0`` raises :class:`NoOracle`.
    """
    if oracle is None:
        oracle = basis.k_f == 0
    if oracle and basis.k_f:
        raise NoOracle("no oracle for k_f>0")
    dim_space = len(basis_forms(k, d, basis))
    dim_kernel = dim_space - slice_rank(k, d, basis)
    image = slice_rank(k - 1, d, basis) if k >= 1 else 0
    sl = CohomologySlice(k, d, dim_space, dim_kernel, image)
    if oracle:
        sl.oracle_count = oracle_dimension(basis, k, d)
    elif basis.k_f:
        sl.flag = NO_ORACLE
    if generators:
        gens = invariant_forms(basis, k, d)
        sl.generators = gens
        sl.generators_independent = _independent_mod_image(k, d, basis, gens) if gens else True
    return sl


def cohomology_report(basis: WilliamsonBasis, ks=None, ds=None, oracle: bool | None = None,
                      generators: bool = True) -> CohomologyReport:
    ks = range(0, basis.n + 1) if ks is None else ks
    ds = range(0, 5) if ds is None else ds
    rep = CohomologyReport(basis)
    for d in ds:
        for k in ks:
            rep.slices.append(cohomology(basis, k, d, oracle=oracle, generators=generators))
    return rep


@dataclass(frozen=True)
class NormalFormSplit:
    beta: FoliatedKForm
    zeta: FoliatedKForm | None  # None for 0-forms


def _require_closed(alpha: FoliatedKForm):
    ok, where = check_well_defined(alpha)
    if not ok:
        raise IllFormedForm(*where)
    r = d_F(alpha)
    if not r.is_zero():
        raise NotClosed(r)


def normal_form_split(alpha: FoliatedKForm) -> NormalFormSplit:
    """Split a closed form as ``beta + d_F(zeta)`` with every Lie derivative of beta zero.

    Field by field, each component containing ``i`` is decomposed along X_i;
    the potentials, contracted into a (k-1)-form, remove every monomial that
    X_i moves. What survives all n passes is invariant.
    """
    _require_closed(alpha)
    B = alpha.basis
    k = alpha.k
    if k == 0:
        return NormalFormSplit(alpha, None)
    current = alpha
    zeta = FoliatedKForm.zero(k - 1, B)
    for i in range(1, B.n + 1):
        comps = {}
        for J, p in current.components.items():
            if i not in J:
                continue
            pot = decompose(B, i, p).potential
            if pot:
                s = J.index(i)
                comps[tuple(j for j in J if j != i)] = -pot if s % 2 else pot
        if comps:
            z = FoliatedKForm(k - 1, comps, B)
            current = current - d_F(z)
            zeta = zeta + z
    for i in range(1, B.n + 1):
        if not lie_derivative(current, i).is_zero():
            raise AssertionError("normal form is not invariant")
    return NormalFormSplit(current, zeta)


def is_exact(alpha: FoliatedKForm) -> tuple[bool, FoliatedKForm | None]:
    """Decide exactness by solving ``d_F zeta = alpha`` degree by degree."""
    _require_closed(alpha)
    B = alpha.basis
    k = alpha.k
    if k == 0:
        return alpha.is_zero(), None
    degrees = sorted({sum(m) for p in alpha.components.values() for m in p.terms})
    zeta = FoliatedKForm.zero(k - 1, B)
    for d in degrees:
        target = basis_forms(k, d, B).coordinates(alpha)
        x = assemble_matrix(k - 1, d, B).solve(target)
        if x is None:
            return False, None
        zeta = zeta + basis_forms(k - 1, d, B).to_form(x)
    return True, zeta
