"""Regular foliations: the leaf-scaling homotopy operator and its Poincare lemma.

Coordinates are ``p1..pm`` and the leaves are ``{p_{n+1}, ..., p_m = const}``.
The retraction ``phi_t(p) = (t p_1, ..., t p_n, p_{n+1}, ..., p_m)`` gives

    I(alpha) = int_0^1 phi_t^*(iota_{xi_t} alpha) dt,

and on a component monomial of leaf degree l in a k-form the integral is
``int_0^1 t^(l+k-1) dt = 1/(l+k)``, so I is evaluated term by term without
ever forming the singular field xi_t.
"""

from __future__ import annotations

from dataclasses import dataclass

from .foliated import alternating_differential, normalize_components
from .polyring import CoordinateSystem, Polynomial
from .scalar import Scalar

__all__ = [
    "RegularModel",
    "RegularFoliatedForm",
    "NotClosedRegular",
    "d_F_regular",
    "pullback_at_zero",
    "homotopy_I",
    "homotopy_identity_check",
    "primitive_regular",
]


@dataclass(frozen=True)
class RegularModel:
    m: int
    n: int

    def __post_init__(self):
        if not 1 <= self.n <= self.m:
            raise ValueError(f"need 1 <= n <= m, got m={self.m}, n={self.n}")

    @property
    def coords(self) -> CoordinateSystem:
        return CoordinateSystem.regular(self.m)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n}


class NotClosedRegular(ValueError):
    def __init__(self, residual):
        super().__init__(f"form is not closed: d_F alpha = {residual}")
        self.residual = residual


@dataclass(frozen=True)
class RegularFoliatedForm:
    k: int
    components: dict
    model: RegularModel

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"negative form degree {self.k}")
        object.__setattr__(
            self, "components", normalize_components(self.components, self.k, self.model.n, self.model.coords)
        )

    @classmethod
    def zero(cls, k: int, model: RegularModel) -> "RegularFoliatedForm":
        return cls(k, {}, model)

    @classmethod
    def function(cls, f: Polynomial, model: RegularModel) -> "RegularFoliatedForm":
        return cls(0, {(): f}, model)

    def __getitem__(self, J) -> Polynomial:
        return self.components.get(tuple(J), Polynomial.zero(self.model.coords))

    def is_zero(self) -> bool:
        return not self.components

    def _combine(self, other, sign):
        if other.k != self.k or other.model != self.model:
            raise ValueError("forms of different degree or model")
        out = dict(self.components)
        for J, p in other.components.items():
            q = p if sign > 0 else -p
            out[J] = out[J] + q if J in out else q
        return RegularFoliatedForm(self.k, out, self.model)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c) -> "RegularFoliatedForm":
        return RegularFoliatedForm(self.k, {J: p.scale(c) for J, p in self.components.items()}, self.model)

    def mul(self, f: Polynomial) -> "RegularFoliatedForm":
        return RegularFoliatedForm(self.k, {J: p * f for J, p in self.components.items()}, self.model)

    def max_degree(self) -> int | None:
        degs = [p.degree() for p in self.components.values()]
        return max(degs) if degs else None

    def __eq__(self, other):
        if not isinstance(other, RegularFoliatedForm):
            return NotImplemented
        return self.k == other.k and self.model == other.model and self.components == other.components

    def __hash__(self):
        return hash((self.k, self.model, frozenset(self.components.items())))

    def __str__(self):
        if not self.components:
            return f"0 ({self.k}-form)"
        return "; ".join(f"{','.join(map(str, J)) or '-'}: {p}" for J, p in sorted(self.components.items()))


def d_F_regular(alpha: RegularFoliatedForm) -> RegularFoliatedForm:
    comps = alternating_differential(
        alpha.components, alpha.k, alpha.model.n, lambda j, p: p.partial(j - 1)
    )
    return RegularFoliatedForm(alpha.k + 1, comps, alpha.model)


def pullback_at_zero(alpha: RegularFoliatedForm) -> RegularFoliatedForm:
    """phi_0^*: leaf coordinates set to 0 on functions; higher forms pull back to 0."""
    if alpha.k >= 1:
        return RegularFoliatedForm.zero(alpha.k, alpha.model)
    leaf = range(alpha.model.n)
    return RegularFoliatedForm(0, {J: p.set_zero(leaf) for J, p in alpha.components.items()}, alpha.model)


def homotopy_I(alpha: RegularFoliatedForm) -> RegularFoliatedForm:
    k = alpha.k
    if k < 1:
        raise ValueError("the homotopy operator is defined on forms of degree >= 1")
    model = alpha.model
    n = model.n
    out: dict = {}
    for J, p in alpha.components.items():
        for s, j in enumerate(J):
            rest = J[:s] + J[s + 1:]
            acc = out.setdefault(rest, {})
            for mono, c in p.terms.items():
                ell = sum(mono[:n])
                mm = list(mono)
                mm[j - 1] += 1
                mm = tuple(mm)
                v = c * Scalar(1 if s % 2 == 0 else -1) / (ell + k)
                w = acc.get(mm)
                acc[mm] = v if w is None else w + v
    return RegularFoliatedForm(
        k - 1, {J: Polynomial(model.coords, t) for J, t in out.items()}, model
    )


def homotopy_identity_check(alpha: RegularFoliatedForm) -> RegularFoliatedForm:
    """Residual ``alpha - phi_0^* alpha - I(d alpha) - d(I alpha)``; always zero."""
    res = alpha - pullback_at_zero(alpha)
    if alpha.k < alpha.model.n:
        res = res - homotopy_I(d_F_regular(alpha))
    if alpha.k >= 1:
        res = res - d_F_regular(homotopy_I(alpha))
    return res


def primitive_regular(alpha: RegularFoliatedForm) -> RegularFoliatedForm:
    if alpha.k < 1:
        raise ValueError("primitives exist only for forms of degree >= 1")
    r = d_F_regular(alpha)
    if not r.is_zero():
        raise NotClosedRegular(r)
    return homotopy_I(alpha)
