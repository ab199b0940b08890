"""The Kostant complex of a regular foliation, in a fixed trivialization.

A section is ``u * s`` for the unit section ``s`` with ``nabla s = A (x) s``.
The twisted differential on coefficient forms is

    d^nabla(eta) = d_F(eta) + (-1)^k eta ^ A,

and a flat section is ``exp(-f) s`` with ``d_F f = A``.

Truncation is by weight: a term ``c p^m dp_J`` of a k-form has weight
``|m| + k``. ``d_F`` preserves weight and wedging with ``A`` raises it, so
dropping weights above ``D`` commutes with ``d^nabla`` and every identity of
the complex holds exactly modulo weight ``> D``. On functions (k = 0) the
weight is the ordinary polynomial degree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .polyring import Polynomial
from .regular import RegularFoliatedForm, RegularModel, d_F_regular, primitive_regular
from .scalar import Scalar

__all__ = [
    "NotFlat",
    "ConnectionPotential",
    "TruncatedSeries",
    "TwistedForm",
    "truncate_form",
    "wedge_one_form",
    "d_nabla",
    "flat_section",
    "nabla_residual",
]


class NotFlat(ValueError):
    def __init__(self, residual):
        super().__init__(f"potential is not leafwise flat: d_F alpha = {residual}")
        self.residual = residual


@dataclass(frozen=True)
class ConnectionPotential:
    alpha: RegularFoliatedForm

    def __post_init__(self):
        if self.alpha.k != 1:
            raise ValueError("a connection potential is a foliated 1-form")
        r = d_F_regular(self.alpha)
        if not r.is_zero():
            raise NotFlat(r)

    @property
    def model(self) -> RegularModel:
        return self.alpha.model


@dataclass(frozen=True)
class TruncatedSeries:
    poly: Polynomial
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("truncation order must be nonnegative")
        object.__setattr__(self, "poly", self.poly.truncate(self.order))

    @classmethod
    def one(cls, coords, order: int) -> "TruncatedSeries":
        return cls(Polynomial.constant(coords, 1), order)

    def _same(self, other):
        if self.order != other.order:
            raise ValueError(f"truncation orders differ: {self.order} vs {other.order}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._same(other)
        return TruncatedSeries(self.poly + other.poly, self.order)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._same(other)
        return TruncatedSeries(self.poly - other.poly, self.order)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._same(other)
        return TruncatedSeries(_mul_trunc(self.poly, other.poly, self.order), self.order)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.poly == other.poly

    def __hash__(self):
        return hash((self.poly, self.order))

    def __str__(self):
        return f"{self.poly} + O({self.order + 1})"


def _mul_trunc(p: Polynomial, q: Polynomial, order: int) -> Polynomial:
    out: dict = {}
    for m1, c1 in p.terms.items():
        d1 = sum(m1)
        for m2, c2 in q.terms.items():
            if d1 + sum(m2) > order:
                continue
            m = tuple(a + b for a, b in zip(m1, m2))
            v = out.get(m)
            out[m] = c1 * c2 if v is None else v + c1 * c2
    return Polynomial(p.coords, out)


def exp_truncated(f: Polynomial, order: int) -> Polynomial:
    """``exp(f)`` up to degree ``order``; ``f`` must have no constant term."""
    if f.coefficient((0,) * f.coords.size):
        raise ValueError("exponent must vanish at the origin")
    total = Polynomial.constant(f.coords, 1)
    term = total
    for j in range(1, order + 1):
        term = _mul_trunc(term, f, order).scale(Scalar(1) / j)
        if not term:
            break
        total = total + term
    return total


def truncate_form(form: RegularFoliatedForm, order: int) -> RegularFoliatedForm:
    """Drop terms of weight ``degree + k`` above ``order``."""
    cut = order - form.k
    if cut < 0:
        return RegularFoliatedForm.zero(form.k, form.model)
    return RegularFoliatedForm(form.k, {J: p.truncate(cut) for J, p in form.components.items()}, form.model)


def wedge_one_form(beta: RegularFoliatedForm, A: RegularFoliatedForm) -> RegularFoliatedForm:
    """``beta ^ A`` for a 1-form A, in the dp_J component basis."""
    if A.k != 1 or A.model != beta.model:
        raise ValueError("wedge needs a 1-form on the same model")
    out: dict = {}
    for J, b in beta.components.items():
        for (j,), a in A.components.items():
            if j in J:
                continue
            Jp = tuple(sorted(J + (j,)))
            after = sum(1 for t in J if t > j)
            term = b * a
            if after % 2:
                term = -term
            out[Jp] = out[Jp] + term if Jp in out else term
    return RegularFoliatedForm(beta.k + 1, out, beta.model)


@dataclass(frozen=True)
class TwistedForm:
    """``form (x) (coefficient * s)``; the represented coefficient form is their product."""

    form: RegularFoliatedForm
    coefficient: TruncatedSeries

    @property
    def order(self) -> int:
        return self.coefficient.order

    @classmethod
    def section(cls, u: Polynomial, model: RegularModel, order: int) -> "TwistedForm":
        one = RegularFoliatedForm.function(Polynomial.constant(model.coords, 1), model)
        return cls(one, TruncatedSeries(u, order))

    @classmethod
    def of(cls, form: RegularFoliatedForm, order: int) -> "TwistedForm":
        return cls(form, TruncatedSeries.one(form.model.coords, order))

    def effective(self) -> RegularFoliatedForm:
        return truncate_form(self.form.mul(self.coefficient.poly), self.order)

    def is_zero(self) -> bool:
        return self.effective().is_zero()


def d_nabla(eta: TwistedForm, pot: ConnectionPotential, order: int | None = None) -> TwistedForm:
    D = eta.order
    if order is not None and order != D:
        raise ValueError(f"truncation order mismatch: {order} vs {D}")
    if pot.model != eta.form.model:
        raise ValueError("potential and form live on different models")
    e = eta.effective()
    out = d_F_regular(e)
    w = wedge_one_form(e, pot.alpha)
    out = out - w if e.k % 2 else out + w
    return TwistedForm.of(truncate_form(out, D), D)


def flat_section(pot: ConnectionPotential | RegularFoliatedForm, order: int) -> TruncatedSeries:
    """Coefficient of a flat section: ``exp(-f)`` with ``d_F f = alpha``, to degree ``order``."""
    if isinstance(pot, RegularFoliatedForm):
        pot = ConnectionPotential(pot)
    f = primitive_regular(pot.alpha)[()]
    return TruncatedSeries(exp_truncated(-f, order), order)


def nabla_residual(r: TruncatedSeries, pot: ConnectionPotential) -> RegularFoliatedForm:
    """``nabla(r s)`` as a truncated 1-form; zero for a flat section."""
    return d_nabla(TwistedForm.section(r.poly, pot.model, r.order), pot).effective()
