"""Complex charts in which every Williamson field acts diagonally on monomials.

Chart coordinates occupy the same slots as the real ones:

* elliptic pair i: ``(z_i, zb_i)`` with ``z = x + I*y``, ``zb = x - I*y``
* hyperbolic pair i: unchanged ``(x_i, y_i)``
* focus-focus pair (i, i+1): slots ``(x_i, y_i, x_{i+1}, y_{i+1})`` hold
  ``(u_i, v_i, ub_i, vb_i)`` with ``u = x_i + I*x_{i+1}``, ``v = y_i + I*y_{i+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .polyring import CoordinateMismatch, CoordinateSystem, Polynomial
from .scalar import Scalar
from .williamson import WilliamsonBasis

__all__ = ["ComplexChart", "NotConjugationSymmetric", "chart_for", "complexify", "realify"]

HALF = Scalar("1/2")


class NotConjugationSymmetric(ValueError):
    pass


@dataclass(frozen=True)
class ComplexChart:
    basis: WilliamsonBasis
    coords: CoordinateSystem
    to_chart: tuple[Polynomial, ...]  # image of each real coordinate
    to_real: tuple[Polynomial, ...]  # image of each chart coordinate
    swap: tuple[int, ...]  # slot permutation induced by complex conjugation

    def conjugate_monomial(self, m) -> tuple:
        return tuple(m[self.swap[j]] for j in range(len(m)))


@lru_cache(maxsize=None)
def chart_for(basis: WilliamsonBasis) -> ComplexChart:
    real = basis.coords
    names = list(real.names)
    swap = list(range(real.size))
    for b in basis.blocks:
        x, y = real.pair_indices(b.first)
        if b.kind == "e":
            names[x], names[y] = f"z{b.first}", f"zb{b.first}"
            swap[x], swap[y] = y, x
        elif b.kind == "ff":
            x2, y2 = real.pair_indices(b.first + 1)
            i = b.first
            names[x], names[y], names[x2], names[y2] = f"u{i}", f"v{i}", f"ub{i}", f"vb{i}"
            swap[x], swap[x2], swap[y], swap[y2] = x2, x, y2, y
    chart = CoordinateSystem(tuple(names))

    def cv(j):
        return Polynomial.var(chart, j)

    def rv(j):
        return Polynomial.var(real, j)

    to_chart = [cv(j) for j in range(real.size)]
    to_real = [rv(j) for j in range(real.size)]
    i_ = Scalar(0, 1)
    minus_half_i = Scalar(0, -1) * HALF
    for b in basis.blocks:
        x, y = real.pair_indices(b.first)
        if b.kind == "e":
            # x = (z + zb)/2, y = -I (z - zb)/2
            to_chart[x] = (cv(x) + cv(y)).scale(HALF)
            to_chart[y] = (cv(x) - cv(y)).scale(minus_half_i)
            to_real[x] = rv(x) + rv(y).scale(i_)
            to_real[y] = rv(x) - rv(y).scale(i_)
        elif b.kind == "ff":
            x2, y2 = real.pair_indices(b.first + 1)
            to_chart[x] = (cv(x) + cv(x2)).scale(HALF)
            to_chart[x2] = (cv(x) - cv(x2)).scale(minus_half_i)
            to_chart[y] = (cv(y) + cv(y2)).scale(HALF)
            to_chart[y2] = (cv(y) - cv(y2)).scale(minus_half_i)
            to_real[x] = rv(x) + rv(x2).scale(i_)
            to_real[x2] = rv(x) - rv(x2).scale(i_)
            to_real[y] = rv(y) + rv(y2).scale(i_)
            to_real[y2] = rv(y) - rv(y2).scale(i_)
    return ComplexChart(basis, chart, tuple(to_chart), tuple(to_real), tuple(swap))


def complexify(p: Polynomial, basis: WilliamsonBasis) -> Polynomial:
    if p.coords != basis.coords:
        raise CoordinateMismatch("polynomial is not over the basis coordinates")
    ch = chart_for(basis)
    return p.substitute(ch.to_chart, ch.coords)


def is_conjugation_symmetric(P: Polynomial, basis: WilliamsonBasis) -> bool:
    ch = chart_for(basis)
    for m, c in P.terms.items():
        if P.terms.get(ch.conjugate_monomial(m)) != c.conjugate():
            return False
    return True


def realify(P: Polynomial, basis: WilliamsonBasis, require_real: bool = True) -> Polynomial:
    """Inverse of :func:`complexify`.

    With ``require_real`` the input must be the image of a real polynomial
    (conjugation-symmetric coefficients); otherwise a Gaussian result is allowed.
    """
    ch = chart_for(basis)
    if P.coords != ch.coords:
        raise CoordinateMismatch("polynomial is not over the chart coordinates")
    if require_real and not is_conjugation_symmetric(P, basis):
        raise NotConjugationSymmetric("chart polynomial is not the image of a real polynomial")
    return P.substitute(ch.to_real, basis.coords)
