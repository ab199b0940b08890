import pytest

from folcoh.kostant import (
    ConnectionPotential,
    NotFlat,
    TruncatedSeries,
    TwistedForm,
    d_nabla,
    exp_truncated,
    flat_section,
    nabla_residual,
    truncate_form,
)
from folcoh.polyring import Polynomial
from folcoh.regular import RegularFoliatedForm, RegularModel, d_F_regular
from folcoh.sampling import random_polynomial, random_regular_form

M21 = RegularModel(2, 1)


def rf(model, k, comps):
    return RegularFoliatedForm(k, {J: Polynomial.parse(model.coords, t) for J, t in comps.items()}, model)


def test_flat_section_examples():
    pot = ConnectionPotential(rf(M21, 1, {(1,): "p1"}))
    assert flat_section(pot, 4).poly == Polynomial.parse(M21.coords, "1 - 1/2 p1^2 + 1/8 p1^4")
    r = flat_section(rf(M21, 1, {(1,): "p2"}), 3)
    assert r.poly == Polynomial.parse(M21.coords, "1 - p1 p2")
    assert flat_section(RegularFoliatedForm.zero(1, M21), 5).poly == Polynomial.constant(M21.coords, 1)
    assert nabla_residual(r, ConnectionPotential(rf(M21, 1, {(1,): "p2"}))).is_zero()


def test_d_nabla_examples():
    pot = ConnectionPotential(rf(M21, 1, {(1,): "p1"}))
    unit = TwistedForm.section(Polynomial.constant(M21.coords, 1), M21, 4)
    assert d_nabla(unit, pot).effective() == rf(M21, 1, {(1,): "p1"})
    zero = ConnectionPotential(RegularFoliatedForm.zero(1, M21))
    f = TwistedForm.section(Polynomial.parse(M21.coords, "p1^3 p2"), M21, 6)
    assert d_nabla(f, zero).effective() == d_F_regular(f.effective())


def test_rejects_non_flat():
    m = RegularModel(2, 2)
    with pytest.raises(NotFlat) as err:
        ConnectionPotential(rf(m, 1, {(1,): "p2"}))
    assert not err.value.residual.is_zero()
    with pytest.raises(ValueError):
        ConnectionPotential(RegularFoliatedForm.function(Polynomial.zero(m.coords), m))


def test_series_arithmetic():
    c = M21.coords
    a = TruncatedSeries(Polynomial.parse(c, "1 + p1"), 2)
    assert (a * a).poly == Polynomial.parse(c, "1 + 2 p1 + p1^2")
    assert (a * a * a).poly == Polynomial.parse(c, "1 + 3 p1 + 3 p1^2")
    with pytest.raises(ValueError):
        a + TruncatedSeries(a.poly, 3)
    f = Polynomial.parse(c, "p1 + p2^2")
    e, e_neg = exp_truncated(f, 6), exp_truncated(-f, 6)
    assert (TruncatedSeries(e, 6) * TruncatedSeries(e_neg, 6)).poly == Polynomial.constant(c, 1)
    with pytest.raises(ValueError):
        exp_truncated(Polynomial.parse(c, "1 + p1"), 3)


def random_potential(rng, model):
    g = Polynomial(model.coords, {m: c for m, c in random_polynomial(rng, model.coords, 5, 4).terms.items() if sum(m)})
    return ConnectionPotential(d_F_regular(RegularFoliatedForm.function(g, model)))


MODELS = [RegularModel(1, 1), RegularModel(2, 1), RegularModel(3, 2), RegularModel(4, 2)]


def test_curvature_vanishes_mod_truncation(rng):
    for _ in range(15):
        for model in MODELS:
            pot = random_potential(rng, model)
            D = rng.randint(0, 8)
            k = rng.randint(0, model.n)
            eta = TwistedForm(
                random_regular_form(rng, model, k, 5, 3),
                TruncatedSeries(random_polynomial(rng, model.coords, 4, 3), D),
            )
            assert d_nabla(d_nabla(eta, pot), pot).is_zero()


def test_flat_sections_random(rng):
    for _ in range(15):
        for model in MODELS:
            pot = random_potential(rng, model)
            D = rng.randint(0, 8)
            r = flat_section(pot, D)
            assert nabla_residual(r, pot).is_zero()


def test_weight_truncation():
    m = RegularModel(2, 2)
    a = rf(m, 2, {(1, 2): "1 + p1 + p1 p2"})
    assert truncate_form(a, 3) == rf(m, 2, {(1, 2): "1 + p1"})
    assert truncate_form(a, 1).is_zero()
