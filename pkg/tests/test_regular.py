import pytest

from folcoh.polyring import Polynomial
from folcoh.regular import (
    NotClosedRegular,
    RegularFoliatedForm,
    RegularModel,
    d_F_regular,
    homotopy_I,
    homotopy_identity_check,
    pullback_at_zero,
    primitive_regular,
)
from folcoh.sampling import random_regular_form

M21 = RegularModel(2, 1)
M22 = RegularModel(2, 2)


def rf(model, k, comps):
    return RegularFoliatedForm(k, {J: Polynomial.parse(model.coords, t) for J, t in comps.items()}, model)


def fn(model, text):
    return rf(model, 0, {(): text})


def test_homotopy_examples():
    assert homotopy_I(rf(M21, 1, {(1,): "p1"})) == fn(M21, "1/2 p1^2")
    assert homotopy_I(rf(M21, 1, {(1,): "p2"})) == fn(M21, "p1 p2")
    assert homotopy_I(RegularFoliatedForm.zero(1, M21)).is_zero()


def test_identity_examples():
    f = fn(M21, "p1")
    assert d_F_regular(f) == rf(M21, 1, {(1,): "1"})
    assert homotopy_I(d_F_regular(f)) == f
    assert pullback_at_zero(f).is_zero()
    assert homotopy_identity_check(f).is_zero()
    assert homotopy_identity_check(rf(M21, 1, {(1,): "p1 p2"})).is_zero()
    assert homotopy_identity_check(rf(M22, 2, {(1, 2): "7"})).is_zero()


def test_pullback_keeps_transverse_coordinates():
    m = RegularModel(3, 1)
    assert pullback_at_zero(fn(m, "p1 p2 + p3^2 + 5")) == fn(m, "p3^2 + 5")
    assert pullback_at_zero(rf(m, 1, {(1,): "p3"})).is_zero()


def test_primitive_examples():
    assert primitive_regular(rf(M21, 1, {(1,): "p1"})) == fn(M21, "1/2 p1^2")
    assert primitive_regular(rf(M22, 1, {(1,): "p2", (2,): "p1"})) == fn(M22, "p1 p2")
    a = d_F_regular(fn(M21, "p1^3"))
    assert d_F_regular(primitive_regular(a)) == a
    with pytest.raises(NotClosedRegular):
        primitive_regular(rf(M22, 1, {(1,): "p2"}))
    with pytest.raises(ValueError):
        primitive_regular(fn(M21, "p1"))


def test_model_bounds():
    with pytest.raises(ValueError):
        RegularModel(2, 3)
    with pytest.raises(ValueError):
        RegularModel(2, 0)


MODELS = [RegularModel(m, n) for m in range(1, 5) for n in (1, 2) if n <= m]


def test_homotopy_identity_random(rng):
    count = 0
    while count < 200:
        for model in MODELS:
            k = rng.randint(0, model.n)
            a = random_regular_form(rng, model, k, 8)
            assert homotopy_identity_check(a).is_zero()
            count += 1


def test_primitive_of_exact_random(rng):
    for _ in range(20):
        for model in MODELS:
            k = rng.randint(1, model.n)
            a = d_F_regular(random_regular_form(rng, model, k - 1, 8))
            assert d_F_regular(primitive_regular(a)) == a


def test_closed_forms_are_exact():
    # the closed candidates we can think of in low degree all have primitives
    m = RegularModel(3, 2)
    for comps in ({(1,): "p2 p3", (2,): "p1 p3"}, {(1,): "p3^2", (2,): "0"}, {(1, 2): "p1 p2 p3"}):
        k = len(next(iter(comps)))
        a = rf(m, k, comps)
        assert d_F_regular(a).is_zero()
        assert d_F_regular(primitive_regular(a)) == a


def test_leaf_degree_slices(rng):
    model = RegularModel(3, 2)
    for _ in range(20):
        a = random_regular_form(rng, model, 1, 6)
        for ell in range(7):
            part = RegularFoliatedForm(
                1,
                {J: Polynomial(model.coords, {m: c for m, c in p.terms.items() if sum(m[:2]) == ell})
                 for J, p in a.components.items()},
                model,
            )
            out = homotopy_I(part)
            assert all(sum(m[:2]) == ell + 1 for p in out.components.values() for m in p.terms)
