import itertools

import pytest

from folcoh.cohomology import (
    NoOracle,
    NotClosed,
    cohomology,
    cohomology_report,
    invariant_forms,
    is_exact,
    normal_form_split,
    oracle_dimension,
)
from folcoh.foliated import FoliatedKForm, IllFormedForm, d_F, lie_derivative
from folcoh.sampling import WILLIAMSON_TYPES, random_form, random_invariant_form
from folcoh.williamson import WilliamsonBasis

from conftest import P

H1 = WilliamsonBasis.from_kinds(["h"])
H2 = WilliamsonBasis.from_kinds(["h", "h"])


def one_form(B, text):
    return FoliatedKForm(1, {(1,): P(B, text)}, B)


def test_anchor_n1_hyperbolic():
    s = cohomology(H1, 1, 2)
    assert (s.dim_kernel, s.dim_image_from_below, s.dim_H) == (3, 2, 1)
    assert s.generators == [one_form(H1, "x1 y1")]
    assert s.oracle_ok and s.generators_independent


def test_anchor_n2_hyperbolic_top():
    s = cohomology(H2, 2, 4)
    assert s.dim_H == 1
    assert s.generators == [FoliatedKForm(2, {(1, 2): H2.h(1) * H2.h(2)}, H2)]


@pytest.mark.parametrize("kinds", [["e"], ["h", "e"], ["ff"], ["ff", "h"]])
def test_degree_one_is_acyclic(kinds):
    B = WilliamsonBasis.from_kinds(kinds)
    for k in range(1, B.n + 1):
        assert cohomology(B, k, 1, oracle=False).dim_H == 0


def test_oracle_examples():
    assert oracle_dimension(H2, 1, 4) == 4
    assert oracle_dimension(H2, 2, 4) == 1
    assert oracle_dimension(H2, 1, 5) == 0
    with pytest.raises(NoOracle):
        oracle_dimension(WilliamsonBasis.from_kinds(["ff"]), 1, 2)
    with pytest.raises(NoOracle):
        cohomology(WilliamsonBasis.from_kinds(["ff"]), 1, 2, oracle=True)


def test_focus_focus_report_is_flagged():
    B = WilliamsonBasis.from_kinds(["ff"])
    rep = cohomology_report(B, ds=range(0, 5))
    assert all(s.flag == "no oracle" and s.oracle_count is None for s in rep.slices)
    assert all(s.dim_H >= 0 for s in rep.slices)


@pytest.mark.parametrize("kinds", [k for k in WILLIAMSON_TYPES if "ff" not in k])
def test_dimensions_match_oracle(kinds):
    B = WilliamsonBasis.from_kinds(kinds)
    rep = cohomology_report(B, ds=range(0, 7))
    assert rep.oracle_ok
    for s in rep.slices:
        assert s.dim_H == s.oracle_count == len(s.generators)
        assert s.generators_independent
        if s.d % 2:
            assert s.dim_H == 0


@pytest.mark.parametrize("kinds", [["ff"], ["ff", "e"]])
def test_focus_focus_generators_independent(kinds):
    B = WilliamsonBasis.from_kinds(kinds)
    for d in range(0, 5):
        for k in range(B.n + 1):
            s = cohomology(B, k, d)
            assert s.generators_independent
            assert len(s.generators) <= s.dim_H


def test_invariant_forms_are_closed_and_invariant():
    for kinds in WILLIAMSON_TYPES:
        B = WilliamsonBasis.from_kinds(kinds)
        for k, d in itertools.product(range(B.n + 1), (2, 4)):
            for g in invariant_forms(B, k, d):
                assert d_F(g).is_zero()
                assert all(lie_derivative(g, i).is_zero() for i in range(1, B.n + 1))


def test_normal_form_examples():
    s = normal_form_split(one_form(H1, "x1"))
    assert s.beta.is_zero() and s.zeta == FoliatedKForm.function(P(H1, "-x1"), H1)
    s = normal_form_split(one_form(H1, "x1 y1 + x1"))
    assert s.beta == one_form(H1, "x1 y1") and s.zeta == FoliatedKForm.function(P(H1, "-x1"), H1)
    s = normal_form_split(one_form(H1, "x1 y1"))
    assert s.beta == one_form(H1, "x1 y1") and s.zeta.is_zero()


def test_is_exact_examples():
    ok, z = is_exact(one_form(H1, "x1"))
    assert ok and z == FoliatedKForm.function(P(H1, "-x1"), H1)
    assert is_exact(one_form(H1, "x1 y1")) == (False, None)
    ok, z = is_exact(FoliatedKForm.zero(1, H1))
    assert ok and z.is_zero()


def test_split_rejects_bad_input():
    B = WilliamsonBasis.from_kinds(["h", "h"])
    with pytest.raises(NotClosed) as err:
        normal_form_split(FoliatedKForm(1, {(1,): P(B, "x1 x2")}, B))
    assert err.value.residual == d_F(FoliatedKForm(1, {(1,): P(B, "x1 x2")}, B))
    with pytest.raises(IllFormedForm):
        is_exact(FoliatedKForm(1, {(1,): P(B, "1")}, B))


def test_split_on_random_closed_forms(rng):
    agree = 0
    for kinds in WILLIAMSON_TYPES:
        B = WilliamsonBasis.from_kinds(kinds)
        for _ in range(6):
            k = rng.randint(1, B.n)
            beta0 = random_invariant_form(rng, B, k, 2) if rng.random() < 0.6 else FoliatedKForm.zero(k, B)
            alpha = beta0 + d_F(random_form(rng, B, k - 1, 6))
            s = normal_form_split(alpha)
            assert s.beta + d_F(s.zeta) == alpha
            assert all(lie_derivative(s.beta, i).is_zero() for i in range(1, B.n + 1))
            exact, zeta = is_exact(alpha)
            assert exact == s.beta.is_zero()
            if exact:
                assert d_F(zeta) == alpha
            agree += 1
    assert agree == 6 * len(WILLIAMSON_TYPES)
