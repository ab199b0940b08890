import pytest

from folcoh.foliated import (
    FoliatedKForm,
    IllFormedForm,
    assemble_matrix,
    basis_forms,
    check_well_defined,
    d_F,
    lie_derivative,
)
from folcoh.polyring import Polynomial
from folcoh.sampling import WILLIAMSON_TYPES, random_form
from folcoh.scalar import Scalar
from folcoh.williamson import WilliamsonBasis, poisson_bracket

from conftest import P

H1 = WilliamsonBasis.from_kinds(["h"])
H2 = WilliamsonBasis.from_kinds(["h", "h"])


def form(B, k, comps):
    return FoliatedKForm(k, {tuple(J): P(B, t) for J, t in comps.items()}, B)


def d_oracle(alpha):
    # the alternating sum written with brackets {h_j, .}
    B, k = alpha.basis, alpha.k
    out = {}
    for J, p in alpha.components.items():
        for j in range(1, B.n + 1):
            if j in J:
                continue
            Jp = tuple(sorted(J + (j,)))
            term = poisson_bracket(B.h(j), p).scale((-1) ** Jp.index(j))
            out[Jp] = out.get(Jp, Polynomial.zero(B.coords)) + term
    return FoliatedKForm(k + 1, out, B)


def test_examples():
    basic = FoliatedKForm(1, {(1,): H2.h(1), (2,): H2.h(2)}, H2)
    assert d_F(basic).is_zero()
    a = form(H2, 1, {(2,): "x1 y1 x2"})
    assert d_F(a)[(1, 2)].is_zero()
    assert d_F(d_F(FoliatedKForm.function(P(H2, "x1"), H2))).is_zero()


def test_well_defined_examples():
    assert check_well_defined(form(H1, 1, {(1,): "1"})) == (False, ((1,), 1))
    assert check_well_defined(form(H1, 1, {(1,): "x1"})) == (True, None)
    assert check_well_defined(form(H2, 2, {(1, 2): "x1"})) == (False, ((1, 2), 2))
    with pytest.raises(IllFormedForm) as err:
        d_F(form(H2, 2, {(1, 2): "x1"}))
    assert (err.value.subset, err.value.j) == ((1, 2), 2)


def test_lie_derivative_examples():
    assert lie_derivative(FoliatedKForm(1, {(1,): H1.h(1)}, H1), 1).is_zero()
    assert lie_derivative(form(H1, 1, {(1,): "x1"}), 1) == form(H1, 1, {(1,): "-x1"})
    b = FoliatedKForm(2, {(1, 2): H2.h(1) * H2.h(2)}, H2)
    assert lie_derivative(b, 1).is_zero() and lie_derivative(b, 2).is_zero()


def test_matrix_example():
    assert [m for _, m in basis_forms(0, 2, H1).elements] == [(2, 0), (1, 1), (0, 2)]
    assert [m for _, m in basis_forms(1, 2, H1).elements] == [(2, 0), (1, 1), (0, 2)]
    M = assemble_matrix(0, 2, H1)
    assert M.to_dense() == [[Scalar(-2), 0, 0], [0, 0, 0], [0, 0, Scalar(2)]]
    assert M.rank() == 2
    top = assemble_matrix(1, 3, H1)
    assert top.nrows == 0 and top.ncols == len(basis_forms(1, 3, H1))


def test_bad_subsets_rejected():
    with pytest.raises(ValueError):
        FoliatedKForm(1, {(2,): P(H1, "x1")}, H1)
    with pytest.raises(ValueError):
        FoliatedKForm(2, {(2, 1): P(H2, "x1 x2")}, H2)


def test_d_squared_and_closure_properties(rng):
    count = 0
    while count < 500:
        for kinds in WILLIAMSON_TYPES:
            B = WilliamsonBasis.from_kinds(kinds)
            k = rng.randint(0, B.n)
            a = random_form(rng, B, k, 8)
            assert check_well_defined(a)[0]
            da = d_F(a)
            assert check_well_defined(da)[0]
            assert d_F(da).is_zero()
            assert da == d_oracle(a)
            count += 1


def test_differential_preserves_degree(rng):
    for kinds in WILLIAMSON_TYPES:
        B = WilliamsonBasis.from_kinds(kinds)
        for _ in range(5):
            k = rng.randint(0, B.n - 1)
            a = random_form(rng, B, k, 6)
            for d in range(7):
                part = FoliatedKForm(k, {J: p.homogeneous_part(d) for J, p in a.components.items()}, B)
                da = d_F(part)
                assert all(q.homogeneous_part(d) == q for q in da.components.values())


def test_lie_commutes_with_d(rng):
    for kinds in WILLIAMSON_TYPES:
        B = WilliamsonBasis.from_kinds(kinds)
        for _ in range(5):
            a = random_form(rng, B, rng.randint(0, B.n), 6)
            for i in range(1, B.n + 1):
                assert lie_derivative(d_F(a), i) == d_F(lie_derivative(a, i))


@pytest.mark.parametrize("kinds", [["h"], ["e", "h"], ["ff"], ["ff", "e"], ["e", "h", "h"]])
def test_matrix_self_consistency(kinds):
    B = WilliamsonBasis.from_kinds(kinds)
    for d in range(5):
        for k in range(B.n):
            dom, cod = basis_forms(k, d, B), basis_forms(k + 1, d, B)
            M = assemble_matrix(k, d, B)
            assert (M.nrows, M.ncols) == (len(cod), len(dom))
            for col in range(len(dom)):
                image = d_oracle(dom.form(col))
                assert cod.coordinates(image) == {i: M[i, col] for i in range(M.nrows) if M[i, col]}


def test_graded_basis_spans_admissible_slice():
    B = WilliamsonBasis.from_kinds(["e", "h"])
    gb = basis_forms(1, 2, B)
    assert len(set(gb.elements)) == len(gb)
    assert all(check_well_defined(gb.form(i))[0] for i in range(len(gb)))
    alpha = form(B, 1, {(1,): "x1^2 - 3 x1 y2", (2,): "x2 y2 + I y1 x2"})
    assert gb.to_form(gb.coordinates(alpha)) == alpha
