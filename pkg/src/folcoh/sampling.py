"""Seeded random generators for polynomials and forms (test and script tooling)."""

from __future__ import annotations

import random
from itertools import combinations

from .foliated import FoliatedKForm
from .polyring import CoordinateSystem, Polynomial
from .regular import RegularFoliatedForm, RegularModel
from .scalar import Scalar
from .williamson import WilliamsonBasis


def random_scalar(rng: random.Random, gaussian: bool = False, bound: int = 5) -> Scalar:
    def q():
        return Scalar(f"{rng.randint(-bound, bound)}/{rng.randint(1, 3)}").re

    return Scalar(q(), q() if gaussian else 0)


def random_monomial(rng: random.Random, nvars: int, degree: int) -> tuple:
    exps = [0] * nvars
    for _ in range(degree):
        exps[rng.randrange(nvars)] += 1
    return tuple(exps)


def random_polynomial(
    rng: random.Random,
    coords: CoordinateSystem,
    max_degree: int = 8,
    max_terms: int = 6,
    gaussian: bool = False,
    degree: int | None = None,
    min_terms: int = 0,
) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(min_terms, max(max_terms, min_terms))):
        d = degree if degree is not None else rng.randint(0, max_degree)
        c = random_scalar(rng, gaussian)
        while min_terms and not c:
            c = random_scalar(rng, gaussian)
        terms[random_monomial(rng, coords.size, d)] = c
    return Polynomial(coords, terms)


def _factor_into_sigma(rng, basis: WilliamsonBasis, J, p: Polynomial) -> Polynomial:
    # multiply by one coordinate of each Sigma_j so the component vanishes there
    coords = basis.coords
    for j in J:
        idx = basis.sigma_indices(j)
        if not all(any(m[t] for t in idx) for m in p.terms):
            p = p * Polynomial.var(coords, rng.choice(idx))
    return p


def random_form(
    rng: random.Random, basis: WilliamsonBasis, k: int, max_degree: int = 8, max_terms: int = 4
) -> FoliatedKForm:
    """A random nonzero well-defined k-form with component degrees at most ``max_degree``."""
    comps = {}
    subsets = list(combinations(range(1, basis.n + 1), k))
    keep = rng.choice(subsets)
    for J in subsets:
        if J != keep and rng.random() < 0.3:
            continue
        p = random_polynomial(rng, basis.coords, max(max_degree - k, 0), max_terms, min_terms=1)
        comps[J] = _factor_into_sigma(rng, basis, J, p)
    return FoliatedKForm(k, comps, basis)


def random_invariant_form(rng: random.Random, basis: WilliamsonBasis, k: int, max_h_degree: int = 3) -> FoliatedKForm:
    """Random combination of admissible forms with components in the h's."""
    from .cohomology import invariant_forms

    acc = FoliatedKForm.zero(k, basis)
    for d in range(0, 2 * max_h_degree + 1, 2):
        for g in invariant_forms(basis, k, d):
            if rng.random() < 0.3:
                acc = acc + g.scale(random_scalar(rng))
    return acc


def random_basic(rng: random.Random, basis: WilliamsonBasis, max_h_degree: int = 3, max_terms: int = 3) -> Polynomial:
    acc = Polynomial.zero(basis.coords)
    hs = [basis.h(i) for i in range(1, basis.n + 1)]
    for _ in range(rng.randint(0, max_terms)):
        f = Polynomial.constant(basis.coords, random_scalar(rng))
        for _ in range(rng.randint(0, max_h_degree)):
            f = f * rng.choice(hs)
        acc = acc + f
    return acc


def random_regular_form(
    rng: random.Random, model: RegularModel, k: int, max_degree: int = 8, max_terms: int = 4
) -> RegularFoliatedForm:
    comps = {}
    for J in combinations(range(1, model.n + 1), k):
        comps[J] = random_polynomial(rng, model.coords, max_degree, max_terms, min_terms=1)
    return RegularFoliatedForm(k, comps, model)


WILLIAMSON_TYPES = [
    kinds
    for n in (1, 2, 3)
    for kinds in (
        [["e"] * a + ["h"] * (n - a) for a in range(n + 1)]
        + ([["ff"] + ["e"] * a + ["h"] * (n - 2 - a) for a in range(n - 1)] if n >= 2 else [])
    )
]
