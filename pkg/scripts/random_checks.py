#!/usr/bin/env python3
"""Seeded sweep of the exact identities, for runs larger than the test suite.

Each line reports one identity and how many random cases it held on. Exit
status 1 if any case fails; the failing input is printed.
"""

import argparse
import random
import sys

from folcoh.cohomology import is_exact, normal_form_split
from folcoh.decompose import DeformationCochain, decompose, solve_deformation
from folcoh.foliated import d_F
from folcoh.regular import RegularModel, homotopy_identity_check
from folcoh.sampling import WILLIAMSON_TYPES, random_basic, random_form, random_polynomial, random_regular_form
from folcoh.williamson import WilliamsonBasis


def check_d_squared(rng, B):
    a = random_form(rng, B, rng.randint(0, B.n), 8)
    return d_F(d_F(a)).is_zero(), a


def check_round_trip(rng, B):
    f = random_polynomial(rng, B.coords, 8, 6)
    i = rng.randint(1, B.n)
    return decompose(B, i, f).recombine(B) == f, f


def check_deformation(rng, B):
    G = random_polynomial(rng, B.coords, 6, 4)
    c = DeformationCochain([random_basic(rng, B) + B.apply(i, G) for i in range(1, B.n + 1)], B)
    s = solve_deformation(c)
    return all(r.is_zero() for r in s.residuals(c)), c.components


def check_split(rng, B):
    k = rng.randint(1, B.n)
    alpha = d_F(random_form(rng, B, k - 1, 6))
    s = normal_form_split(alpha)
    return s.beta.is_zero() and is_exact(alpha)[0] and s.beta + d_F(s.zeta) == alpha, alpha


CHECKS = {
    "d_F o d_F = 0": check_d_squared,
    "decompose round trip": check_round_trip,
    "deformation reconstruction": check_deformation,
    "exact forms split with beta = 0": check_split,
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--cases", type=int, default=200, help="cases per identity and type")
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)

    failed = False
    for name, fn in CHECKS.items():
        n = 0
        for kinds in WILLIAMSON_TYPES:
            B = WilliamsonBasis.from_kinds(kinds)
            for _ in range(args.cases):
                ok, case = fn(rng, B)
                if not ok:
                    print(f"FAIL {name} on {kinds}: {case}")
                    failed = True
                n += 1
        print(f"{name}: {n} cases")

    n = 0
    for m in range(1, 5):
        for k_leaf in (1, 2):
            if k_leaf > m:
                continue
            model = RegularModel(m, k_leaf)
            for _ in range(args.cases):
                a = random_regular_form(rng, model, rng.randint(0, k_leaf), 8)
                if not homotopy_identity_check(a).is_zero():
                    print(f"FAIL homotopy identity on {model}: {a}")
                    failed = True
                n += 1
    print(f"homotopy identity: {n} cases")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
