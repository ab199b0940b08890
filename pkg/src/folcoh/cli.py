"""``folcoh`` command line: JSON job specs in, JSON results out.

Exit codes: 0 success, 1 invalid spec, 2 precondition violated (or oracle
mismatch for ``cohomology``), 3 nonzero self-verification residual.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import tempfile
from dataclasses import dataclass, field

import jsonschema

from . import cohomology as coh
from .decompose import DeformationCochain, NotACocycle, decompose, solve_deformation
from .foliated import FoliatedKForm, IllFormedForm, d_F
from .io import components_from_json, form_to_json, subset_key
from .kostant import ConnectionPotential, NotFlat, flat_section, nabla_residual
from .polyring import PolynomialSyntaxError, format_polynomial, parse_polynomial
from .regular import (
    NotClosedRegular,
    RegularFoliatedForm,
    RegularModel,
    d_F_regular,
    homotopy_identity_check,
    primitive_regular,
)
from .sampling import random_form, random_invariant_form
from .williamson import WilliamsonBasis

log = logging.getLogger("folcoh")

EXIT_OK, EXIT_INVALID, EXIT_PRECONDITION, EXIT_RESIDUAL = 0, 1, 2, 3

_TYPE = {
    "oneOf": [
        {"type": "array", "items": {"enum": ["e", "h", "ff"]}, "minItems": 1},
        {
            "type": "object",
            "properties": {"blocks": {"type": "array", "items": {"enum": ["e", "h", "ff"]}, "minItems": 1}},
            "required": ["blocks"],
        },
    ]
}
_INTS = {"oneOf": [{"type": "integer", "minimum": 0}, {"type": "array", "items": {"type": "integer", "minimum": 0}}]}
_MODEL = {
    "type": "object",
    "properties": {"m": {"type": "integer", "minimum": 1}, "n": {"type": "integer", "minimum": 1}},
    "required": ["m", "n"],
}
_FORM = {
    "type": "object",
    "properties": {
        "k": {"type": "integer", "minimum": 0},
        "components": {"type": "object", "additionalProperties": {"type": "string"}},
    },
    "required": ["k", "components"],
}

SCHEMAS = {
    "cohomology": {
        "type": "object",
        "properties": {
            "type": _TYPE,
            "k": _INTS,
            "d": _INTS,
            "d_max": {"type": "integer", "minimum": 0},
            "oracle": {"type": "boolean"},
            "generators": {"type": "boolean"},
            "checks": {"type": "integer", "minimum": 0},
        },
        "required": ["type"],
    },
    "decompose": {
        "type": "object",
        "properties": {"type": _TYPE, "block": {"type": "integer", "minimum": 1}, "f": {"type": "string"}},
        "required": ["type", "block", "f"],
    },
    "deformation": {
        "type": "object",
        "properties": {"type": _TYPE, "g": {"type": "array", "items": {"type": "string"}, "minItems": 1}},
        "required": ["type", "g"],
    },
    "primitive": {
        "type": "object",
        "properties": {"model": _MODEL, "form": _FORM},
        "required": ["model", "form"],
    },
    "homotopy-check": {
        "type": "object",
        "properties": {"model": _MODEL, "form": _FORM},
        "required": ["model", "form"],
    },
    "kostant-flat": {
        "type": "object",
        "properties": {"model": _MODEL, "potential": _FORM, "truncation": {"type": "integer", "minimum": 0}},
        "required": ["model", "potential", "truncation"],
    },
}


class JobError(Exception):
    def __init__(self, code: int, message: str, detail: dict | None = None):
        super().__init__(message)
        self.code = code
        self.detail = detail or {}


@dataclass
class JobSpec:
    command: str
    payload: dict
    seed: int = 0
    out: str | None = None
    extras: dict = field(default_factory=dict)

    def validate(self):
        try:
            jsonschema.validate(self.payload, SCHEMAS[self.command])
        except jsonschema.ValidationError as exc:
            where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
            raise JobError(EXIT_INVALID, f"invalid spec at {where}: {exc.message}") from None


def _basis(payload) -> WilliamsonBasis:
    t = payload["type"]
    kinds = t["blocks"] if isinstance(t, dict) else t
    return WilliamsonBasis.from_kinds(kinds)


def _model(payload) -> RegularModel:
    try:
        return RegularModel(payload["model"]["m"], payload["model"]["n"])
    except ValueError as exc:
        raise JobError(EXIT_INVALID, f"invalid spec at model: {exc}") from None


def _poly(coords, text, where):
    try:
        return parse_polynomial(coords, text)
    except (PolynomialSyntaxError, KeyError, ZeroDivisionError) as exc:
        raise JobError(EXIT_INVALID, f"invalid spec at {where}: {exc}") from None


def _regular_form(model, payload, where) -> RegularFoliatedForm:
    try:
        k, comps = components_from_json(payload, model.coords)
        return RegularFoliatedForm(k, comps, model)
    except (PolynomialSyntaxError, KeyError, ValueError, ZeroDivisionError) as exc:
        raise JobError(EXIT_INVALID, f"invalid spec at {where}: {exc}") from None


def _as_list(v):
    return [v] if isinstance(v, int) else list(v)


def run_cohomology(spec: JobSpec) -> dict:
    p = spec.payload
    B = _basis(p)
    oracle = p.get("oracle")
    if oracle and B.k_f:
        raise JobError(EXIT_INVALID, "no oracle for k_f>0")
    ks = _as_list(p["k"]) if "k" in p else list(range(B.n + 1))
    if any(k > B.n for k in ks):
        raise JobError(EXIT_INVALID, f"invalid spec at k: form degree above n={B.n}")
    if "d" in p:
        ds = _as_list(p["d"])
    else:
        ds = list(range(p.get("d_max", 4) + 1))
    report = coh.cohomology_report(B, ks, ds, oracle=oracle, generators=p.get("generators", True))
    rng = random.Random(spec.seed)
    checks = []
    for sl in report.slices:
        for _ in range(p.get("checks", 0)):
            checks.append(_normal_form_check(rng, B, sl.k, sl.d))
    body = report.to_json()
    body["normalFormChecks"] = len(checks)
    if not all(checks):
        raise JobError(EXIT_RESIDUAL, "normal form split failed to reconstruct", body)
    bad = [s for s in report.slices if s.oracle_ok is False or not s.generators_independent]
    if bad:
        raise JobError(EXIT_PRECONDITION, f"oracle mismatch at (k, d) = {[(s.k, s.d) for s in bad]}", body)
    return body


def _normal_form_check(rng, B, k, d) -> bool:
    """Random closed form in slice (k, d): split it and compare with the linear solve."""
    beta0 = FoliatedKForm(k, {J: p.homogeneous_part(d) for J, p in random_invariant_form(rng, B, k).components.items()}, B)
    alpha = beta0
    if k >= 1:
        z = random_form(rng, B, k - 1, max_degree=d)
        z = FoliatedKForm(k - 1, {J: p.homogeneous_part(d) for J, p in z.components.items()}, B)
        alpha = alpha + d_F(z)
    split = coh.normal_form_split(alpha)
    recon = split.beta if split.zeta is None else split.beta + d_F(split.zeta)
    exact, _ = coh.is_exact(alpha)
    return recon == alpha and exact == split.beta.is_zero()


def run_decompose(spec: JobSpec) -> dict:
    p = spec.payload
    B = _basis(p)
    i = p["block"]
    if i > B.n:
        raise JobError(EXIT_INVALID, f"invalid spec at block: index above n={B.n}")
    f = _poly(B.coords, p["f"], "f")
    res = decompose(B, i, f)
    residual = f - res.recombine(B)
    kernel_res = B.apply(i, res.kernel_part)
    return {
        "kernel_part": format_polynomial(res.kernel_part),
        "potential": format_polynomial(res.potential),
        "residual": format_polynomial(residual),
        "kernel_residual": format_polynomial(kernel_res),
        "_zero": residual.is_zero() and kernel_res.is_zero(),
    }


def run_deformation(spec: JobSpec) -> dict:
    p = spec.payload
    B = _basis(p)
    if len(p["g"]) > B.n:
        raise JobError(EXIT_INVALID, f"invalid spec at g: more than n={B.n} components")
    gs = [_poly(B.coords, t, f"g/{j}") for j, t in enumerate(p["g"])]
    cochain = DeformationCochain(gs, B)
    try:
        sol = solve_deformation(cochain)
    except NotACocycle as exc:
        raise JobError(EXIT_PRECONDITION, str(exc), {"violating_pair": list(exc.pair)}) from None
    residuals = sol.residuals(cochain)
    basic = [B.apply(j, f) for f in sol.basic_parts for j in range(1, B.n + 1)]
    return {
        "G": format_polynomial(sol.potential),
        "f": [format_polynomial(f) for f in sol.basic_parts],
        "residual": [format_polynomial(r) for r in residuals],
        "_zero": all(r.is_zero() for r in residuals) and all(b.is_zero() for b in basic),
    }


def run_primitive(spec: JobSpec) -> dict:
    model = _model(spec.payload)
    alpha = _regular_form(model, spec.payload["form"], "form")
    if alpha.k < 1:
        raise JobError(EXIT_PRECONDITION, "primitives exist only for forms of degree >= 1")
    try:
        prim = primitive_regular(alpha)
    except NotClosedRegular as exc:
        raise JobError(EXIT_PRECONDITION, str(exc), {"residual": form_to_json(exc.residual)}) from None
    residual = d_F_regular(prim) - alpha
    return {
        "primitive": form_to_json(prim),
        "residual": form_to_json(residual),
        "_zero": residual.is_zero(),
    }


def run_homotopy_check(spec: JobSpec) -> dict:
    model = _model(spec.payload)
    alpha = _regular_form(model, spec.payload["form"], "form")
    residual = homotopy_identity_check(alpha)
    return {"residual": form_to_json(residual), "_zero": residual.is_zero()}


def run_kostant_flat(spec: JobSpec) -> dict:
    model = _model(spec.payload)
    alpha = _regular_form(model, spec.payload["potential"], "potential")
    if alpha.k != 1:
        raise JobError(EXIT_INVALID, "invalid spec at potential/k: a potential is a 1-form")
    D = spec.payload["truncation"]
    try:
        pot = ConnectionPotential(alpha)
    except NotFlat as exc:
        raise JobError(EXIT_PRECONDITION, str(exc), {"residual": form_to_json(exc.residual)}) from None
    r = flat_section(pot, D)
    residual = nabla_residual(r, pot)
    return {
        "coefficient": format_polynomial(r.poly),
        "truncation": D,
        "residual": form_to_json(residual),
        "_zero": residual.is_zero(),
    }


RUNNERS = {
    "cohomology": run_cohomology,
    "decompose": run_decompose,
    "deformation": run_deformation,
    "primitive": run_primitive,
    "homotopy-check": run_homotopy_check,
    "kostant-flat": run_kostant_flat,
}


def execute(spec: JobSpec) -> tuple[int, dict]:
    """Run a job; returns (exit code, result document)."""
    doc = {"command": spec.command, "input": spec.payload, "seed": spec.seed}
    try:
        spec.validate()
        body = RUNNERS[spec.command](spec)
    except JobError as exc:
        doc.update(exc.detail)
        doc.update({"status": "error", "error": str(exc)})
        return exc.code, doc
    except IllFormedForm as exc:
        doc.update({"status": "error", "error": str(exc)})
        return EXIT_PRECONDITION, doc
    ok = body.pop("_zero", True)
    doc.update(body)
    doc["verified"] = ok
    if not ok:
        doc.update({"status": "error", "error": "verification residual is nonzero"})
        return EXIT_RESIDUAL, doc
    doc["status"] = "ok"
    return EXIT_OK, doc


def write_atomic(path: str, doc: dict):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".folcoh-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="folcoh", description="Exact foliated cohomology engine")
    ap.add_argument("command", choices=sorted(RUNNERS))
    ap.add_argument("--spec", required=True, help="job spec (JSON)")
    ap.add_argument("--out", help="result file (JSON); stdout when omitted")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized self-checks")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        with open(args.spec) as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"folcoh: cannot read spec: {exc}", file=sys.stderr)
        return EXIT_INVALID
    code, doc = execute(JobSpec(args.command, payload, args.seed, args.out))
    if args.out:
        write_atomic(args.out, doc)
    else:
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
    if code:
        print(f"folcoh: {doc.get('error')}", file=sys.stderr)
    log.info("%s finished with exit code %d", args.command, code)
    return code


if __name__ == "__main__":
    sys.exit(main())
