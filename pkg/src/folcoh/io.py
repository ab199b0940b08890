"""JSON payloads for polynomials, foliated forms and models."""

from __future__ import annotations

from .polyring import CoordinateSystem, Polynomial, format_polynomial, parse_polynomial

__all__ = ["subset_key", "parse_subset", "form_to_json", "components_from_json"]


def subset_key(J) -> str:
    return ",".join(str(j) for j in J)


def parse_subset(key: str) -> tuple[int, ...]:
    key = key.strip()
    if not key:
        return ()
    J = tuple(int(t) for t in key.split(","))
    if list(J) != sorted(set(J)):
        raise ValueError(f"subset {key!r} must list increasing indices")
    return J


def form_to_json(form) -> dict:
    return {
        "k": form.k,
        "components": {subset_key(J): format_polynomial(p) for J, p in sorted(form.components.items())},
    }


def components_from_json(payload: dict, coords: CoordinateSystem) -> tuple[int, dict]:
    k = int(payload["k"])
    comps = {}
    for key, text in payload.get("components", {}).items():
        comps[parse_subset(key)] = parse_polynomial(coords, text)
    return k, comps
