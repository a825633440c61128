"""Bit-exact JSON forms for field elements, matrices and orthogonal maps.

Rationals are strings "p/q" in lowest terms with q > 0, plain "p" for
integers; a field element is a pair [x, y] meaning x + y*sqrt(-m); matrices
are row-major.  parse(print(value)) == value holds exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .field import KElement, field_params
from .matrices import ExtendedMatrix
from .orthogonal import HermitianK, OrthoMap


def fraction_to_str(q: Fraction) -> str:
    return str(q)


def fraction_from_str(text: str) -> Fraction:
    if not isinstance(text, str):
        raise ValueError(f"expected a rational string, got {text!r}")
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid rational string {text!r}") from exc
    return value


def kelement_to_json(z: KElement) -> list[str]:
    return [fraction_to_str(z.x), fraction_to_str(z.y)]


def kelement_from_json(m: int, obj: Any) -> KElement:
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise ValueError(f"field element must be a pair of rational strings, got {obj!r}")
    return KElement(m, fraction_from_str(obj[0]), fraction_from_str(obj[1]))


def matrix_to_json(mat: ExtendedMatrix) -> dict[str, Any]:
    (a, b), (c, d) = mat.rows
    return {
        "m": mat.m,
        "f": mat.f,
        "A": [[kelement_to_json(a), kelement_to_json(b)],
              [kelement_to_json(c), kelement_to_json(d)]],
    }


def matrix_from_json(obj: Any) -> ExtendedMatrix:
    if not isinstance(obj, dict):
        raise ValueError("matrix JSON must be an object")
    for key in ("m", "f", "A"):
        if key not in obj:
            raise ValueError(f"matrix JSON is missing key {key!r}")
    m, f, rows = obj["m"], obj["f"], obj["A"]
    if not isinstance(m, int) or not isinstance(f, int):
        raise ValueError("matrix JSON keys 'm' and 'f' must be integers")
    field_params(m)  # validates m
    if not isinstance(rows, list) or len(rows) != 2 or any(
        not isinstance(r, list) or len(r) != 2 for r in rows
    ):
        raise ValueError("matrix JSON key 'A' must be a 2x2 array")
    entries = tuple(kelement_from_json(m, rows[i][j]) for i in range(2) for j in range(2))
    return ExtendedMatrix(f, ((entries[0], entries[1]), (entries[2], entries[3])))


def orthomap_to_json(phi_map: OrthoMap) -> dict[str, Any]:
    return {
        "m": phi_map.m,
        "P": [fraction_to_str(x) for row in phi_map.rows for x in row],
    }


def orthomap_from_json(obj: Any) -> OrthoMap:
    if not isinstance(obj, dict):
        raise ValueError("orthogonal map JSON must be an object")
    for key in ("m", "P"):
        if key not in obj:
            raise ValueError(f"orthogonal map JSON is missing key {key!r}")
    m, flat = obj["m"], obj["P"]
    if not isinstance(m, int):
        raise ValueError("orthogonal map JSON key 'm' must be an integer")
    field_params(m)
    if not isinstance(flat, list) or len(flat) != 16:
        raise ValueError("orthogonal map JSON key 'P' must hold 16 rational strings")
    values = [fraction_from_str(x) for x in flat]
    rows = tuple(tuple(values[4 * i + j] for j in range(4)) for i in range(4))
    return OrthoMap(m, rows)  # type: ignore[arg-type]


def hermitian_to_json(h: HermitianK) -> dict[str, Any]:
    return {
        "m": h.m,
        "s1": fraction_to_str(h.s1),
        "s2": fraction_to_str(h.s2),
        "s": kelement_to_json(h.s),
    }


def hermitian_from_json(obj: Any) -> HermitianK:
    if not isinstance(obj, dict):
        raise ValueError("Hermitian JSON must be an object")
    for key in ("m", "s1", "s2", "s"):
        if key not in obj:
            raise ValueError(f"Hermitian JSON is missing key {key!r}")
    m = obj["m"]
    if not isinstance(m, int):
        raise ValueError("Hermitian JSON key 'm' must be an integer")
    field_params(m)
    return HermitianK(
        fraction_from_str(obj["s1"]),
        fraction_from_str(obj["s2"]),
        kelement_from_json(m, obj["s"]),
    )
