"""Deterministic generation of group elements for property checks.

Random sampling walks products of elementary matrices (exact, seeded), and
the exhaustive enumerator walks every integral 2x2 matrix whose entries have
basis coordinates within a height bound, bucketing by integer determinant.
The determinant scan runs on raw integer coordinate pairs so the full
height-2 sweep (about 4*10**5 matrices) stays fast.
"""

from __future__ import annotations

from random import Random
from typing import Iterator

from .field import FieldParams, KElement, units_of
from .involutions import atkin_lehner
from .matrices import ExtendedMatrix

Coord = tuple[int, int]
MatrixCoords = tuple[Coord, Coord, Coord, Coord]


def random_integral_element(rng: Random, params: FieldParams, height: int = 2) -> KElement:
    a = rng.randint(-height, height)
    b = rng.randint(-height, height)
    return params.from_theta_coords(a, b)


def random_unimodular(
    rng: Random, params: FieldParams, length: int = 4, height: int = 2
) -> ExtendedMatrix:
    """A random element of SL2(O_K) as a word in elementary matrices."""
    zero, one = params.integer(0), params.integer(1)
    result = ExtendedMatrix.identity(params.m)
    flip = ExtendedMatrix(1, ((zero, -one), (one, zero)))
    for _ in range(length):
        z = random_integral_element(rng, params, height)
        if rng.random() < 0.5:
            step = ExtendedMatrix(1, ((one, z), (zero, one)))
        else:
            step = ExtendedMatrix(1, ((one, zero), (z, one)))
        result = result * step
        if rng.random() < 0.25:
            result = result * flip
    return result


def random_coset_element(
    rng: Random, params: FieldParams, d: int, length: int = 3, height: int = 2
) -> ExtendedMatrix:
    """A random element of the coset Gamma_K * V_d."""
    left = random_unimodular(rng, params, length, height)
    right = random_unimodular(rng, params, length, height)
    return left * atkin_lehner(params, d) * right


def random_ambient_element(
    rng: Random, params: FieldParams, max_d: int = 8, length: int = 2, height: int = 2
) -> ExtendedMatrix:
    """A random (1/sqrt(d))*M with M integral of determinant d, d <= max_d.

    Sandwiching diag(d, 1) between unimodular words reaches elements far
    outside the maximal discrete extension (their entry ideal is the unit
    ideal), including non-squarefree d that canonicalization reduces.
    """
    d = rng.randint(1, max_d)
    left = random_unimodular(rng, params, length, height)
    right = random_unimodular(rng, params, length, height)
    scale = ExtendedMatrix.from_integral(
        d, ((params.integer(d), params.integer(0)), (params.integer(0), params.integer(1)))
    )
    return left * scale * right


def random_zero_corner_element(
    rng: Random, params: FieldParams, f: int = 1, height: int = 2
) -> ExtendedMatrix:
    """An ambient element whose upper-left entry is exactly zero.

    Any such element is (1/sqrt(f)) * [[0, b], [c, d]] with -b*c = f; this
    samples b = -u over the units, which forces c = f*conj(u), and leaves
    d free.
    """
    u = rng.choice(units_of(params))
    z = random_integral_element(rng, params, height)
    rows = ((params.integer(0), -u), (u.conjugate() * f, z))
    return ExtendedMatrix.from_integral(f, rows)


def _coordinate_products(params: FieldParams, height: int) -> tuple[list[Coord], list[list[Coord]]]:
    span = range(-height, height + 1)
    entries = [(a, b) for a in span for b in span]
    t, n = params.theta_trace, params.theta_norm
    table: list[list[Coord]] = []
    for a1, b1 in entries:
        row: list[Coord] = []
        for a2, b2 in entries:
            # (a1 + b1*theta)(a2 + b2*theta) with theta**2 = t*theta - n
            row.append((a1 * a2 - n * b1 * b2, a1 * b2 + b1 * a2 + t * b1 * b2))
        table.append(row)
    return entries, table


def integral_matrices_with_det(
    params: FieldParams, height: int, wanted: set[int]
) -> Iterator[tuple[int, MatrixCoords]]:
    """All integral matrices with basis coordinates in [-height, height] and
    integer determinant in `wanted`, yielded as (det, coordinate 4-tuple)."""
    entries, table = _coordinate_products(params, height)
    count = len(entries)
    pairs = [(i, j) for i in range(count) for j in range(count)]
    for i1, i4 in pairs:
        px, py = table[i1][i4]
        for i2, i3 in pairs:
            qx, qy = table[i2][i3]
            if py == qy and (px - qx) in wanted:
                yield px - qx, (entries[i1], entries[i2], entries[i3], entries[i4])


def matrix_from_coords(params: FieldParams, coords: MatrixCoords, det: int) -> ExtendedMatrix:
    e = [params.from_theta_coords(a, b) for a, b in coords]
    return ExtendedMatrix.from_integral(det, ((e[0], e[1]), (e[2], e[3])))
