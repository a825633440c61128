"""Atkin-Lehner involutions and the maximal discrete extension of SL2(O_K).

For each positive squarefree divisor d of |d_K| there is an involution

    V_d = (1/sqrt(d)) * [[u*d, v*omega], [conj(omega), d]],

where omega = m + sqrt(-m) and u*d - v*N(omega)/d = 1.  The coset Gamma_K*V_d
does not depend on the Bezout pair, the cosets multiply like squarefree
divisors under d*e/gcd(d,e)**2, and their union over all such d is the
maximal discrete extension of SL2(O_K) inside SL2(C).

Membership is decided by an ideal criterion on the minimal integral
representative B of an element: the O_K-ideal generated by the entries of B
must square to the principal ideal generated by det B.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .field import (
    FieldParams,
    IdealHNF,
    field_params,
    repeated_prime,
    squarefree_divisors,
)
from .matrices import ExtendedMatrix


@dataclass(frozen=True)
class BezoutPair:
    """Integers (u, v) with u*d - v*(N(omega)/d) = 1 for a fixed divisor d."""

    u: int
    v: int


def _check_divisor(params: FieldParams, d: int) -> None:
    if d <= 0:
        raise ValueError(f"d must be positive, got {d}")
    p = repeated_prime(d)
    if p is not None:
        raise ValueError(f"d must be squarefree, {p}**2 divides {d}")
    if abs(params.d_K) % d != 0:
        raise ValueError(f"d = {d} does not divide |d_K| = {abs(params.d_K)}")


def bezout_pair(params: FieldParams, d: int, shift: int = 0) -> BezoutPair:
    """Solve u*d - v*(N(omega)/d) = 1, normalized to 0 < u <= N(omega)/d.

    All solutions are (u + t*n, v + t*d) with n = N(omega)/d; shift selects the
    t-th one past the canonical representative, so shift = 0 is reproducible
    and shifts > 0 supply alternative pairs for well-definedness checks.
    """
    _check_divisor(params, d)
    n = params.norm_omega // d
    if gcd(d, n) != 1:
        raise AssertionError(f"gcd(d, N(omega)/d) = {gcd(d, n)} != 1 for d = {d}")
    # u is the inverse of d mod n, lifted from [0, n) to (0, n].
    u = pow(d % n, -1, n) if n > 1 else 0
    if u == 0:
        u = n
    v = (u * d - 1) // n
    return BezoutPair(u=u + shift * n, v=v + shift * d)


def atkin_lehner(params: FieldParams, d: int, pair: BezoutPair | None = None) -> ExtendedMatrix:
    """The involution V_d in canonical form, built from the given Bezout pair."""
    if pair is None:
        pair = bezout_pair(params, d)
    else:
        _check_divisor(params, d)
    omega = params.omega
    rows = (
        (params.integer(pair.u * d), omega * pair.v),
        (omega.conjugate(), params.integer(d)),
    )
    mat = ExtendedMatrix.from_integral(d, rows)
    if mat.f != d:
        raise AssertionError(f"V_{d} canonicalized to denominator {mat.f}")
    return mat


def in_maximal_extension(mat: ExtendedMatrix) -> bool:
    """Ideal-content membership test for the maximal discrete extension.

    With B = g*A the minimal integral representative (det B = g*g*f), the
    element belongs to the extension exactly when the ideal generated by the
    entries of B squares to the principal ideal of det B.  Both sides scale by
    the square of any extra integer factor, so the minimal representative is
    as good as any.
    """
    params = field_params(mat.m)
    det_b, entries = mat.integral_representative()
    content = IdealHNF.from_generators(params, entries)
    return content * content == IdealHNF.principal(params, params.integer(det_b))


def classify_coset(mat: ExtendedMatrix) -> int:
    """The divisor d with mat in Gamma_K * V_d; requires membership.

    The canonical squarefree denominator f is the coset label: multiplying an
    integral unit-determinant matrix into V_d keeps denominator d.  The result
    is double-checked by verifying that mat * V_f**-1 is integral.
    """
    if not in_maximal_extension(mat):
        raise ValueError("matrix is not in the maximal discrete extension")
    params = field_params(mat.m)
    label = mat.f
    if abs(params.d_K) % label != 0:
        raise AssertionError(f"canonical denominator {label} does not divide |d_K|")
    if not (mat * atkin_lehner(params, label).inverse()).is_integral():
        raise AssertionError(f"member with denominator {label} is not in coset {label}")
    return label


def coset_law(d: int, e: int) -> int:
    """Coset product label d*e/gcd(d,e)**2, the symmetric difference of supports."""
    g = gcd(d, e)
    return d * e // (g * g)


def extension_index(params: FieldParams) -> int:
    """Index of SL2(O_K) in its maximal discrete extension: 2**nu."""
    return len(squarefree_divisors(params.d_K))


def factor_group_table(params: FieldParams) -> tuple[list[int], list[list[int]]]:
    """Cayley table of the coset labels under coset_law."""
    labels = squarefree_divisors(params.d_K)
    table = [[coset_law(d, e) for e in labels] for d in labels]
    return labels, table
