"""The group of unit-determinant matrices (1/sqrt(d))*M with M integral over K.

Every element is kept in a canonical form (f, A): f is the positive squarefree
part of d and A = M / sqrt(d/f) has entries in K with det A = f.  Squarefree
parts of positive integers are unique, so two values represent the same
complex matrix exactly when their canonical forms coincide; equality, coset
labels and integrality tests all become componentwise checks.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

from .field import KElement, repeated_prime, squarefree_part

Rows = tuple[tuple[KElement, KElement], tuple[KElement, KElement]]


class ExtendedMatrix:
    """(1/sqrt(f)) * A with f squarefree positive and A over K, det A = f."""

    __slots__ = ("m", "f", "_a")

    def __init__(self, f: int, rows: Sequence[Sequence[KElement]]) -> None:
        (a, b), (c, d) = rows
        m = a.m
        for entry in (b, c, d):
            if entry.m != m:
                raise ValueError(f"mixed fields: m={m} vs m={entry.m}")
        if f <= 0:
            raise ValueError(f"denominator part must be positive, got {f}")
        p = repeated_prime(f)
        if p is not None:
            raise ValueError(f"denominator part must be squarefree, {p}**2 divides {f}")
        det = a * d - b * c
        if det != f:
            raise ValueError(f"det A = {det} but the canonical form requires det A = {f}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "_a", (a, b, c, d))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ExtendedMatrix is immutable")

    @classmethod
    def _raw(cls, m: int, f: int, entries: tuple[KElement, ...]) -> "ExtendedMatrix":
        mat = object.__new__(cls)
        object.__setattr__(mat, "m", m)
        object.__setattr__(mat, "f", f)
        object.__setattr__(mat, "_a", entries)
        return mat

    @classmethod
    def from_integral(cls, d: int, rows: Sequence[Sequence[KElement]]) -> "ExtendedMatrix":
        """Canonicalize (1/sqrt(d))*M for an integral matrix M with det M = d."""
        if d <= 0:
            raise ValueError(f"d must be a positive integer, got {d}")
        (a, b), (c, d22) = rows
        for entry in (a, b, c, d22):
            if not entry.is_integral():
                raise ValueError(f"matrix entry {entry} is not integral")
        det = a * d22 - b * c
        if det != d:
            raise ValueError(f"det M = {det} does not match d = {d}")
        f = squarefree_part(d)
        g = isqrt(d // f)
        if g == 1:
            return cls(f, rows)
        return cls(f, ((a / g, b / g), (c / g, d22 / g)))

    @classmethod
    def identity(cls, m: int) -> "ExtendedMatrix":
        one = KElement(m, 1, 0)
        zero = KElement(m, 0, 0)
        return cls._raw(m, 1, (one, zero, zero, one))

    @property
    def rows(self) -> Rows:
        a, b, c, d = self._a
        return ((a, b), (c, d))

    @property
    def entries(self) -> tuple[KElement, KElement, KElement, KElement]:
        return self._a

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExtendedMatrix):
            return NotImplemented
        return self.m == other.m and self.f == other.f and self._a == other._a

    def __hash__(self) -> int:
        return hash((self.m, self.f, self._a))

    def __repr__(self) -> str:
        a, b, c, d = self._a
        return f"ExtendedMatrix(m={self.m}, f={self.f}, [[{a}, {b}], [{c}, {d}]])"

    def __mul__(self, other: object) -> "ExtendedMatrix":
        if not isinstance(other, ExtendedMatrix):
            return NotImplemented
        if other.m != self.m:
            raise ValueError(f"mixed fields: m={self.m} vs m={other.m}")
        a, b, c, d = self._a
        e, f_, g_, h = other._a
        prod = (a * e + b * g_, a * f_ + b * h, c * e + d * g_, c * f_ + d * h)
        common = gcd(self.f, other.f)
        new_f = (self.f * other.f) // (common * common)
        if common == 1:
            return ExtendedMatrix._raw(self.m, new_f, prod)
        return ExtendedMatrix._raw(self.m, new_f, tuple(z / common for z in prod))

    def inverse(self) -> "ExtendedMatrix":
        a, b, c, d = self._a
        return ExtendedMatrix._raw(self.m, self.f, (d, -b, -c, a))

    def __neg__(self) -> "ExtendedMatrix":
        return ExtendedMatrix._raw(self.m, self.f, tuple(-z for z in self._a))

    def is_integral(self) -> bool:
        """Membership in SL2 of the ring of integers: f = 1 and integral entries."""
        return self.f == 1 and all(z.is_integral() for z in self._a)

    def denominator_scale(self) -> int:
        """Least g > 0 such that g*A is integral."""
        scale = 1
        for z in self._a:
            a, b = z.theta_coords()
            scale = scale * a.denominator // gcd(scale, a.denominator)
            scale = scale * b.denominator // gcd(scale, b.denominator)
        return scale

    def integral_representative(self) -> tuple[int, tuple[KElement, ...]]:
        """(d, entries of M) with M = g*A integral and det M = d = g*g*f minimal."""
        g = self.denominator_scale()
        return g * g * self.f, tuple(z * g for z in self._a)


def min_poly_over_q(z: KElement, f: int) -> list[Fraction]:
    """Monic minimal polynomial of z / sqrt(f) over Q, leading coefficient first.

    The element lives in the biquadratic field Q(sqrt(f), sqrt(-m)); the degree
    is 1 (rational), 2 (a quadratic subfield) or 4.  With z = p + q*sqrt(-m):

    * f = 1: t - p, or t**2 - 2p t + (p**2 + m q**2);
    * f > 1, q = 0: t, or t**2 - p**2/f;
    * f > 1, p = 0: t**2 + m q**2 / f;
    * f > 1, p, q != 0: t**4 - 2u t**2 + (u**2 + m v**2) with
      u = (p**2 - m q**2)/f and v = 2pq/f, the product of (t - s) over the
      four conjugates (+-p +- q*sqrt(-m))/sqrt(f), irreducible because the
      element avoids all three quadratic subfields.
    """
    if f <= 0 or repeated_prime(f) is not None:
        raise ValueError(f"f must be a positive squarefree integer, got {f}")
    p, q = z.x, z.y
    m = z.m
    if f == 1:
        if q == 0:
            return [Fraction(1), -p]
        return [Fraction(1), -2 * p, p * p + m * q * q]
    if q == 0:
        if p == 0:
            return [Fraction(1), Fraction(0)]
        return [Fraction(1), Fraction(0), -p * p / f]
    if p == 0:
        return [Fraction(1), Fraction(0), m * q * q / f]
    u = (p * p - m * q * q) / f
    v = 2 * p * q / f
    return [Fraction(1), Fraction(0), -2 * u, Fraction(0), u * u + m * v * v]


def is_algebraic_integer(z: KElement, f: int) -> bool:
    """Whether z / sqrt(f) has an integer-coefficient minimal polynomial."""
    return all(c.denominator == 1 for c in min_poly_over_q(z, f))
