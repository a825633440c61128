"""Exact arithmetic in K = Q(sqrt(-m)) and its ring of integers.

Elements are stored with exact rational coordinates with respect to
{1, sqrt(-m)}, one representation for every m; coordinates with respect
to the integral basis {1, theta} are available through a helper.  Ideals
of the ring of integers are kept in a canonical lower-triangular Hermite
normal form, so equality is a componentwise comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Sequence


def prime_factors(n: int) -> dict[int, int]:
    """Factor |n| by trial division, returning {prime: exponent}."""
    n = abs(n)
    factors: dict[int, int] = {}
    while n % 2 == 0:
        factors[2] = factors.get(2, 0) + 1
        n //= 2
    p = 3
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def repeated_prime(n: int) -> int | None:
    """The smallest prime whose square divides n, or None if n is squarefree."""
    for p, e in sorted(prime_factors(n).items()):
        if e >= 2:
            return p
    return None


def squarefree_part(n: int) -> int:
    """The squarefree part f of n > 0, i.e. n = g*g*f with f squarefree."""
    if n <= 0:
        raise ValueError(f"squarefree_part requires a positive integer, got {n}")
    f = 1
    for p, e in prime_factors(n).items():
        if e % 2 == 1:
            f *= p
    return f


def squarefree_divisors(d_K: int) -> list[int]:
    """All positive squarefree divisors of |d_K|, ascending.

    Their number is 2**nu with nu the number of distinct primes of d_K.
    """
    if d_K == 0:
        raise ValueError("discriminant must be nonzero")
    primes = sorted(prime_factors(d_K))
    divisors = [1]
    for p in primes:
        divisors += [d * p for d in divisors]
    return sorted(divisors)


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


_RationalLike = int | Fraction


class KElement:
    """x + y*sqrt(-m) with exact rational x, y."""

    __slots__ = ("m", "x", "y")

    def __init__(self, m: int, x: _RationalLike, y: _RationalLike) -> None:
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "x", Fraction(x))
        object.__setattr__(self, "y", Fraction(y))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("KElement is immutable")

    def __repr__(self) -> str:
        return f"KElement(m={self.m}, {self.x!s}, {self.y!s})"

    def __str__(self) -> str:
        return f"{self.x} + {self.y}*sqrt(-{self.m})"

    def _coerce(self, other: object) -> "KElement | None":
        if isinstance(other, KElement):
            if other.m != self.m:
                raise ValueError(f"mixed fields: m={self.m} vs m={other.m}")
            return other
        if isinstance(other, (int, Fraction)):
            return KElement(self.m, other, 0)
        return None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.y == 0 and self.x == other
        if isinstance(other, KElement):
            return self.m == other.m and self.x == other.x and self.y == other.y
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.m, self.x, self.y))

    def __add__(self, other: object) -> "KElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return KElement(self.m, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __sub__(self, other: object) -> "KElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return KElement(self.m, self.x - o.x, self.y - o.y)

    def __rsub__(self, other: object) -> "KElement":
        return (-self) + other

    def __neg__(self) -> "KElement":
        return KElement(self.m, -self.x, -self.y)

    def __mul__(self, other: object) -> "KElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return KElement(
            self.m,
            self.x * o.x - self.m * self.y * o.y,
            self.x * o.y + self.y * o.x,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "KElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def conjugate(self) -> "KElement":
        return KElement(self.m, self.x, -self.y)

    def norm(self) -> Fraction:
        """z * conj(z) = x*x + m*y*y, a nonnegative rational."""
        return self.x * self.x + self.m * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def inverse(self) -> "KElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in K")
        return KElement(self.m, self.x / n, -self.y / n)

    def theta_coords(self) -> tuple[Fraction, Fraction]:
        """Coordinates (a, b) with self = a + b*theta for the integral basis."""
        if self.m % 4 == 3:
            return self.x - self.y, 2 * self.y
        return self.x, self.y

    def is_integral(self) -> bool:
        """Whether self lies in the ring of integers Z + Z*theta."""
        a, b = self.theta_coords()
        return a.denominator == 1 and b.denominator == 1


@dataclass(frozen=True)
class FieldParams:
    """Invariants of K = Q(sqrt(-m)): discriminant and integral generators."""

    m: int
    d_K: int
    theta: KElement
    omega: KElement

    @property
    def theta_trace(self) -> int:
        return 1 if self.m % 4 == 3 else 0

    @property
    def theta_norm(self) -> int:
        return (1 + self.m) // 4 if self.m % 4 == 3 else self.m

    @property
    def norm_omega(self) -> int:
        return self.m * self.m + self.m

    def element(self, x: _RationalLike, y: _RationalLike) -> KElement:
        return KElement(self.m, x, y)

    def integer(self, n: _RationalLike) -> KElement:
        return KElement(self.m, n, 0)

    def from_theta_coords(self, a: _RationalLike, b: _RationalLike) -> KElement:
        a, b = Fraction(a), Fraction(b)
        if self.m % 4 == 3:
            return KElement(self.m, a + b / 2, b / 2)
        return KElement(self.m, a, b)


def units_of(params: FieldParams) -> tuple[KElement, ...]:
    """The unit group of the ring of integers: {+-1}, plus i for m=1, six for m=3."""
    one = params.integer(1)
    if params.m == 1:
        return (one, -one, params.element(0, 1), params.element(0, -1))
    if params.m == 3:
        units = [one]
        for _ in range(5):
            units.append(units[-1] * params.theta)
        return tuple(units)
    return (one, -one)


@lru_cache(maxsize=None)
def field_params(m: int) -> FieldParams:
    """Validated field data for K = Q(sqrt(-m)); m must be squarefree and >= 1."""
    if m <= 0:
        raise ValueError(f"m must be a positive integer, got {m}")
    p = repeated_prime(m)
    if p is not None:
        raise ValueError(f"m must be squarefree, but {p}**2 divides {m}")
    if m % 4 == 3:
        d_K = -m
        theta = KElement(m, Fraction(1, 2), Fraction(1, 2))
    else:
        d_K = -4 * m
        theta = KElement(m, 0, 1)
    omega = KElement(m, m, 1)
    return FieldParams(m=m, d_K=d_K, theta=theta, omega=omega)


def _hnf_from_pairs(pairs: Iterable[tuple[int, int]]) -> tuple[int, int, int]:
    """Canonical HNF (h11, h21, h22) of the Z-module spanned by integer pairs.

    The module is Z*(h11 + h21*theta) + Z*(h22*theta) in basis coordinates,
    normalized so h11, h22 > 0 and 0 <= h21 < h22 for a full-rank module.
    Degenerate spans return (h11, h21, 0) or (0, 0, h22) or (0, 0, 0).
    """
    g = 0
    t = 0
    residual = 0
    for u, v in pairs:
        if u == 0:
            residual = gcd(residual, v)
            continue
        if g == 0:
            g, t = (u, v) if u > 0 else (-u, -v)
            continue
        gg, s, c = _extended_gcd(g, u)
        residual = gcd(residual, (g * v - u * t) // gg)
        g, t = gg, s * t + c * v
    if g == 0:
        return (0, 0, abs(residual))
    if residual == 0:
        return (g, t, 0)
    residual = abs(residual)
    return (g, t % residual, residual)


class IdealHNF:
    """An ideal of the ring of integers as a canonical triangular Z-basis.

    The basis matrix is lower triangular; its columns are the coordinates of
    the two Z-generators with respect to {1, theta}.  Canonicity makes
    equality a field-by-field comparison, and |det| is the ideal norm.
    """

    __slots__ = ("m", "_h")

    def __init__(self, m: int, basis: Sequence[Sequence[int]]) -> None:
        (a, z), (b, c) = basis
        if z != 0:
            raise ValueError("ideal basis must be lower triangular")
        if (a, b, c) == (0, 0, 0):
            object.__setattr__(self, "m", m)
            object.__setattr__(self, "_h", (0, 0, 0))
            return
        if a <= 0 or c <= 0 or not 0 <= b < c:
            raise ValueError("ideal basis is not in canonical HNF")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "_h", (a, b, c))
        params = field_params(m)
        for gen in (params.from_theta_coords(a, b), params.from_theta_coords(0, c)):
            prod = params.theta * gen
            if not self._contains_coords(*prod.theta_coords()):
                raise ValueError("Z-module is not closed under theta, not an ideal")

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("IdealHNF is immutable")

    @classmethod
    def _raw(cls, m: int, h: tuple[int, int, int]) -> "IdealHNF":
        ideal = object.__new__(cls)
        object.__setattr__(ideal, "m", m)
        object.__setattr__(ideal, "_h", h)
        return ideal

    @classmethod
    def zero(cls, params: FieldParams) -> "IdealHNF":
        return cls._raw(params.m, (0, 0, 0))

    @classmethod
    def unit(cls, params: FieldParams) -> "IdealHNF":
        return cls._raw(params.m, (1, 0, 1))

    @classmethod
    def from_generators(cls, params: FieldParams, gens: Iterable[KElement]) -> "IdealHNF":
        """Canonical HNF of the O_K-module generated by the given integers."""
        pairs: list[tuple[int, int]] = []
        for z in gens:
            if z.m != params.m:
                raise ValueError(f"mixed fields: m={params.m} vs m={z.m}")
            if not z.is_integral():
                raise ValueError(f"ideal generator {z} is not integral")
            for w in (z, params.theta * z):
                a, b = w.theta_coords()
                pairs.append((int(a), int(b)))
        h = _hnf_from_pairs(pairs)
        if h == (0, 0, 0):
            return cls.zero(params)
        if h[0] == 0 or h[2] == 0:
            raise AssertionError("theta-closed nonzero module must have full rank")
        return cls._raw(params.m, h)

    @classmethod
    def principal(cls, params: FieldParams, z: KElement) -> "IdealHNF":
        return cls.from_generators(params, [z])

    @property
    def basis(self) -> tuple[tuple[int, int], tuple[int, int]]:
        a, b, c = self._h
        return ((a, 0), (b, c))

    def is_zero(self) -> bool:
        return self._h == (0, 0, 0)

    def norm(self) -> int:
        a, _, c = self._h
        return a * c

    def _contains_coords(self, a: Fraction, b: Fraction) -> bool:
        h11, h21, h22 = self._h
        if h11 == 0:
            return a == 0 and b == 0
        x = a / h11
        if x.denominator != 1:
            return False
        y = (b - x * h21) / h22
        return y.denominator == 1

    def contains(self, z: KElement) -> bool:
        if z.m != self.m:
            raise ValueError(f"mixed fields: m={self.m} vs m={z.m}")
        if not z.is_integral():
            return False
        return self._contains_coords(*z.theta_coords())

    def generators(self) -> tuple[KElement, KElement]:
        params = field_params(self.m)
        a, b, c = self._h
        return params.from_theta_coords(a, b), params.from_theta_coords(0, c)

    def __mul__(self, other: object) -> "IdealHNF":
        if not isinstance(other, IdealHNF):
            return NotImplemented
        if other.m != self.m:
            raise ValueError(f"mixed fields: m={self.m} vs m={other.m}")
        if self.is_zero() or other.is_zero():
            return IdealHNF._raw(self.m, (0, 0, 0))
        params = field_params(self.m)
        g1, g2 = self.generators()
        h1, h2 = other.generators()
        return IdealHNF.from_generators(params, [g1 * h1, g1 * h2, g2 * h1, g2 * h2])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IdealHNF):
            return NotImplemented
        return self.m == other.m and self._h == other._h

    def __hash__(self) -> int:
        return hash((self.m, self._h))

    def __repr__(self) -> str:
        return f"IdealHNF(m={self.m}, basis={self.basis})"


def ideal_from_generators(params: FieldParams, gens: Iterable[KElement]) -> IdealHNF:
    return IdealHNF.from_generators(params, gens)


def perfect_square_root(n: int) -> int | None:
    """Exact integer square root of n, or None when n is not a perfect square."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def fraction_square_root(q: Fraction) -> Fraction | None:
    """Exact nonnegative rational square root of q, or None."""
    num = perfect_square_root(q.numerator)
    if num is None:
        return None
    den = perfect_square_root(q.denominator)
    if den is None:
        return None
    return Fraction(num, den)
