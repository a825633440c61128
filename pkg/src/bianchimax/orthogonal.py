"""The Hermitian quadratic space of signature (1,3) and the spin homomorphism.

Hermitian 2x2 matrices H = [[s1, s], [conj(s), s2]] with the determinant as
quadratic form carry a fixed Z-basis

    H1 = diag(1, 0),  H2 = diag(0, 1),  H3 = offdiag(1),  H4 = offdiag(theta),

whose Z-span is the lattice of integral Hermitian matrices.  Conjugation
H -> M H conj(M)^tr by a unit-determinant matrix M = (1/sqrt(f))*A acts on
this basis through exact rational 4x4 matrices (the sqrt(f) cancels); the
map is the 2-to-1 spin homomorphism onto the identity component of the
orthogonal group, with kernel {+-E}.  This module computes that action, the
lattice and dual-lattice automorphism tests, the discriminant kernel test
and the exact inverse (lift) of the homomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .field import (
    FieldParams,
    KElement,
    field_params,
    fraction_square_root,
    squarefree_part,
)
from .matrices import ExtendedMatrix

Vec4 = tuple[Fraction, Fraction, Fraction, Fraction]
Mat4 = tuple[Vec4, Vec4, Vec4, Vec4]


class LiftError(ValueError):
    """Lift failure with the stage that rejected the input."""

    def __init__(self, stage: str, message: str) -> None:
        super().__init__(message)
        self.stage = stage


class HermitianK:
    """[[s1, s], [conj(s), s2]] with rational diagonal and s in K."""

    __slots__ = ("m", "s1", "s2", "s")

    def __init__(self, s1: int | Fraction, s2: int | Fraction, s: KElement) -> None:
        object.__setattr__(self, "m", s.m)
        object.__setattr__(self, "s1", Fraction(s1))
        object.__setattr__(self, "s2", Fraction(s2))
        object.__setattr__(self, "s", s)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("HermitianK is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HermitianK):
            return NotImplemented
        return (self.m, self.s1, self.s2, self.s) == (other.m, other.s1, other.s2, other.s)

    def __hash__(self) -> int:
        return hash((self.m, self.s1, self.s2, self.s))

    def __repr__(self) -> str:
        return f"HermitianK(s1={self.s1!s}, s2={self.s2!s}, s={self.s!s})"

    def q(self) -> Fraction:
        """The quadratic form: det H = s1*s2 - N(s)."""
        return self.s1 * self.s2 - self.s.norm()

    def trace(self) -> Fraction:
        return self.s1 + self.s2

    def coords(self) -> Vec4:
        a, b = self.s.theta_coords()
        return (self.s1, self.s2, a, b)

    @classmethod
    def from_coords(cls, params: FieldParams, v: Vec4) -> "HermitianK":
        return cls(v[0], v[1], params.from_theta_coords(v[2], v[3]))

    def is_integral(self) -> bool:
        """Membership in the lattice of integral Hermitian matrices."""
        return (
            self.s1.denominator == 1
            and self.s2.denominator == 1
            and self.s.is_integral()
        )


def hermitian_basis(params: FieldParams) -> tuple[HermitianK, ...]:
    """The fixed Z-basis (H1, H2, H3, H4) of the integral Hermitian lattice."""
    zero = params.integer(0)
    return (
        HermitianK(1, 0, zero),
        HermitianK(0, 1, zero),
        HermitianK(0, 0, params.integer(1)),
        HermitianK(0, 0, params.theta),
    )


@lru_cache(maxsize=None)
def gram_matrix(m: int) -> Mat4:
    """Polar form of q on the fixed basis; q(v) = v^t G v exactly."""
    params = field_params(m)
    half = Fraction(1, 2)
    t = params.theta_trace
    n = params.theta_norm
    zero = Fraction(0)
    return (
        (zero, half, zero, zero),
        (half, zero, zero, zero),
        (zero, zero, Fraction(-1), -t * half),
        (zero, zero, -t * half, Fraction(-n)),
    )


@dataclass(frozen=True)
class LatticeBasis:
    """The fixed basis together with its Gram matrix."""

    vectors: tuple[HermitianK, ...]
    gram: Mat4

    @classmethod
    def for_field(cls, params: FieldParams) -> "LatticeBasis":
        return cls(vectors=hermitian_basis(params), gram=gram_matrix(params.m))


def _mat_mul(a: Mat4, b: Mat4) -> Mat4:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(4)) for j in range(4))
        for i in range(4)
    )  # type: ignore[return-value]


def _mat_vec(a: Mat4, v: Vec4) -> Vec4:
    return tuple(sum(a[i][k] * v[k] for k in range(4)) for i in range(4))  # type: ignore[return-value]


def _transpose(a: Mat4) -> Mat4:
    return tuple(tuple(a[j][i] for j in range(4)) for i in range(4))  # type: ignore[return-value]


def _identity4() -> Mat4:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(4)) for i in range(4)
    )  # type: ignore[return-value]


def _det4(a: Mat4) -> Fraction:
    rows = [list(r) for r in a]
    det = Fraction(1)
    for col in range(4):
        pivot = next((r for r in range(col, 4) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, 4):
            factor = rows[r][col] * inv
            if factor:
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return det


def _inverse4(a: Mat4) -> Mat4:
    size = 4
    rows = [list(r) + [Fraction(1) if i == j else Fraction(0) for j in range(size)]
            for i, r in enumerate(a)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is singular")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [x * inv for x in rows[col]]
        for r in range(size):
            if r != col and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return tuple(tuple(r[size:]) for r in rows)  # type: ignore[return-value]


class OrthoMap:
    """Exact rational 4x4 matrix acting on fixed-basis coordinates."""

    __slots__ = ("m", "rows")

    def __init__(self, m: int, rows: Mat4) -> None:
        frozen = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if len(frozen) != 4 or any(len(r) != 4 for r in frozen):
            raise ValueError("OrthoMap requires a 4x4 matrix")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "rows", frozen)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("OrthoMap is immutable")

    @classmethod
    def identity(cls, m: int) -> "OrthoMap":
        return cls(m, _identity4())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrthoMap):
            return NotImplemented
        return self.m == other.m and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.m, self.rows))

    def __repr__(self) -> str:
        return f"OrthoMap(m={self.m}, rows={self.rows})"

    def __mul__(self, other: object) -> "OrthoMap":
        if not isinstance(other, OrthoMap):
            return NotImplemented
        if other.m != self.m:
            raise ValueError(f"mixed fields: m={self.m} vs m={other.m}")
        return OrthoMap(self.m, _mat_mul(self.rows, other.rows))

    def inverse(self) -> "OrthoMap":
        return OrthoMap(self.m, _inverse4(self.rows))

    def apply_coords(self, v: Vec4) -> Vec4:
        return _mat_vec(self.rows, tuple(Fraction(x) for x in v))

    def apply(self, h: HermitianK) -> HermitianK:
        if h.m != self.m:
            raise ValueError(f"mixed fields: m={self.m} vs m={h.m}")
        return HermitianK.from_coords(field_params(self.m), self.apply_coords(h.coords()))

    def determinant(self) -> Fraction:
        return _det4(self.rows)

    def is_orthogonal(self) -> bool:
        g = gram_matrix(self.m)
        return _mat_mul(_mat_mul(_transpose(self.rows), g), self.rows) == g

    def maps_positive_cone(self) -> bool:
        """Identity-component test: the image of E = H1 + H2 has positive trace."""
        image_e = self.apply_coords((Fraction(1), Fraction(1), Fraction(0), Fraction(0)))
        return image_e[0] + image_e[1] > 0

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.rows for x in row)


def _conjugate_hermitian(mat: ExtendedMatrix, h: HermitianK) -> HermitianK:
    """A H conj(A)^tr / f for mat = (1/sqrt(f))A, exact over K."""
    a, b, c, d = mat.entries
    params = field_params(mat.m)
    # Rows of H as K-elements: [[s1, s], [conj(s), s2]].
    h11, h12, h21, h22 = params.element(h.s1, 0), h.s, h.s.conjugate(), params.element(h.s2, 0)
    # First M*H, then times conj(M)^tr.
    p11, p12 = a * h11 + b * h21, a * h12 + b * h22
    p21, p22 = c * h11 + d * h21, c * h12 + d * h22
    r11 = p11 * a.conjugate() + p12 * b.conjugate()
    r12 = p11 * c.conjugate() + p12 * d.conjugate()
    r22 = p21 * c.conjugate() + p22 * d.conjugate()
    if r11.y != 0 or r22.y != 0:
        raise AssertionError("conjugated Hermitian matrix has non-real diagonal")
    f = mat.f
    return HermitianK(r11.x / f, r22.x / f, r12 / f)


def spin_map(mat: ExtendedMatrix) -> OrthoMap:
    """The orthogonal action H -> M H conj(M)^tr of M on the fixed basis.

    Columns are the coordinates of the images of H1..H4; the sqrt(f) of the
    canonical form cancels, so all entries are exact rationals.
    """
    params = field_params(mat.m)
    cols = [_conjugate_hermitian(mat, h).coords() for h in hermitian_basis(params)]
    rows = tuple(tuple(cols[j][i] for j in range(4)) for i in range(4))
    return OrthoMap(mat.m, rows)  # type: ignore[arg-type]


def preserves_lattice(phi_map: OrthoMap) -> bool:
    """Whether the map and its inverse both keep integral coordinates integral."""
    return phi_map.is_integral() and phi_map.inverse().is_integral()


@lru_cache(maxsize=None)
def _dual_offdiag_generators(m: int) -> tuple[KElement, KElement]:
    """Z-generators of the off-diagonal part (1/sqrt(d_K)) O_K of the dual lattice.

    sqrt(d_K) = k*sqrt(-m) with k**2 = |d_K|/m, so the set equals
    (sqrt(-m)/(k*m)) O_K inside K.
    """
    params = field_params(m)
    k = isqrt(abs(params.d_K) // m)
    sigma = KElement(m, 0, Fraction(1, k * m))
    return sigma, sigma * params.theta


def dual_basis(params: FieldParams) -> tuple[HermitianK, ...]:
    """A Z-basis of the dual lattice under the trace pairing."""
    zero = params.integer(0)
    sigma1, sigma2 = _dual_offdiag_generators(params.m)
    return (
        HermitianK(1, 0, zero),
        HermitianK(0, 1, zero),
        HermitianK(0, 0, sigma1),
        HermitianK(0, 0, sigma2),
    )


@lru_cache(maxsize=None)
def _dual_coords_inverse(m: int) -> Mat4:
    cols = [h.coords() for h in dual_basis(field_params(m))]
    mat = tuple(tuple(cols[j][i] for j in range(4)) for i in range(4))
    return _inverse4(mat)  # type: ignore[arg-type]


def in_dual_lattice(h: HermitianK) -> bool:
    """Membership in the dual lattice: integral diagonal, s in (1/sqrt(d_K))O_K."""
    v = _mat_vec(_dual_coords_inverse(h.m), h.coords())
    return all(x.denominator == 1 for x in v)


def dual_lattice_index(params: FieldParams) -> int:
    """Index of the integral Hermitian lattice in its dual; equals |d_K|."""
    cols = [h.coords() for h in dual_basis(params)]
    mat = tuple(tuple(cols[j][i] for j in range(4)) for i in range(4))
    det = _det4(mat)  # type: ignore[arg-type]
    index = 1 / abs(det)
    if index.denominator != 1:
        raise AssertionError("dual basis does not contain the lattice")
    return int(index)


def in_discriminant_kernel(phi_map: OrthoMap) -> bool:
    """Whether a lattice automorphism acts as the identity on dual/lattice.

    Checking the generators suffices: the map is linear and dual coordinates
    of lattice vectors are integral.
    """
    if not preserves_lattice(phi_map):
        raise ValueError("discriminant kernel test requires a lattice-preserving map")
    params = field_params(phi_map.m)
    for g in dual_basis(params):
        moved = phi_map.apply(g)
        diff = HermitianK(moved.s1 - g.s1, moved.s2 - g.s2, moved.s - g.s)
        if not diff.is_integral():
            return False
    return True


def k_square_root(z: KElement, allow_denominator_f: bool = True) -> tuple[int, KElement] | None:
    """Solve (x / sqrt(f))**2 = z exactly, f squarefree positive and minimal.

    Writing z = p + q*sqrt(-m) and x = a + b*sqrt(-m), the equations are
    a**2 - m*b**2 = f*p and 2ab = f*q.  For q != 0, N(z) = p**2 + m*q**2 must
    be the square of a rational s, and then a**2 = f*(p + s)/2, which pins f
    down as the squarefree part of (p + s)/2; for q = 0 the same reasoning
    applies to p (rational root) or -p/m (purely imaginary root).  The pair
    (f, x) representing a fixed complex number is unique, so this f is the
    only candidate; the root returned has a > 0, or a = 0 and b > 0.

    With allow_denominator_f=False only f = 1 is accepted (square roots
    inside K itself).
    """
    m, p, q = z.m, z.x, z.y
    if z.is_zero():
        return (1, KElement(m, 0, 0))

    def rational_part_squarefree(value: Fraction) -> int:
        return squarefree_part(value.numerator * value.denominator)

    if q == 0:
        if p > 0:
            f = rational_part_squarefree(p)
            a = fraction_square_root(p * f)
            if a is None:
                raise AssertionError("squarefree scaling must yield a square")
            root = KElement(m, a, 0)
        else:
            f = rational_part_squarefree(-p / m)
            b = fraction_square_root(-p * f / m)
            if b is None:
                raise AssertionError("squarefree scaling must yield a square")
            root = KElement(m, 0, b)
    else:
        s = fraction_square_root(p * p + m * q * q)
        if s is None:
            return None
        f = rational_part_squarefree((p + s) / 2)
        a = fraction_square_root(f * (p + s) / 2)
        if a is None or a == 0:
            return None
        b = f * q / (2 * a)
        root = KElement(m, a, b)
    if (root * root) != KElement(m, f * p, f * q):
        return None
    if not allow_denominator_f and f != 1:
        return None
    return f, root


def _first_entry_sign(mat: ExtendedMatrix) -> int:
    for z in mat.entries:
        if z.x != 0:
            return 1 if z.x > 0 else -1
        if z.y != 0:
            return 1 if z.y > 0 else -1
    return 1


def sign_normalize(mat: ExtendedMatrix) -> ExtendedMatrix:
    """Pick the representative of {M, -M} whose first nonzero entry is positive.

    Positivity of an entry means lexicographic positivity of its rational
    coordinate pair (x, y); scanning is row-major.
    """
    return mat if _first_entry_sign(mat) > 0 else -mat


def _solve_theta_system(params: FieldParams, plain: KElement, twisted: KElement) -> KElement:
    """Solve X + Y = plain, theta*X + conj(theta)*Y = twisted for X."""
    theta = params.theta
    theta_bar = theta.conjugate()
    return (theta_bar * plain - twisted) / (theta_bar - theta)


def _lift_raw(phi_map: OrthoMap, twisted: bool = False) -> ExtendedMatrix:
    params = field_params(phi_map.m)
    basis = hermitian_basis(params)
    image = [phi_map.apply(h) for h in basis]

    alpha_abs2 = image[0].s1
    if alpha_abs2 == 0:
        if twisted:
            raise LiftError("root", "both candidate columns vanish; no lift exists")
        j_mat = ExtendedMatrix.from_integral(
            1,
            (
                (params.integer(0), params.integer(-1)),
                (params.integer(1), params.integer(0)),
            ),
        )
        lifted = _lift_raw(phi_map * spin_map(j_mat), twisted=True)
        return lifted * j_mat.inverse()

    # P(H1) = [[a*conj(a), a*conj(c)], [., c*conj(c)]] for the lifted columns.
    alpha_gamma_bar = image[0].s
    # The (1,1) and (1,2) entries of P(H3), P(H4) give two linear systems with
    # the invertible matrix ((1,1),(theta,conj(theta))).
    alpha_beta_bar = _solve_theta_system(
        params,
        params.element(image[2].s1, 0),
        params.element(image[3].s1, 0),
    )
    alpha_delta_bar = _solve_theta_system(params, image[2].s, image[3].s)

    alpha_sq = (
        KElement(params.m, alpha_abs2, 0) * alpha_delta_bar
        - alpha_beta_bar * alpha_gamma_bar
    )
    root = k_square_root(alpha_sq)
    if root is None:
        raise LiftError("root", "leading entry squared has no root of the form x/sqrt(f)")
    f, x = root
    if x.is_zero():
        raise LiftError("root", "leading entry vanished despite a nonzero norm")
    x_bar = x.conjugate()
    b = (alpha_beta_bar.conjugate() * f) / x_bar
    c = (alpha_gamma_bar.conjugate() * f) / x_bar
    d = (alpha_delta_bar.conjugate() * f) / x_bar
    try:
        return ExtendedMatrix(f, ((x, b), (c, d)))
    except ValueError as exc:
        raise LiftError("verification", f"recovered matrix is inconsistent: {exc}") from exc


def spin_lift(phi_map: OrthoMap) -> ExtendedMatrix:
    """Exact inverse of spin_map, up to the {+-E} kernel ambiguity.

    The images of the basis give back the products a*conj(a), a*conj(b),
    a*conj(c), a*conj(d) of the unknown first entry with all entries; since
    the determinant is 1, a**2 equals (a*conj(a))*(a*conj(d)) minus
    (a*conj(b))*(a*conj(c)), and an exact square root x/sqrt(f) recovers the
    matrix.  A vanishing first entry is routed through multiplication by
    [[0,-1],[1,0]].  The result is sign-normalized and verified by mapping it
    back; failures raise LiftError with the offending stage.
    """
    if not phi_map.is_orthogonal():
        raise LiftError("orthogonality", "matrix does not preserve the quadratic form")
    if phi_map.determinant() != 1:
        raise LiftError("determinant", "matrix has determinant != 1")
    if not phi_map.maps_positive_cone():
        raise LiftError("component", "matrix does not map the positive cone to itself")
    lifted = sign_normalize(_lift_raw(phi_map))
    if spin_map(lifted) != phi_map:
        raise LiftError(
            "verification",
            "orthogonal matrix is rational but not in the image of the spin map",
        )
    return lifted
