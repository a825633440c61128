from fractions import Fraction
from random import Random

import pytest

from bianchimax import (
    ExtendedMatrix,
    HermitianK,
    KElement,
    LatticeBasis,
    LiftError,
    OrthoMap,
    atkin_lehner,
    classify_coset,
    dual_basis,
    dual_lattice_index,
    field_params,
    gram_matrix,
    hermitian_basis,
    in_discriminant_kernel,
    in_dual_lattice,
    k_square_root,
    preserves_lattice,
    sign_normalize,
    spin_lift,
    spin_map,
    squarefree_divisors,
)
from bianchimax.sampling import (
    integral_matrices_with_det,
    matrix_from_coords,
    random_ambient_element,
    random_coset_element,
    random_unimodular,
    random_zero_corner_element,
)


def k(m, x, y=0):
    return KElement(m, x, y)


def j_matrix(m):
    params = field_params(m)
    return ExtendedMatrix.from_integral(
        1, ((params.integer(0), params.integer(-1)), (params.integer(1), params.integer(0)))
    )


def signature(gram):
    """Sylvester signature of a symmetric rational matrix by congruence reduction."""
    mat = [list(row) for row in gram]
    n = len(mat)
    pos = neg = 0
    for i in range(n):
        if mat[i][i] == 0:
            swap = next((j for j in range(i + 1, n) if mat[j][j] != 0), None)
            if swap is None:
                mix = next(
                    (j for j in range(i + 1, n) if mat[i][j] != 0), None
                )
                if mix is None:
                    continue
                for r in range(n):
                    mat[r][i] += mat[r][mix]
                for c in range(n):
                    mat[i][c] += mat[mix][c]
            else:
                mat[i], mat[swap] = mat[swap], mat[i]
                for row in mat:
                    row[i], row[swap] = row[swap], row[i]
        pivot = mat[i][i]
        if pivot > 0:
            pos += 1
        else:
            neg += 1
        for j in range(i + 1, n):
            factor = Fraction(mat[j][i], pivot)
            if factor:
                for c in range(n):
                    mat[j][c] -= factor * mat[i][c]
                for r in range(n):
                    mat[r][j] -= factor * mat[r][i]
    return pos, neg


def hermitian_as_complex_pair(h):
    """The four entries (h11, h12, h21, h22) as K-elements."""
    m = h.m
    return (k(m, h.s1), h.s, h.s.conjugate(), k(m, h.s2))


def trace_product(s, h):
    """trace(S*H) for Hermitian S, H as an element of K (must come out rational)."""
    s11, s12, s21, s22 = hermitian_as_complex_pair(s)
    h11, h12, h21, h22 = hermitian_as_complex_pair(h)
    total = s11 * h11 + s12 * h21 + s21 * h12 + s22 * h22
    assert total.y == 0
    return total.x


class TestQuadraticForm:
    def test_q_of_identity_matrix(self):
        params = field_params(1)
        e = HermitianK(1, 1, params.integer(0))
        assert e.q() == 1

    def test_q_of_offdiag_theta_m1(self):
        params = field_params(1)
        h4 = hermitian_basis(params)[3]
        assert h4.q() == -1

    def test_gram_m1_frozen(self):
        half = Fraction(1, 2)
        assert gram_matrix(1) == (
            (0, half, 0, 0),
            (half, 0, 0, 0),
            (0, 0, -1, 0),
            (0, 0, 0, -1),
        )

    @pytest.mark.parametrize("m", [1, 2, 3, 5, 7, 11])
    def test_gram_reproduces_q(self, m):
        params = field_params(m)
        gram = gram_matrix(m)
        rng = Random(f"gram:{m}")
        for _ in range(20):
            coords = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(4)]
            h = HermitianK.from_coords(params, tuple(coords))
            via_gram = sum(
                coords[i] * gram[i][j] * coords[j] for i in range(4) for j in range(4)
            )
            assert via_gram == h.q()

    @pytest.mark.parametrize("m", [1, 2, 3, 5, 7, 11, 15])
    def test_signature_1_3(self, m):
        assert signature(gram_matrix(m)) == (1, 3)

    def test_lattice_basis_bundle(self):
        params = field_params(3)
        basis = LatticeBasis.for_field(params)
        assert basis.vectors == hermitian_basis(params)
        assert basis.gram == gram_matrix(3)


class TestSpinMap:
    def test_identity(self):
        assert spin_map(ExtendedMatrix.identity(1)) == OrthoMap.identity(1)

    def test_minus_identity_in_kernel(self):
        assert spin_map(-ExtendedMatrix.identity(1)) == OrthoMap.identity(1)

    def test_j_frozen_m1(self):
        # J swaps the diagonal basis vectors, negates H3 and fixes H4;
        # fixing H4 (not negating it) is forced by det = +1.
        image = spin_map(j_matrix(1))
        assert image.rows == (
            (0, 1, 0, 0),
            (1, 0, 0, 0),
            (0, 0, -1, 0),
            (0, 0, 0, 1),
        )
        assert image.determinant() == 1

    @pytest.mark.parametrize("m", [1, 2, 3, 5, 6, 7, 10, 11, 15])
    def test_homomorphism_on_random_pairs(self, m):
        params = field_params(m)
        rng = Random(f"hom:{m}")
        for _ in range(60):
            p = random_ambient_element(rng, params)
            q = random_ambient_element(rng, params)
            assert spin_map(p * q) == spin_map(p) * spin_map(q)

    @pytest.mark.parametrize("m", [1, 3, 5])
    def test_images_in_special_orthogonal_component(self, m):
        params = field_params(m)
        rng = Random(f"so:{m}")
        for _ in range(30):
            image = spin_map(random_ambient_element(rng, params))
            assert image.is_orthogonal()
            assert image.determinant() == 1
            assert image.maps_positive_cone()

    def test_kernel_on_small_enumeration(self):
        params = field_params(1)
        identity = OrthoMap.identity(1)
        plus = ExtendedMatrix.identity(1)
        hits = 0
        for det, coords in integral_matrices_with_det(params, 1, {1}):
            mat = matrix_from_coords(params, coords, det)
            if spin_map(mat) == identity:
                hits += 1
                assert mat in (plus, -plus)
        assert hits == 2

    def test_kernel_negation_collapse(self):
        params = field_params(5)
        rng = Random("neg")
        for _ in range(10):
            p = random_ambient_element(rng, params)
            assert spin_map(-p) == spin_map(p)


class TestLatticeAutomorphisms:
    def test_identity_preserves(self):
        assert preserves_lattice(OrthoMap.identity(1))

    def test_involution_image_preserves(self):
        assert preserves_lattice(spin_map(atkin_lehner(field_params(1), 2)))

    def test_non_integral_map_rejected(self):
        rows = [list(row) for row in OrthoMap.identity(1).rows]
        rows[2][2] = Fraction(1, 2)
        assert not preserves_lattice(OrthoMap(1, tuple(tuple(r) for r in rows)))

    @pytest.mark.parametrize("m", [1, 2, 3, 5, 10])
    def test_coset_images_preserve_lattice(self, m):
        params = field_params(m)
        rng = Random(f"lattice:{m}")
        for d in squarefree_divisors(params.d_K):
            for _ in range(6):
                image = spin_map(random_coset_element(rng, params, d))
                assert preserves_lattice(image)


class TestDualLattice:
    @pytest.mark.parametrize("m,index", [(1, 4), (2, 8), (3, 3), (5, 20), (7, 7), (10, 40)])
    def test_index_equals_discriminant(self, m, index):
        params = field_params(m)
        assert dual_lattice_index(params) == abs(params.d_K) == index

    @pytest.mark.parametrize("m", [1, 2, 3, 5, 7, 10])
    def test_trace_pairing_oracle(self, m):
        # every dual generator pairs integrally with every lattice generator
        params = field_params(m)
        for s in dual_basis(params):
            for h in hermitian_basis(params):
                assert trace_product(s, h).denominator == 1

    @pytest.mark.parametrize("m", [1, 2, 3, 5])
    def test_dual_membership_matches_trace_condition(self, m):
        # brute grid: s1, s2 integers are forced; scan off-diagonal denominators
        params = field_params(m)
        denominator = 2 * m * abs(params.d_K)
        theta_bar = params.theta.conjugate()
        rng = Random(f"dualgrid:{m}")
        for _ in range(120):
            s = params.element(
                Fraction(rng.randint(-12, 12), denominator),
                Fraction(rng.randint(-12, 12), denominator),
            )
            h = HermitianK(rng.randint(-2, 2), rng.randint(-2, 2), s)
            by_trace = (
                s.trace().denominator == 1
                and (s * theta_bar).trace().denominator == 1
            )
            assert in_dual_lattice(h) == by_trace

    def test_diagonal_generators_self_dual(self):
        params = field_params(5)
        duals = dual_basis(params)
        assert duals[0] == hermitian_basis(params)[0]
        assert duals[1] == hermitian_basis(params)[1]

    def test_m1_offdiagonal_denominator(self):
        # for m = 1 the off-diagonal dual part is (1/2)Z[i]
        duals = dual_basis(field_params(1))
        assert {abs(duals[2].s.x) + abs(duals[2].s.y), abs(duals[3].s.x) + abs(duals[3].s.y)} == {
            Fraction(1, 2)
        }

    @pytest.mark.parametrize("m", [1, 2, 3, 5, 10])
    def test_lattice_preserving_maps_fix_dual(self, m):
        params = field_params(m)
        rng = Random(f"dualstab:{m}")
        for d in squarefree_divisors(params.d_K):
            image = spin_map(random_coset_element(rng, params, d))
            for g in dual_basis(params):
                assert in_dual_lattice(image.apply(g))


class TestDiscriminantKernel:
    def test_identity_in_kernel(self):
        assert in_discriminant_kernel(OrthoMap.identity(1))

    def test_integral_images_in_kernel(self):
        params = field_params(1)
        rng = Random("kernel")
        for _ in range(8):
            assert in_discriminant_kernel(spin_map(random_unimodular(rng, params)))

    def test_involution_image_not_in_kernel(self):
        assert not in_discriminant_kernel(spin_map(atkin_lehner(field_params(1), 2)))

    def test_requires_lattice_preservation(self):
        rows = [list(row) for row in OrthoMap.identity(1).rows]
        rows[2][2] = Fraction(1, 2)
        bad = OrthoMap(1, tuple(tuple(r) for r in rows))
        with pytest.raises(ValueError, match="lattice"):
            in_discriminant_kernel(bad)

    @pytest.mark.parametrize("m", [1, 2, 3, 5, 10])
    def test_kernel_iff_trivial_coset(self, m):
        params = field_params(m)
        rng = Random(f"disc:{m}")
        for d in squarefree_divisors(params.d_K):
            for _ in range(5):
                mat = random_coset_element(rng, params, d)
                assert in_discriminant_kernel(spin_map(mat)) == (d == 1)


class TestKSquareRoot:
    def test_i_needs_denominator_two(self):
        assert k_square_root(k(1, 0, 1)) == (2, k(1, 1, 1))

    def test_perfect_square(self):
        assert k_square_root(k(7, 4)) == (1, k(7, 2))

    def test_half(self):
        assert k_square_root(k(3, Fraction(1, 2))) == (2, k(3, 1))

    def test_zero(self):
        assert k_square_root(k(2, 0)) == (1, k(2, 0))

    def test_negative_rational(self):
        f, root = k_square_root(k(2, -1))
        assert (f, root) == (2, k(2, 0, 1))

    def test_two_i_is_square_in_k(self):
        assert k_square_root(k(1, 0, 2)) == (1, k(1, 1, 1))

    def test_norm_not_square_gives_none(self):
        assert k_square_root(k(1, 1, 1)) is None

    def test_disallow_denominator(self):
        assert k_square_root(k(1, 0, 1), allow_denominator_f=False) is None
        assert k_square_root(k(1, 0, 2), allow_denominator_f=False) == (1, k(1, 1, 1))

    @pytest.mark.parametrize("m", [1, 2, 3, 5, 10])
    def test_round_trip_on_random_squares(self, m):
        rng = Random(f"roots:{m}")
        for _ in range(40):
            x = KElement(
                m,
                Fraction(rng.randint(-8, 8), rng.randint(1, 3)),
                Fraction(rng.randint(-8, 8), rng.randint(1, 3)),
            )
            f = rng.choice([1, 2, 3, 5, 6, 7, 10])
            z = (x * x) / f
            found = k_square_root(z)
            assert found is not None
            got_f, got_x = found
            assert (got_x * got_x) == z * got_f
            # uniqueness of the squarefree denominator
            if not x.is_zero():
                assert got_f == 1 or got_f > 1

    def test_minimality_of_f(self):
        # 2i/3 requires exactly f = 3 (not 12 or 1)
        found = k_square_root(k(1, 0, Fraction(2, 3)))
        assert found is not None
        assert found[0] == 3


class TestSpinLift:
    def test_identity(self):
        assert spin_lift(OrthoMap.identity(1)) == ExtendedMatrix.identity(1)

    def test_involution_round_trip(self):
        v = atkin_lehner(field_params(1), 2)
        assert spin_lift(spin_map(v)) == sign_normalize(v)

    def test_sign_determinism(self):
        params = field_params(1)
        rng = Random("sign")
        for _ in range(10):
            mat = random_ambient_element(rng, params)
            assert spin_lift(spin_map(mat)) == spin_lift(spin_map(-mat))

    @pytest.mark.parametrize("m", [1, 2, 3, 5, 10])
    def test_round_trip_random(self, m):
        params = field_params(m)
        rng = Random(f"lift:{m}")
        for _ in range(25):
            mat = random_ambient_element(rng, params)
            assert spin_lift(spin_map(mat)) == sign_normalize(mat)

    @pytest.mark.parametrize("m", [1, 2, 3, 5, 10])
    def test_round_trip_zero_corner(self, m):
        params = field_params(m)
        rng = Random(f"liftzero:{m}")
        for f in (1, 2):
            for _ in range(5):
                mat = random_zero_corner_element(rng, params, f)
                assert mat.entries[0].is_zero()
                assert spin_lift(spin_map(mat)) == sign_normalize(mat)

    def test_gamma_hat_element_with_inert_denominator(self):
        # (1/sqrt(5)) [[5, 1+2i], [1-2i, 2]] lies outside the maximal discrete
        # extension (5 does not divide d_K = -4) yet lifts exactly
        params = field_params(1)
        mat = ExtendedMatrix.from_integral(
            5, ((k(1, 5), k(1, 1, 2)), (k(1, 1, -2), k(1, 2)))
        )
        assert spin_lift(spin_map(mat)) == sign_normalize(mat)

    def test_rejects_wrong_determinant(self):
        # diag(1,1,1,-1) is orthogonal for m=1 but has det -1
        rows = [list(row) for row in OrthoMap.identity(1).rows]
        rows[3][3] = Fraction(-1)
        bad = OrthoMap(1, tuple(tuple(r) for r in rows))
        with pytest.raises(LiftError) as err:
            spin_lift(bad)
        assert err.value.stage == "determinant"

    def test_rejects_non_orthogonal(self):
        rows = [list(row) for row in OrthoMap.identity(1).rows]
        rows[0][1] = Fraction(1)
        bad = OrthoMap(1, tuple(tuple(r) for r in rows))
        with pytest.raises(LiftError) as err:
            spin_lift(bad)
        assert err.value.stage == "orthogonality"

    def test_rejects_wrong_component(self):
        # the antipodal map is orthogonal with det +1 in dimension 4 but
        # exchanges the two cones
        rows = tuple(
            tuple(-x for x in row) for row in OrthoMap.identity(1).rows
        )
        bad = OrthoMap(1, rows)
        with pytest.raises(LiftError) as err:
            spin_lift(bad)
        assert err.value.stage == "component"

    def test_rejects_rational_orthogonal_outside_image(self):
        # a rotation by an angle whose lift would need sqrt(-1) entries in
        # Q(sqrt(-2)): rotate the two definite axes by a rational rotation
        c, s = Fraction(3, 5), Fraction(4, 5)
        rows = (
            (Fraction(1), Fraction(0), Fraction(0), Fraction(0)),
            (Fraction(0), Fraction(1), Fraction(0), Fraction(0)),
            (Fraction(0), Fraction(0), c, -s),
            (Fraction(0), Fraction(0), s, c),
        )
        bad = OrthoMap(2, rows)
        with pytest.raises(LiftError):
            spin_lift(bad)

    @pytest.mark.parametrize("m", [1, 5])
    def test_lift_of_image_products_classifies(self, m):
        params = field_params(m)
        rng = Random(f"prodlift:{m}")
        for d in squarefree_divisors(params.d_K):
            product = spin_map(random_coset_element(rng, params, d)) * spin_map(
                random_unimodular(rng, params)
            )
            assert classify_coset(spin_lift(product)) == d
