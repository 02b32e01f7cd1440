"""Matsuo products, the Frobenius form, Gram data, critical values."""

import random
from fractions import Fraction

import pytest

from matsuo.algebra import (
    AlgebraVector,
    adjacency_minimal_polynomial,
    axis_product,
    bareiss_det_int_poly,
    critical_values,
    eigenvalue_multiplicity,
    frobenius_value,
    gram,
    gram_det,
    radical_dim,
    vec_product,
    _det_via_spectrum,
)
from matsuo.closure import ScalarMode
from matsuo.fischer import build_named_space
from matsuo.scalars import EtaPoly, EtaScalar, square_free_part

SYM = ScalarMode.symbolic()
ONE = SYM.one()
HALF = SYM.half_eta()

SMALL_SPACES = [
    ("A", 4), ("W2A", 3), ("W2A", 4), ("W3A", 3), ("W3A", 4),
    ("W2D", 3), ("W3D", 2), ("W3D", 3), ("WrA4", 2), ("Wr3x3", 2), ("Wr3p2", 2),
]


def _rand_vec(sp, rng, width=3):
    vec = {}
    for _ in range(width):
        p = rng.randrange(len(sp.points))
        c = rng.randint(-3, 3)
        if c:
            vec[p] = vec.get(p, EtaScalar.zero()) + EtaScalar(c)
    return {k: v for k, v in vec.items() if v}


class TestProducts:
    def test_point_idempotent(self):
        sp = build_named_space("A", 3)
        assert axis_product(sp, 0, 0).coeffs == {0: EtaScalar.one()}

    def test_orthogonal_points_annihilate(self):
        sp = build_named_space("A", 4)
        b12 = sp.point_of_label("b(1,2)")
        b34 = sp.point_of_label("b(3,4)")
        assert axis_product(sp, b12, b34).is_zero()

    def test_line_product_formula(self):
        sp = build_named_space("A", 4)
        b12 = sp.point_of_label("b(1,2)")
        b13 = sp.point_of_label("b(1,3)")
        b23 = sp.point_of_label("b(2,3)")
        prod = axis_product(sp, b12, b13)
        assert prod.coeffs == {b12: HALF, b13: HALF, b23: -HALF}

    def test_double_axis_idempotent(self):
        sp = build_named_space("A", 4)
        x = {sp.point_of_label("b(1,2)"): ONE, sp.point_of_label("b(3,4)"): ONE}
        assert vec_product(sp, x, x, HALF) == x

    def test_sum_of_orthogonals_annihilates_third(self):
        sp = build_named_space("A", 10)
        a = sp.point_of_label("b(1,2)")
        b = sp.point_of_label("b(3,4)")
        c = sp.point_of_label("b(5,6)")
        lhs = vec_product(sp, {a: ONE, b: ONE}, {c: ONE}, HALF)
        assert lhs == {}

    def test_commutativity_randomized(self):
        sp = build_named_space("W3A", 3)
        rng = random.Random(7)
        for _ in range(25):
            u, v = _rand_vec(sp, rng), _rand_vec(sp, rng)
            assert vec_product(sp, u, v, HALF) == vec_product(sp, v, u, HALF)

    def test_bilinearity(self):
        sp = build_named_space("W3A", 3)
        rng = random.Random(11)
        alpha = EtaScalar(EtaPoly((1, 2)), 3)
        for _ in range(10):
            u, v, w = (_rand_vec(sp, rng) for _ in range(3))
            scaled = {k: alpha * c for k, c in v.items()}
            lhs = vec_product(sp, u, _vec_add(scaled, w), HALF)
            rhs = _vec_add(
                {k: alpha * c for k, c in vec_product(sp, u, v, HALF).items()},
                vec_product(sp, u, w, HALF),
            )
            assert lhs == rhs

    def test_vector_space_mismatch(self):
        sp1 = build_named_space("A", 3)
        sp2 = build_named_space("A", 4)
        u = AlgebraVector.from_point(sp1, 0)
        v = AlgebraVector.from_point(sp2, 0)
        with pytest.raises(ValueError):
            _ = u * v


def _vec_add(u, v):
    out = dict(u)
    for k, c in v.items():
        cur = out.get(k)
        new = c if cur is None else cur + c
        if new:
            out[k] = new
        elif cur is not None:
            del out[k]
    return out


class TestFrobenius:
    def test_basis_values(self):
        sp = build_named_space("A", 4)
        b12 = sp.point_of_label("b(1,2)")
        b13 = sp.point_of_label("b(1,3)")
        b34 = sp.point_of_label("b(3,4)")
        form = lambda u, v: frobenius_value(sp, u, v, HALF, ONE)
        assert form({b12: ONE}, {b12: ONE}) == ONE
        assert form({b12: ONE}, {b13: ONE}) == HALF
        assert form({b12: ONE}, {b34: ONE}) == EtaScalar.zero()

    def test_associativity_on_a_line(self):
        sp = build_named_space("A", 3)
        a, b, c = ({i: ONE} for i in range(3))
        ab = vec_product(sp, a, b, HALF)
        bc = vec_product(sp, b, c, HALF)
        lhs = frobenius_value(sp, ab, c, HALF, ONE)
        rhs = frobenius_value(sp, a, bc, HALF, ONE)
        assert lhs == rhs

    @pytest.mark.parametrize("family,n", [("W3A", 3), ("W2D", 3), ("WrA4", 2)])
    def test_associativity_randomized(self, family, n):
        sp = build_named_space(family, n)
        rng = random.Random(hash((family, n)) & 0xFFFF)
        for _ in range(12):
            u, v, w = (_rand_vec(sp, rng) for _ in range(3))
            uv = vec_product(sp, u, v, HALF)
            vw = vec_product(sp, v, w, HALF)
            assert frobenius_value(sp, uv, w, HALF, ONE) == frobenius_value(
                sp, u, vw, HALF, ONE
            )


class TestGram:
    def test_single_point(self):
        sp = build_named_space("A", 3)
        # restrict attention to the determinant of the one-line space below;
        # a space with a single point arises from W2D at n = 2 (no lines)
        nolines = build_named_space("W2D", 2)
        data = gram(nolines)
        assert data.det == EtaPoly.one()
        cv = critical_values(nolines)
        assert cv.roots == frozenset() and cv.certificate.degree <= 1

    def test_one_line_det(self):
        sp = build_named_space("A", 3)
        det = gram_det(sp)
        # det(2I + eta A) for a triangle, cleared to primitive form
        assert det == EtaPoly((4, 0, -3, 1))
        cv = critical_values(sp)
        assert cv.roots == frozenset({Fraction(-1), Fraction(2)})

    def test_matrix_shape(self):
        sp = build_named_space("W3A", 3)
        m = gram(sp).matrix
        n = len(sp.points)
        for i in range(n):
            assert m[i][i] == ONE
            for j in range(n):
                assert m[i][j] == m[j][i]
                if i != j:
                    assert m[i][j] in (EtaScalar.zero(), HALF)

    @pytest.mark.parametrize("family,n", SMALL_SPACES)
    def test_bareiss_matches_spectral(self, family, n):
        sp = build_named_space(family, n)
        assert gram_det(sp) == _det_via_spectrum(sp).primitive()

    def test_large_space_det_against_integer_determinant(self):
        # the 162-point determinant goes through the spectral route; evaluate
        # it at two rationals and compare with direct integer elimination
        sp = build_named_space("Wr3p2", 4)
        det = gram_det(sp)
        assert det.degree == len(sp.points)
        n = len(sp.points)
        scale = None
        for eta0 in (3, 5):
            matrix = [
                [[2] if i == j else ([eta0] if sp.third[i][j] >= 0 else [])
                 for j in range(n)]
                for i in range(n)
            ]
            exact = Fraction(bareiss_det_int_poly(matrix)[0])
            value = det.evaluate(eta0)
            assert value != 0
            ratio = exact / value  # the content cleared by normalization
            if scale is None:
                scale = ratio
                assert scale > 0
            else:
                assert ratio == scale

    def test_bareiss_helper(self):
        # det [[eta, 1], [1, eta]] = eta^2 - 1
        m = [[[0, 1], [1]], [[1], [0, 1]]]
        assert bareiss_det_int_poly(m) == [-1, 0, 1]

    def test_minimal_polynomial_annihilates(self):
        sp = build_named_space("W3A", 4)
        m = adjacency_minimal_polynomial(sp)
        # apply m(A) to every unit vector through the neighbour lists
        nbrs = [[q for q, r in enumerate(row) if r >= 0] for row in sp.third]
        ints = m.primitive_int_coeffs()
        n = len(nbrs)
        for i in range(n):
            vec = [0] * n
            vec[i] = ints[-1]
            for coeff in reversed(ints[:-1]):
                nxt = [0] * n
                for r, ns in enumerate(nbrs):
                    if vec[r]:
                        for cidx in ns:
                            nxt[cidx] += vec[r]
                nxt[i] += coeff
                vec = nxt
            assert not any(vec)


class TestCriticalValues:
    def test_certificate_is_square_free_part_of_det(self):
        for family, n in [("A", 4), ("W3A", 3), ("W2D", 3), ("WrA4", 2)]:
            sp = build_named_space(family, n)
            cert = critical_values(sp).certificate
            assert cert == square_free_part(gram_det(sp))

    def test_eta_two_critical_for_eta_two_droppers(self):
        for family in ("Wr3x3", "Wr3p2"):
            sp = build_named_space(family, 4)
            assert Fraction(2) in critical_values(sp).roots

    def test_excluded_values_reported_separately(self):
        # the A:4 space has -2 in its adjacency spectrum, so eta = 1 is a
        # determinant root but not a reported critical value
        sp = build_named_space("A", 4)
        cv = critical_values(sp)
        assert Fraction(1) in cv.excluded
        assert Fraction(1) not in cv.roots

    def test_report_schema(self):
        rep = critical_values(build_named_space("A", 3)).report()
        assert set(rep) == {
            "space",
            "det_degree",
            "rational_roots",
            "excluded_parameter_values",
            "squarefree_certificate",
        }


class TestRadical:
    def test_spec_examples(self):
        sp = build_named_space("A", 3)
        assert radical_dim(sp, Fraction(1, 3)) == 0
        assert radical_dim(sp, 2) >= 1
        assert radical_dim(sp, -1) >= 1

    def test_rejects_excluded_eta(self):
        sp = build_named_space("A", 3)
        with pytest.raises(ValueError):
            radical_dim(sp, 0)
        with pytest.raises(ValueError):
            radical_dim(sp, 1)

    @pytest.mark.parametrize("family,n", [("A", 4), ("W3A", 3), ("WrA4", 2)])
    def test_positive_exactly_at_critical_values(self, family, n):
        sp = build_named_space(family, n)
        cv = critical_values(sp)
        for r in cv.roots:
            assert radical_dim(sp, r) > 0
        # a sampled non-root is non-degenerate
        probe = Fraction(5)
        while probe in cv.roots:
            probe += 1
        assert radical_dim(sp, probe) == 0

    def test_multiplicity_matches_radical(self):
        sp = build_named_space("A", 3)
        # eta = 2 corresponds to adjacency eigenvalue -1 with multiplicity 2
        assert eigenvalue_multiplicity(sp, Fraction(-1)) == 2
        assert radical_dim(sp, 2) == 2
