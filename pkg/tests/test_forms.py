from fractions import Fraction

import pytest

from algcert.algebra import der_into, derivation_algebra, jacobson_radical
from algcert.errors import (CharTwo, NotDegreeTwo, NotGraded, NotHomogeneous,
                            NotStable, ZeroPolynomial)
from algcert.fields import GF, QQ
from algcert.linalg import Matrix, Subspace, invert
from algcert.poly import LinearChange, Poly, apply_linear_change, partial_derivative
from algcert.forms import (binary_form_resultant_rank, delta_action, diagonalize,
                           flag_search, im_phi_lie, isotropy, nonsingularity,
                           quadratic_from_poly, restricted_action, sim_lie,
                           stab_lie)
from algcert.presentation import (minimal_degree_subspace,
                                  presentation_from_ideal, quotient_algebra)
from conftest import pp

GF2, GF3, GF5 = GF(2), GF(3), GF(5)


def build(n, l, texts, field=QQ):
    return presentation_from_ideal(n, l, [pp(t, n, field) for t in texts], field)


class TestQuadraticForm:
    def test_identity_gram(self):
        q = quadratic_from_poly(pp("X1^2+X2^2", 2))
        assert q.gram.rows == [[1, 0], [0, 1]]

    def test_hyperbolic_gram(self):
        q = quadratic_from_poly(pp("X1*X2", 2))
        assert q.gram.rows == [[0, Fraction(1, 2)], [Fraction(1, 2), 0]]

    def test_gf5_gram(self):
        q = quadratic_from_poly(pp("2*X1^2+3*X1*X2", 2, GF5))
        assert q.gram.rows == [[2, 4], [4, 0]]

    def test_char_two_rejected(self):
        with pytest.raises(CharTwo):
            quadratic_from_poly(pp("X1^2", 1, GF2))

    def test_wrong_degree_rejected(self):
        with pytest.raises(NotDegreeTwo):
            quadratic_from_poly(pp("X1^3", 1))

    def test_gram_evaluates_like_poly(self):
        f = pp("X1^2 + 4*X1*X2 - 3*X2^2 + X2*X3", 3)
        q = quadratic_from_poly(f)
        for v in ([1, 2, 3], [0, 1, -1], [5, -2, 7]):
            assert q.evaluate(v) == f.evaluate(v)


class TestDiagonalize:
    def test_hyperbolic(self):
        q = quadratic_from_poly(pp("X1*X2", 2))
        p, diag = diagonalize(q)
        assert diag[0] > 0 and diag[1] < 0
        self._check_congruence(q, p, diag)

    def test_identity_fixed(self):
        q = quadratic_from_poly(pp("X1^2+X2^2", 2))
        p, diag = diagonalize(q)
        assert diag == [1, 1]

    def test_degenerate_rank_one(self):
        q = quadratic_from_poly(pp("X1^2", 2))
        p, diag = diagonalize(q)
        assert diag == [1, 0]

    def _check_congruence(self, q, p, diag):
        n = q.n
        got = p.transpose().mul(q.gram).mul(p)
        want = [[diag[i] if i == j else Fraction(0) for j in range(n)]
                for i in range(n)]
        assert got.rows == want


class TestIsotropy:
    def test_definite_certified(self):
        ev = isotropy(quadratic_from_poly(pp("X1^2+X2^2", 2)))
        assert ev.verdict == "ANISOTROPIC_CERTIFIED"
        assert ev.method == "definiteness"

    def test_gf5_witness(self):
        ev = isotropy(quadratic_from_poly(pp("X1^2+X2^2", 2, GF5)))
        assert ev.verdict == "ISOTROPIC_WITNESS"
        assert ev.witness == [1, 2]

    def test_bounded_search_unknown(self):
        ev = isotropy(quadratic_from_poly(pp("X1^2 - 2*X2^2", 2)))
        assert ev.verdict == "UNKNOWN"
        assert ev.method == "bounded_search"

    def test_bounded_search_witness(self):
        ev = isotropy(quadratic_from_poly(pp("X1^2 - 4*X2^2", 2)))
        assert ev.verdict == "ISOTROPIC_WITNESS"
        assert quadratic_from_poly(pp("X1^2 - 4*X2^2", 2)).evaluate(ev.witness) == 0

    def test_degenerate_witness(self):
        ev = isotropy(quadratic_from_poly(pp("X1^2", 2)))
        assert ev.verdict == "ISOTROPIC_WITNESS"
        assert ev.witness == [0, 1]

    def test_ternary_gf3_chevalley_warning(self):
        # nondegenerate forms in >= 3 variables over GF(p) are isotropic
        for text in ("X1^2+X2^2+X3^2", "X1^2+2*X2^2+X3^2", "X1^2-X2^2+2*X3^2"):
            ev = isotropy(quadratic_from_poly(pp(text, 3, GF5)))
            assert ev.verdict == "ISOTROPIC_WITNESS"


class TestNonsingularity:
    def test_fermat_cubic_certified(self):
        assert nonsingularity(pp("X1^3+X2^3", 2)).verdict == "NONSINGULAR_CERTIFIED"

    def test_resultant_path_agrees_on_fermat_cubic(self):
        f = pp("X1^3+X2^3", 2)
        rank, size = binary_form_resultant_rank(
            partial_derivative(f, 0), partial_derivative(f, 1), 2)
        assert rank == size

    def test_coordinate_axis_witness(self):
        ev = nonsingularity(pp("X1^2*X2", 2))
        assert ev.verdict == "SINGULAR_WITNESS"
        assert ev.witness == [0, 1]

    @pytest.mark.parametrize("text,n,field,expect", [
        ("X1^3+X2^3", 2, QQ, "NONSINGULAR_CERTIFIED"),
        ("X1^3+X2^3+X3^3", 3, QQ, "NONSINGULAR_CERTIFIED"),
        ("X1^4+X2^4", 2, GF3, "NONSINGULAR_CERTIFIED"),
        ("X1^3+X2^3", 2, GF3, "SINGULAR_WITNESS"),   # char divides the degree
        ("X1^3", 2, QQ, "SINGULAR_WITNESS"),          # missing variable
    ])
    def test_diagonal_rule(self, text, n, field, expect):
        assert nonsingularity(pp(text, n, field)).verdict == expect

    def test_binary_resultant_zero_with_witness(self):
        ev = nonsingularity(pp("X1^2*X2^2", 2))
        assert ev.verdict == "SINGULAR_WITNESS"
        parts = [partial_derivative(pp("X1^2*X2^2", 2), i) for i in range(2)]
        assert all(p.evaluate(ev.witness) == 0 for p in parts)

    def test_cubic_family_good_primes(self):
        # lambda = 2: the reduction at 7 is singular (2^3 = 1 mod 7), the
        # other default primes are fine
        f = pp("X1^3+X2^3+X3^3 - 6*X1*X2*X3", 3)
        ev = nonsingularity(f, primes=(5, 11, 13))
        assert ev.verdict == "PROBABLY_NONSINGULAR"
        assert ev.primes_used == [5, 11, 13]
        ev_bad = nonsingularity(f, primes=(5, 7, 11, 13), height_bound=3)
        assert ev_bad.verdict == "UNKNOWN"

    def test_rational_singular_point_found(self):
        # (X1+X2+X3)^3 is singular along a rational plane
        f = pp("X1+X2+X3", 3).pow(3)
        ev = nonsingularity(f)
        assert ev.verdict == "SINGULAR_WITNESS"
        parts = [partial_derivative(f, i) for i in range(3)]
        assert all(p.evaluate(ev.witness) == 0 for p in parts)

    def test_gfp_scan(self):
        ev = nonsingularity(pp("X1^2*X2 + X2^2*X3", 3, GF3))
        assert ev.verdict in ("SINGULAR_WITNESS", "PROBABLY_NONSINGULAR")
        assert ev.primes_used == [3]

    def test_inhomogeneous_rejected(self):
        with pytest.raises(NotHomogeneous):
            nonsingularity(pp("X1^2 + X1", 2))


class TestStabSim:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_sum_of_squares_dims(self, n):
        f = pp("+".join(f"X{i + 1}^2" for i in range(n)), n)
        assert stab_lie(f).dim == n * (n - 1) // 2
        assert sim_lie(f).dim == n * (n - 1) // 2 + 1

    def test_hyperbolic_stabilizer(self):
        st = stab_lie(pp("X1*X2", 2))
        assert st.dim == 1
        assert st.space.contains([1, 0, 0, -1])

    def test_fermat_cubic_finite(self):
        assert stab_lie(pp("X1^3+X2^3", 2)).dim == 0

    def test_euler_identity(self):
        for text, n in (("X1^2+X2^2", 2), ("X1^3+X2^3", 2), ("X1^2*X2^2+X1*X2^3", 2)):
            f = pp(text, n)
            eye = Matrix.identity(QQ, n)
            assert delta_action(eye, f) == f.scale(f.degree())
            assert sim_lie(f).space.contains(eye.flatten())

    def test_bracket_closed_and_nested(self):
        for text in ("X1^2+X2^2+X3^2", "X1*X2", "X1^3+X2^3"):
            n = 3 if "X3" in text else 2
            st, si = stab_lie(pp(text, n)), sim_lie(pp(text, n))
            assert st.is_bracket_closed()
            assert si.is_bracket_closed()
            assert si.space.contains_space(st.space)
            assert si.dim - st.dim <= 1

    def test_conjugation_covariance(self):
        # for g(X) = f(XA): Stab(g) = A Stab(f) A^{-1}
        f = pp("X1^2+X2^2", 2)
        m = Matrix(QQ, [[1, 2], [0, 1]])
        g = apply_linear_change(LinearChange(m), f)
        minv = invert(m)
        conj = []
        for b in stab_lie(f).basis_matrices():
            conj.append(m.mul(b).mul(minv).flatten())
        assert stab_lie(g).space == Subspace.from_vectors(QQ, 4, conj)

    def test_zero_rejected(self):
        with pytest.raises(ZeroPolynomial):
            stab_lie(Poly.zero(2, QQ))


class TestImPhi:
    def test_free_truncated_full_gl(self):
        assert im_phi_lie(build(2, 3, [])).dim == 4
        assert im_phi_lie(build(3, 2, [])).dim == 9

    def test_quadric_matches_similarity(self):
        p = build(2, 3, ["X1^2+X2^2"])
        assert im_phi_lie(p).space == sim_lie(pp("X1^2+X2^2", 2)).space

    def test_monomial_contains_diagonals(self):
        lie = im_phi_lie(build(2, 3, ["X1*X2"]))
        assert lie.dim == 2
        assert lie.space.contains([1, 0, 0, 0])
        assert lie.space.contains([0, 0, 0, 1])

    def test_not_graded_rejected(self):
        with pytest.raises(NotGraded):
            im_phi_lie(build(2, 4, ["X1^2+X2^3"]))

    @pytest.mark.parametrize("n,l,texts", [
        (2, 3, ["X1^2+X2^2"]),
        (2, 3, ["X1*X2"]),
        (2, 4, ["X1^3+X2^3"]),
        (3, 3, ["X1^2+X2^2+X3^2"]),
        (2, 4, ["X1^2"]),
    ])
    def test_single_generator_equality(self, n, l, texts):
        p = build(n, l, texts)
        f = pp(texts[0], n)
        assert im_phi_lie(p).space == sim_lie(f).space

    @pytest.mark.parametrize("n,l,texts", [
        (2, 3, ["X1^2+X2^2"]),
        (2, 3, ["X1*X2"]),
        (2, 3, []),
        (2, 3, ["X1^2", "X2^2"]),
        (3, 2, []),
    ])
    def test_derivation_dimension_identity(self, n, l, texts):
        p = build(n, l, texts)
        a = quotient_algebra(p)
        rad = jacobson_radical(a)
        dim_der = derivation_algebra(a).dim
        dim_ker = der_into(a, rad, rad.square).dim
        assert dim_der == im_phi_lie(p).dim + dim_ker


class TestFlagSearch:
    def test_rotation_no_rational_flag(self):
        res = flag_search([Matrix(QQ, [[0, -1], [1, 0]])], QQ)
        assert res.status == "NO_RATIONAL_FLAG"

    def test_rotation_splits_over_gf5(self):
        # t^2 + 1 factors mod 5, so the flag exists there
        res = flag_search([Matrix(GF5, [[0, 4], [1, 0]])], GF5)
        assert res.status == "FULL_FLAG"

    def test_upper_triangular_flag(self):
        ops = [Matrix(QQ, [[1, 0], [0, 0]]), Matrix(QQ, [[0, 1], [0, 0]]),
               Matrix(QQ, [[0, 0], [0, 1]])]
        res = flag_search(ops, QQ)
        assert res.status == "FULL_FLAG"
        assert res.flag[0] == [1, 0]

    def test_dim_one_trivial(self):
        assert flag_search([Matrix(QQ, [[7]])], QQ).status == "FULL_FLAG"

    def test_gl2_not_solvable(self):
        ops = [Matrix(QQ, [[1, 0], [0, 0]]), Matrix(QQ, [[0, 1], [0, 0]]),
               Matrix(QQ, [[0, 0], [1, 0]]), Matrix(QQ, [[0, 0], [0, 1]])]
        assert flag_search(ops, QQ).status == "NOT_SOLVABLE"

    def test_no_operators_full_flag(self):
        res = flag_search([], QQ, dim_w=3)
        assert res.status == "FULL_FLAG" and len(res.flag) == 3


class TestWStability:
    def test_restricted_action_stable(self):
        p = build(2, 3, ["X1^2", "X2^2"])
        w = minimal_degree_subspace(p)
        lie = im_phi_lie(p)
        ops = restricted_action(lie, w)
        assert len(ops) == lie.dim
        for op in ops:
            assert op.nrows == w.dim

    def test_unstable_rejected(self):
        # a made-up operator outside im(Phi) moves W out of itself
        p = build(2, 4, ["X1^2"])
        w = minimal_degree_subspace(p)
        from algcert.algebra import LieSubalgebra
        rogue = LieSubalgebra(QQ, 2, Subspace.from_vectors(QQ, 4, [[0, 0, 1, 0]]))
        with pytest.raises(NotStable):
            restricted_action(rogue, w)

    def test_graded_w_always_stable(self):
        for texts, n, l in ((["X1^2+X2^2"], 2, 3), (["X1^2", "X2^2"], 2, 3),
                            (["X1*X2", "X1^3"], 2, 4)):
            p = build(n, l, texts)
            w = minimal_degree_subspace(p)
            restricted_action(im_phi_lie(p), w)  # must not raise
