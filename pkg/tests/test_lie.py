import random
from fractions import Fraction
from itertools import combinations

import pytest

from sphere_sos import linalg
from sphere_sos.lie import (
    BilinearForm,
    ad_invariance_witness,
    casimir_element,
    check_ad_invariance,
    check_natural_reductivity,
    killing_form,
    natural_reductivity_witness,
    orthogonal_decomposition,
    perturbed_form,
    so_algebra,
    so_basis_matrix,
    so_subalgebra_fixing_last_axis,
    su2_algebra,
    su2_round_form,
    trace_form,
)


def _mat_mul(a, b):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)
    ]


class TestSoAlgebra:
    def test_dimension(self):
        assert so_algebra(3).dim == 3
        assert so_algebra(4).dim == 6

    def test_bracket_example(self):
        alg = so_algebra(3)
        e12, e13, e23 = (alg.basis_vector(i) for i in range(3))
        assert alg.bracket(e12, e13) == tuple(
            Fraction(c) for c in (0, 0, -1)
        )  # [E12, E13] = -E23
        assert all(c == 0 for c in alg.bracket(e12, e12))

    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_structure_constants_match_matrix_commutators(self, m):
        # Oracle: recompute each bracket as a matrix commutator directly.
        alg = so_algebra(m)
        pairs = list(combinations(range(1, m + 1), 2))
        mats = {p: so_basis_matrix(m, *p) for p in pairs}
        for a, pa in enumerate(pairs):
            for b, pb in enumerate(pairs):
                coords = alg.bracket(alg.basis_vector(a), alg.basis_vector(b))
                recon = [[Fraction(0)] * m for _ in range(m)]
                for k, pk in enumerate(pairs):
                    if coords[k]:
                        for r in range(m):
                            for c in range(m):
                                recon[r][c] += coords[k] * mats[pk][r][c]
                ab = _mat_mul(mats[pa], mats[pb])
                ba = _mat_mul(mats[pb], mats[pa])
                comm = [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(ab, ba)]
                assert recon == comm

    @pytest.mark.parametrize("m", [3, 4, 5, 6])
    def test_jacobi_and_antisymmetry(self, m):
        alg = so_algebra(m)
        assert alg.check_antisymmetry()
        assert alg.check_jacobi()

    def test_su2_jacobi(self):
        alg = su2_algebra()
        assert alg.check_jacobi()
        assert alg.bracket(alg.basis_vector(0), alg.basis_vector(1)) == (0, 0, 1)

    def test_bracket_bilinearity(self):
        alg = so_algebra(4)
        rng = random.Random(3)
        for _ in range(10):
            u = tuple(Fraction(rng.randint(-4, 4)) for _ in range(6))
            v = tuple(Fraction(rng.randint(-4, 4)) for _ in range(6))
            w = tuple(Fraction(rng.randint(-4, 4)) for _ in range(6))
            left = alg.bracket(tuple(a + b for a, b in zip(u, v)), w)
            split = tuple(
                a + b for a, b in zip(alg.bracket(u, w), alg.bracket(v, w))
            )
            assert left == split
            assert alg.bracket(u, v) == tuple(-c for c in alg.bracket(v, u))


class TestForms:
    def test_trace_form_orthonormal_basis(self):
        B = trace_form(3)
        assert B.matrix == tuple(
            tuple(Fraction(1) if i == j else Fraction(0) for j in range(3))
            for i in range(3)
        )

    def test_killing_form_so3(self):
        K = killing_form(so_algebra(3))
        e = lambda i: [1 if t == i else 0 for t in range(3)]  # noqa: E731
        assert K(e(0), e(0)) == -2

    @pytest.mark.parametrize("m", [3, 4, 5, 6])
    def test_killing_is_scalar_multiple_of_trace(self, m):
        # Killing(X, Y) = (m - 2) * trace(XY) on so(m) basis pairs.
        alg = so_algebra(m)
        K = killing_form(alg)
        T = trace_form(m, scale=Fraction(1))
        for i in range(alg.dim):
            for j in range(alg.dim):
                u, v = alg.basis_vector(i), alg.basis_vector(j)
                assert K(u, v) == (m - 2) * T(u, v)

    def test_killing_symmetry(self):
        K = killing_form(so_algebra(4))
        for i in range(6):
            for j in range(6):
                u = [1 if t == i else 0 for t in range(6)]
                v = [1 if t == j else 0 for t in range(6)]
                assert K(u, v) == K(v, u)

    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_positive_definiteness_of_default_form(self, m):
        assert trace_form(m).is_positive_definite()
        minors = linalg.leading_principal_minors(trace_form(m).matrix)
        assert all(x > 0 for x in minors)

    def test_killing_negative_definite_on_compact_form(self):
        K = killing_form(so_algebra(4))
        assert not K.is_positive_definite()
        assert K.scale(-1).is_positive_definite()

    def test_asymmetric_matrix_rejected(self):
        with pytest.raises(ValueError):
            BilinearForm.from_rows([[1, 2], [3, 4]])


class TestAdInvariance:
    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_trace_form_invariant(self, m):
        assert check_ad_invariance(so_algebra(m), trace_form(m))

    def test_su2_round_form_invariant(self):
        assert check_ad_invariance(su2_algebra(), su2_round_form())

    @pytest.mark.parametrize("m", [3, 4])
    def test_killing_form_invariant(self, m):
        alg = so_algebra(m)
        assert check_ad_invariance(alg, killing_form(alg))

    def test_perturbed_form_fails_with_witness(self):
        alg = so_algebra(3)
        witness = ad_invariance_witness(alg, perturbed_form(trace_form(3)))
        assert witness is not None
        z, x, y = witness
        B = perturbed_form(trace_form(3))
        ez, ex, ey = (alg.basis_vector(t) for t in (z, x, y))
        defect = B(alg.bracket(ez, ex), ey) + B(ex, alg.bracket(ez, ey))
        assert defect != 0

    def test_abelian_algebra_always_invariant(self):
        from sphere_sos.lie import LieAlgebraData

        zero = tuple(
            tuple(tuple(Fraction(0) for _ in range(2)) for _ in range(2))
            for _ in range(2)
        )
        abelian = LieAlgebraData(dim=2, labels=("a", "b"), structure=zero)
        skew = BilinearForm.from_rows([[2, 1], [1, 3]])
        assert check_ad_invariance(abelian, skew)


class TestDecomposition:
    def test_so4_over_so3(self):
        alg = so_algebra(4)
        dec = orthogonal_decomposition(
            alg, so_subalgebra_fixing_last_axis(4), trace_form(4)
        )
        # complement = span{E14, E24, E34}: components 2, 4, 5 in pair order
        labels = [alg.labels[i] for i, *_ in enumerate(alg.labels)]
        complement_labels = set()
        for vec in dec.complement_basis:
            for i, c in enumerate(vec):
                if c != 0:
                    complement_labels.add(labels[i])
        assert complement_labels == {"E14", "E24", "E34"}
        assert len(dec.complement_basis) == 3

    def test_so3_over_so2(self):
        alg = so_algebra(3)
        dec = orthogonal_decomposition(
            alg, so_subalgebra_fixing_last_axis(3), trace_form(3)
        )
        complement_labels = set()
        for vec in dec.complement_basis:
            for i, c in enumerate(vec):
                if c != 0:
                    complement_labels.add(alg.labels[i])
        assert complement_labels == {"E13", "E23"}

    def test_trivial_subalgebra_gives_whole_algebra(self):
        alg = so_algebra(3)
        dec = orthogonal_decomposition(alg, [], trace_form(3))
        assert len(dec.complement_basis) == 3

    def test_dimensions_add_up(self):
        for m in (3, 4, 5):
            alg = so_algebra(m)
            dec = orthogonal_decomposition(
                alg, so_subalgebra_fixing_last_axis(m), trace_form(m)
            )
            assert len(dec.subalgebra_basis) + len(dec.complement_basis) == alg.dim

    def test_bracket_stability(self):
        alg = so_algebra(4)
        dec = orthogonal_decomposition(
            alg, so_subalgebra_fixing_last_axis(4), trace_form(4)
        )
        for k in dec.subalgebra_basis:
            for mvec in dec.complement_basis:
                assert linalg.in_span(
                    list(dec.complement_basis), alg.bracket(k, mvec)
                )

    def test_non_subalgebra_rejected(self):
        alg = so_algebra(3)
        # span{E12 + E13} is not closed under brackets with itself? It is
        # (bracket with itself is 0); use a 2-dim non-closed span instead.
        bad = [alg.basis_vector(0), alg.basis_vector(1)]  # [E12, E13] = -E23
        with pytest.raises(ValueError):
            orthogonal_decomposition(alg, bad, trace_form(3))


class TestNaturalReductivity:
    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_holds_for_sphere_pairs(self, m):
        alg = so_algebra(m)
        dec = orthogonal_decomposition(
            alg, so_subalgebra_fixing_last_axis(m), trace_form(m)
        )
        assert check_natural_reductivity(dec)

    def test_trivial_subalgebra_reduces_to_ad_invariance(self):
        alg = so_algebra(3)
        dec = orthogonal_decomposition(alg, [], trace_form(3))
        assert check_natural_reductivity(dec)

    def test_sphere_pairs_are_symmetric(self):
        # [m, m] lands in the subalgebra for so(m)/so(m-1), so the projected
        # brackets vanish and the condition is insensitive to the form there.
        alg = so_algebra(4)
        dec = orthogonal_decomposition(
            alg, so_subalgebra_fixing_last_axis(4), trace_form(4)
        )
        for a in dec.complement_basis:
            for b in dec.complement_basis:
                projected = dec.project_complement(alg.bracket(a, b))
                assert all(c == 0 for c in projected)

    def test_perturbed_form_fails_with_witness_in_group_case(self):
        # With a trivial subalgebra the condition is ad-invariance on the
        # whole algebra, which the perturbed form violates.
        alg = so_algebra(3)
        form = perturbed_form(trace_form(3))
        assert form.is_positive_definite()
        dec = orthogonal_decomposition(alg, [], form)
        witness = natural_reductivity_witness(dec)
        assert witness is not None
        z, x, y = witness
        ez, ex, ey = (dec.complement_basis[t] for t in (z, x, y))
        defect = form(
            dec.project_complement(alg.bracket(ez, ex)), ey
        ) + form(ex, dec.project_complement(alg.bracket(ez, ey)))
        assert defect != 0


class TestCasimir:
    def test_orthonormal_basis_is_self_dual(self):
        cas = casimir_element(so_algebra(3), trace_form(3))
        for dual, vec in cas.pairs:
            assert dual == vec

    def test_gram_consistency(self):
        alg = so_algebra(4)
        B = trace_form(4)
        cas = casimir_element(alg, B)
        for i, (dual_i, _) in enumerate(cas.pairs):
            for j, (_, vec_j) in enumerate(cas.pairs):
                assert B(dual_i, vec_j) == (1 if i == j else 0)

    def test_scaling_inverts_duals(self):
        alg = so_algebra(3)
        lam = Fraction(7, 3)
        cas1 = casimir_element(alg, trace_form(3))
        cas2 = casimir_element(alg, trace_form(3).scale(lam))
        for (d1, v1), (d2, v2) in zip(cas1.pairs, cas2.pairs):
            assert v1 == v2
            assert tuple(c / lam for c in d1) == d2

    def test_singular_form_rejected(self):
        singular = BilinearForm.from_rows([[1, 1, 0], [1, 1, 0], [0, 0, 1]])
        with pytest.raises(ZeroDivisionError):
            casimir_element(so_algebra(3), singular)

    def test_arbitrary_basis_gram(self):
        alg = so_algebra(3)
        B = trace_form(3)
        basis = [(1, 1, 0), (0, 1, 0), (2, 0, 3)]
        cas = casimir_element(alg, B, basis=basis)
        for i, (dual_i, _) in enumerate(cas.pairs):
            for j, (_, vec_j) in enumerate(cas.pairs):
                assert B(dual_i, vec_j) == (1 if i == j else 0)
