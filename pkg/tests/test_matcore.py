"""Tests for the dense matrix substrate."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import array_shapes, arrays

from blocksvd import matcore as mc

GOLDEN = (1.0 + np.sqrt(5.0)) / 2.0


finite_matrices = arrays(
    np.float64,
    array_shapes(min_dims=2, max_dims=2, min_side=1, max_side=12),
    elements=st.floats(-1.0, 1.0),
)


class TestBlockPartition:
    def test_blocks_tile_base(self):
        r = np.arange(20, dtype=float).reshape(5, 4)
        p = mc.BlockPartition(r, 2)
        assert p.a.shape == (2, 2)
        assert p.b.shape == (2, 2)
        assert p.c.shape == (3, 2)
        assert p.d.shape == (3, 2)
        np.testing.assert_array_equal(np.block([[p.a, p.b], [p.c, p.d]]), r)

    def test_zero_d_keeps_other_blocks(self):
        r = np.arange(20, dtype=float).reshape(5, 4)
        p = mc.BlockPartition(r, 2)
        r0 = p.zero_d()
        np.testing.assert_array_equal(r0[:2], r[:2])
        np.testing.assert_array_equal(r0[2:, :2], r[2:, :2])
        assert np.all(r0[2:, 2:] == 0)

    def test_bands(self):
        r = np.arange(20, dtype=float).reshape(5, 4)
        p = mc.BlockPartition(r, 2)
        np.testing.assert_array_equal(p.left_band(), r[:, :2])
        np.testing.assert_array_equal(p.right_band(), r[:, 2:])

    @pytest.mark.parametrize("k", [0, 4, 5])
    def test_invalid_split_rejected(self, k):
        with pytest.raises(mc.MatrixError):
            mc.BlockPartition(np.ones((5, 4)), k)

    def test_wide_matrix_rejected(self):
        with pytest.raises(mc.MatrixError):
            mc.BlockPartition(np.ones((3, 5)), 2)


class TestSVD:
    def test_identity(self):
        np.testing.assert_allclose(mc.svd(np.eye(3)).sigma, np.ones(3))

    def test_diagonal(self):
        np.testing.assert_allclose(mc.svd(np.diag([3.0, 2.0, 1.0])).sigma, [3, 2, 1])

    def test_golden_ratio_values(self):
        f = mc.svd(np.array([[1.0, 1.0], [0.0, 1.0]]))
        np.testing.assert_allclose(f.sigma, [GOLDEN, GOLDEN - 1.0], atol=1e-12)

    def test_orientation_diagonalizes(self):
        # factors are stored so that q @ m @ qp is the diagonal itself
        rng = np.random.default_rng(0)
        m = rng.standard_normal((6, 4))
        f = mc.svd(m)
        d = f.q @ m @ f.qp
        np.testing.assert_allclose(np.diag(d)[:4], f.sigma, atol=1e-12)
        assert f.reconstruction_residual(m) <= 1e-12 * mc.operator_norm(m) * 6

    @settings(max_examples=60, deadline=None)
    @given(finite_matrices)
    def test_residuals_bounded(self, m):
        f = mc.svd(m)
        dim = max(m.shape)
        assert f.orthogonality_residual() <= 1e-12 * dim
        assert f.reconstruction_residual(m) <= 1e-10 * dim * max(mc.operator_norm(m), 1.0)


class TestNorms:
    def test_operator_norm_cases(self):
        assert mc.operator_norm(np.zeros((2, 3))) == 0.0
        assert mc.operator_norm(np.diag([3.0, 2.0, 1.0])) == pytest.approx(3.0)
        assert mc.operator_norm(np.array([[1.0, 1.0], [0.0, 1.0]])) == pytest.approx(GOLDEN)

    def test_schur_bound_cases(self):
        assert mc.schur_test_bound(np.array([[0.0, 1.0], [1.0, 0.0]])) == pytest.approx(1.0)
        assert mc.schur_test_bound(np.ones((2, 2))) == pytest.approx(2.0)
        m = np.array([[1.0, 1.0], [0.0, 1.0]])
        assert mc.schur_test_bound(m) == pytest.approx(2.0)
        assert mc.schur_test_bound(m) >= mc.operator_norm(m)

    @settings(max_examples=100, deadline=None)
    @given(finite_matrices)
    def test_schur_bound_dominates(self, m):
        assert mc.schur_test_bound(m) >= mc.operator_norm(m) - 1e-12


class TestPsdApply:
    def test_identity_function(self):
        s = np.array([[2.0, 1.0], [1.0, 2.0]])
        np.testing.assert_allclose(mc.psd_apply(lambda t: t, s), s, atol=1e-12)

    def test_diagonal_evaluation(self):
        s = np.diag([0.0, 3.0])
        out = mc.psd_apply(lambda t: 1.0 / np.sqrt(1.0 + t), s)
        np.testing.assert_allclose(out, np.diag([1.0, 0.5]), atol=1e-12)

    def test_sqrt_by_hand(self):
        s = np.array([[2.0, 1.0], [1.0, 2.0]])
        root = mc.psd_apply(np.sqrt, s)
        np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(root)),
                                   [1.0, np.sqrt(3.0)], atol=1e-12)
        np.testing.assert_allclose(root @ root, s, atol=1e-12)

    def test_asymmetric_rejected(self):
        with pytest.raises(mc.MatrixError):
            mc.psd_apply(np.sqrt, np.array([[1.0, 1.0], [0.0, 1.0]]))

    def test_monotone_function_maps_spectrum(self):
        # non-increasing f reverses the singular value order
        rng = np.random.default_rng(1)
        a = rng.standard_normal((5, 5))
        s = a @ a.T
        f = lambda t: 1.0 / np.sqrt(1.0 + t)
        out = mc.psd_apply(f, s)
        want = np.sort(f(np.linalg.eigvalsh(s)))[::-1]
        np.testing.assert_allclose(np.linalg.svd(out, compute_uv=False), want, atol=1e-10)


class TestSubmatrix:
    def test_full_range_is_identity(self):
        m = np.arange(12, dtype=float).reshape(3, 4)
        np.testing.assert_array_equal(mc.submatrix(m, (1, 3), (1, 4)), m)

    def test_one_based_inclusive(self):
        np.testing.assert_array_equal(mc.submatrix(np.eye(3), (2, 3), (2, 3)), np.eye(2))

    def test_against_direct_indexing(self):
        m = np.arange(16, dtype=float).reshape(4, 4)
        np.testing.assert_array_equal(mc.submatrix(m, (2, 4), (1, 3)), m[1:4, 0:3])

    def test_empty_when_reversed(self):
        assert mc.submatrix(np.eye(3), (3, 2), (1, 3)).size == 0

    def test_out_of_range_rejected(self):
        with pytest.raises(mc.MatrixError):
            mc.submatrix(np.eye(3), (1, 4), (1, 3))


class TestSpectralInequalities:
    """Eigenvalue-shift and Weyl comparisons backing the bound modules."""

    def test_eigenvalue_shift(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            n = int(rng.integers(2, 7))
            a, b = rng.standard_normal((2, n, n))
            s1, s2 = a @ a.T, b @ b.T
            lhs = np.sort(np.linalg.eigvalsh(s1 + s2))
            rhs = np.sort(np.linalg.eigvalsh(s1)) + np.linalg.eigvalsh(s2).min()
            assert np.all(lhs >= rhs - 1e-10)

    def test_weyl_additive(self):
        rng = np.random.default_rng(3)
        for _ in range(1000):
            x, y = rng.standard_normal((2, 5, 4))
            dx = np.linalg.svd(x + y, compute_uv=False) - np.linalg.svd(x, compute_uv=False)
            assert np.all(dx <= np.linalg.norm(y, 2) + 1e-10)
