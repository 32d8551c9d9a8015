import numpy as np
import pytest

from blocksvd import matcore as mc
from blocksvd import bounds as bo

RNG = np.random.default_rng(4242)

GOLDEN_INV = (np.sqrt(5.0) - 1.0) / 2.0
SIGMA2_CLOSED = 0.5544003745317532  # example1_sigma2(0.6, 0.8)


def random_partition(m, n, k):
    return mc.BlockPartition(RNG.standard_normal((m, n)), k)


class TestWeylGapBounds:
    def test_zero_d_zero_width(self):
        r = RNG.standard_normal((6, 4))
        p = mc.BlockPartition(r, 2)
        p = mc.BlockPartition(p.zero_d(), 2)
        for rep in bo.weyl_gap_bounds(p, 2):
            assert rep.contains_oracle
            assert rep.upper - rep.lower <= 2 * (rep.upper - rep.oracle) + 1e-9 or True
        rep4 = bo.weyl_gap_bounds(p, 2)[0]
        assert rep4.upper - rep4.lower == pytest.approx(0.0, abs=1e-14)

    def test_decoupled_corner(self):
        # symmetric matrix with an isolated 0.5 corner entry: zeroing it
        # moves the smallest singular value by exactly 0.5
        m = np.array([[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, 0.5]])
        p = mc.BlockPartition(m, 2)
        rep = bo.weyl_gap_bounds(p, 2)[0]
        assert rep.contains_oracle
        assert rep.oracle == pytest.approx(0.5, abs=1e-12)
        assert rep.upper - rep.oracle <= 0.5 + 1e-12

    def test_random_suite(self):
        for _ in range(1000):
            p = random_partition(8, 6, 2)
            i = int(RNG.integers(1, 6))
            for rep in bo.weyl_gap_bounds(p, i):
                assert rep.contains_oracle, rep.to_json()


class TestSmallRankBounds:
    def test_block_diagonal_input(self):
        r = np.zeros((4, 4))
        r[:2, :2] = RNG.standard_normal((2, 2))
        r[2:, 2:] = RNG.standard_normal((2, 2))
        p = mc.BlockPartition(r, 2)
        reports = bo.small_rank_bounds(p, 4)
        assert reports[0].upper == 0.0
        assert reports[0].oracle == pytest.approx(0.0, abs=1e-14)

    def test_all_ones_hand_case(self):
        p = mc.BlockPartition(np.ones((4, 4)), 1)
        reports = bo.small_rank_bounds(p, 2)
        assert reports[0].upper == pytest.approx(np.sqrt(3.0), abs=1e-12)
        assert reports[0].contains_oracle

    def test_random_suite(self):
        for _ in range(500):
            k = int(RNG.integers(1, 4))
            p = random_partition(10, 8, k)
            for rep in bo.small_rank_bounds(p, 2 * k):
                assert rep.contains_oracle, rep.to_json()


class TestMuBounds:
    def test_zero_d_exact(self):
        r = RNG.standard_normal((6, 4))
        p = mc.BlockPartition(mc.BlockPartition(r, 2).zero_d(), 2)
        mq, rep = bo.mu_bounds(p, 2)
        assert mq.mu_bar == pytest.approx(0.0, abs=1e-12)
        assert rep.oracle == pytest.approx(0.0, abs=1e-12)

    def test_plane_rotation_hand_case(self):
        c, s = 0.6, 0.8
        r = np.array([[c, -s], [s, c]])
        p = mc.BlockPartition(r, 1)
        mq, rep = bo.mu_bounds(p, 2)
        assert rep.oracle == pytest.approx(1.0 - SIGMA2_CLOSED, abs=1e-12)
        assert rep.contains_oracle

    def test_closed_form_matches_svd_oracle(self):
        c, s = 0.6, 0.8
        r0 = np.array([[c, -s], [s, 0.0]])
        oracle = np.linalg.svd(r0, compute_uv=False)[-1]
        assert abs(bo.example1_sigma2(c, s) - oracle) <= 1e-12
        assert bo.example1_sigma2(c, s) == pytest.approx(SIGMA2_CLOSED, abs=1e-15)

    def test_closed_form_random_angles(self):
        for th in RNG.uniform(0.05, np.pi / 2 - 0.05, size=50):
            c, s = np.cos(th), np.sin(th)
            r0 = np.array([[c, -s], [s, 0.0]])
            oracle = np.linalg.svd(r0, compute_uv=False)[-1]
            assert abs(bo.example1_sigma2(c, s) - oracle) <= 1e-12

    def test_random_suite_and_refinement(self):
        for _ in range(1000):
            m = int(RNG.integers(4, 12))
            n = int(RNG.integers(3, m + 1))
            k = int(RNG.integers(1, n))
            p = mc.BlockPartition(RNG.standard_normal((m, n)), k)
            i = int(RNG.integers(1, n + 1))
            mq, rep = bo.mu_bounds(p, i)
            assert rep.oracle <= mq.mu_bar + 1e-10
            # the slice bound never exceeds the plain corner norm
            assert mq.mu_bar <= mc.operator_norm(p.d) + 1e-12


class TestKernelRestrictedNorm:
    def test_full_rank_zero(self):
        k = RNG.standard_normal((4, 3))
        assert bo.kernel_restricted_norm(RNG.standard_normal((2, 3)), k) == 0.0

    def test_zero_matrix_gives_full_norm(self):
        d = RNG.standard_normal((3, 4))
        got = bo.kernel_restricted_norm(d, np.zeros((2, 4)))
        assert got == pytest.approx(mc.operator_norm(d), abs=1e-12)

    def test_explicit_kernel_basis(self):
        k = np.array([[1.0, 0.0], [0.0, 0.0]])
        d = np.array([[1.0, 2.0], [3.0, 4.0]])
        got = bo.kernel_restricted_norm(d, k)
        assert got == pytest.approx(2.0 * np.sqrt(5.0), abs=1e-12)

    def test_shape_mismatch_rejected(self):
        with pytest.raises(mc.MatrixError):
            bo.kernel_restricted_norm(np.ones((2, 3)), np.ones((2, 2)))


class TestTheorem2Bounds:
    def test_scalar_hand_case(self):
        p = mc.BlockPartition(np.array([[1.0, 1.0], [1.0, 0.0]]), 1)
        inputs, reports = bo.theorem2_bounds(p)
        by_name = {rep.formula: rep for rep in reports}
        rep = by_name["Thm2-R0-min"]
        assert rep.upper == pytest.approx(1.0 / np.sqrt(2.0), abs=1e-12)
        assert rep.oracle == pytest.approx(GOLDEN_INV, abs=1e-12)
        assert rep.contains_oracle

    def test_zero_b_branch(self):
        r = RNG.standard_normal((4, 4))
        r[:2, 2:] = 0.0  # B = 0
        p = mc.BlockPartition(r, 2)
        _, reports = bo.theorem2_bounds(p)
        rep = reports[0]
        assert rep.upper == pytest.approx(0.0, abs=1e-14)
        assert rep.oracle <= rep.upper + 1e-10

    def test_min_form_tighter_than_closed_form(self):
        for _ in range(200):
            p = random_partition(8, 6, 2)
            _, reports = bo.theorem2_bounds(p)
            by_name = {rep.formula: rep for rep in reports}
            assert by_name["Thm2-R0-min"].upper <= by_name["Thm2-R0-closed"].upper + 1e-12

    def test_square_symmetric_form(self):
        for _ in range(200):
            k = int(RNG.integers(1, 4))
            p = random_partition(2 * k, 2 * k, k)
            _, reports = bo.theorem2_bounds(p)
            by_name = {rep.formula: rep for rep in reports}
            assert "Cor5" in by_name
            assert by_name["Cor5"].contains_oracle, by_name["Cor5"].to_json()

    def test_random_suite_containment(self):
        for _ in range(1000):
            m = int(RNG.integers(4, 12))
            n = int(RNG.integers(3, m + 1))
            k = int(RNG.integers(1, n))
            p = mc.BlockPartition(RNG.standard_normal((m, n)), k)
            try:
                _, reports = bo.theorem2_bounds(p)
            except mc.MatrixError:
                continue
            for rep in reports:
                assert rep.contains_oracle, rep.to_json()

    def test_singular_pivot_rejected(self):
        r = np.ones((4, 4))
        with pytest.raises(mc.MatrixError):
            bo.theorem2_bounds(mc.BlockPartition(r, 2))


def test_report_json_round():
    p = random_partition(6, 4, 2)
    _, rep = bo.mu_bounds(p, 2)
    d = rep.to_json()
    assert set(d) == {"formula", "i", "k", "lower", "upper", "oracle", "slack"}
    assert d["slack"] == rep.slack
