"""Cloud/EDM types, Householder block conversions, and the coordinate round trip."""

import numpy as np
import pytest

from edmcomplete import (
    HouseholderBlocks,
    InvalidInput,
    PartialEDM,
    PointCloud,
    edm_from_points,
    frobenius_norm,
    householder_q,
    is_edm,
    merge_blocks,
    points_from_edm,
    split_blocks,
)
from conftest import random_cloud

INV_SQRT2 = 1.0 / np.sqrt(2.0)


class TestPointCloud:
    def test_basic(self):
        pc = PointCloud([[0.0, 0.0], [1.0, 0.0]], ("C", "N"), (0, 1))
        assert pc.order == 2 and pc.dim == 2
        assert pc.elements == ("C", "N")
        assert pc.residues == (0, 1)

    def test_coords_read_only(self):
        pc = PointCloud([[0.0, 0.0]], ("C",), (0,))
        with pytest.raises(ValueError):
            pc.coords[0, 0] = 1.0

    def test_unlabeled(self):
        pc = PointCloud.unlabeled(np.zeros((3, 2)))
        assert pc.elements == ("X", "X", "X")
        assert pc.residues == (0, 0, 0)

    def test_rejects_bad_input(self):
        with pytest.raises(InvalidInput):
            PointCloud(np.zeros((0, 3)), (), ())
        with pytest.raises(InvalidInput):
            PointCloud([[np.inf, 0.0]], ("C",), (0,))
        with pytest.raises(InvalidInput):
            PointCloud([[0.0, 0.0]], ("C", "N"), (0,))
        with pytest.raises(InvalidInput):
            PointCloud([[0.0, 0.0]], ("C",), (-1,))


class TestPartialEDM:
    def test_zeroes_unknown_entries(self):
        mask = np.array([[True, False], [False, True]])
        partial = PartialEDM(mask=mask, values=np.array([[0.0, 9.0], [9.0, 0.0]]))
        assert partial.values[0, 1] == 0.0
        assert partial.known_pairs == 0

    def test_known_pairs(self):
        mask = np.ones((3, 3), dtype=bool)
        values = edm_from_points(PointCloud([[0.0], [1.0], [3.0]], "CCC", (0, 0, 0)))
        partial = PartialEDM(mask=mask, values=values)
        assert partial.known_pairs == 3
        assert partial.order == 3

    def test_rejects_structural_violations(self):
        good = np.array([[0.0, 1.0], [1.0, 0.0]])
        with pytest.raises(InvalidInput):
            PartialEDM(mask=np.array([[False, True], [True, False]]), values=good)
        with pytest.raises(InvalidInput):
            PartialEDM(mask=np.array([[True, True], [False, True]]), values=good)
        with pytest.raises(InvalidInput):
            PartialEDM(mask=np.ones((2, 2), dtype=bool), values=-good)
        with pytest.raises(InvalidInput):
            PartialEDM(mask=np.ones((2, 2), dtype=bool), values=np.eye(2))
        with pytest.raises(InvalidInput):
            PartialEDM(
                mask=np.ones((2, 2), dtype=bool),
                values=np.array([[0.0, 1.0], [2.0, 0.0]]),
            )


class TestHouseholder:
    def test_q2_oracle(self):
        # v = (1, 1 + sqrt2) gives Q = [[1, -1], [-1, -1]] / sqrt2.
        q = householder_q(2)
        expected = np.array([[INV_SQRT2, -INV_SQRT2], [-INV_SQRT2, -INV_SQRT2]])
        assert q == pytest.approx(expected, abs=1e-14)

    @pytest.mark.parametrize("m", [2, 3, 7, 19])
    def test_q_is_orthogonal_involution(self, m):
        q = householder_q(m)
        assert np.array_equal(q, q.T)
        assert frobenius_norm(q @ q - np.eye(m)) <= 1e-12

    def test_q_cached_and_read_only(self):
        assert householder_q(5) is householder_q(5)
        with pytest.raises(ValueError):
            householder_q(5)[0, 0] = 1.0

    def test_q_rejects_small_order(self):
        with pytest.raises(InvalidInput):
            householder_q(1)

    def test_split_oracle(self):
        blocks = split_blocks(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert blocks.xhat == pytest.approx(np.array([[1.0]]), abs=1e-14)
        assert blocks.d == pytest.approx(np.array([0.0]), abs=1e-14)
        assert blocks.delta == pytest.approx(-1.0, abs=1e-14)

    def test_merge_inverts_split(self):
        rng = np.random.default_rng(5)
        for m in (2, 4, 9):
            x = rng.standard_normal((m, m))
            x = (x + x.T) / 2.0
            back = merge_blocks(split_blocks(x))
            assert frobenius_norm(back - x) <= 1e-12 * max(1.0, frobenius_norm(x))

    def test_edm_block_is_psd(self):
        # The leading block of the conjugated negated matrix is PSD exactly
        # when the input is an EDM, with rank equal to the embedding dim.
        cloud = random_cloud(21, order=10, dim=3)
        blocks = split_blocks(edm_from_points(cloud))
        lam = np.linalg.eigvalsh(blocks.xhat)
        assert lam.min() >= -1e-9
        assert int(np.sum(lam > 1e-8)) == 3

    def test_split_rejects_asymmetric_and_nonsquare(self):
        with pytest.raises(InvalidInput):
            split_blocks(np.array([[0.0, 1.0], [2.0, 0.0]]))
        with pytest.raises(InvalidInput):
            split_blocks(np.zeros((2, 3)))

    def test_merge_rejects_mismatched_shapes(self):
        with pytest.raises(InvalidInput):
            merge_blocks(HouseholderBlocks(np.zeros((2, 2)), np.zeros(3), 0.0))


class TestIsEdm:
    def test_accepts_true_edm(self):
        ok, dim = is_edm(edm_from_points(random_cloud(2, order=6, dim=3)))
        assert ok and dim == 3

    def test_two_points(self):
        ok, dim = is_edm(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert ok and dim == 1

    def test_single_point(self):
        ok, dim = is_edm(np.zeros((1, 1)))
        assert ok and dim == 0

    def test_line_cloud_has_dim_one(self):
        d = np.array([[0.0, 1.0, 4.0], [1.0, 0.0, 1.0], [4.0, 1.0, 0.0]])
        ok, dim = is_edm(d)
        assert ok and dim == 1

    def test_rejects_triangle_violation(self):
        # Distances 1, 1, 3 cannot come from points anywhere; the conjugated
        # block picks up a negative eigenvalue.
        d = np.array([[0.0, 1.0, 9.0], [1.0, 0.0, 1.0], [9.0, 1.0, 0.0]])
        ok, _ = is_edm(d)
        assert not ok

    def test_rejects_structural_failures(self):
        assert is_edm(np.array([[0.0, -1.0], [-1.0, 0.0]])) == (False, 0)
        assert is_edm(np.array([[1.0, 1.0], [1.0, 0.0]])) == (False, 0)
        assert is_edm(np.array([[0.0, 1.0], [2.0, 0.0]])) == (False, 0)


class TestCoordinates:
    def test_edm_oracle_right_triangle(self):
        pc = PointCloud([[0.0, 0.0], [3.0, 0.0], [0.0, 4.0]], "CCC", (0, 0, 0))
        expected = np.array([[0.0, 9.0, 16.0], [9.0, 0.0, 25.0], [16.0, 25.0, 0.0]])
        assert np.array_equal(edm_from_points(pc), expected)

    def test_edm_is_symmetric_hollow(self):
        d = edm_from_points(random_cloud(9, order=7))
        assert np.array_equal(d, d.T)
        assert np.all(d.diagonal() == 0.0)

    def test_points_oracle_two_points(self):
        pc = points_from_edm(np.array([[0.0, 1.0], [1.0, 0.0]]), 1)
        assert pc.coords == pytest.approx(np.array([[0.5], [-0.5]]), abs=1e-12)
        assert pc.elements == ("X", "X")

    def test_points_are_centered(self):
        pc = points_from_edm(edm_from_points(random_cloud(4, order=8)), 3)
        assert pc.coords.mean(axis=0) == pytest.approx([0.0, 0.0, 0.0], abs=1e-9)

    def test_round_trip(self):
        for seed in range(12):
            q = 1 + seed % 3
            cloud = random_cloud(seed, order=4 + seed, dim=q)
            d = edm_from_points(cloud)
            back = edm_from_points(points_from_edm(d, q))
            assert frobenius_norm(back - d) <= 1e-8 * max(1.0, frobenius_norm(d))

    def test_like_copies_labels(self):
        cloud = PointCloud([[0.0], [1.0], [5.0]], ("C", "N", "O"), (0, 0, 1))
        pc = points_from_edm(edm_from_points(cloud), 1, like=cloud)
        assert pc.elements == ("C", "N", "O")
        assert pc.residues == (0, 0, 1)

    def test_rejects_bad_rank(self):
        d = np.array([[0.0, 1.0], [1.0, 0.0]])
        with pytest.raises(InvalidInput):
            points_from_edm(d, 0)
        with pytest.raises(InvalidInput):
            points_from_edm(d, 2)

    def test_rejects_mismatched_like(self):
        d = np.array([[0.0, 1.0], [1.0, 0.0]])
        with pytest.raises(InvalidInput):
            points_from_edm(d, 1, like=random_cloud(0, order=3))
