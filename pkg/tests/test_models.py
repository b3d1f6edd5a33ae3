import numpy as np
import pytest

from fermifid import (
    CompleteGraphParams,
    LengthMismatch,
    OddSize,
    block_angles,
    complete_graph,
    multimode_uniform,
    orthogonal_angles,
    polar_decompose,
    two_mode_staggered,
    two_mode_uniform,
)

SX = np.array([[0.0, 1.0], [1.0, 0.0]])


class TestCompleteGraph:
    def test_hopping_spectrum(self):
        for L, mu in [(4, 0.3), (10, -1.2), (50, 2.0)]:
            zc = complete_graph(CompleteGraphParams(mu, 0.7, L))
            eigs = np.sort(np.linalg.eigvalsh(zc.A))
            expected = np.sort([mu - 1.0] * (L - 1) + [L + mu - 1.0])
            assert np.allclose(eigs, expected, atol=1e-9)

    def test_triangular_point_gram_identity(self):
        for L in (4, 6, 12):
            zc = complete_graph(CompleteGraphParams(0.0, 1.0, L))
            gram = zc.Z @ zc.Z.T
            i = np.arange(1, L + 1)
            expected = 4.0 * np.minimum(L - i[:, None], L - i[None, :])
            assert np.array_equal(gram, expected)
            # last row and column vanish, so Z is singular for every L
            assert polar_decompose(zc).min_singular < 1e-8

    def test_gamma_reversal_is_exact_transpose(self):
        zc = complete_graph(CompleteGraphParams(0.7, 1.3, 8))
        zc_rev = complete_graph(CompleteGraphParams(0.7, -1.3, 8))
        assert np.array_equal(zc_rev.Z, zc.Z.T)

    def test_gamma_reversal_preserves_spectrum(self):
        zc = complete_graph(CompleteGraphParams(0.4, 0.9, 6))
        zc_rev = complete_graph(CompleteGraphParams(0.4, -0.9, 6))
        assert np.allclose(
            polar_decompose(zc).singular_values,
            polar_decompose(zc_rev).singular_values,
            atol=1e-12,
        )

    def test_two_mode_block(self):
        zc = complete_graph(CompleteGraphParams(0.5, 0.25, 2))
        assert np.array_equal(zc.Z, [[0.5, 1.25], [0.75, 0.5]])

    def test_two_mode_phase_regions(self):
        # inside the unit circle the orthogonal factor is the swap; outside
        # a rotation with det +1
        inside = polar_decompose(complete_graph(CompleteGraphParams(0.5, 0.5, 2)))
        assert np.allclose(inside.orthogonal, SX, atol=1e-12)
        outside = polar_decompose(complete_graph(CompleteGraphParams(2.0, 0.5, 2)))
        assert abs(np.linalg.det(outside.orthogonal) - 1.0) < 1e-10
        assert not np.allclose(outside.orthogonal, SX)

    def test_odd_size_rejected(self):
        with pytest.raises(OddSize):
            complete_graph(CompleteGraphParams(0.0, 0.0, 5))

    def test_validation_consumes_no_tolerance(self):
        zc = complete_graph(CompleteGraphParams(0.37, -1.9, 8))
        assert np.array_equal(zc.A, zc.A.T)
        assert np.array_equal(zc.B, -zc.B.T)
        assert np.array_equal(zc.Z, zc.A - zc.B)


class TestTwoModeStaggered:
    def test_coupling_matrix(self):
        zc = two_mode_staggered(1.5, -0.5)
        assert np.array_equal(zc.Z, [[1.5, 0.5], [-0.5, -1.5]])

    def test_singular_values(self):
        rng = np.random.default_rng(41)
        for _ in range(20):
            eps, delta = rng.normal(size=2)
            pf = polar_decompose(two_mode_staggered(eps, delta))
            assert np.allclose(
                pf.singular_values,
                np.sort([abs(eps - delta), abs(eps + delta)]),
                atol=1e-10,
            )

    def test_zero_gap_lines_flagged_singular(self):
        assert polar_decompose(two_mode_staggered(0.8, 0.8)).is_singular
        assert polar_decompose(two_mode_staggered(0.8, -0.8)).is_singular


class TestTwoModeUniform:
    def test_zero_pairing(self):
        pf = polar_decompose(two_mode_uniform(1.0, 0.0))
        assert np.array_equal(pf.orthogonal, np.eye(2))
        assert np.allclose(orthogonal_angles(pf.orthogonal).angles, [0.0])

    def test_pure_pairing(self):
        pf = polar_decompose(two_mode_uniform(0.0, 1.0))
        assert np.allclose(orthogonal_angles(pf.orthogonal).angles, [np.pi / 2])

    def test_uniform_positive_factor(self):
        pf = polar_decompose(two_mode_uniform(1.0, 1.0))
        assert np.allclose(pf.positive, np.sqrt(2) * np.eye(2), atol=1e-12)

    def test_angle_moves_continuously_through_pi_half(self):
        # small fixed pairing: driving eps through zero walks the angle
        # from near 0 to near pi without a jump
        delta = 0.05
        eps_values = np.linspace(0.5, -0.5, 201)  # spacing well below delta
        angles = [
            orthogonal_angles(polar_decompose(two_mode_uniform(e, delta)).orthogonal).angles[0]
            for e in eps_values
        ]
        assert angles[0] < 0.1
        assert angles[-1] > np.pi - 0.1
        assert np.max(np.abs(np.diff(angles))) < 0.2

    def test_angle_jumps_by_pi_at_zero_pairing(self):
        plus = orthogonal_angles(polar_decompose(two_mode_uniform(0.1, 0.0)).orthogonal).angles[0]
        minus = orthogonal_angles(polar_decompose(two_mode_uniform(-0.1, 0.0)).orthogonal).angles[0]
        assert abs(plus - 0.0) < 1e-10
        assert abs(minus - np.pi) < 1e-10


class TestMultimodeUniform:
    def test_single_block_reduces_to_two_mode(self):
        assert np.array_equal(multimode_uniform([1.3], [0.4]).Z, two_mode_uniform(1.3, 0.4).Z)

    def test_block_structure_and_angles(self):
        eps = [1.0, 0.5, 2.0]
        delta = [0.3, 0.9, -0.4]
        zc = multimode_uniform(eps, delta)
        assert zc.L == 6
        spec = orthogonal_angles(polar_decompose(zc).orthogonal)
        expected = np.sort(np.abs(np.arctan2(delta, eps)))
        assert np.allclose(np.sort(spec.angles), expected, atol=1e-12)
        assert np.allclose(np.abs(block_angles(eps, delta)), np.abs(np.arctan2(delta, eps)))

    def test_orthogonal_factors_commute(self):
        rng = np.random.default_rng(42)
        eps, delta = rng.normal(size=(2, 4))
        eps2, delta2 = rng.normal(size=(2, 4))
        T1 = polar_decompose(multimode_uniform(eps, delta)).orthogonal
        T2 = polar_decompose(multimode_uniform(eps2, delta2)).orthogonal
        assert np.abs(T1 @ T2 - T2 @ T1).max() < 1e-12

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            multimode_uniform([1.0, 2.0], [0.1])
