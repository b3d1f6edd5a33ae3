import numpy as np
import pytest
import scipy.linalg as sla

from conftest import random_special_orthogonal
from fermifid import (
    CompleteGraphParams,
    LengthMismatch,
    NegativeRelativeDeterminant,
    NonSpecialOrthogonal,
    block_angles,
    complete_graph,
    fidelity_angles,
    fidelity_commuting,
    fidelity_det,
    fidelity_pairing,
    multimode_uniform,
    pairing_matrix,
    perturbative_s2,
    polar_decompose,
    s2_multimode_uniform,
)
from fermifid.groundstate import PairingMatrix

SX = np.array([[0.0, 1.0], [1.0, 0.0]])


def rotation(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [-s, c]])


class TestFidelityDet:
    def test_equal_factors(self):
        T = rotation(0.7)
        r = fidelity_det(T, T)
        assert abs(r.value - 1.0) < 1e-14
        assert abs(r.log_value) < 1e-14
        assert r.method == "determinant"

    def test_parity_mismatch_is_exact_zero(self):
        r = fidelity_det(SX, rotation(0.3))
        assert r.value == 0.0
        assert r.log_value == -np.inf
        assert r.relative_orthogonal_det == -1

    def test_two_modes_cosine(self):
        for theta in np.linspace(-3.0, 3.0, 13):
            r = fidelity_det(np.eye(2), rotation(theta))
            assert abs(r.value - abs(np.cos(theta / 2))) < 1e-12

    def test_large_size_no_underflow(self):
        T1 = polar_decompose(complete_graph(CompleteGraphParams(3.0, 2.0, 400))).orthogonal
        T2 = polar_decompose(complete_graph(CompleteGraphParams(3.1, 2.0, 400))).orthogonal
        r = fidelity_det(T1, T2)
        assert 0.9 < r.value <= 1.0 + 1e-10
        assert np.isfinite(r.log_value)

    def test_opposite_rotations_give_zero(self):
        # relative angle pi: det(T + T') = 0 with det(T^T T') = +1
        r = fidelity_det(rotation(np.pi / 2), rotation(-np.pi / 2))
        assert r.value <= 1e-15
        assert r.relative_orthogonal_det == 1

    def test_symmetry_and_bounds(self):
        rng = np.random.default_rng(31)
        for _ in range(30):
            L = int(rng.choice([2, 4, 8]))
            T1 = random_special_orthogonal(rng, L)
            T2 = random_special_orthogonal(rng, L)
            a = fidelity_det(T1, T2).value
            b = fidelity_det(T2, T1).value
            assert abs(a - b) < 1e-12
            assert 0.0 <= a <= 1.0 + 1e-10


class TestFidelityAngles:
    def test_equal_factors(self):
        T = rotation(1.2)
        assert abs(fidelity_angles(T, T).value - 1.0) < 1e-14

    def test_agreement_with_determinant_route(self):
        rng = np.random.default_rng(32)
        for _ in range(500):
            L = int(rng.choice([2, 4, 8, 16, 40]))
            T1 = random_special_orthogonal(rng, L)
            T2 = random_special_orthogonal(rng, L)
            a = fidelity_angles(T1, T2).value
            d = fidelity_det(T1, T2).value
            assert abs(a - d) < 1e-10

    def test_negative_relative_determinant_refused(self):
        with pytest.raises(NegativeRelativeDeterminant):
            fidelity_angles(SX, rotation(0.3))

    def test_angle_gap_pi_gives_zero(self):
        r = fidelity_angles(rotation(np.pi / 2), rotation(-np.pi / 2))
        assert r.value <= 1e-15


class TestFidelityCommuting:
    def test_equal_angles(self):
        assert fidelity_commuting([0.3, 1.1], [0.3, 1.1]) == 1.0

    def test_single_mode(self):
        assert abs(fidelity_commuting([0.0], [np.pi / 2]) - np.sqrt(2) / 2) < 1e-15

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            fidelity_commuting([0.1], [0.1, 0.2])

    def test_matches_determinant_on_commuting_family(self):
        rng = np.random.default_rng(33)
        for _ in range(20):
            M = int(rng.integers(1, 5))
            eps, delta = rng.normal(size=(2, M))
            eps_t, delta_t = rng.normal(size=(2, M))
            T1 = polar_decompose(multimode_uniform(eps, delta)).orthogonal
            T2 = polar_decompose(multimode_uniform(eps_t, delta_t)).orthogonal
            commuting = fidelity_commuting(block_angles(eps, delta), block_angles(eps_t, delta_t))
            assert abs(commuting - fidelity_det(T1, T2).value) < 1e-10


class TestFidelityPairing:
    def test_equal_pairings(self):
        rng = np.random.default_rng(34)
        T = random_special_orthogonal(rng, 6)
        pm = pairing_matrix(T)
        assert abs(fidelity_pairing(pm, pm) - 1.0) < 1e-12

    def test_hand_value_single_pair(self):
        # vacuum vs the t = 1 pair state: overlap cos(pi/4)
        zero = PairingMatrix(matrix=np.zeros((2, 2)), t_values=np.zeros(1))
        one = PairingMatrix(matrix=np.array([[0.0, 1.0], [-1.0, 0.0]]), t_values=np.ones(1))
        assert abs(fidelity_pairing(zero, one) - np.sqrt(2) / 2) < 1e-14

    def test_matches_determinant_route(self):
        rng = np.random.default_rng(35)
        for _ in range(50):
            T1 = random_special_orthogonal(rng, 8, max_angle=2.9)
            T2 = random_special_orthogonal(rng, 8, max_angle=2.9)
            p = fidelity_pairing(pairing_matrix(T1), pairing_matrix(T2))
            d = fidelity_det(T1, T2).value
            assert abs(p - d) < 1e-9


class TestPerturbative:
    @staticmethod
    def family(lam):
        eps = np.array([1.0 + 0.3 * np.sin(lam), 0.8 + 0.2 * np.cos(2 * lam)])
        delta = np.array([0.5 + 0.2 * np.cos(lam + 0.3), 0.4 + 0.3 * np.sin(lam)])
        return eps, delta

    def orthogonal_of(self, lam):
        eps, delta = self.family(lam)
        return polar_decompose(multimode_uniform(eps, delta)).orthogonal

    def test_constant_family_gives_zero(self):
        coeff = perturbative_s2(lambda lam: np.eye(4), 0.0)
        assert coeff.s2 == 0.0
        assert np.array_equal(coeff.generator_derivative, np.zeros((4, 4)))

    def test_single_mode_half_angle_rate(self):
        # theta(lambda) = atan2(sin-ish...), s2 = theta'^2 / 8
        t_of = lambda lam: polar_decompose(
            multimode_uniform([np.cos(lam)], [np.sin(lam)])
        ).orthogonal
        coeff = perturbative_s2(t_of, 0.2)
        assert abs(coeff.s2 - 1.0 / 8.0) < 1e-8  # theta = lambda exactly

    def test_matches_analytic_multimode(self):
        lam, h = 0.3, 1e-5
        coeff = perturbative_s2(self.orthogonal_of, lam, h)
        eps, delta = self.family(lam)
        deps = (self.family(lam + h)[0] - self.family(lam - h)[0]) / (2 * h)
        ddelta = (self.family(lam + h)[1] - self.family(lam - h)[1]) / (2 * h)
        assert abs(coeff.s2 - s2_multimode_uniform(eps, deps, delta, ddelta)) < 1e-6
        assert coeff.s2 >= 0.0

    def test_halving_convergence(self):
        lam = 0.3
        coeff = perturbative_s2(self.orthogonal_of, lam)
        t0 = self.orthogonal_of(lam)
        ratios = []
        step = 1e-2
        while step >= 1e-4:
            value = fidelity_det(t0, self.orthogonal_of(lam + step)).value
            ratios.append(abs(-np.log(value) - coeff.s2 * step**2) / step**2)
            step /= 2
        for before, after in zip(ratios, ratios[1:]):
            assert after <= 0.6 * before

    def test_non_special_orthogonal_rejected(self):
        reflection = np.diag([1.0, -1.0])
        with pytest.raises(NonSpecialOrthogonal):
            perturbative_s2(lambda lam: reflection, 0.0)


class TestS2MultimodeUniform:
    def test_zero_derivatives(self):
        assert s2_multimode_uniform([1.0, 2.0], [0.0, 0.0], [0.3, 0.4], [0.0, 0.0]) == 0.0

    def test_single_mode_reference_value(self):
        assert abs(s2_multimode_uniform([1.0], [0.0], [0.0], [1.0]) - 1.0 / 8.0) < 1e-15

    def test_zero_eps_branch_is_finite(self):
        # removable singularity of the quotient form at eps = 0
        value = s2_multimode_uniform([0.0], [1.0], [1.0], [0.0])
        assert abs(value - 1.0 / 8.0) < 1e-15

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            s2_multimode_uniform([1.0], [0.0, 0.0], [0.3], [0.0])
