"""Concrete coupling families used for tests and phase-diagram sweeps.

All formulas below index matrix entries 1-based; arrays are 0-based as
usual.  The pairing sign convention is fixed so that the complete-graph
coupling at (mu, gamma) = (0, 1) is strictly upper triangular, which
makes (Z Z^T)_ij = 4 min(L-i, L-j) hold entrywise exactly.
"""

import numpy as np

from .errors import LengthMismatch, OddSize
from .quadform import QuadraticCoupling, make_coupling

from dataclasses import dataclass


@dataclass(frozen=True)
class CompleteGraphParams:
    """Parameters of the completely connected hopping model.

    Hopping: every pair of the L modes is coupled with unit strength and
    the diagonal carries ``mu``; pairing has strength ``gamma`` with
    antisymmetric orientation along the mode ordering.
    """

    mu: float
    gamma: float
    L: int


def complete_graph(params: CompleteGraphParams) -> QuadraticCoupling:
    """Coupling on the complete graph: A_ij = 1 + (mu-1) delta_ij,
    B_ij = gamma sign(i-j)."""
    L = params.L
    if L < 2 or L % 2 != 0:
        raise OddSize(f"L must be even and >= 2, got {L}")
    A = np.ones((L, L)) + (params.mu - 1.0) * np.eye(L)
    idx = np.arange(L)
    B = params.gamma * np.sign(idx[:, None] - idx[None, :])
    return make_coupling(A, B)


def two_mode_staggered(eps: float, delta: float) -> QuadraticCoupling:
    """Two modes with opposite on-site energies +-eps and pairing delta.

    Z = [[eps, -delta], [delta, -eps]]; the single-particle energies are
    |eps - delta| and |eps + delta|, so the eps = +-delta lines are
    singular.
    """
    A = np.array([[eps, 0.0], [0.0, -eps]])
    B = np.array([[0.0, delta], [-delta, 0.0]])
    return make_coupling(A, B)


def two_mode_uniform(eps: float, delta: float) -> QuadraticCoupling:
    """Two modes with equal on-site energy eps and pairing delta.

    Z = [[eps, -delta], [delta, eps]] is sqrt(eps^2 + delta^2) times the
    rotation by theta = atan2(delta, eps), so the positive factor is a
    multiple of the identity and the orthogonal factor a smooth rotation.
    """
    A = eps * np.eye(2)
    B = np.array([[0.0, delta], [-delta, 0.0]])
    return make_coupling(A, B)


def multimode_uniform(eps, delta) -> QuadraticCoupling:
    """Direct sum of uniform two-mode blocks (L = 2M modes).

    The orthogonal factors of any two members are block rotations in the
    same fixed planes, hence commute; block nu rotates by
    theta_nu = atan2(delta_nu, eps_nu).
    """
    eps = np.atleast_1d(np.asarray(eps, dtype=float))
    delta = np.atleast_1d(np.asarray(delta, dtype=float))
    if eps.shape != delta.shape or eps.ndim != 1 or eps.size < 1:
        raise LengthMismatch(
            f"eps and delta must be equal-length 1-d lists, got {eps.shape} and {delta.shape}"
        )
    M = eps.size
    A = np.zeros((2 * M, 2 * M))
    B = np.zeros((2 * M, 2 * M))
    for nu in range(M):
        k = 2 * nu
        A[k : k + 2, k : k + 2] = eps[nu] * np.eye(2)
        B[k, k + 1] = delta[nu]
        B[k + 1, k] = -delta[nu]
    return make_coupling(A, B)


def block_angles(eps, delta) -> np.ndarray:
    """Oriented rotation angles atan2(delta_nu, eps_nu) of the uniform-pair
    family, suitable for the commuting-family fidelity product."""
    eps = np.atleast_1d(np.asarray(eps, dtype=float))
    delta = np.atleast_1d(np.asarray(delta, dtype=float))
    if eps.shape != delta.shape:
        raise LengthMismatch("eps and delta must have equal lengths")
    return np.arctan2(delta, eps)
