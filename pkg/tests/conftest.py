"""Shared random-instance helpers for the test suite."""

import numpy as np
import scipy.linalg as sla

from fermifid import fock_ground_state, build_fock_hamiltonian, make_coupling, polar_decompose


def random_coupling(rng, L, scale=1.0):
    """Random validated coupling with N(0, scale) entries."""
    A = rng.normal(scale=scale, size=(L, L))
    B = rng.normal(scale=scale, size=(L, L))
    return make_coupling((A + A.T) / 2, (B - B.T) / 2)


def random_orthogonal(rng, L):
    """Haar-distributed orthogonal matrix (both determinant signs occur)."""
    Q, R = np.linalg.qr(rng.normal(size=(L, L)))
    return Q * np.sign(np.diag(R))


def random_special_orthogonal(rng, L, max_angle=2.8):
    """exp of a random skew generator rescaled so all angles stay below
    ``max_angle`` (< pi keeps the matrix off the log branch cut)."""
    K = rng.normal(size=(L, L))
    K = (K - K.T) / 2
    top = np.abs(np.linalg.eigvals(K)).max()
    if top > 0:
        K *= rng.uniform(0.05, 1.0) * max_angle / top
    return sla.expm(K)


def gapped_pair(rng, L, min_gap=1e-6, min_singular=1e-6):
    """Rejection-sample a coupling whose Fock gap and smallest singular
    value clear the floors; returns (coupling, polar_form, exact_gs)."""
    while True:
        zc = random_coupling(rng, L)
        pf = polar_decompose(zc)
        if pf.min_singular < min_singular:
            continue
        gs = fock_ground_state(build_fock_hamiltonian(zc))
        if gs.gap < min_gap:
            continue
        return zc, pf, gs
