"""Brute-force Fock-space oracle for small mode counts.

Everything here works in the full 2^L occupation basis and exists to
verify the polar-decomposition machinery independently.  Basis index n
encodes occupations with mode 1 in the least significant bit; mode i
operators carry the string phase (-1)^(number of occupied modes below i).
The mode cap keeps the dense Hamiltonian at or below 4096 dimensions
(about 128 MB); the oracle is for verification, not production.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ShapeMismatch, TooLarge
from .groundstate import CanonicalGroundState, PairingMatrix
from .quadform import QuadraticCoupling
from .tolerances import DEGENERACY_TOL, FOCK_MAX_MODES


@dataclass(frozen=True)
class FockVector:
    """Dense state vector over the 2^L occupation basis."""

    L: int
    amplitudes: np.ndarray


@dataclass(frozen=True)
class ExactGroundState:
    """Lowest eigenpair of a dense Fock Hamiltonian.

    ``parity_sector`` is the eigenvalue of (-1)^(total occupation); the
    ground vector has support on exactly one sector because the
    Hamiltonian conserves parity.  ``degenerate`` warns that the reported
    vector is an arbitrary member of a near-degenerate ground space.
    """

    energy: float
    vector: FockVector
    parity_sector: int
    gap: float
    degenerate: bool


def _check_modes(L):
    if L > FOCK_MAX_MODES:
        raise TooLarge(f"{L} modes exceed the dense Fock cap of {FOCK_MAX_MODES}")


def _sign_below(states, i):
    """String phase (-1)^(occupied modes below i) as +-1.0 per state."""
    counts = np.bitwise_count(states & ((1 << i) - 1))
    return 1.0 - 2.0 * (counts & 1)


def fock_hamiltonian_from_ab(A, B) -> np.ndarray:
    """Dense Fock Hamiltonian from raw hopping/pairing matrices.

    Assembles sum_ij A_ij c+_i c_j + 1/2 sum_ij (B_ij c+_i c+_j + h.c.)
    column by column over all basis states.  No evenness requirement; the
    mode cap applies.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.shape != B.shape or A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ShapeMismatch(f"A and B must be square of equal shape, got {A.shape}, {B.shape}")
    L = A.shape[0]
    _check_modes(L)
    dim = 1 << L
    states = np.arange(dim, dtype=np.int64)
    occ = [((states >> i) & 1).astype(bool) for i in range(L)]
    H = np.zeros((dim, dim))
    diagonal = np.zeros(dim)
    for i in range(L):
        diagonal += A[i, i] * occ[i]
    H[states, states] = diagonal
    for j in range(L):
        for i in range(L):
            if i == j or A[i, j] == 0.0:
                continue
            src = states[occ[j] & ~occ[i]]
            mid = src ^ (1 << j)
            tgt = mid | (1 << i)
            H[tgt, src] += A[i, j] * _sign_below(src, j) * _sign_below(mid, i)
    for j in range(L):
        for i in range(j):
            if B[i, j] == 0.0:
                continue
            # 1/2 sum_ij B_ij c+_i c+_j collapses to sum_{i<j} B_ij c+_i c+_j
            src = states[~occ[i] & ~occ[j]]
            mid = src | (1 << j)
            tgt = mid | (1 << i)
            val = B[i, j] * _sign_below(src, j) * _sign_below(mid, i)
            H[tgt, src] += val
            H[src, tgt] += val
    return H


def build_fock_hamiltonian(zc: QuadraticCoupling) -> np.ndarray:
    """Dense Fock Hamiltonian of a validated coupling."""
    return fock_hamiltonian_from_ab(zc.A, zc.B)


def parity_masks(L):
    """Boolean masks of the even- and odd-occupation basis states."""
    states = np.arange(1 << L, dtype=np.int64)
    even = (np.bitwise_count(states) & 1) == 0
    return even, ~even


def fock_ground_state(H) -> ExactGroundState:
    """Lowest eigenpair of a symmetric Fock Hamiltonian."""
    H = np.asarray(H, dtype=float)
    dim = H.shape[0]
    L = int(dim).bit_length() - 1
    energies, vectors = np.linalg.eigh(H)
    vector = vectors[:, 0]
    gap = float(energies[1] - energies[0]) if dim > 1 else np.inf
    even, odd = parity_masks(L)
    weight_even = float(np.sum(vector[even] ** 2))
    return ExactGroundState(
        energy=float(energies[0]),
        vector=FockVector(L=L, amplitudes=vector),
        parity_sector=+1 if weight_even >= 0.5 else -1,
        gap=gap,
        degenerate=bool(gap < DEGENERACY_TOL),
    )


def _apply_mode_creation(weights, v):
    """Apply sum_i weights[i] c+_i to a dense Fock vector."""
    L = weights.shape[0]
    states = np.arange(v.shape[0], dtype=np.int64)
    out = np.zeros_like(v)
    for i in range(L):
        if weights[i] == 0.0:
            continue
        src = states[((states >> i) & 1) == 0]
        out[src | (1 << i)] += weights[i] * _sign_below(src, i) * v[src]
    return out


def _apply_pair_creation(G, v):
    """Apply sum_{i<j} G_ij c+_i c+_j to a dense Fock vector."""
    L = G.shape[0]
    states = np.arange(v.shape[0], dtype=np.int64)
    out = np.zeros_like(v)
    for j in range(L):
        for i in range(j):
            if G[i, j] == 0.0:
                continue
            free = (((states >> i) & 1) == 0) & (((states >> j) & 1) == 0)
            src = states[free]
            mid = src | (1 << j)
            tgt = mid | (1 << i)
            out[tgt] += G[i, j] * _sign_below(src, j) * _sign_below(mid, i) * v[src]
    return out


def state_from_pairing(pairing) -> FockVector:
    """Normalized Gaussian state exp(1/2 sum G_ij c+_i c+_j)|0>.

    The pair-creation operator is nilpotent, so the exponential series
    terminates after L/2 applications.  Accepts a PairingMatrix or a raw
    antisymmetric array.
    """
    G = pairing.matrix if isinstance(pairing, PairingMatrix) else np.asarray(pairing, dtype=float)
    L = G.shape[0]
    _check_modes(L)
    psi = np.zeros(1 << L)
    psi[0] = 1.0
    term = psi
    for k in range(1, L // 2 + 1):
        term = _apply_pair_creation(G, term) / k
        psi = psi + term
    return FockVector(L=L, amplitudes=psi / np.linalg.norm(psi))


def state_from_angles(gs: CanonicalGroundState) -> FockVector:
    """Fock vector of the canonical paired state.

    Each mode pair contributes cos(theta/2)|00> + sin(theta/2)|11> in the
    rotated modes given by the frame columns; the basis change is realized
    by applying the rotated creation operators directly.  In the odd
    sector the final block instead occupies the unpaired -1 direction.
    """
    L = gs.L
    _check_modes(L)
    psi = np.zeros(1 << L)
    psi[0] = 1.0
    n_blocks = L // 2
    for k in range(n_blocks):
        first = gs.mode_frame[:, 2 * k]
        second = gs.mode_frame[:, 2 * k + 1]
        if gs.parity.parity_sign < 0 and k == n_blocks - 1:
            # unpaired (+1, -1) directions: occupy the -1 mode only
            psi = _apply_mode_creation(second, psi)
        else:
            half = gs.angles[k] / 2
            created = _apply_mode_creation(first, _apply_mode_creation(second, psi))
            psi = np.cos(half) * psi + np.sin(half) * created
    return FockVector(L=L, amplitudes=psi / np.linalg.norm(psi))


def fock_overlap(v: FockVector, w: FockVector) -> float:
    """Absolute inner product of two Fock vectors."""
    if v.L != w.L:
        raise ShapeMismatch(f"mode counts differ: {v.L} vs {w.L}")
    return float(np.abs(v.amplitudes @ w.amplitudes))


def annihilation_operators(L):
    """Dense matrices of c_i for small L; entries are exact +-1."""
    _check_modes(L)
    dim = 1 << L
    states = np.arange(dim, dtype=np.int64)
    ops = []
    for i in range(L):
        c = np.zeros((dim, dim))
        src = states[((states >> i) & 1) == 1]
        c[src ^ (1 << i), src] = _sign_below(src, i)
        ops.append(c)
    return ops
