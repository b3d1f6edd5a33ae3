"""Ground-state structure carried by the orthogonal polar factor.

The orthogonal factor T determines the many-body ground state completely:
its -1 eigenvalue count fixes the fermion-parity sector, its Cayley
transform (T - 1)/(T + 1) is the antisymmetric pairing matrix, and its
real Schur form yields the canonical paired state

    prod_nu [ cos(theta_nu/2) |00> + sin(theta_nu/2) |11> ]

on rotated mode pairs, with one singly-occupied mode in the odd sector.
"""

from dataclasses import dataclass

import numpy as np

from .errors import IllConditioned, PairingUndefined, SingularCoupling
from .quadform import (
    AngleSpectrum,
    QuadraticCoupling,
    _schur_blocks,
    orthogonal_angles,
    polar_decompose,
    require_orthogonal,
)
from .tolerances import ORTHO_TOL, PAIRING_ANTISYM_TOL, PAIRING_COND_TOL


@dataclass(frozen=True)
class ParityInfo:
    """Fermion-parity sector of the ground state.

    ``p`` is the multiplicity of eigenvalue -1 of the orthogonal factor;
    the sector sign is (-1)^p, equal to det T.
    """

    p: int
    parity_sign: int


@dataclass(frozen=True)
class PairingMatrix:
    """Antisymmetric pairing matrix generating the Gaussian ground state.

    ``t_values`` are the magnitudes tan(theta_nu/2) of its eigenvalue
    pairs +-i t_nu.
    """

    matrix: np.ndarray
    t_values: np.ndarray


@dataclass(frozen=True)
class CanonicalGroundState:
    """Paired canonical form of the ground state.

    ``mode_frame`` is orthogonal; columns (2k, 2k+1) span the k-th mode
    pair and the angle ``angles[k]`` gives its amplitudes
    (cos(angle/2), sin(angle/2)) on (empty, doubly occupied).  Blocks are
    ordered: rotation pairs, +1 pairs (angle 0), -1 pairs (angle pi).  In
    the odd sector the last column pair holds the unpaired (+1, -1)
    eigendirections; the -1 direction (last column) carries the single
    occupied mode, its reported angle is pi and the -1 direction is
    excluded from pairing.
    """

    L: int
    angles: np.ndarray
    mode_frame: np.ndarray
    parity: ParityInfo
    amplitudes: np.ndarray
    spectrum: AngleSpectrum


def parity_of(T, tol: float = ORTHO_TOL) -> ParityInfo:
    """Parity sector read off the -1 eigenvalue count of T."""
    spectrum = orthogonal_angles(T, tol)
    p = spectrum.count_minus_one
    return ParityInfo(p=p, parity_sign=-1 if p % 2 else +1)


def pairing_matrix(T, tol: float = ORTHO_TOL) -> PairingMatrix:
    """Solve (T + 1) G = (T - 1) for the pairing matrix G.

    Defined only when -1 is not an eigenvalue of T.

    Raises
    ------
    PairingUndefined
        If -1 is in the spectrum of T.
    IllConditioned
        If T + 1 is near-singular although no -1 eigenvalue was detected.
    """
    T = require_orthogonal(T, tol)
    spectrum = orthogonal_angles(T, tol)
    if spectrum.count_minus_one > 0:
        raise PairingUndefined(
            f"-1 is an eigenvalue of T (multiplicity {spectrum.count_minus_one})"
        )
    L = T.shape[0]
    shifted = T + np.eye(L)
    if np.linalg.svd(shifted, compute_uv=False)[-1] < PAIRING_COND_TOL:
        raise IllConditioned("T + 1 is near-singular without a detected -1 eigenvalue")
    G = np.linalg.solve(shifted, T - np.eye(L))
    dev = np.max(np.abs(G + G.T))
    if dev > PAIRING_ANTISYM_TOL:
        raise IllConditioned(f"solved pairing matrix deviates from antisymmetry by {dev:.3e}")
    return PairingMatrix(
        matrix=(G - G.T) / 2,
        t_values=np.abs(np.tan(spectrum.angles / 2)),
    )


def _canonical_blocks(T):
    """Standardized mode pairs of T: list of (theta, col_a, col_b) plus the
    unpaired (+1, -1) directions when det T = -1.

    Column pairs are oriented so the induced pairing amplitude
    tan(theta/2) is non-negative: a rotation block with negative
    upper-right entry has its columns swapped.
    """
    frame, blocks = _schur_blocks(T)
    pairs = []
    plus = []
    minus = []
    for kind, k, *rest in blocks:
        if kind == "rot":
            theta, flip = rest
            a, b = frame[:, k], frame[:, k + 1]
            if flip:
                a, b = b, a
            pairs.append((theta, a, b))
        elif rest[0] > 0:
            plus.append(frame[:, k])
        else:
            minus.append(frame[:, k])
    while len(plus) >= 2:
        pairs.append((0.0, plus.pop(), plus.pop()))
    while len(minus) >= 2:
        pairs.append((np.pi, minus.pop(), minus.pop()))
    unpaired = (plus.pop(), minus.pop()) if minus else None
    return pairs, unpaired


def canonical_ground_state(zc: QuadraticCoupling, tol_sing: float | None = None) -> CanonicalGroundState:
    """Canonical paired ground state of a non-singular coupling.

    Raises
    ------
    SingularCoupling
        If the smallest singular value of Z is below tolerance, where the
        orthogonal factor (hence the state) is not unique.
    """
    pf = polar_decompose(zc, tol_sing)
    if pf.is_singular:
        raise SingularCoupling(
            f"coupling is singular (min singular value {pf.min_singular:.3e})"
        )
    T = pf.orthogonal
    spectrum = orthogonal_angles(T)
    pairs, unpaired = _canonical_blocks(T)
    angles = [theta for theta, _, _ in pairs]
    columns = [c for _, a, b in pairs for c in (a, b)]
    if unpaired is not None:
        angles.append(np.pi)
        columns.extend(unpaired)
    angles = np.asarray(angles)
    p = spectrum.count_minus_one
    return CanonicalGroundState(
        L=zc.L,
        angles=angles,
        mode_frame=np.column_stack(columns),
        parity=ParityInfo(p=p, parity_sign=-1 if p % 2 else +1),
        amplitudes=np.column_stack([np.cos(angles / 2), np.sin(angles / 2)]),
        spectrum=spectrum,
    )
