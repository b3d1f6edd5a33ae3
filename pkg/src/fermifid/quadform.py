"""Coupling matrices and their polar/spectral factorizations.

A quadratic fermion model with hopping matrix A (symmetric) and pairing
matrix B (antisymmetric) is fully described by the real coupling matrix
Z = A - B.  The positive polar factor of Z carries the single-particle
energies; the orthogonal factor carries the ground-state structure.  This
module provides the numerically robust substrate: validated construction,
the polar decomposition through the SVD, rotation-angle spectra of
orthogonal matrices via the real Schur form, stable log-determinants, and
the principal logarithm on the special orthogonal group.
"""

from dataclasses import dataclass
import warnings

import numpy as np
import scipy.linalg as sla

from .errors import (
    AngleAtBranchCut,
    NegativeDeterminant,
    NotAntisymmetric,
    NotOrthogonal,
    NotSymmetric,
    OddSize,
    ShapeMismatch,
    UnpairedRealEigenvalue,
)
from .tolerances import (
    BRANCH_TOL,
    EIG_UNIT_TOL,
    ORTHO_TOL,
    PIVOT_FLOOR,
    SINGULAR_REL_TOL,
    SYMMETRY_TOL,
)


@dataclass(frozen=True)
class QuadraticCoupling:
    """Validated coupling data of a quadratic fermion model.

    Attributes
    ----------
    L : int
        Number of fermionic modes (even).
    Z : np.ndarray
        Real L x L coupling matrix, Z = A - B.
    A : np.ndarray
        Hopping part, exactly symmetric.
    B : np.ndarray
        Pairing part, exactly antisymmetric.
    """

    L: int
    Z: np.ndarray
    A: np.ndarray
    B: np.ndarray


@dataclass(frozen=True)
class PolarForm:
    """Polar factors Z = positive . orthogonal, plus the singular data.

    ``singular_values`` are the single-particle energies, sorted ascending.
    ``left_frame`` and ``right_frame`` are the singular frames W, V of
    Z = W diag(s) V^T.  ``is_singular`` flags a smallest singular value
    below tolerance, in which case the orthogonal factor is the
    SVD-induced choice among the non-unique ones.
    """

    positive: np.ndarray
    orthogonal: np.ndarray
    singular_values: np.ndarray
    left_frame: np.ndarray
    right_frame: np.ndarray
    min_singular: float
    is_singular: bool


@dataclass(frozen=True)
class AngleSpectrum:
    """Rotation-angle content of a real orthogonal matrix.

    ``angles`` holds L/2 values in [0, pi]: one per 2x2 rotation block,
    0 per pair of +1 eigenvalues, pi per pair of -1 eigenvalues, and pi
    for the single mixed (+1, -1) leftover that occurs when det = -1.
    ``rotation_angles`` holds only the strictly complex pairs.
    """

    angles: np.ndarray
    count_plus_one: int
    count_minus_one: int
    det_sign: int
    rotation_angles: np.ndarray


@dataclass(frozen=True)
class SkewGenerator:
    """Real skew-symmetric K with exp(K) equal to a special-orthogonal T.

    Block angles follow the principal branch (-pi, pi).
    """

    matrix: np.ndarray


def _as_square(M, name="matrix"):
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeMismatch(f"{name} must be square, got shape {M.shape}")
    return M


def make_coupling(A, B) -> QuadraticCoupling:
    """Build a validated coupling from hopping and pairing matrices.

    Deviations from (anti)symmetry below ``SYMMETRY_TOL`` are repaired by
    (anti)symmetrization; larger ones raise.  Odd sizes are rejected.

    Parameters
    ----------
    A : array_like
        Real symmetric hopping matrix.
    B : array_like
        Real antisymmetric pairing matrix.

    Returns
    -------
    QuadraticCoupling
    """
    A = _as_square(A, "A")
    B = _as_square(B, "B")
    if A.shape != B.shape:
        raise ShapeMismatch(f"A and B must have equal shape, got {A.shape} and {B.shape}")
    L = A.shape[0]
    if L % 2 != 0:
        raise OddSize(f"number of modes must be even, got {L}")
    dev_a = np.max(np.abs(A - A.T), initial=0.0)
    if dev_a > SYMMETRY_TOL * max(1.0, np.max(np.abs(A), initial=0.0)):
        raise NotSymmetric(f"A deviates from symmetry by {dev_a:.3e}")
    dev_b = np.max(np.abs(B + B.T), initial=0.0)
    if dev_b > SYMMETRY_TOL * max(1.0, np.max(np.abs(B), initial=0.0)):
        raise NotAntisymmetric(f"B deviates from antisymmetry by {dev_b:.3e}")
    # (x + y)/2 and (x - y)/2 are exactly (anti)symmetric in floating point.
    A = (A + A.T) / 2
    B = (B - B.T) / 2
    return QuadraticCoupling(L=L, Z=A - B, A=A, B=B)


def coupling_from_z(Z) -> QuadraticCoupling:
    """Split a raw coupling matrix into its hopping and pairing parts."""
    Z = _as_square(Z, "Z")
    return make_coupling((Z + Z.T) / 2, (Z.T - Z) / 2)


def polar_decompose(zc: QuadraticCoupling, tol_sing: float | None = None) -> PolarForm:
    """Left polar decomposition Z = P T through the SVD.

    With Z = W diag(s) V^T the factors are P = W diag(s) W^T (symmetric
    positive semidefinite) and T = W V^T (orthogonal).  Singularity is
    reported through ``is_singular`` rather than an error so that
    parameter sweeps can record singular grid points.

    Parameters
    ----------
    zc : QuadraticCoupling
    tol_sing : float, optional
        Absolute threshold on the smallest singular value.  Defaults to
        ``SINGULAR_REL_TOL`` times the largest singular value.
    """
    W, s, Vt = np.linalg.svd(zc.Z)
    # ascending singular values; permute the frames consistently
    # (contiguous copies: reversed views would fall off the BLAS fast path)
    W = np.ascontiguousarray(W[:, ::-1])
    s = np.ascontiguousarray(s[::-1])
    V = np.ascontiguousarray(Vt.T[:, ::-1])
    if tol_sing is None:
        tol_sing = SINGULAR_REL_TOL * s[-1]
    min_singular = float(s[0])
    return PolarForm(
        positive=(W * s) @ W.T,
        orthogonal=W @ V.T,
        singular_values=s,
        left_frame=W,
        right_frame=V,
        min_singular=min_singular,
        is_singular=bool(min_singular <= tol_sing),
    )


def require_orthogonal(Q, tol: float = ORTHO_TOL) -> np.ndarray:
    """Return Q as an array after checking ||Q Q^T - I||_max <= tol."""
    Q = _as_square(Q, "Q")
    dev = np.max(np.abs(Q @ Q.T - np.eye(Q.shape[0])))
    if dev > tol:
        raise NotOrthogonal(f"||Q Q^T - I||_max = {dev:.3e} exceeds {tol:.1e}")
    return Q


def _schur_blocks(Q):
    """Real Schur form of an orthogonal matrix, scanned into blocks.

    Returns ``(frame, blocks)`` where ``frame`` is the orthogonal Schur
    vector matrix and ``blocks`` is a list of
    ``("rot", k, theta, flip)`` for 2x2 rotation blocks (columns k, k+1;
    ``flip`` true when the block's upper-right entry is negative, i.e. the
    oriented rotation angle is -theta) and ``("one", k, sign)`` for real
    eigenvalues +-1 on column k.
    """
    S, frame = sla.schur(Q, output="real")
    L = Q.shape[0]
    blocks = []
    k = 0
    while k < L:
        if k + 1 < L and S[k + 1, k] != 0.0:
            # standardized 2x2 block: equal diagonal, complex pair e^{+-i theta}
            diag = 0.5 * (S[k, k] + S[k + 1, k + 1])
            off = 0.5 * (abs(S[k, k + 1]) + abs(S[k + 1, k]))
            theta = float(np.arctan2(off, diag))
            blocks.append(("rot", k, theta, S[k, k + 1] < 0.0))
            k += 2
        else:
            q = S[k, k]
            if abs(q - 1.0) < EIG_UNIT_TOL:
                blocks.append(("one", k, +1))
            elif abs(q + 1.0) < EIG_UNIT_TOL:
                blocks.append(("one", k, -1))
            else:
                raise NotOrthogonal(
                    f"real Schur eigenvalue {q!r} is not within {EIG_UNIT_TOL:.1e} of +-1"
                )
            k += 1
    return frame, blocks


def orthogonal_angles(Q, tol: float = ORTHO_TOL) -> AngleSpectrum:
    """Rotation angles and +-1 multiplicities of an orthogonal matrix.

    The spectrum of a real orthogonal Q is {e^{+-i theta_nu}} together
    with real eigenvalues +-1.  The returned ``angles`` list is padded so
    exactly L/2 entries come back: pairs of +1 eigenvalues contribute 0,
    pairs of -1 contribute pi, and for det Q = -1 the single leftover
    (+1, -1) pair contributes pi.

    Raises
    ------
    NotOrthogonal
        If Q fails the orthogonality check.
    UnpairedRealEigenvalue
        If the +-1 multiplicities have impossible parity (numerical
        breakdown upstream).
    """
    Q = require_orthogonal(Q, tol)
    _, blocks = _schur_blocks(Q)
    rotation = [b[2] for b in blocks if b[0] == "rot"]
    n_plus = sum(1 for b in blocks if b[0] == "one" and b[2] > 0)
    n_minus = sum(1 for b in blocks if b[0] == "one" and b[2] < 0)
    if (n_plus + n_minus) % 2 != 0:
        raise UnpairedRealEigenvalue(
            f"eigenvalue multiplicities (+1: {n_plus}, -1: {n_minus}) cannot "
            f"occur for an even-dimensional orthogonal matrix"
        )
    angles = list(rotation)
    angles.extend([0.0] * (n_plus // 2))
    angles.extend([np.pi] * (n_minus // 2))
    if n_plus % 2 == 1:
        # det = -1: one +1 and one -1 left over, reported as a pi entry
        angles.append(np.pi)
    det_sign = -1 if n_minus % 2 else +1
    return AngleSpectrum(
        angles=np.asarray(angles),
        count_plus_one=n_plus,
        count_minus_one=n_minus,
        det_sign=det_sign,
        rotation_angles=np.asarray(rotation),
    )


def log_abs_det(M) -> tuple[float, int]:
    """log|det M| and the sign of det M via LU with partial pivoting.

    Returns ``(-inf, 0)`` when any pivot magnitude underflows
    ``PIVOT_FLOOR``.
    """
    M = _as_square(M, "M")
    with warnings.catch_warnings():
        # exactly singular input is a legitimate outcome here, not a warning
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(M, check_finite=True)
    diag = np.diag(lu)
    if np.min(np.abs(diag)) < PIVOT_FLOOR:
        return -np.inf, 0
    sign = 1 if np.sum(piv != np.arange(len(piv))) % 2 == 0 else -1
    sign *= -1 if np.sum(diag < 0) % 2 else 1
    return float(np.sum(np.log(np.abs(diag)))), int(sign)


def orthogonal_log(T, tol: float = ORTHO_TOL) -> SkewGenerator:
    """Principal logarithm of a special-orthogonal matrix.

    Maps each 2x2 rotation block of the real Schur form to the skew block
    with the same oriented angle in (-pi, pi).

    Raises
    ------
    NegativeDeterminant
        If det T = -1 (no real logarithm on that branch).
    AngleAtBranchCut
        If an eigenvalue lies within ``BRANCH_TOL`` of -1, where the
        logarithm is ill-conditioned; the caller decides how to proceed.
    """
    T = require_orthogonal(T, tol)
    L = T.shape[0]
    frame, blocks = _schur_blocks(T)
    n_minus = sum(1 for b in blocks if b[0] == "one" and b[2] < 0)
    if n_minus % 2 == 1:
        raise NegativeDeterminant("matrix has det -1; no real logarithm exists")
    if n_minus > 0:
        raise AngleAtBranchCut("eigenvalue -1 puts the logarithm at its branch cut")
    core = np.zeros((L, L))
    for kind, k, *rest in blocks:
        if kind != "rot":
            continue  # +1 eigenvalue: zero block
        theta, flip = rest
        if theta > np.pi - BRANCH_TOL:
            raise AngleAtBranchCut(
                f"rotation angle {theta!r} within {BRANCH_TOL:.1e} of pi"
            )
        signed = -theta if flip else theta
        core[k, k + 1] = signed
        core[k + 1, k] = -signed
    K = frame @ core @ frame.T
    return SkewGenerator(matrix=(K - K.T) / 2)
