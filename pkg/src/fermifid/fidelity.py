"""Ground-state fidelity between two couplings, by several routes.

The headline formula expresses the absolute ground-state overlap through
the orthogonal polar factors alone:

    F = 2^(-L/2) |det(T + T')|^(1/2) = prod_nu |cos(Theta_nu/2)|

with {e^{+-i Theta_nu}} the spectrum of T^T T' when that product is
special orthogonal, and F = 0 exactly when det(T^T T') = -1 (a parity
flip, i.e. a level crossing).  All determinants are accumulated in log
space so the formulas stay finite at hundreds of modes.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    LengthMismatch,
    NegativeDeterminant,
    NegativeRelativeDeterminant,
    NonSpecialOrthogonal,
    ShapeMismatch,
)
from .quadform import (
    log_abs_det,
    orthogonal_angles,
    orthogonal_log,
    require_orthogonal,
)
from .groundstate import PairingMatrix
from .tolerances import FD_STEP_DEFAULT, ORTHO_TOL

_LOG2 = np.log(2.0)


@dataclass(frozen=True)
class FidelityResult:
    """A fidelity value with its log-space form and provenance.

    ``relative_orthogonal_det`` is the sign of det(T^T T'); -1 forces the
    value to exactly zero (structural, not numerical).
    """

    value: float
    log_value: float
    method: str
    relative_orthogonal_det: int


@dataclass(frozen=True)
class PerturbativeCoefficient:
    """Second-order fidelity decay: -log F ~ s2 * dlambda^2.

    ``generator_derivative`` is the finite-difference derivative of the
    skew generator K(lambda) with exp(K) = T; s2 = -Tr(K')^2 / 16 >= 0.
    """

    s2: float
    generator_derivative: np.ndarray


def _check_pair(T, T_tilde, tol):
    T = require_orthogonal(T, tol)
    T_tilde = require_orthogonal(T_tilde, tol)
    if T.shape != T_tilde.shape:
        raise ShapeMismatch(f"orthogonal factors differ in shape: {T.shape} vs {T_tilde.shape}")
    return T, T_tilde


def fidelity_det(T, T_tilde, tol: float = ORTHO_TOL) -> FidelityResult:
    """Fidelity from the determinant formula, in log space.

    Returns exactly 0 when det(T^T T') = -1: the ground states then sit
    in different parity sectors and the zero is structural.
    """
    T, T_tilde = _check_pair(T, T_tilde, tol)
    L = T.shape[0]
    _, rel_sign = log_abs_det(T.T @ T_tilde)
    if rel_sign < 0:
        return FidelityResult(
            value=0.0, log_value=-np.inf, method="determinant", relative_orthogonal_det=-1
        )
    log_abs, sign = log_abs_det(T + T_tilde)
    if sign == 0:
        return FidelityResult(
            value=0.0, log_value=-np.inf, method="determinant", relative_orthogonal_det=+1
        )
    log_value = 0.5 * log_abs - (L / 2) * _LOG2
    return FidelityResult(
        value=float(np.exp(log_value)),
        log_value=float(log_value),
        method="determinant",
        relative_orthogonal_det=+1,
    )


def fidelity_angles(T, T_tilde, tol: float = ORTHO_TOL) -> FidelityResult:
    """Fidelity as the product of relative-rotation half-angle cosines.

    Requires det(T^T T') = +1; for the -1 case use ``fidelity_det``,
    which returns the structural zero.
    """
    T, T_tilde = _check_pair(T, T_tilde, tol)
    relative = T.T @ T_tilde
    spectrum = orthogonal_angles(relative, tol)
    if spectrum.det_sign < 0:
        raise NegativeRelativeDeterminant(
            "det(T^T T') = -1: the angle product does not apply (fidelity is 0)"
        )
    cosines = np.abs(np.cos(spectrum.angles / 2))
    if np.any(cosines == 0.0):
        log_value = -np.inf
    else:
        log_value = float(np.sum(np.log(cosines)))
    return FidelityResult(
        value=float(np.exp(log_value)),
        log_value=log_value,
        method="angles",
        relative_orthogonal_det=+1,
    )


def fidelity_commuting(theta, theta_tilde) -> float:
    """|prod cos((theta_nu - theta'_nu)/2)| for commuting orthogonal factors.

    ``theta`` and ``theta_tilde`` are oriented block angles in a shared
    block structure (e.g. from the block-diagonal uniform-pair family).
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    theta_tilde = np.atleast_1d(np.asarray(theta_tilde, dtype=float))
    if theta.shape != theta_tilde.shape:
        raise LengthMismatch(
            f"angle lists differ in length: {theta.shape} vs {theta_tilde.shape}"
        )
    return float(np.abs(np.prod(np.cos((theta - theta_tilde) / 2))))


def fidelity_pairing(g: PairingMatrix, g_tilde: PairingMatrix) -> float:
    """Gaussian-state overlap from the pairing matrices, in log space.

    F = |det(1 + G^T G')|^(1/2) / [det(1 + G^T G) det(1 + G'^T G')]^(1/4)
    for real pairing matrices.  Both states must be in the even sector
    (the pairing matrices must exist).
    """
    G = g.matrix
    Gt = g_tilde.matrix
    if G.shape != Gt.shape:
        raise ShapeMismatch(f"pairing matrices differ in shape: {G.shape} vs {Gt.shape}")
    eye = np.eye(G.shape[0])
    log_cross, _ = log_abs_det(eye + G.T @ Gt)
    log_self, _ = log_abs_det(eye + G.T @ G)
    log_self_t, _ = log_abs_det(eye + Gt.T @ Gt)
    return float(np.exp(0.5 * log_cross - 0.25 * log_self - 0.25 * log_self_t))


def perturbative_s2(
    t_of_lambda: Callable[[float], np.ndarray],
    lam: float,
    dlambda: float = FD_STEP_DEFAULT,
) -> PerturbativeCoefficient:
    """Second-order decay coefficient of F(lambda, lambda + d) near d = 0.

    The generator derivative K' is obtained by a central finite difference
    of the principal logarithm at lambda +- dlambda; then
    s2 = -Tr(K'^2)/16 and -log F = s2 d^2 + O(d^3).

    Raises
    ------
    NonSpecialOrthogonal
        If the callable produces a det = -1 matrix at either stencil point.
    AngleAtBranchCut
        Propagated from the logarithm when an eigenvalue sits near -1.
    """
    try:
        k_plus = orthogonal_log(t_of_lambda(lam + dlambda)).matrix
        k_minus = orthogonal_log(t_of_lambda(lam - dlambda)).matrix
    except NegativeDeterminant as err:
        raise NonSpecialOrthogonal(str(err)) from err
    k_prime = (k_plus - k_minus) / (2 * dlambda)
    s2 = -np.trace(k_prime @ k_prime) / 16
    return PerturbativeCoefficient(s2=float(s2), generator_derivative=k_prime)


def s2_multimode_uniform(eps, deps, delta, ddelta) -> float:
    """Analytic second-order coefficient for the uniform-pair family.

    Each two-mode block nu contributes (theta'_nu)^2 / 8 with
    theta_nu = atan(delta_nu / eps_nu).  For eps_nu != 0 this is written
    as the quotient-rule form
    (eps^2/(eps^2+delta^2) * (delta'/eps - delta eps'/eps^2))^2 / 8;
    eps_nu = 0 switches to the equivalent, finite theta' expression.
    """
    eps, deps, delta, ddelta = (
        np.atleast_1d(np.asarray(a, dtype=float)) for a in (eps, deps, delta, ddelta)
    )
    if not (eps.shape == deps.shape == delta.shape == ddelta.shape):
        raise LengthMismatch("eps, deps, delta, ddelta must have equal lengths")
    r2 = eps**2 + delta**2
    theta_prime = np.empty_like(eps)
    nonzero = eps != 0.0
    d_form = ddelta[nonzero] / eps[nonzero] - delta[nonzero] * deps[nonzero] / eps[nonzero] ** 2
    theta_prime[nonzero] = eps[nonzero] ** 2 / r2[nonzero] * d_form
    zero = ~nonzero
    theta_prime[zero] = (
        eps[zero] * ddelta[zero] - delta[zero] * deps[zero]
    ) / r2[zero]
    return float(np.sum(theta_prime**2) / 8)
