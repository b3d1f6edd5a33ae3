"""Numerical tolerances used across the package.

Every threshold that influences a classification or an error is collected
here so it is visible and overridable in one place.
"""

# Max allowed deviation before symmetrization/antisymmetrization of the
# hopping and pairing matrices is refused.
SYMMETRY_TOL = 1e-12

# Max-norm orthogonality requirement ||Q Q^T - I||_max for matrices passed
# to angle extraction, parity and fidelity routines.
ORTHO_TOL = 1e-8

# A 1x1 Schur block of an orthogonal matrix is classified as +-1 when it
# lies within this distance of +-1.
EIG_UNIT_TOL = 1e-8

# Relative cutoff (times the largest singular value) below which the
# smallest singular value marks the polar decomposition as singular.
SINGULAR_REL_TOL = 1e-12

# Antisymmetry deviation allowed in the solved pairing matrix before
# antisymmetrization.
PAIRING_ANTISYM_TOL = 1e-8

# Smallest singular value of (T + I) below which the pairing solve is
# refused as ill-conditioned.
PAIRING_COND_TOL = 1e-10

# |u_ii| below this floor counts as an exact zero pivot in log-determinant
# accumulation.
PIVOT_FLOOR = 1e-300

# Rotation angles within this distance of pi put the matrix logarithm at
# its branch cut.
BRANCH_TOL = 1e-8

# Default finite-difference step for the generator derivative.
FD_STEP_DEFAULT = 1e-5

# Hard cap on the number of modes for dense Fock-space constructions
# (2^12 = 4096-dimensional, ~128 MB per dense Hamiltonian).
FOCK_MAX_MODES = 12

# Energy gap below which an exact ground state is flagged degenerate.
DEGENERACY_TOL = 1e-9
