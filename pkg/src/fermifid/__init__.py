"""Ground-state fidelity of quadratic fermion models.

The coupling matrix Z = A - B of a quadratic fermion Hamiltonian carries
the whole ground-state story in its polar decomposition: the positive
factor holds the single-particle energies, the orthogonal factor the
many-body state, parity sector and fidelity.  This package computes
those objects robustly, verifies them against a dense Fock-space oracle
at small sizes, and sweeps phase diagrams from the command line.
"""

from .errors import (
    AngleAtBranchCut,
    ConfigError,
    FermifidError,
    IllConditioned,
    LengthMismatch,
    NegativeDeterminant,
    NegativeRelativeDeterminant,
    NonSpecialOrthogonal,
    NotAntisymmetric,
    NotOrthogonal,
    NotSymmetric,
    OddSize,
    PairingUndefined,
    ShapeMismatch,
    SingularCoupling,
    TooLarge,
    UnpairedRealEigenvalue,
)
from .quadform import (
    AngleSpectrum,
    PolarForm,
    QuadraticCoupling,
    SkewGenerator,
    coupling_from_z,
    log_abs_det,
    make_coupling,
    orthogonal_angles,
    orthogonal_log,
    polar_decompose,
)
from .groundstate import (
    CanonicalGroundState,
    PairingMatrix,
    ParityInfo,
    canonical_ground_state,
    pairing_matrix,
    parity_of,
)
from .fidelity import (
    FidelityResult,
    PerturbativeCoefficient,
    fidelity_angles,
    fidelity_commuting,
    fidelity_det,
    fidelity_pairing,
    perturbative_s2,
    s2_multimode_uniform,
)
from .models import (
    CompleteGraphParams,
    block_angles,
    complete_graph,
    multimode_uniform,
    two_mode_staggered,
    two_mode_uniform,
)
from .fock import (
    ExactGroundState,
    FockVector,
    annihilation_operators,
    build_fock_hamiltonian,
    fock_ground_state,
    fock_hamiltonian_from_ab,
    fock_overlap,
    state_from_angles,
    state_from_pairing,
)
from .sweep import (
    SweepConfig,
    SweepRecord,
    emit_records,
    first_order_boundary,
    load_records,
    run_sweep,
)

__version__ = "0.1.0"
