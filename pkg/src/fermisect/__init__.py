"""Bisected 1-D massive Fermi field toolkit.

Subsection mode bases on a bisected interval, closed-form Bogoliubov
coefficients with an independent quadrature oracle, the resulting vacuum
noise spectra and cross-half correlations, an exact fermionic Fock-space
engine, phase-space smeared detector statistics, and a two-outcome POVM toy
model.
"""

from .bogoliubov import (
    BogoliubovPair,
    QuadratureUnresolved,
    alpha_entry,
    beta_entry,
    build_pair,
    calibrate,
    canonicity_residual,
    coeff_a,
    coeff_b,
    coeff_w,
    overlap_oracle,
)
from .detector import (
    DetectorMode,
    LevelTooHigh,
    PhasePoint,
    WidthMismatch,
    gram_matrix,
    ground_overlap,
    joint_correlation,
    joint_correlation_exact,
    mode_overlap,
    registration_prob_one,
    registration_prob_two,
    wavefunction,
)
from .field import (
    Branch,
    DegenerateDispersion,
    FieldConfig,
    Ladder,
    ModeIndex,
    Region,
    Spinor,
    energy,
    mode_function,
    momentum,
    spinor,
    spinor_overlap,
)
from .fock import (
    DimensionTooLarge,
    FockSpace,
    QuasiOperator,
    build_space,
    random_canonical_transform,
    vacuum_expectation,
)
from .povm import (
    JointTable,
    OutOfRange,
    UndefinedConditional,
    conditionals,
    entangled_table,
    product_table,
)
from .spectrum import (
    CorrelationMatrix,
    OccupationSpectrum,
    correlation_matrix,
    cross_correlation,
    occupation,
    occupation_spectrum,
)

__version__ = "0.1.0"
