"""Unambiguous discrimination of two unknown qubits from program registers.

A register interleaves n copies each of two unknown program qubits and one
data qubit equal to one of them.  The package builds the measurement that
identifies which, never errs, and maximizes the average success over
uniformly random program qubits; it also carries the spectral feasibility
analysis, a brute-force full-space oracle, and Monte Carlo validation.
"""

from .symmetric import (
    Block,
    BlochQubit,
    ReducedIndex,
    ReducedOperator,
    ReducedState,
    binomial,
    build_input_state,
    build_symmetric_projector,
    dicke_amplitudes,
    reduced_dim,
)
from .povm import (
    PovmParams,
    PovmTriple,
    build_povm,
    closed_form_expectation,
    no_error_check,
    success_probability,
    total_success,
)
from .spectral import (
    BlockStructureError,
    SpectrumReport,
    TransformedBasis,
    build_transform,
    closed_form_extreme_eigenvalues,
    constraint_c2,
    extract_blocks,
    positivity_check,
    spectrum_report,
    transformed_pi0,
)
from .strategy import (
    DiscriminatorConfig,
    Regime,
    StrategyDecision,
    avg_success_expression,
    avg_success_povm,
    avg_success_projective,
    decide,
    optimal_c,
    validity_range,
)
from .fullspace import (
    FULL_N_MAX,
    FullState,
    compare_reduced,
    run_verification,
    symmetric_projector_full,
    tensor_input,
)
from .montecarlo import (
    McReport,
    OutcomeCounts,
    make_rng,
    mc_average_success,
    mc_projector_mean,
    sample_qubit,
    simulate_outcomes,
)

__version__ = "0.1.0"
