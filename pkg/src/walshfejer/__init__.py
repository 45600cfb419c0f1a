"""Finite-resolution Walsh analysis on the dyadic group and its square.

The package works with step functions that are constant on dyadic cells,
so every object is a finite array and every identity can be checked by
integer or rational arithmetic.  Layers:

``dyadic``       bit-level indexing, characters, cell combinatorics
``stepfn``       exact step functions, regions, quasinorms
``kernels``      Dirichlet kernels and the triangular summability kernels
``operators``    fast Walsh transform, multipliers, convolution, means
``hardy``        atoms, the dyadic maximal function, atomic-space norms
``experiments``  ratio scans and identity suites behind the CLI
"""

from .dyadic import (
    MAX_LEVELS,
    DyadicPoint,
    Resolution,
    index_bit,
    point,
    rademacher,
    reverse_bits,
    tail_index,
    walsh,
    xor_add,
)
from .stepfn import (
    Region,
    StepFunction1D,
    StepFunction2D,
    SupEnvelope,
    integrate_abs_p,
    lp_quasinorm,
    sup_envelope,
    weak_lp_quasinorm,
)
from .kernels import (
    AlphaFamily,
    BlockDecomposition,
    CheckReport,
    alpha_kernel_sum,
    block_decomposition,
    block_decomposition_check,
    dirichlet,
    dirichlet_closed_form_check,
    dirichlet_shift_check,
    dirichlet_values,
    fejer_1d,
    marcinkiewicz_kernel,
    marcinkiewicz_kernel_sum,
    paired_kernel_sum,
    paley_check,
    reflection_identity_check,
    triangle_kernel_sum_by_definition,
    triangular_dirichlet,
    triangular_fejer_kernel,
    tr_kernel_routes_check,
    walsh_matrix,
    walsh_row,
    weighted_family,
)
from .operators import (
    Spectrum1D,
    SpectrumGrid2D,
    apply_multiplier,
    convolve,
    fourier_coefficients,
    marcinkiewicz_fejer_mean,
    marcinkiewicz_fejer_multiplier,
    naive_convolution,
    rectangular_partial_sum,
    spectrum_to_function,
    square_partial_sum,
    triangular_fejer_mean,
    triangular_fejer_multiplier,
    triangular_partial_sum,
)
from .hardy import (
    Atom,
    hp_quasinorm,
    make_atom,
    maximal_function,
    quasilocality_integral,
    triangular_mean_of_atom,
)
from .experiments import (
    COMMANDS,
    CommandReport,
    ExperimentConfig,
    ReportRow,
    SamplingPolicy,
    bounded_ratio_verdict,
    sample_orders,
    write_report,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_LEVELS",
    "DyadicPoint",
    "Resolution",
    "index_bit",
    "point",
    "rademacher",
    "reverse_bits",
    "tail_index",
    "walsh",
    "xor_add",
    "Region",
    "StepFunction1D",
    "StepFunction2D",
    "SupEnvelope",
    "integrate_abs_p",
    "lp_quasinorm",
    "sup_envelope",
    "weak_lp_quasinorm",
    "AlphaFamily",
    "BlockDecomposition",
    "CheckReport",
    "alpha_kernel_sum",
    "block_decomposition",
    "block_decomposition_check",
    "dirichlet",
    "dirichlet_closed_form_check",
    "dirichlet_shift_check",
    "dirichlet_values",
    "fejer_1d",
    "marcinkiewicz_kernel",
    "marcinkiewicz_kernel_sum",
    "paired_kernel_sum",
    "paley_check",
    "reflection_identity_check",
    "triangle_kernel_sum_by_definition",
    "triangular_dirichlet",
    "triangular_fejer_kernel",
    "tr_kernel_routes_check",
    "walsh_matrix",
    "walsh_row",
    "weighted_family",
    "Spectrum1D",
    "SpectrumGrid2D",
    "apply_multiplier",
    "convolve",
    "fourier_coefficients",
    "marcinkiewicz_fejer_mean",
    "marcinkiewicz_fejer_multiplier",
    "naive_convolution",
    "rectangular_partial_sum",
    "spectrum_to_function",
    "square_partial_sum",
    "triangular_fejer_mean",
    "triangular_fejer_multiplier",
    "triangular_partial_sum",
    "Atom",
    "hp_quasinorm",
    "make_atom",
    "maximal_function",
    "quasilocality_integral",
    "triangular_mean_of_atom",
    "COMMANDS",
    "CommandReport",
    "ExperimentConfig",
    "ReportRow",
    "SamplingPolicy",
    "bounded_ratio_verdict",
    "sample_orders",
    "write_report",
    "__version__",
]
