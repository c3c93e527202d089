"""Exact computation on bounded Vilenkin groups: characters and transforms,
Dirichlet kernels, partial-sum and maximal operators, martingale Hardy
spaces, and explicit divergence constructions."""

from .core import (
    BaseSequence,
    FiniteFunction,
    GroupPoint,
    IntervalSpec,
    haar_integral,
    linf_norm,
    load_function,
    lp_norm,
    resolution_ceiling,
    save_function,
    shell_decomposition,
    translate,
    weak_lp_norm,
)
from .counterexamples import (
    PhiWeight,
    get_phi,
    kernel_block,
    phi_presets,
    theorem1b_ratio,
    theorem1b_ratio_L1,
    theorem3b_martingale,
    theorem3b_modulus_bound,
    theorem3b_residuals,
    theorem4b_martingale,
    theorem4b_residuals,
)
from .hardy import (
    AtomCheck,
    AtomSpec,
    Martingale,
    atomic_assemble,
    hardy_norm,
    load_decomposition,
    maximal_function,
    modulus,
    random_atom,
    validate_atom,
)
from .kernels import (
    KernelReport,
    dirichlet,
    dirichlet_factored,
    dirichlet_paley,
    dirichlet_sweep,
    kernel_report,
    lebesgue_constant,
    lemma2_profile,
    q_index,
)
from .sums import (
    WeightSpec,
    conditional_expectation,
    gat_log_mean,
    maximal_S,
    partial_sum,
    partial_sum_conv,
    strong_sum,
    weighted_maximal,
)
from .transform import (
    Spectrum,
    analyze_fast,
    analyze_naive,
    character_values,
    load_spectrum,
    rademacher,
    save_spectrum,
    synthesize,
    vilenkin,
)

__version__ = "0.1.0"
