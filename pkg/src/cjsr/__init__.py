"""Spectral radii and stability of switched linear systems under constraints.

Words are written in application order, ``w = i_1 i_2 ... i_n``, and act as
``S_w = S_{i_n} ... S_{i_1}``: the last letter is the leftmost factor.
"""

from .bounds import (
    BoundsConfig,
    BoundsReport,
    DepthRow,
    all_products,
    cycle_lower_bound,
    depth_sweep,
    jsr_bounds,
    refine_norm,
    rho_hat_n,
    rho_n,
)
from .constraint import (
    Alphabet,
    Constraint,
    Cycle,
    Recoding,
    admissible_words,
    count_admissible,
    higher_block_recode,
    is_admissible,
    is_periodic,
    periodic_words,
    prune_sinks,
    simple_cycles,
)
from .errors import BudgetExceeded, EmptyConstraint, InadmissibleSignal
from .lyapunov import (
    ExponentEstimate,
    best_periodic_exponent,
    exponent_along,
    question1_experiment,
    random_admissible_signal,
)
from .matcore import NormKind, norm, spectral_radius
from .stability import (
    Reason,
    StabilityVerdict,
    Status,
    certify,
    check_condition_c,
    check_product_boundedness,
    simulate_decay,
)
from .system import SwitchedSystem, product_along_word
from .systemfile import SystemFile, SystemFileError

__version__ = "0.1.0"

__all__ = [
    "BoundsConfig",
    "BoundsReport",
    "DepthRow",
    "all_products",
    "cycle_lower_bound",
    "depth_sweep",
    "jsr_bounds",
    "refine_norm",
    "rho_hat_n",
    "rho_n",
    "Alphabet",
    "Constraint",
    "Cycle",
    "Recoding",
    "admissible_words",
    "count_admissible",
    "higher_block_recode",
    "is_admissible",
    "is_periodic",
    "periodic_words",
    "prune_sinks",
    "simple_cycles",
    "BudgetExceeded",
    "EmptyConstraint",
    "InadmissibleSignal",
    "ExponentEstimate",
    "best_periodic_exponent",
    "exponent_along",
    "question1_experiment",
    "random_admissible_signal",
    "NormKind",
    "norm",
    "spectral_radius",
    "Reason",
    "StabilityVerdict",
    "Status",
    "certify",
    "check_condition_c",
    "check_product_boundedness",
    "simulate_decay",
    "SwitchedSystem",
    "product_along_word",
    "SystemFile",
    "SystemFileError",
]
