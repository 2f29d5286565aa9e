"""Nonparametric regression on an exact Gauss-Jordan solver with a simulated Grover pivot search."""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    DataError,
    DegreesOfFreedomError,
    EmptyNeighborhoodError,
    IntegrityError,
    QnnprError,
    RejectedInput,
)
from .fdist import betainc, f_cdf, f_quantile
from .gje import (
    Backend,
    Matrix,
    RrefResult,
    SolutionSet,
    find_pivot,
    inverse,
    is_consistent,
    pseudoinverse,
    rref,
    solve,
)
from .grover import (
    GroverResult,
    Oracle,
    grover_iterate,
    grover_search,
    optimal_iterations,
    success_probability,
)
from .linreg import (
    ConfidenceBand,
    Dataset,
    FitResult,
    confidence_band,
    fit_linear,
    hat_matrix,
    residual_variance,
    smoother_vector,
    training_accept,
)
from .localpoly import (
    KernelSpec,
    LocalDesign,
    LocalFit,
    kernel_weight,
    local_band,
    local_design,
    local_fit,
    nadaraya_watson,
)
from .quantum import (
    Gate,
    MeasurementOutcome,
    StateVector,
    apply_gate,
    measure_all,
    new_state,
    probability_of,
    qft,
    standard_gate,
)
