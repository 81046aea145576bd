"""Exact step-function toolkit for norm compactness in Lebesgue-Bochner spaces."""

__version__ = "0.1.0"

from .banach import FiniteDimVector, SparseSeqVector, Vector, canonical_basis, norm_power, scalar
from .measure_space import (
    MeasurableSet,
    MeasureSpace,
    Partition,
    common_refinement,
    dyadic_partition,
    dyadic_space,
    is_refinement,
)
from .operators import cond_expect, ess_osc, mean_value_gap
from .stepfn import StepFunction, scalar_function

__all__ = [
    "FiniteDimVector",
    "MeasurableSet",
    "MeasureSpace",
    "Partition",
    "SparseSeqVector",
    "StepFunction",
    "Vector",
    "__version__",
    "canonical_basis",
    "common_refinement",
    "cond_expect",
    "dyadic_partition",
    "dyadic_space",
    "ess_osc",
    "is_refinement",
    "mean_value_gap",
    "norm_power",
    "scalar",
    "scalar_function",
]
