"""Model checking, model properties and model transformations."""

from .evaluator import Trace, Verdict, eval, eval_all, truth_set
from .jl import (
    JLModel,
    JLViolation,
    eval_jl,
    jl_transform,
    load_jl_model,
    print_jl_model,
    truth_set_jl,
    validate_jl,
)
from .properties import (
    FactivityViolation,
    IntrospectionViolation,
    check_factivity,
    check_introspection,
    introspection_universe,
    introspective_completion,
)
from .transforms import factive_transform

__all__ = [
    "FactivityViolation",
    "IntrospectionViolation",
    "JLModel",
    "JLViolation",
    "Trace",
    "Verdict",
    "check_factivity",
    "check_introspection",
    "eval",
    "eval_all",
    "eval_jl",
    "factive_transform",
    "introspection_universe",
    "introspective_completion",
    "jl_transform",
    "load_jl_model",
    "print_jl_model",
    "truth_set",
    "truth_set_jl",
    "validate_jl",
]
