"""Certified cubature and Hadamard-type bounds for Lipschitz functions on rectangles."""

from ._core import (
    Error,
    EvalError,
    Expr,
    InvalidSpec,
    InvalidTolerance,
    ParseError,
    SingularityInDomain,
    UnboundedDerivative,
    UnknownBuiltin,
    bounds,
    builtin,
    builtin_names,
    certified_lipschitz,
    h_value,
    integrate,
    mean,
    parse,
    verify,
)

__all__ = [
    "Error",
    "EvalError",
    "Expr",
    "InvalidSpec",
    "InvalidTolerance",
    "ParseError",
    "SingularityInDomain",
    "UnboundedDerivative",
    "UnknownBuiltin",
    "bounds",
    "builtin",
    "builtin_names",
    "certified_lipschitz",
    "h_value",
    "integrate",
    "mean",
    "parse",
    "verify",
]
