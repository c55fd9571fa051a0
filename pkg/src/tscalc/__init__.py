"""Calculus on time scales: symmetric, delta, nabla and diamond-alpha derivatives."""
from ._kernel import BACKEND
from .derivatives import (
    DerivativeResult,
    Method,
    NumericConfig,
    Weights,
    delta_derivative,
    diamond_alpha_derivative,
    gamma_weights,
    h_symmetric_quotient,
    nabla_derivative,
    q_symmetric_quotient,
    symmetric_derivative,
)
from .errors import (
    DerivativeError,
    DomainError,
    EmptyScale,
    EvalError,
    InvalidSegment,
    NoConvergence,
    NonFinite,
    NotInKappaKappa,
    OneSidedInadmissible,
    ParseError,
    PointNotInScale,
    ReflectionInadmissible,
    TimeScaleError,
    TSCalcError,
    ZeroDenominator,
    ZeroPoint,
)
from .expr import evaluate, parse, to_text
from .rules import PointData, rule_product, rule_quotient, rule_reciprocal, rule_scalar, rule_sum
from .timescale import (
    FinitePoints,
    GeometricLattice,
    Interval,
    PointClass,
    TimeScale,
    UniformLattice,
    normalize,
)

__version__ = "0.1.0"
