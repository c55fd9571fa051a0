"""Exception hierarchy.

Every error carries a ``code`` slug; the CLI writes it into the ``error``
column of its CSV output.
"""


class TSCalcError(Exception):
    code = "error"


# -- time scales ---------------------------------------------------------

class TimeScaleError(TSCalcError, ValueError):
    code = "time_scale_error"


class EmptyScale(TimeScaleError):
    code = "empty_scale"


class InvalidSegment(TimeScaleError):
    code = "invalid_segment"


class PointNotInScale(TimeScaleError):
    code = "point_not_in_scale"


# -- expressions ---------------------------------------------------------

class ParseError(TSCalcError, ValueError):
    code = "parse_error"

    def __init__(self, position, message):
        self.position = position
        self.message = message
        super().__init__(f"{message} (at offset {position})")


class EvalError(TSCalcError, ArithmeticError):
    code = "evaluation_error"


class DomainError(EvalError):
    code = "domain_error"


class NonFinite(EvalError):
    code = "non_finite"


# -- derivatives ---------------------------------------------------------

class DerivativeError(TSCalcError, ArithmeticError):
    code = "derivative_error"


class NotInKappaKappa(DerivativeError):
    code = "not_in_kappa_kappa"


class ReflectionInadmissible(DerivativeError):
    code = "reflection_inadmissible"


class OneSidedInadmissible(DerivativeError):
    code = "one_sided_inadmissible"


class NoConvergence(DerivativeError):
    code = "no_convergence"


class ZeroPoint(DerivativeError):
    code = "zero_point"


class ZeroDenominator(DerivativeError):
    code = "zero_denominator"
