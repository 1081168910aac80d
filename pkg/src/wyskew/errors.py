"""Exception hierarchy shared by all modules."""


class WYSkewError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(WYSkewError, ValueError):
    pass


class ValidationError(WYSkewError, ValueError):
    """Input object does not satisfy the invariants of its type."""


class NotHermitian(ValidationError):
    pass


class NotUnitTrace(ValidationError):
    pass


class NotPositiveSemidefinite(ValidationError):
    pass


class NotUnitary(ValidationError):
    pass


class NotTracePreserving(ValidationError):
    pass


class BlochVectorTooLong(ValidationError):
    pass


class ParameterOutOfRange(ValidationError):
    pass


class ConvergenceFailure(WYSkewError, ArithmeticError):
    pass


class InternalConsistencyError(WYSkewError, ArithmeticError):
    """A provably nonnegative quantity or a proved identity failed beyond float noise."""


class NoFeasibleSample(WYSkewError, ValueError):
    pass


class UnknownProperty(WYSkewError, KeyError):
    pass
