class NomaError(Exception):
    """Base class for every error raised by the project."""


class ParameterDomainError(NomaError, ValueError):
    pass


class DegeneratePrecoderError(NomaError):
    """Sigma = V^H R_T V is singular for the given precoder."""


class InfeasibleAllocationError(NomaError):
    """Power allocation cannot support the target rates.

    stream and user_order are 1-based and point to the first violation.
    """

    def __init__(self, message, stream=None, user_order=None):
        super().__init__(message)
        self.stream = stream
        self.user_order = user_order


class SingularDistanceError(NomaError, ValueError):
    pass


class RangeRefusalError(NomaError):
    """Series evaluation refused, argument above the switch threshold."""


class ConvergenceError(NomaError):
    pass


class AccuracyNotReachedError(NomaError):
    def __init__(self, message, estimate, error_bound):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class DegenerateDrawError(NomaError):
    pass


class ConsistencyFault(NomaError):
    """Two independent implementations of the same quantity disagree."""


class ConfigError(NomaError):
    def __init__(self, message, key=None, line=None):
        where = ''
        if key is not None:
            where = f'{key}'
            if line is not None:
                where += f' (line {line})'
            where += ': '
        super().__init__(f'{where}{message}')
        self.key = key
        self.line = line
