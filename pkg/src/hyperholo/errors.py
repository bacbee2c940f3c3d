"""Exception hierarchy shared by every module."""


class HyperholoError(Exception):
    """Base class; the CLI maps it to exit code 2."""


class BasisMismatch(HyperholoError, ValueError):
    pass


class SingularMatrix(HyperholoError, ValueError):
    pass


class InvalidParameter(HyperholoError, ValueError):
    pass


class VariableViolation(HyperholoError, ValueError):
    def __init__(self, message, variable=None):
        super().__init__(message)
        self.variable = variable


class DegenerateParams(HyperholoError, ValueError):
    pass


class SchemaError(HyperholoError, ValueError):
    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class ExprSyntaxError(HyperholoError, ValueError):
    """Malformed expression text; ``position`` is a 0-based character offset."""

    def __init__(self, message, position, source=""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.source = source


class WrongCoordinateSystem(ExprSyntaxError):
    pass
