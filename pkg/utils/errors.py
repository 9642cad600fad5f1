"""
Error taxonomy for the control-ability analysis toolkit.

Numerical modules raise these exceptions. The analyzer layer turns them into
error payloads, and the CLI turns payloads into exit codes:
1 for input problems, 2 for structural problems, 3 for unsupported requests.
"""


class CtlError(Exception):
    """Base class; ``code`` is the machine-readable name of the failure."""

    exit_code = 2

    def __init__(self, message=None):
        super().__init__(message or self.__class__.__name__)

    @property
    def code(self):
        return self.__class__.__name__

    def to_dict(self):
        return {"error": str(self), "code": self.code, "exit_code": self.exit_code}


class InputError(CtlError):
    exit_code = 1


class SystemFileError(InputError):
    """Missing, unreadable or schema-violating system file."""


class StructuralError(CtlError):
    exit_code = 2


class NonFinite(StructuralError):
    pass


class DimensionMismatch(StructuralError):
    pass


class Singular(StructuralError):
    pass


class ComplexSpectrum(StructuralError):
    pass


class IllConditioned(StructuralError):
    pass


class EigenvalueOutOfRange(StructuralError):
    pass


class RepeatedEigenvalues(StructuralError):
    pass


class SharedBlockEigenvalue(StructuralError):
    pass


class NotAntiStable(StructuralError):
    pass


class Degenerate(StructuralError):
    pass


class UnsupportedError(CtlError):
    exit_code = 3


class MultiInputUnsupported(UnsupportedError):
    pass


class DimensionUnsupported(UnsupportedError):
    pass
