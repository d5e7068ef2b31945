# errors.py
#
# Exception hierarchy. Every error carries a stable `kind` string which the
# CLI copies into its structured error object.


class TorusBundleError(Exception):
    kind = "TorusBundleError"

    def __init__(self, message=""):
        super().__init__(message)
        self.message = message

    def to_dict(self):
        return {"kind": self.kind, "message": self.message}


# ----------------------------------------------------------------------
# Validation errors (bad input; CLI exit code 1)
# ----------------------------------------------------------------------

class ValidationError(TorusBundleError):
    kind = "ValidationError"


class DimensionMismatch(ValidationError):
    kind = "DimensionMismatch"


class InvalidSurface(ValidationError):
    kind = "InvalidSurface"


class SurfaceMismatch(ValidationError):
    kind = "SurfaceMismatch"


class InvalidDegree(ValidationError):
    kind = "InvalidDegree"


class NotInvertible(ValidationError):
    kind = "NotInvertible"


class RelatorNotSatisfied(ValidationError):
    kind = "RelatorNotSatisfied"


class GeneratorCountMismatch(ValidationError):
    kind = "GeneratorCountMismatch"


class EmptyRelator(ValidationError):
    kind = "EmptyRelator"


class NotAnInvolution(ValidationError):
    kind = "NotAnInvolution"


class RelatorMismatch(ValidationError):
    kind = "RelatorMismatch"


class ClassContextMismatch(ValidationError):
    kind = "ClassContextMismatch"


class NontrivialRho(ValidationError):
    kind = "NontrivialRho"


class NotSymplectic(ValidationError):
    kind = "NotSymplectic"


class IncompatiblePair(ValidationError):
    kind = "IncompatiblePair"


class InfiniteEnumeration(ValidationError):
    kind = "InfiniteEnumeration"


class JobSpecError(ValidationError):
    kind = "JobSpecError"


class ExpressionError(ValidationError):
    kind = "ExpressionError"


# ----------------------------------------------------------------------
# Internal errors (an implementation invariant broke; CLI exit code 2)
# ----------------------------------------------------------------------

class InternalError(TorusBundleError):
    kind = "InternalError"


class NoSolution(InternalError):
    kind = "NoSolution"


class NormalizationFailure(InternalError):
    kind = "NormalizationFailure"
