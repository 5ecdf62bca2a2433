"""Exception hierarchy.

Domain failures (``ValidationError`` subclasses) carry a machine-readable
``witness`` mapping; the CLI maps them to exit code 2.  Input problems
(``InputError``) map to exit code 3.
"""


class WeightedLieError(Exception):
    """Base class for every error raised by the package."""


class InputError(WeightedLieError):
    """Malformed input: bad files, unparseable expressions, unknown names."""


class ExpressionSyntaxError(InputError):
    def __init__(self, message, text, position):
        self.text = text
        self.position = position
        caret = " " * position + "^"
        super().__init__(f"{message} at position {position}\n  {text}\n  {caret}")


class UnknownName(InputError):
    pass


class ValidationError(WeightedLieError):
    """A well-formed input that violates a mathematical requirement."""

    def __init__(self, message, **witness):
        super().__init__(message)
        self.witness = witness


class DimensionMismatch(ValidationError):
    pass


class JacobiViolation(ValidationError):
    pass


class NonNilpotent(ValidationError):
    pass


class NotGenerating(ValidationError):
    pass


class LinearDependence(ValidationError):
    pass


class NotReduced(ValidationError):
    pass


class GradingViolation(ValidationError):
    pass


class IrrationalPower(ValidationError):
    pass


class ZeroForm(ValidationError):
    pass


class MismatchedAlgebra(ValidationError):
    pass


class NotSelfAdjoint(ValidationError):
    pass


class NotCommuting(ValidationError):
    pass


class Inhomogeneous(ValidationError):
    pass


class NotADerivation(ValidationError):
    pass


class NoSuchPower(ValidationError):
    pass


class NoCommonMultiple(ValidationError):
    pass


class NonAbelian(ValidationError):
    pass


class TruncationDominates(ValidationError):
    pass


class ZeroMass(ValidationError):
    pass
