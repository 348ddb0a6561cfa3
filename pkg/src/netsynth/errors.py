"""Exception hierarchy shared across netsynth."""


class NetsynthError(Exception):
    """Base class for all netsynth errors."""


class ShapeError(NetsynthError, ValueError):
    """A rational function does not have the k(a0 s^2 + a1 s + 1)/(s(d0 s^2 + d1 s + 1)) shape."""


class PoleError(NetsynthError, ArithmeticError):
    """Evaluation hit a pole."""


class ParseError(NetsynthError, ValueError):
    """Syntax error in a rational-function expression."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NetlistFormatError(NetsynthError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


class SingularNetworkError(NetsynthError):
    """The node-admittance system has no unique solution."""


class NonPlanarError(NetsynthError):
    pass


class DegenerateDual(NetsynthError, ValueError):
    """Frequency-inverse dual requested for a0 = 0 or d0 = 0."""


class NotPositiveReal(NetsynthError, ValueError):
    pass


class ConditionError(NetsynthError, ValueError):
    """A realization was requested for an admittance outside its condition region."""


class DiscriminantViolation(ConditionError):
    pass


class OrderingViolation(ConditionError):
    pass


class VerificationError(NetsynthError):
    """A synthesized network failed its admittance round-trip."""
