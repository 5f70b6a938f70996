"""Exception types shared across the package."""


class PainleveLabError(Exception):
    """Base class for all package errors."""


class PoleError(PainleveLabError, ZeroDivisionError):
    """A function or map was evaluated on one of its poles."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class ResonanceError(PainleveLabError):
    """The Briot-Bouquet determinant vanished at order ``n``."""

    def __init__(self, n, delta, condition=None):
        msg = f"resonance at order n={n}: |Delta_n| = {abs(delta):.3e}"
        super().__init__(msg if condition is None else f"{msg} ({condition})")
        self.n = n
        self.delta = delta
        self.condition = condition


class ExistenceError(PainleveLabError):
    """A catalog solution does not exist for the requested parameters."""

    def __init__(self, condition):
        super().__init__(condition)
        self.condition = condition


class ParameterError(PainleveLabError, ValueError):
    """Parameters are incomplete or violate the kind's affine constraint."""


class UnsupportedRetag(PainleveLabError):
    """A t-changing map leaves the supported expansion points."""


class ConvergenceError(PainleveLabError, ArithmeticError):
    """A series or iteration failed to converge at the requested point."""


class StepSizeError(PainleveLabError, ArithmeticError):
    """The adaptive integrator could not meet its tolerance."""
