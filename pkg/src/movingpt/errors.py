"""Exception hierarchy shared by all modules."""


class MovingPTError(ValueError):
    """Base class for domain errors raised by movingpt."""


class DomainError(MovingPTError):
    """Argument outside the domain of a special function."""


class DegenerateParametersError(MovingPTError):
    """The X1 construction needs beta != alpha and beta + alpha + 2n != 0."""


class SingularityError(MovingPTError):
    """Evaluation requested at or beyond a wall where the potential diverges."""


class OutOfBoxError(MovingPTError):
    """Position outside the instantaneous box [0, L(t)]."""


class InvalidParametersError(MovingPTError):
    """Potential or boundary parameters violate their invariants."""


class QuadratureError(MovingPTError):
    """Node doubling did not reach the requested tolerance."""

    def __init__(self, message, estimates=None):
        super().__init__(message)
        self.estimates = estimates


class ConfigError(MovingPTError):
    """Invalid run configuration (CLI exit code 2)."""
