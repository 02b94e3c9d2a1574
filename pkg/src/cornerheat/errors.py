"""Exception hierarchy shared by all cornerheat modules."""


class CornerHeatError(Exception):
    """Base class for every error raised by this package."""


class InputError(CornerHeatError, ValueError):
    """An argument violates a documented precondition."""


class SymmetryError(InputError):
    """A curvature jet does not satisfy the rotational symmetry a formula needs."""

    def __init__(self, condition, detail=""):
        self.condition = condition
        msg = f"symmetry precondition failed: {condition}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class DomainError(CornerHeatError):
    """A point or trajectory left the domain where a profile is valid."""

    def __init__(self, message, exit_parameter=None):
        self.exit_parameter = exit_parameter
        super().__init__(message)


class ConvexityError(CornerHeatError):
    """The geodesic boundary value problem could not be solved."""


class ProfileError(CornerHeatError):
    """The rotational profile is not admissible on the requested interval."""


class SolverError(CornerHeatError):
    """A numerical solver failed to converge."""


class TruncationError(CornerHeatError):
    """A spectral sum was truncated too early for the requested time."""

    def __init__(self, message, minimal_count=None):
        self.minimal_count = minimal_count
        super().__init__(message)


class FitError(CornerHeatError):
    """The least-squares design is unusable for the requested window."""


class ConfigError(CornerHeatError):
    """Configuration could not be parsed or validated."""


class InfeasibleError(CornerHeatError):
    """A configured task cannot be carried out with the available numerics."""
