"""Exception types raised by the data lookups and solvers."""


class DomainError(ValueError):
    """Input outside the physical or tabulated domain of an operation."""


class FrequencyRangeError(DomainError):
    """Requested frequency is outside the covered band."""


class LosslessMediumError(DomainError):
    """Operation undefined for a lossless medium (infinite penetration depth)."""


class StackError(ValueError):
    """Layer stack does not have the shape the operation requires."""


class LimitNotDefinedError(ValueError):
    """The queried standard defines no limit for the requested exposure context."""


class NearFieldError(ValueError):
    """Far-field power density requested inside the near-field boundary."""

    def __init__(self, distance_m: float, boundary_m: float):
        self.distance_m = distance_m
        self.boundary_m = boundary_m
        super().__init__(
            f"distance {distance_m:.4g} m is inside the near-field boundary "
            f"{boundary_m:.4g} m; power density there requires numerical modeling"
        )


class SolverError(RuntimeError):
    """Numeric failure inside a linear solve or minimum search."""
