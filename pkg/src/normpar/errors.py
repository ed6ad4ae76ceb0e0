"""Exception types shared across the package."""


class InputError(ValueError):
    """Raised when an argument is malformed: wrong shape, non-finite
    entries, or an out-of-range parameter."""


class NotApplicableError(RuntimeError):
    """Raised when a procedure's structural hypothesis fails and no
    decision can be reported (e.g. a non-positive block where a positive
    one is required)."""


class WitnessFailureError(RuntimeError):
    """Raised when a witness was constructed but its defining equalities
    do not hold within tolerance.  Signals a borderline input rather than
    a bug."""


class InvalidWitnessError(ValueError):
    """Raised when a caller-supplied witness violates its precondition."""
