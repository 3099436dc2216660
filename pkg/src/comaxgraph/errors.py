"""Exception types shared across the package."""


class RingError(ValueError):
    """Invalid ring specification or ring operation."""


class CapExceeded(RingError):
    """A ring or ideal lattice is larger than the configured cap."""


class GuardExceeded(RuntimeError):
    """An exponential search was asked to run past its size guard."""


class InconsistencyError(AssertionError):
    """Two independent computations of the same quantity disagree.

    This always signals a bug, never bad input.
    """
