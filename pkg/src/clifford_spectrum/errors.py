"""Exception types shared across the package."""


class InconsistencyError(RuntimeError):
    """Two independent computations that must agree exactly did not.

    Raised only when something is wrong with the implementation itself; the CLI
    maps it to exit status 1.
    """


class ExactModeError(ValueError):
    """An exact computation was requested for a non-integer p."""


class InvalidFrameError(ValueError):
    """A frame field was used with a target bundle that does not carry it."""


class NotEigenfunctionError(ValueError):
    """A closed-form operator formula was applied to a non-eigenfunction."""
