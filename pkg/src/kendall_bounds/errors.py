"""Exception types shared across the package."""


class KendallBoundsError(Exception):
    """Base class for package-specific failures."""


class SizeMismatchError(KendallBoundsError, ValueError):
    """Two permutations of different degree were combined."""


class ResourceCapError(KendallBoundsError):
    """An operation was requested beyond its configured size cap."""


class SolverDiagnosticError(KendallBoundsError):
    """A solver finished in a state that should not occur on valid inputs.

    Carries the offending instance (when available) on the ``payload``
    attribute so it can be serialized for inspection.
    """

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload
