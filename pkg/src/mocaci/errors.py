"""Exception types shared across modules."""


class DimensionError(ValueError):
    """Input has the wrong length, shape or diameter."""


class PreconditionError(ValueError):
    """Input violates a construction's precondition (e.g. a non-bipermutive rule)."""


class NotAnEdgeError(ValueError):
    """Two de Bruijn vertices do not overlap."""


class VerificationError(RuntimeError):
    """A construction failed its own post-check."""
