"""Exception types shared across the package."""


class AntimagicError(Exception):
    """Base class for all errors raised by this package."""


class LoopError(AntimagicError):
    """A vertex merge would identify two adjacent vertices."""


class ParallelEdgeError(AntimagicError):
    """An operation would create two edges between the same vertex pair."""


class SumDriftError(AntimagicError):
    """A delete-add swap changed some vertex's induced label sum."""


class SumMismatchError(AntimagicError):
    """A merge block's label sum differs from the required target color."""


class UseSpecialCase(AntimagicError):
    """The requested parameters are served by a dedicated bespoke labeling."""


class IdentityError(AntimagicError):
    """A label matrix failed one of its arithmetic identities."""
