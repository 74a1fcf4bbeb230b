"""Exception types shared across the toolkit."""


class HyperbError(Exception):
    """Base class for toolkit errors."""


class IntegrityError(HyperbError):
    """A computation contradicted a proven statement the toolkit checks.

    Raised instead of silently accepting an impossible state (e.g. a fully
    compressed family that matches none of the known fixpoint forms).
    """


class InfeasibleError(HyperbError):
    """The requested sweep is too large to run exhaustively."""
