"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Raised when an argument violates a documented precondition."""


class DisconnectedSubgraphError(InvalidInputError):
    """Raised when a Laplacian does not have rank n-1 (subgraph not connected)."""


class InconsistentSystemError(RuntimeError):
    """Raised when Z*alpha = delta has no solution within tolerance."""


class DegenerateAlphaError(RuntimeError):
    """Raised when the alpha vector vanishes and the limit formula is undefined."""


class DegenerateAngleError(RuntimeError):
    """Raised when deflated subspaces are numerically identical (cos angle = 1)."""
