"""Exception types shared across the package."""


class CapacityError(ValueError):
    """Requested size exceeds a configured memory/vertex budget."""


class SpaceMismatchError(ValueError):
    """Points (or regions) belong to different space models."""


class NonUniqueArcError(ValueError):
    """Two points of a graph with cycles are joined by more than one arc."""

    def __init__(self, message, multiplicity=None):
        super().__init__(message)
        self.multiplicity = multiplicity


class NotAsymptoticError(ValueError):
    """An operation requiring an asymptotic pair was given a non-asymptotic one."""
