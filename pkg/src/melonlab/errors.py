"""Exception types shared across melonlab."""


class MelonError(ValueError):
    """Base class for invalid requests."""


class DomainError(MelonError):
    """An argument lies outside the domain of the function."""


class DimensionError(MelonError):
    """A matrix has the wrong shape."""


class CapacityError(MelonError):
    """A request exceeds a hard size guard (enumeration, symbolic determinants)."""
