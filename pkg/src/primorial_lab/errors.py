"""Exception vocabulary shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class RangeError(ValueError):
    """A query exceeds the sieved range; the message names the limit needed."""


class ResourceLimitError(RuntimeError):
    """A configured memory/size ceiling would be exceeded."""


class CapabilityError(RuntimeError):
    """The input is structurally out of reach (e.g. unfactorable candidate)."""


class DegenerateInputError(ValueError):
    """The input collapses the computation (e.g. cutoff below the first prime)."""


class CacheIntegrityError(RuntimeError):
    """The on-disk result cache is inconsistent and will not be reused."""
