"""Exception types shared across the package."""


class ErconnError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ErconnError, ValueError):
    """An argument lies outside the documented domain of an operation."""


class RefusalError(ErconnError):
    """A structurally valid request that the implementation declines to run.

    Raised for hard size ceilings (enumeration blow-up) and for parameter
    regions where no asymptotic formula is claimed to apply.
    """
