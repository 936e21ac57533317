"""Exception types shared across the package."""


class DustlabError(Exception):
    """Base class for all dustlab errors."""


class DomainError(DustlabError, ValueError):
    """A parameter is outside the mathematical domain of the operation."""


class ToleranceError(DustlabError, ValueError):
    """A requested tolerance is not positive."""


class ResourceError(DustlabError, RuntimeError):
    """A configured node or cell cap was exceeded; the query fails loudly."""


class EpsOutOfRange(DustlabError, ValueError):
    """Epsilon lies outside the window where the requested decomposition is valid."""


class DegenerateError(DustlabError, ArithmeticError):
    """A coefficient-matching system is singular for the given parameter."""
