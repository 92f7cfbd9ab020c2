"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument violates an operation's documented domain."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed its configured size or iteration budget."""
