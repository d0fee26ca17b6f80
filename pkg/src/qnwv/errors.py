"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A network, property or parameter document failed validation."""


class ResourceLimitError(ValueError):
    """A problem exceeds the brute-force or simulator width ceiling."""
