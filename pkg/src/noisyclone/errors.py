"""Error taxonomy shared across the package.

The CLI maps these onto exit codes: ConfigError -> 2, DataError -> 3,
NumericError -> 4.
"""


class ConfigError(ValueError):
    """Invalid configuration or incompatible config hashes."""


class DataError(ValueError):
    """Malformed or inconsistent input data (audio, manifests, labels)."""


class NumericError(ArithmeticError):
    """Non-finite values or numerically impossible requests."""
