"""Exception types shared across the package."""


class ContractViolation(ValueError):
    """An operation was called with inputs that break its preconditions."""


class GenerationError(RuntimeError):
    """A world generator failed to produce a solvable map within its retry budget."""

    def __init__(self, message, spec=None):
        super().__init__(message)
        self.spec = spec


class OracleError(RuntimeError):
    """Exhaustive-search ground truth could not be computed (e.g. isolated goal)."""


class ConfigError(RuntimeError):
    """Bad or missing configuration / artifact files."""


class FieldLookupError(LookupError):
    """A grid-backed heuristic or rater was queried outside its stored field."""
