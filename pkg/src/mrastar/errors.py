"""Exception types shared across the package."""


class MrastarError(Exception):
    """Base class for all package-specific errors."""


class InvalidProblemError(MrastarError, ValueError):
    """A planning query violates a precondition (blocked endpoint, bad
    ladder, endpoint not on the required sublattice, and so on)."""


class SearchCorruptionError(MrastarError, RuntimeError):
    """An internal search invariant was violated.  Raised instead of
    silently producing a wrong answer; indicates a bug, not bad input."""


class MapParseError(MrastarError, ValueError):
    """A map file could not be parsed.

    line and col are 1-based; col is None when the error concerns a whole
    line (missing header field, wrong row count).
    """

    def __init__(self, message: str, line: int, col: int | None = None):
        loc = f"line {line}" if col is None else f"line {line}, col {col}"
        super().__init__(f"{loc}: {message}")
        self.line = line
        self.col = col


class ScenarioGenerationError(MrastarError, RuntimeError):
    """Scenario sampling could not produce the requested number of
    connected start/goal pairs within the attempt budget."""
