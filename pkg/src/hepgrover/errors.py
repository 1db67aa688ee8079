"""Exception types shared across the package.

The CLI maps these onto exit codes: input-file problems (dataset, circuit
text, noise profile) exit 2, configuration problems exit 3, anything else 4.
"""


class HepgroverError(Exception):
    """Base class for all package errors."""


class CapacityError(HepgroverError, ValueError):
    """Qubit count outside the supported 1..24 range."""


class ValidationError(HepgroverError, ValueError):
    """Structurally invalid gate, circuit, state, or histogram."""


class UndefinedSearchError(HepgroverError, ValueError):
    """Search posed with zero marked entries where one is required."""


class DatasetError(HepgroverError, ValueError):
    """Lepton table could not be parsed; carries the offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CircuitTextError(HepgroverError, ValueError):
    """Circuit text file could not be parsed; carries line and column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            message = f"{where}: {message}"
        super().__init__(message)


class NoiseProfileError(HepgroverError, ValueError):
    """Noise-profile file missing keys or holding out-of-range values."""


class ConfigError(HepgroverError, ValueError):
    """Run configuration violates its invariants (shots, threshold, scheme)."""
