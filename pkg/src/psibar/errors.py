"""Exception types shared across the package.

Plain ``ValueError`` is used for ordinary domain errors (n = 0, k out of
range, ...); the classes here mark conditions the CLI maps to dedicated
exit codes or that indicate an implementation bug rather than bad input.
"""


class CapacityError(Exception):
    """A requested computation exceeds the configured memory/size limits."""


class InsufficientSieveError(CapacityError):
    """A query needs a larger sieve than the one supplied."""


class IterationCapExceeded(RuntimeError):
    """An internal iteration guard tripped; indicates a bug, not bad input."""


class InternalInconsistencyError(RuntimeError):
    """Arithmetic invariants disagree (e.g. a class label that cannot exist)."""


class SieveFileError(Exception):
    """A sieve file is malformed, truncated, or fails its checksum."""
