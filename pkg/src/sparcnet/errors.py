"""Exception types shared across the package."""


class SparcnetError(Exception):
    """Base class for all sparcnet errors."""


class ParseError(SparcnetError):
    """A data or report file could not be parsed.

    Carries the offending location so callers can point at the problem:
    ``line`` is 1-based, ``offset`` is a byte offset into the file.
    """

    def __init__(self, message, path=None, line=None, offset=None):
        loc = str(path) if path is not None else "<input>"
        if line is not None:
            loc += f", line {line}"
        if offset is not None:
            loc += f", byte offset {offset}"
        super().__init__(f"{loc}: {message}")
        self.path = path
        self.line = line
        self.offset = offset


class ConfigError(SparcnetError):
    """A configuration value is out of range or inconsistent."""


class UndefinedDensityError(SparcnetError):
    """Edge density is undefined for complexes with fewer than 2 present members."""


class UndefinedOverlapError(SparcnetError):
    """Jaccard overlap of two empty sets is undefined."""


class UndefinedCorrelationError(SparcnetError):
    """Pearson correlation is undefined (zero variance or too few points)."""


class AuditError(SparcnetError):
    """A recorded growth trail fails replay verification."""


class PipelineError(SparcnetError):
    """A pipeline stage failed; names the stage so runs can be diagnosed."""

    def __init__(self, stage, cause):
        super().__init__(f"pipeline stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
