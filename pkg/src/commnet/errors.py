"""Exception types shared across the package."""


class CommnetError(Exception):
    """Base class for package-specific errors."""


class OrderingError(CommnetError):
    """Edge stream is not sorted by timestamp."""


class WindowError(CommnetError):
    """An edge falls outside the configured observation window."""


class IngestError(CommnetError):
    """Log parsing failed as a whole (malformed fraction above threshold)."""


class UnknownNodeError(CommnetError):
    """Requested node id is not in the stream's registry."""


class EmptyHistogramError(CommnetError):
    """Degree map has no positive-degree nodes to build a distribution from."""


class InsufficientSupportError(CommnetError):
    """Too few tail points or samples for a distribution fit."""


class InsufficientDataError(CommnetError):
    """Pipeline input has no analyzable content."""


class ConfigError(CommnetError):
    """Invalid pipeline configuration."""
