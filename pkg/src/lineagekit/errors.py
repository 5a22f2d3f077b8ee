"""Exception types shared across the toolkit."""

from __future__ import annotations


class LineageError(Exception):
    """Base class for all toolkit errors."""


# --- graph ----------------------------------------------------------------

class MalformedId(LineageError):
    """Dataset identifier does not match the canonical owner/name form."""


class NodeValidationError(LineageError):
    """Node metadata violates a model invariant."""


class EdgeValidationError(LineageError):
    """Edge metadata violates a model invariant."""


class NotFound(LineageError):
    """A referenced node, edge, graph, or stored object does not exist."""


class EmptyGraph(LineageError):
    """Statistics requested on a graph with no nodes."""


class UnsupportedFormat(LineageError):
    """Unknown export format name."""


class InvalidState(LineageError):
    """Operation applied to an object in the wrong state (e.g. a review
    decision on an edge that is not flagged)."""


# --- sources --------------------------------------------------------------

class TransportError(LineageError):
    """Network-level failure. Retryable; the caller decides the policy."""


class ResourceNotFound(LineageError):
    """Remote resource answered 404."""


class BadLocator(LineageError):
    """Locator is not a well-formed URL or hub id."""


class EmptyContext(LineageError):
    """Resource context built from no documents."""


class OfflineViolation(TransportError):
    """A live endpoint was requested while the configuration is offline."""


# --- tracer ---------------------------------------------------------------

class ExtractorError(LineageError):
    """A source extractor failed for a document."""

    def __init__(self, message: str, locator: str | None = None):
        super().__init__(message)
        self.locator = locator


class ExtractionParseError(LineageError):
    """Structured extractor output could not be parsed."""


# --- scoring --------------------------------------------------------------

class JudgeParseError(LineageError):
    """Judge output contained no usable rating."""


class PluginError(LineageError):
    """A plugin scorer crashed or misbehaved."""


class OutOfScale(PluginError):
    """A scorer returned a value outside its declared range."""


# --- analysis -------------------------------------------------------------

class ShapeError(LineageError):
    """Paired inputs have mismatched lengths."""


class InsufficientData(LineageError):
    """Fewer observations than the operation requires."""

    def __init__(self, message: str, n: int | None = None):
        super().__init__(message)
        self.n = n


class MissingField(LineageError):
    """A record lacks a field the operation needs."""


class QuarterParseError(LineageError):
    """A release quarter string does not match YYYYQn."""


class EmptyInput(LineageError):
    """An aggregate requested over an empty collection."""


# --- store ----------------------------------------------------------------

class SchemaMismatch(LineageError):
    """Stored document version differs from the supported schema version."""


class StoreLocked(LineageError):
    """The store's writer lock is held by someone else."""


class CorruptAudit(LineageError):
    """An audit log line failed to parse."""

    def __init__(self, message: str, line_number: int):
        super().__init__(message)
        self.line_number = line_number


# --- config ---------------------------------------------------------------

class ConfigError(LineageError):
    """Invalid or contradictory configuration."""
