"""Typed errors shared across the engine, each carrying a stable wire code."""

from __future__ import annotations

from typing import Any


class MonodecompError(Exception):
    """Base class; ``code`` is the machine-readable identifier used on the wire."""

    code = "error"

    def __init__(self, message: str, detail: Any = None):
        super().__init__(message)
        self.detail = detail

    def payload(self) -> dict:
        return {"code": self.code, "message": str(self), "detail": self.detail}


class ParseError(MonodecompError):
    """Malformed input document; carries the 1-based line (and offset when known)."""

    code = "parse_error"

    def __init__(self, message: str, line: int | None = None, offset: int | None = None):
        detail = {}
        if line is not None:
            detail["line"] = line
        if offset is not None:
            detail["offset"] = offset
        super().__init__(message, detail or None)
        self.line = line
        self.offset = offset


class DuplicateIdError(MonodecompError):
    code = "duplicate_id"


class DuplicateSpanError(MonodecompError):
    code = "duplicate_span"


class UnknownReferenceError(MonodecompError):
    """A reference to an id that does not exist; names the offending id."""

    code = "reference_error"

    def __init__(self, ref: str, message: str | None = None):
        super().__init__(message or f"unknown reference: {ref}", {"ref": ref})
        self.ref = ref


class NotFoundError(MonodecompError):
    code = "not_found"


class KindError(MonodecompError):
    code = "kind_error"


class ArgumentError(MonodecompError):
    code = "argument_error"


class ValidationError(MonodecompError):
    code = "validation_error"


class NotMappedError(MonodecompError):
    code = "not_mapped"


class EmptyGraphError(MonodecompError):
    code = "empty_graph"


class IncompleteDecompositionError(MonodecompError):
    code = "incomplete_decomposition"


class CoverageError(MonodecompError):
    code = "coverage_error"


class TooLargeError(MonodecompError):
    code = "too_large"


class MissingKeyError(MonodecompError):
    code = "missing_key"


class EditBatchError(MonodecompError):
    """An edit in a batch failed; ``index`` is the position of the failing edit."""

    code = "edit_error"

    def __init__(self, index: int, cause: MonodecompError):
        super().__init__(f"edit {index} failed: {cause}", {"index": index, "cause": cause.payload()})
        self.index = index
        self.cause = cause


class ConflictError(MonodecompError):
    code = "conflict"
