"""Exception types shared across the package."""

from __future__ import annotations


class InvalidInputError(ValueError):
    """An operation received arguments outside its contract."""


class NotFoundError(LookupError):
    """A referenced entity does not exist in the store."""


class ConflictError(RuntimeError):
    """The operation is well-formed but the target is in the wrong state."""


class IngestError(ValueError):
    """An input file failed validation.

    Carries every offending record as a ``(line_number, message)`` pair so
    callers can report the whole file at once instead of stopping at the
    first problem. ``line_number`` is ``None`` for file-level problems.
    """

    def __init__(self, path: str, errors: list[tuple[int | None, str]]):
        self.path = str(path)
        self.errors = list(errors)
        detail = "; ".join(
            f"line {line}: {msg}" if line is not None else msg
            for line, msg in self.errors
        )
        super().__init__(f"{self.path}: {detail}")
