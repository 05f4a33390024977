from __future__ import annotations

from typing import List, Optional, Sequence


class CatkitError(RuntimeError):
    pass


class StructuralError(CatkitError):
    """Dangling identifiers, malformed records, or otherwise unusable data."""


class BoundaryError(StructuralError):
    """Cells whose source/target categories or functors do not line up."""


class DuplicateName(StructuralError):
    def __init__(self, kind: str, name: str) -> None:
        super().__init__(f"duplicate {kind} name: {name}")
        self.kind = kind
        self.name = name


class MissingEntity(StructuralError):
    def __init__(self, kind: str, name: str) -> None:
        super().__init__(f"unresolved {kind} reference: {name}")
        self.kind = kind
        self.name = name


class FormatError(StructuralError):
    def __init__(self, message: str, path: str = "", line: int = 0, column: int = 0) -> None:
        where = path or "<input>"
        if line:
            where = f"{where}:{line}:{column}"
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line
        self.column = column


class SearchAborted(CatkitError):
    """Isomorphism search refused to run past its object cap."""


class _ReportError(CatkitError):
    def __init__(self, message: str, report: Optional[Sequence] = None) -> None:
        self.report: List = list(report or [])
        if self.report:
            first = self.report[0]
            message = f"{message} ({len(self.report)} violations, first: {first.describe()})"
        super().__init__(message)


class PreconditionError(_ReportError):
    """A construction rejected its input; `report` holds the offending violations."""


class InternalConstructionError(_ReportError):
    """A constructed object failed its own post-checks."""


class ConfigError(StructuralError):
    """Bad configuration value, flag combination or corpus selection."""
