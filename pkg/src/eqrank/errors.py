"""Exception types shared across the package."""


class EqRankError(Exception):
    """Base class for all errors raised by this package."""


class EdgeListParseError(EqRankError):
    """Malformed edge-list input. Carries the 1-based line number."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"edge list line {line_number}: {message}")
        self.line_number = line_number


class MetadataParseError(EqRankError):
    """Malformed metadata input. Carries the 1-based line number."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"metadata line {line_number}: {message}")
        self.line_number = line_number


class EmptyGraphError(EqRankError):
    """Operation requires a non-empty graph."""


class SnapshotFormatError(EqRankError):
    """Snapshot file is corrupt or not in the expected format."""


class VersionMismatchError(SnapshotFormatError):
    """Snapshot format version differs from what this build writes."""

    def __init__(self, kind: str, found, expected):
        super().__init__(f"{kind}: format version {found}, expected {expected}")
        self.kind = kind
        self.found = found
        self.expected = expected


class UnknownThemeError(EqRankError):
    """Requested theme (level, index) does not exist."""


class UnknownVertexError(EqRankError):
    """Requested vertex key or id does not exist."""
