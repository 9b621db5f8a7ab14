"""Exception hierarchy shared by every module in the package."""


class CertnetError(Exception):
    """Base class for all errors raised by certnet."""


class FormulaSyntaxError(CertnetError):
    """Raised when formula or degree text cannot be parsed.

    ``position`` is the 0-based character offset of the offending token.
    """

    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at offset {position}"
        super().__init__(message)


class UnknownAtomError(CertnetError):
    """Raised when a formula mentions an attribute outside the vocabulary."""

    def __init__(self, atom):
        self.atom = atom
        super().__init__(f"undeclared attribute {atom!r}")


class EnumerationLimitError(CertnetError):
    """Raised when a vocabulary is too large for exhaustive world enumeration."""

    def __init__(self, size, limit):
        self.size = size
        self.limit = limit
        super().__init__(
            f"vocabulary has {size} attributes, enumeration limit is {limit} "
            f"(raise it with max_vars / --max-vars)"
        )


class VocabularyMismatchError(CertnetError):
    """Raised when two objects must share a vocabulary but do not."""


class FileFormatError(CertnetError):
    """Raised for malformed network, knowledge base or distribution files."""

    def __init__(self, message, line=None, source=None):
        self.bare = message
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where = f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)

    def with_source(self, source):
        return FileFormatError(self.bare, self.line, source)


class CoverageError(CertnetError):
    """Raised when no table row matches a world (validation was skipped)."""


class NetworkStructureError(CertnetError):
    """Raised when an operation needs a structurally valid network."""
