"""Exception hierarchy shared by all gk2dlp modules."""


class GK2DLPError(Exception):
    """Base class for every error raised by this package."""


class EnumerationLimitError(GK2DLPError):
    """A brute-force enumeration would exceed the configured cap."""


class UniverseMismatchError(GK2DLPError):
    """A formula mentions an atom outside the interpretation's universe."""


class NamespaceError(GK2DLPError):
    """Invalid use of the fresh-atom namespace (e.g. stacked renaming tags)."""


class UnsupportedFragmentError(GK2DLPError):
    """Input lies outside the fragment an operation accepts."""


class MalformedModelError(GK2DLPError):
    """An answer set cannot be decoded into a GK model descriptor."""


class ParseError(GK2DLPError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class SolverError(GK2DLPError):
    """The external solver exited abnormally."""


class AdapterError(GK2DLPError):
    """The external solver's output could not be parsed."""
