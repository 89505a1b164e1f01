"""Exception taxonomy shared by the library and the command line tool.

Domain errors (bad mathematical input) are plain ValueError so that library
users get the exception they expect from misuse.  The two operational
failure modes get their own classes so callers (and the CLI exit-code
mapping) can tell them apart from bugs.
"""


class ResourceLimitError(RuntimeError):
    """A configured cap (sieve bound, enumeration size, pair budget) was exceeded."""


class PrecisionError(RuntimeError):
    """A requested tolerance cannot be certified with the available scheme."""
