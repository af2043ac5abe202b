"""Exception types shared across the package."""


class SpgTexError(Exception):
    """Base class for all spgtex errors."""


class ConfigError(SpgTexError, ValueError):
    """Invalid configuration: non-square image, grid count that does not
    divide the image side, bad scale list, and similar."""


class LayerMismatchError(SpgTexError, ValueError):
    """Path query whose endpoints or channel do not live in one layer of
    the target graph."""


class InconsistentGraphError(SpgTexError):
    """A path query could not be completed because the supplied graph is
    internally inconsistent (e.g. disconnected endpoints, which cannot
    happen for well-formed block graphs)."""


class CorpusError(SpgTexError):
    """Corpus scanning or decoding failure."""


class OracleBudgetError(SpgTexError):
    """A brute-force oracle call exceeded its enumeration budget."""
