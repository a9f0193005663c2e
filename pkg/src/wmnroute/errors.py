"""Exception types shared across the package."""


class WmnrouteError(Exception):
    """Base class for all errors raised by this package."""


class InvalidPathError(WmnrouteError):
    """A node sequence is not a valid simple path in the graph."""


class LinkMismatchError(WmnrouteError):
    """A link cannot be appended because its tail does not match the path head."""


class PathCycleError(WmnrouteError):
    """Appending the link would revisit a node already on the path."""


class InvalidParamsError(WmnrouteError):
    """Topology or benchmark parameters violate their constraints."""


class InvalidQueryError(WmnrouteError):
    """A route query references unknown nodes or a negative delay bound."""


class QuantizationError(WmnrouteError):
    """Link delays or the delay bound do not align to the delay tick."""


class NoPathError(WmnrouteError):
    """No parent chain leads back to the source.

    ``cyclic`` distinguishes a genuinely absent chain from a corrupted
    (cyclic) one; the latter indicates a solver bug and is asserted
    against in the test suite.
    """

    def __init__(self, message: str, *, cyclic: bool = False):
        super().__init__(message)
        self.cyclic = cyclic


class BudgetExceededError(WmnrouteError):
    """Exhaustive enumeration would exceed its configured work budget."""


class InsufficientDataError(WmnrouteError):
    """Not enough timing records to fit a complexity exponent."""


class GraphFormatError(WmnrouteError):
    """A graph file is malformed or uses an unsupported format version."""
