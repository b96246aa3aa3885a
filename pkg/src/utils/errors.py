class WittError(Exception):
    """Base class for errors raised by the toolkit."""

    pass


class OverlappingSetsError(WittError, ValueError):
    """Odd index sets that were required to be disjoint share an index."""

    pass


class DimensionMismatchError(WittError, ValueError):
    """Operands live over different (m, n) or have mismatched lengths."""

    pass


class CapExceededError(WittError, ValueError):
    """A size cap (odd variables, exhaustive ranges) was exceeded."""

    pass


class NotHomogeneousError(WittError):
    """The element has more than one Cartan weight."""

    pass


class NotInAWError(WittError, ValueError):
    """The element of U-bar does not lie in A.W."""

    pass


class InvalidWeightError(WittError, ValueError):
    """A highest weight or shift parameter is not admissible."""

    pass


class WindowError(WittError):
    """A window has no usable interior."""

    pass


class TrivialModuleError(WittError):
    """The construction is undefined for a module with trivial W-action."""

    pass


class InvalidConfigError(WittError, ValueError):
    """Run configuration or suite selection is invalid."""

    pass


class SpecParseError(WittError, ValueError):
    """A module spec string could not be parsed."""

    pass
