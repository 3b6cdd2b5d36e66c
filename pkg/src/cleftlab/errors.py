class CleftLabError(Exception):
    """Base class for library errors."""


class InputError(CleftLabError, ValueError):
    """Malformed or invalid input data."""


class FieldTooSmall(CleftLabError):
    """The prime p does not exceed a dimension the algorithm needs."""


class NotFiniteDimensional(CleftLabError):
    """A path algebra did not close up within the length cap."""


class NotNilpotent(CleftLabError):
    """A bimodule has no vanishing tensor power within the cutoff."""


class Inconclusive(CleftLabError):
    """Some dimension needed by a check is Unknown."""


class NotCertifiedGorenstein(CleftLabError):
    """Gorenstein-projective membership asked over an uncertified algebra."""


class GeneratorReductionError(CleftLabError):
    """A random module violates a criterion that all simple modules satisfy."""
