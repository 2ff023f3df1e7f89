"""Domain errors raised by the package."""


class Mub6Error(ValueError):
    """Base class for all domain errors raised by mub6."""


class DimensionError(Mub6Error):
    """Operands have unsupported or mismatched dimensions."""


class ParameterRangeError(Mub6Error):
    """A family parameter lies outside its admissible range."""


class NotABasisError(Mub6Error):
    """A collection of vectors is not an orthonormal basis."""


class NotMUPairError(Mub6Error):
    """Two bases are not mutually unbiased."""


class NotHadamardError(Mub6Error):
    """A matrix does not have flat entry moduli 1/sqrt(d)."""


class InvalidMoveError(Mub6Error):
    """An equivalence move has a malformed payload or breaks an invariant."""


class FormatError(Mub6Error):
    """Malformed serialized matrix, pair, script or vector-set data."""
