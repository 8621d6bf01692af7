"""Exception types shared across the package."""


class TropIHError(Exception):
    """Base class for all engine errors."""


class ValidationError(TropIHError):
    pass


class EmptyPolyhedron(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class NotAComplex(TropIHError):
    pass


class CellNotFound(ValidationError):
    pass


class NotAFace(ValidationError):
    pass


class ImageNotContained(TropIHError):
    pass


class ComplementNotClosed(ValidationError):
    pass


class NotClosed(ValidationError):
    pass


class InconsistentStratification(ValidationError):
    pass


class ModelMismatch(ValidationError):
    pass


class NotAFan(ValidationError):
    pass


class NotOneDimensional(ValidationError):
    pass


class BadPair(ValidationError):
    pass


class FieldRequired(ValidationError):
    pass


class ConditionCNotAsserted(ValidationError):
    pass


class StabilizationFailure(TropIHError):
    pass


class UnsupportedInput(TropIHError):
    """Inputs the engine refuses on purpose (exit code 4 in the CLI)."""


class ConicalStructureRequired(UnsupportedInput):
    pass


class UnsupportedStarDimension(UnsupportedInput):
    pass


class UnboundedCellWithoutConeStructure(UnsupportedInput):
    pass
