"""Exception types shared across the package."""


class DraftkitError(Exception):
    """Base class for all draftkit errors."""


class EmptySketchError(DraftkitError):
    """Operation requires at least one primitive."""


class DegenerateBoundingBoxError(DraftkitError):
    """Sketch bounding box has no extent in either axis."""


class MissingFrameError(DraftkitError):
    """Sketch carries no (or an incompatible) normalization frame."""


class MalformedGroupCodeError(DraftkitError):
    """DXF group code or numeric value line is not parseable."""


class TruncatedEntityError(DraftkitError):
    """DXF entity ended before all required group codes appeared."""


class EmptyEntitiesError(DraftkitError):
    """DXF input has no ENTITIES section or the section holds no entities."""


class SchemaViolationError(DraftkitError):
    """Document JSON does not match the canonical schema."""


class DanglingReferenceError(DraftkitError):
    """Element reference does not resolve to a primitive sub-element."""


class UnnormalizedSketchError(DraftkitError):
    """Sketch coordinates fall outside the [0, 1000) drawing frame."""


class DimensionMismatchError(DraftkitError):
    """Images being compared have different pixel dimensions."""


class EmptyPointSetError(DraftkitError):
    """Chamfer distance needs both point sets to be nonempty."""


class UnreadableInputError(DraftkitError):
    """Input file could not be read or decoded as a document."""
