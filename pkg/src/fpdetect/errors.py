"""Exception hierarchy for fpdetect.

Every error also subclasses ``ValueError`` so callers that only care about
bad input can catch that.
"""


class FpDetectError(ValueError):
    """Base class for all fpdetect errors."""


class ImageShapeError(FpDetectError):
    """Pixel buffer does not describe a valid image."""


class PgmParseError(FpDetectError):
    """Base class for PGM decoding failures."""


class MalformedHeaderError(PgmParseError):
    pass


class MaxvalError(PgmParseError):
    pass


class TruncatedPayloadError(PgmParseError):
    pass


class RawLengthError(FpDetectError):
    """Headerless buffer length disagrees with the given dimensions."""


class ImageTooSmallError(FpDetectError):
    """An image (or crop of one) is below the minimum usable size."""


class RoiTooSmallError(ImageTooSmallError):
    pass


class FieldTooSmallError(ImageTooSmallError):
    """Gradient field holds no complete block."""


class ZeroVarianceError(FpDetectError):
    pass


class DegenerateHistogramError(FpDetectError):
    pass


class DimensionMismatchError(FpDetectError):
    pass


class NoOrientationError(FpDetectError):
    """Averaged squared-gradient vector is zero; no orientation exists."""


class InvalidPeriodError(FpDetectError):
    pass


class ConfigError(FpDetectError):
    pass
