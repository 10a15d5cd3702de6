class WavefuseError(Exception):
    """Base class for every error raised by wavefuse"""


class ImageNotFoundError(WavefuseError, FileNotFoundError):
    """Raised when an input raster does not exist"""


class UnsupportedFormatError(WavefuseError):
    """Raised when a raster is not 8-bit gray/RGB PNG or binary PGM/PPM"""


class ImageTooSmallError(WavefuseError):
    """Raised when either image dimension is below the 2-level minimum"""


class ImageWriteError(WavefuseError):
    """Raised when a raster cannot be written"""


class NotGrayscaleError(WavefuseError):
    """Raised when a single-channel buffer is required"""


class WrongTransformKindError(WavefuseError):
    """Raised when an inverse transform receives the other transform's decomposition"""


class TransformMismatchError(WavefuseError):
    """Raised when two decompositions to be fused use different transforms"""


class ShapeMismatchError(WavefuseError):
    """Raised when arrays or images that must align have different shapes"""


class EmptyBandError(WavefuseError):
    """Raised when statistics are requested for a subband without coefficients"""


class LengthMismatchError(WavefuseError):
    """Raised when feature vectors differ in length or are empty"""


class InvalidConfigError(WavefuseError, ValueError):
    """Raised when optimizer or run parameters violate their constraints"""


class DegenerateInputError(WavefuseError):
    """Raised when the quality index meets a zero-variance or zero-mean argument"""


class ConfigFileError(WavefuseError):
    """Raised when a benchmark config file cannot be read or validated"""


class NoDatasetsError(ConfigFileError):
    """Raised when a benchmark config lists no datasets"""
