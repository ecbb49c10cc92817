"""Exception types shared across the package.

These are contract errors: they fire when a caller violates a documented
precondition or when input data is malformed, never for internal bugs.
"""


class NonOrthogonalKernel(ValueError):
    """Kernel rows are not pairwise orthogonal (Gram matrix has off-diagonal
    entries), so no diagonal scaling can orthonormalize it."""


class ZeroRow(ValueError):
    """Kernel contains an all-zero row and cannot be row-normalized."""


class DuplicateName(ValueError):
    """A transform with this name is already registered."""


class InvalidRetention(ValueError):
    """Retained-coefficient count outside the 1..64 range."""


class NonPositiveQuantizer(ValueError):
    """Quantization matrix contains a zero or negative step size."""


class BadDimensions(ValueError):
    """Image width or height is not divisible by the 8-pixel block size."""


class DimensionMismatch(ValueError):
    """Two images that must be compared do not have the same shape."""


class EmptyGroup(ValueError):
    """No records to aggregate."""


class MalformedHeader(ValueError):
    """PGM header is syntactically invalid."""


class UnsupportedMaxval(ValueError):
    """PGM maxval is outside the supported 8-bit range."""


class TruncatedData(ValueError):
    """PGM file ends before width*height samples were read."""


class IoFailure(OSError):
    """Underlying I/O operation failed while writing an image."""


class MissingImage(FileNotFoundError):
    """A required input image does not exist."""
