"""Exception hierarchy shared by all gscat modules.

Every failure mode raised by the library derives from GscatError, so callers
can catch one base class. Names describe the violated precondition or the
condition detected, not the function that raised them.
"""


class GscatError(Exception):
    """Base class for all gscat errors."""


# -- graph construction and manipulation --------------------------------

class NotSquareError(GscatError):
    """Weight matrix is not square (or too small)."""


class AsymmetryExceedsToleranceError(GscatError):
    """Weight matrix asymmetry is above the symmetrization tolerance."""


class NegativeWeightError(GscatError):
    """Weight matrix contains a negative entry."""


class NonzeroDiagonalError(GscatError):
    """Weight matrix has a nonzero diagonal entry (self-loop)."""


class DisconnectedError(GscatError):
    """The graph induced by strictly positive weights is not connected."""


class DisconnectedAfterPerturbationError(DisconnectedError):
    """A weight perturbation disconnected the graph."""


class DisconnectedAfterFlipError(DisconnectedError):
    """An edge flip disconnected the graph."""


class SelfLoopRequestedError(GscatError):
    """An edge operation was requested with identical endpoints."""


class InvalidBoundError(GscatError):
    """A perturbation magnitude bound is not strictly positive."""


class LengthMismatchError(GscatError):
    """Vector length does not match the graph's vertex count."""


class ShapeMismatchError(GscatError):
    """Matrix shape is incompatible with the graph or batch layout."""


# -- spectral decomposition ----------------------------------------------

class NoConvergenceError(GscatError):
    """Eigensolver iteration cap exceeded."""


class KernelDimensionNotOneError(GscatError):
    """More than one eigenvalue at zero: the graph is effectively disconnected."""


class DegenerateSpectrumError(GscatError):
    """Largest Laplacian eigenvalue is not strictly positive."""


# -- filters and scattering ----------------------------------------------

class UnknownScaleError(GscatError):
    """A path uses a scale that is not in the filter bank."""


class RepeatedEigenvaluesError(GscatError):
    """Operation requires all Laplacian eigenvalues to be simple."""


class GapTooSmallError(GscatError):
    """Perturbation bound exceeds what the spectral gap permits."""


# -- datasets and I/O ------------------------------------------------------

class CannotSampleConnectedError(GscatError):
    """Random graph sampling failed to produce a connected graph."""


class BadMagicError(GscatError):
    """Binary file does not start with the expected magic number."""


class TruncatedFileError(GscatError):
    """Binary file ends before the declared payload."""


class CountMismatchError(GscatError):
    """Image and label files declare different record counts."""


class RaggedRowsError(GscatError):
    """CSV rows have differing lengths."""


class NonNumericError(GscatError):
    """CSV cell could not be parsed as a number."""


class DuplicateEdgeError(GscatError):
    """Edge list file defines the same vertex pair twice."""


# -- learning ---------------------------------------------------------------

class KTooLargeError(GscatError):
    """Requested number of principal components exceeds what the data supports."""


class StepTooLargeError(GscatError):
    """Training loss increased: the gradient step size is too large."""


class EmptyClassError(GscatError):
    """A class label in 0..C-1 has no training samples."""
