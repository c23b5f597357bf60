"""Spectral wavelet filter banks on the Laplacian spectrum.

A bank consists of one low-pass window evaluated at scale -J together with
dyadic wavelets at every scale whose band meets the spectrum. Two families
are provided:

* shannon -- sharp indicator bands: low-pass 1 on [0, 2], wavelet 1 on (1, 2].
  The dyadic dilations tile the positive axis exactly, so the partition of
  unity holds with zero error.
* meyer -- smooth sin/cos transition bands on the log2 axis: the wavelet is
  sin((pi/2) log2 w) on (1, 2] and cos((pi/2)(log2 w - 1)) on (2, 4]; the
  low-pass is 1 on [0, 2] with the same cosine roll-off on (2, 4]. Adjacent
  dilations overlap and the sin^2 + cos^2 identity restores the exact
  partition. Unlike shannon, both windows are Lipschitz, which the
  perturbation-stability checks require.

By default eigenvalues are rescaled so the top of the spectrum sits at 2
("spectral normalization"). That is merely a choice of dilation units, and it
pins the number of wavelet scales to exactly scale_j, giving the 1 + K + K^2
+ ... feature layout used by the image experiments.
"""
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateSpectrumError, LengthMismatchError
from .spectral import SpectralDecomposition

#: Lipschitz constant of the meyer windows: the steepest slope is attained by
#: the wavelet at the lower band edge, (pi/2) / ln 2.
MEYER_LIPSCHITZ = math.pi / (2.0 * math.log(2.0))


@dataclass(frozen=True)
class FilterFamily:
    """Closed-form scaling/wavelet window pair evaluated on the spectral axis.

    c_phi is the decay constant of the low-pass window: phi_hat(w) <= c_phi/w
    for all w > 0. lipschitz is a Lipschitz constant valid for both windows
    (None for shannon, whose indicators are discontinuous).
    """

    kind: str
    c_phi: float
    lipschitz: float | None

    @staticmethod
    def shannon() -> "FilterFamily":
        return FilterFamily(kind="shannon", c_phi=2.0, lipschitz=None)

    @staticmethod
    def meyer() -> "FilterFamily":
        return FilterFamily(kind="meyer", c_phi=4.0, lipschitz=MEYER_LIPSCHITZ)

    @staticmethod
    def from_name(name: str) -> "FilterFamily":
        if name == "shannon":
            return FilterFamily.shannon()
        if name == "meyer":
            return FilterFamily.meyer()
        raise ValueError(f"unknown filter family {name!r}")

    def phi_hat(self, omega) -> np.ndarray:
        """Low-pass window evaluated at nonnegative frequencies."""
        w = np.asarray(omega, dtype=float)
        if self.kind == "shannon":
            return (w <= 2.0).astype(float)
        out = np.zeros_like(w)
        out[w <= 2.0] = 1.0
        band = (w > 2.0) & (w <= 4.0)
        out[band] = np.cos((math.pi / 2.0) * (np.log2(w[band]) - 1.0))
        return out

    def psi_hat(self, omega) -> np.ndarray:
        """Wavelet window evaluated at nonnegative frequencies."""
        w = np.asarray(omega, dtype=float)
        if self.kind == "shannon":
            return ((w > 1.0) & (w <= 2.0)).astype(float)
        out = np.zeros_like(w)
        lo = (w > 1.0) & (w <= 2.0)
        out[lo] = np.sin((math.pi / 2.0) * np.log2(w[lo]))
        hi = (w > 2.0) & (w <= 4.0)
        out[hi] = np.cos((math.pi / 2.0) * (np.log2(w[hi]) - 1.0))
        return out


@dataclass(frozen=True)
class FilterBank:
    """Low-pass and wavelet windows sampled at the graph's eigenvalues.

    wavelet_values[i] holds psi_hat(2**-scales[i] * lam') over the (possibly
    rescaled) eigenvalues lam'; lowpass_values holds phi_hat(2**scale_j * lam').
    normalization is the rescale factor 2 / lambda_max, or None when the raw
    spectrum was used.
    """

    scales: tuple            # ascending wavelet scales j, each j > -scale_j
    lowpass_values: np.ndarray
    wavelet_values: np.ndarray  # len(scales) x n
    normalization: float | None
    scale_j: int
    family: FilterFamily

    @property
    def n(self) -> int:
        return self.lowpass_values.shape[0]

    @property
    def num_scales(self) -> int:
        return len(self.scales)


def build_filter_bank(dec: SpectralDecomposition, scale_j: int,
                      family: FilterFamily, normalize: bool = True) -> FilterBank:
    """Sample a filter family at the eigenvalues of a decomposition.

    With normalize on, eigenvalues are rescaled to put the top of the
    spectrum at 2, so the wavelet scales are exactly -scale_j+1 .. 0. With it
    off, scales run from -scale_j+1 up to the last dyadic band that meets
    (0, lambda_max].
    """
    if scale_j < 1:
        raise ValueError(f"scale_j must be >= 1, got {scale_j}")
    if dec.lambda_max <= 0.0:
        raise DegenerateSpectrumError(
            f"lambda_max = {dec.lambda_max} is not positive")
    if normalize:
        factor = 2.0 / dec.lambda_max
        lam = dec.eigenvalues * factor
        eff_max = 2.0
    else:
        factor = None
        lam = dec.eigenvalues
        eff_max = dec.lambda_max
    # largest scale whose band (2^j, ...] still meets the spectrum
    j_max = math.ceil(math.log2(eff_max)) - 1
    while 2.0 ** (j_max + 1) < eff_max:
        j_max += 1
    while j_max >= -scale_j + 1 and 2.0 ** j_max >= eff_max:
        j_max -= 1
    scales = tuple(range(-scale_j + 1, j_max + 1))
    wavelet_values = np.array([family.psi_hat(lam / 2.0 ** j) for j in scales])
    if not scales:
        wavelet_values = wavelet_values.reshape(0, lam.shape[0])
    lowpass_values = family.phi_hat(lam * 2.0 ** scale_j)
    lowpass_values.flags.writeable = False
    wavelet_values.flags.writeable = False
    return FilterBank(
        scales=scales,
        lowpass_values=lowpass_values,
        wavelet_values=wavelet_values,
        normalization=factor,
        scale_j=scale_j,
        family=family,
    )


def littlewood_paley_deviation(bank: FilterBank) -> float:
    """Worst-case deviation of the squared windows from a partition of unity."""
    total = bank.lowpass_values**2 + (bank.wavelet_values**2).sum(axis=0)
    return float(np.max(np.abs(total - 1.0)))


def apply_filter(dec: SpectralDecomposition, filter_values: np.ndarray, f: np.ndarray):
    """Multiply a signal's spectrum by per-eigenvalue filter values.

    f may be a vector or an n x D matrix (applied column by column).
    """
    filter_values = np.asarray(filter_values, dtype=float)
    f = np.asarray(f, dtype=float)
    if filter_values.shape[0] != dec.n or f.shape[0] != dec.n:
        raise LengthMismatchError(
            f"filter/signal length mismatch: {filter_values.shape[0]}, {f.shape[0]} vs {dec.n}")
    coeffs = dec.eigenvectors.T @ f
    if coeffs.ndim == 1:
        scaled = filter_values * coeffs
    else:
        scaled = filter_values[:, None] * coeffs
    return dec.eigenvectors @ scaled
