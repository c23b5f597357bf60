"""The wavelet scattering cascade on graphs.

A path is a tuple of wavelet scales. Propagating a signal along a path
alternates wavelet filtering with a pointwise nonlinearity; the windowed
coefficient of a path is the low-pass filtering of its propagated signal.
The transform truncated at depth M keeps the coefficients of every path of
length < M plus the total energy still propagating at length M (the
"frontier"), which turns the norm-preservation statement into an exact
finite identity:

    sum of output energies over layers 0..M-1  +  frontier  =  ||f||^2.

Two nonlinearities are supported: the entrywise modulus, and the spectral
modulus sigma that takes absolute values of the Fourier coefficients
instead. The latter commutes with the vertex-localization operator provided
all eigenvalues are simple.
"""
from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    LengthMismatchError,
    RepeatedEigenvaluesError,
    ShapeMismatchError,
    UnknownScaleError,
)
from .filters import FilterBank, FilterFamily, build_filter_bank
from .spectral import SpectralDecomposition, spectral_gap

#: A path is an ordered tuple of wavelet scales; () is the empty path.
Path = tuple

MODULUS = "modulus"
SPECTRAL_MODULUS = "spectral_modulus"


@dataclass(frozen=True)
class ScatteringConfig:
    """Transform parameters: coarsest scale, depth, family, nonlinearity."""

    scale_j: int = 3
    depth: int = 3
    family: FilterFamily = field(default_factory=FilterFamily.shannon)
    normalize: bool = True
    nonlinearity: str = MODULUS

    def __post_init__(self):
        if self.scale_j < 1:
            raise ValueError(f"scale_j must be >= 1, got {self.scale_j}")
        if self.depth < 1:
            raise ValueError(f"depth must be >= 1, got {self.depth}")
        if self.nonlinearity not in (MODULUS, SPECTRAL_MODULUS):
            raise ValueError(f"unknown nonlinearity {self.nonlinearity!r}")


@dataclass(frozen=True)
class ScatteringOutput:
    """Windowed coefficients keyed by path, plus the energy ledger.

    coefficients holds every path of length < depth in breadth-first order
    (layer by layer, scales ascending). per_layer_propagated_energy[m] is the
    total squared norm entering layer m (index 0 is ||f||^2, index depth is
    the frontier); per_layer_output_energy[m] is the squared norm of the
    layer-m coefficients.
    """

    coefficients: dict
    frontier_energy: float
    per_layer_output_energy: np.ndarray
    per_layer_propagated_energy: np.ndarray

    @property
    def depth(self) -> int:
        return self.per_layer_output_energy.shape[0]

    def total_output_energy(self) -> float:
        return float(self.per_layer_output_energy.sum())

    def stacked(self) -> np.ndarray:
        """Coefficients as a (num_paths x n) array in path order."""
        return np.array(list(self.coefficients.values()))


@dataclass(frozen=True)
class FeatureMatrix:
    """Scattering features of a multi-channel signal.

    values has one row per (channel, path), channel-major with paths in
    breadth-first order, and one column per vertex; flattening values row by
    row therefore gives the canonical (channel, path, vertex) feature vector.
    """

    values: np.ndarray        # (num_channels * num_paths) x n
    paths: list
    num_channels: int
    frontier_energy: float
    per_layer_output_energy: np.ndarray
    per_layer_propagated_energy: np.ndarray

    @property
    def num_paths(self) -> int:
        return len(self.paths)

    @property
    def n(self) -> int:
        return self.values.shape[1]

    def channel_block(self, d: int) -> np.ndarray:
        return self.values[d * self.num_paths:(d + 1) * self.num_paths]

    def flatten(self) -> np.ndarray:
        return self.values.reshape(-1)


def enumerate_paths(scales, max_length: int):
    """All paths of length < max_length, breadth first, scales ascending."""
    paths = [()]
    layer = [()]
    for _ in range(1, max_length):
        layer = [p + (j,) for p in layer for j in scales]
        paths.extend(layer)
    return paths


def _apply_nonlinearity(dec, y, nonlinearity):
    if nonlinearity == MODULUS:
        return np.abs(y)
    coeffs = np.abs(dec.eigenvectors.T @ y)
    return dec.eigenvectors @ coeffs


def spectral_modulus(dec: SpectralDecomposition, f: np.ndarray) -> np.ndarray:
    """sigma(f): rebuild f from the absolute values of its Fourier coefficients."""
    return _apply_nonlinearity(dec, np.asarray(f, dtype=float), SPECTRAL_MODULUS)


def propagate(dec: SpectralDecomposition, bank: FilterBank, path, f: np.ndarray,
              nonlinearity: str = MODULUS) -> np.ndarray:
    """Propagated signal U[path] f: wavelet filter + nonlinearity per scale."""
    f = np.asarray(f, dtype=float)
    if f.shape[0] != dec.n:
        raise LengthMismatchError(f"signal length {f.shape[0]} != {dec.n}")
    scale_index = {j: i for i, j in enumerate(bank.scales)}
    x = f
    for j in path:
        if j not in scale_index:
            raise UnknownScaleError(f"scale {j} is not in the bank's scales {bank.scales}")
        w = bank.wavelet_values[scale_index[j]]
        filtered = dec.eigenvectors @ (w * (dec.eigenvectors.T @ x))
        x = _apply_nonlinearity(dec, filtered, nonlinearity)
    return x


def _scatter_matrix(dec, bank, x0, cfg):
    """Run the cascade on an n x B matrix; returns (paths, coeffs, energies)."""
    depth = cfg.depth
    u = dec.eigenvectors
    paths = []
    coeffs = []
    out_energy = np.zeros(depth)
    prop_energy = np.zeros(depth + 1)
    prop_energy[0] = float((x0**2).sum())
    layer = [((), x0)]
    for m in range(depth):
        next_layer = []
        for path, x in layer:
            v = u.T @ x
            s = u @ (bank.lowpass_values[:, None] * v)
            paths.append(path)
            coeffs.append(s)
            out_energy[m] += float((s**2).sum())
            for i, j in enumerate(bank.scales):
                filtered = u @ (bank.wavelet_values[i][:, None] * v)
                child = _apply_nonlinearity(dec, filtered, cfg.nonlinearity)
                prop_energy[m + 1] += float((child**2).sum())
                # children of the deepest layer only contribute frontier energy
                if m + 1 < depth:
                    next_layer.append((path + (j,), child))
        layer = next_layer
    return paths, coeffs, out_energy, prop_energy


def scatter(dec: SpectralDecomposition, bank: FilterBank, f: np.ndarray,
            cfg: ScatteringConfig) -> ScatteringOutput:
    """Full truncated transform of a single signal."""
    f = np.asarray(f, dtype=float)
    if f.ndim != 1 or f.shape[0] != dec.n:
        raise LengthMismatchError(f"expected a length-{dec.n} vector, got shape {f.shape}")
    paths, coeffs, out_energy, prop_energy = _scatter_matrix(dec, bank, f[:, None], cfg)
    coefficients = {p: c[:, 0] for p, c in zip(paths, coeffs)}
    return ScatteringOutput(
        coefficients=coefficients,
        frontier_energy=float(prop_energy[cfg.depth]),
        per_layer_output_energy=out_energy,
        per_layer_propagated_energy=prop_energy,
    )


def scatter_batch(dec: SpectralDecomposition, bank: FilterBank, signals: np.ndarray,
                  cfg: ScatteringConfig) -> FeatureMatrix:
    """Channelwise transform of an n x D signal matrix.

    All channels share the cascade's filter applications, so this is the fast
    route for many signals on one graph.
    """
    x0 = np.asarray(signals, dtype=float)
    if x0.ndim != 2 or x0.shape[0] != dec.n:
        raise ShapeMismatchError(f"expected an {dec.n} x D matrix, got shape {x0.shape}")
    num_channels = x0.shape[1]
    paths, coeffs, out_energy, prop_energy = _scatter_matrix(dec, bank, x0, cfg)
    # coeffs[p] is n x D; reorder to channel-major rows of (num_paths x n) blocks
    stacked = np.stack(coeffs)                 # num_paths x n x D
    values = np.ascontiguousarray(
        stacked.transpose(2, 0, 1).reshape(num_channels * len(paths), dec.n))
    return FeatureMatrix(
        values=values,
        paths=paths,
        num_channels=num_channels,
        frontier_energy=float(prop_energy[cfg.depth]),
        per_layer_output_energy=out_energy,
        per_layer_propagated_energy=prop_energy,
    )


def transform_distance(a: ScatteringOutput, b: ScatteringOutput) -> float:
    """l2 distance between two coefficient trees over their shared paths."""
    total = 0.0
    for p, ca in a.coefficients.items():
        total += float(((ca - b.coefficients[p]) ** 2).sum())
    return float(np.sqrt(total))


def localize(dec: SpectralDecomposition, f: np.ndarray, c: int) -> np.ndarray:
    """Localization of f at vertex c: sqrt(n) * (f convolved with delta_c).

    Well-defined only when every eigenvalue is simple (otherwise the
    eigenvector entries u_l(c) depend on the basis chosen inside an
    eigenspace).
    """
    f = np.asarray(f, dtype=float)
    if f.shape[0] != dec.n:
        raise LengthMismatchError(f"signal length {f.shape[0]} != {dec.n}")
    if spectral_gap(dec) <= 0.0:
        raise RepeatedEigenvaluesError(
            "localization requires all Laplacian eigenvalues to be simple")
    u = dec.eigenvectors
    return np.sqrt(dec.n) * (u @ (u[c] * (u.T @ f)))


def make_bank(dec: SpectralDecomposition, cfg: ScatteringConfig) -> FilterBank:
    """Filter bank matching a scattering configuration."""
    return build_filter_bank(dec, cfg.scale_j, cfg.family, cfg.normalize)
