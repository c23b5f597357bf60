"""Graph and signal sources: SBM sampler, pixel-grid graphs, IDX images,
edge-list and CSV file formats.

File formats
------------
Edge list: UTF-8 text, one edge per line as ``u<TAB>v<TAB>weight`` with
0-indexed vertex ids; a missing weight defaults to 1.0; lines starting with
``#`` are ignored; duplicate pairs are an error.

Signal CSV: plain rectangular comma-separated numbers, one row per vertex,
one column per channel, no header. Written with 17 significant digits so a
write/read roundtrip is lossless.

Feature CSV: header ``channel,path,vertex_0,...``; one row per
(channel, path) with the path serialized like ``[]`` or ``[-2,-1]``.

IDX: the classic big-endian image/label container (magic 0x00000803 for
images, 0x00000801 for labels, unsigned byte payload). Pixels are scaled to
[0, 1]. Files are read from local disk only; nothing downloads anything.
"""
import math
import struct
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    BadMagicError,
    CannotSampleConnectedError,
    CountMismatchError,
    DuplicateEdgeError,
    NonNumericError,
    RaggedRowsError,
    TruncatedFileError,
)
from .graph_core import SimpleGraph, validate
from .scattering import FeatureMatrix

MAX_SAMPLE_ATTEMPTS = 100


# ---------------------------------------------------------------------------
# random and structured graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SbmParams:
    """Two-or-more-class stochastic block model parameters."""

    n_per_class: int
    p_in: float
    p_out: float
    seed: int
    num_classes: int = 2

    def __post_init__(self):
        if not (0.0 <= self.p_out <= self.p_in <= 1.0):
            raise ValueError(
                f"need 0 <= p_out <= p_in <= 1, got p_in={self.p_in}, p_out={self.p_out}")
        if self.n_per_class < 1 or self.num_classes < 1:
            raise ValueError("class sizes must be positive")


def sbm_default_probabilities(n_per_class: int):
    """The experiment's convention: p_in = min(1, 6 ln N / N), p_out = ln N / N."""
    n = n_per_class
    return min(1.0, 6.0 * math.log(n) / n), math.log(n) / n


def sample_sbm(params: SbmParams) -> SimpleGraph:
    """Sample a connected unit-weight SBM graph, retrying on disconnection."""
    n = params.n_per_class * params.num_classes
    labels = np.repeat(np.arange(params.num_classes), params.n_per_class)
    same = labels[:, None] == labels[None, :]
    prob = np.where(same, params.p_in, params.p_out)
    rng = np.random.default_rng(params.seed)
    for _ in range(MAX_SAMPLE_ATTEMPTS):
        coins = rng.random((n, n))
        upper = np.triu(coins < prob, 1)
        w = (upper | upper.T).astype(float)
        try:
            return validate(w)
        except DisconnectedError:
            continue
    raise CannotSampleConnectedError(
        f"no connected sample in {MAX_SAMPLE_ATTEMPTS} attempts "
        f"(n_per_class={params.n_per_class}, p_in={params.p_in:.4f}, p_out={params.p_out:.4f})")


@dataclass(frozen=True)
class GridSpec:
    """Pixel-grid graph: vertices are pixels in row-major order, the nearest
    pixel distance is 1, and pixels within neighbor_radius are connected with
    weight exp(-dist^2)."""

    height: int
    width: int
    neighbor_radius: float = math.sqrt(2.0)

    def __post_init__(self):
        if self.height < 2 or self.width < 2:
            raise ValueError("grid needs height >= 2 and width >= 2")


def build_grid_graph(spec: GridSpec) -> SimpleGraph:
    """Grid graph with horizontal/vertical/diagonal 8-neighbor connectivity
    (for the default radius sqrt(2))."""
    h, w = spec.height, spec.width
    n = h * w
    weights = np.zeros((n, n))
    r = int(math.floor(spec.neighbor_radius))
    offsets = []
    for dr in range(-r, r + 1):
        for dc in range(-r, r + 1):
            dist2 = dr * dr + dc * dc
            if 0 < dist2 <= spec.neighbor_radius**2 + 1e-12:
                offsets.append((dr, dc, math.exp(-dist2)))
    rows, cols = np.meshgrid(np.arange(h), np.arange(w), indexing="ij")
    idx = (rows * w + cols).ravel()
    for dr, dc, wt in offsets:
        rr = rows + dr
        cc = cols + dc
        ok = (rr >= 0) & (rr < h) & (cc >= 0) & (cc < w)
        src = idx[ok.ravel()]
        dst = (rr[ok] * w + cc[ok]).ravel()
        weights[src, dst] = wt
    return validate(weights)


# ---------------------------------------------------------------------------
# IDX image container
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LabeledImages:
    images: np.ndarray   # count x (height*width), values in [0, 1], row-major pixels
    labels: np.ndarray   # count integers
    height: int
    width: int

    @property
    def count(self) -> int:
        return self.images.shape[0]


def _read_idx_payload(path, expected_magic, num_dims):
    with open(path, "rb") as fh:
        blob = fh.read()
    header = 4 + 4 * num_dims
    if len(blob) < header:
        raise TruncatedFileError(f"{path}: header truncated")
    magic = struct.unpack(">I", blob[:4])[0]
    if magic != expected_magic:
        raise BadMagicError(f"{path}: magic 0x{magic:08x}, expected 0x{expected_magic:08x}")
    dims = struct.unpack(f">{num_dims}I", blob[4:header])
    payload = int(np.prod(dims))
    if len(blob) < header + payload:
        raise TruncatedFileError(
            f"{path}: payload has {len(blob) - header} bytes, expected {payload}")
    data = np.frombuffer(blob, dtype=np.uint8, count=payload, offset=header)
    return dims, data


def read_idx_images(images_path, labels_path) -> LabeledImages:
    """Read a paired IDX image/label file set."""
    (count, rows, cols), pixels = _read_idx_payload(images_path, 0x00000803, 3)
    (label_count,), labels = _read_idx_payload(labels_path, 0x00000801, 1)
    if label_count != count:
        raise CountMismatchError(f"{count} images but {label_count} labels")
    images = pixels.reshape(count, rows * cols).astype(float) / 255.0
    return LabeledImages(
        images=images, labels=labels.astype(int), height=int(rows), width=int(cols))


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------

def read_edge_list(path) -> SimpleGraph:
    """Parse the tab-separated edge-list format into a validated graph."""
    edges = {}
    max_vertex = -1
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) not in (2, 3):
                raise NonNumericError(f"{path}:{lineno}: expected 'u<TAB>v[<TAB>weight]'")
            try:
                u, v = int(parts[0]), int(parts[1])
                wt = float(parts[2]) if len(parts) == 3 else 1.0
            except ValueError as exc:
                raise NonNumericError(f"{path}:{lineno}: {exc}") from exc
            key = (min(u, v), max(u, v))
            if key in edges:
                raise DuplicateEdgeError(f"{path}:{lineno}: duplicate edge {key}")
            edges[key] = wt
            max_vertex = max(max_vertex, u, v)
    n = max_vertex + 1
    w = np.zeros((n, n))
    for (u, v), wt in edges.items():
        w[u, v] = wt
        w[v, u] = wt
    return validate(w)


def write_edge_list(g: SimpleGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if g.weights[u, v] > 0.0:
                    fh.write(f"{u}\t{v}\t{g.weights[u, v]:.17g}\n")


def read_signal_csv(path) -> np.ndarray:
    """Rectangular numeric CSV as an n x D matrix."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            cells = line.split(",")
            try:
                rows.append([float(c) for c in cells])
            except ValueError as exc:
                raise NonNumericError(f"{path}:{lineno}: {exc}") from exc
            if len(rows[-1]) != len(rows[0]):
                raise RaggedRowsError(
                    f"{path}:{lineno}: row has {len(rows[-1])} cells, expected {len(rows[0])}")
    return np.array(rows, dtype=float)


def write_signal_csv(matrix: np.ndarray, path) -> None:
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    with open(path, "w", encoding="utf-8") as fh:
        for row in matrix:
            fh.write(",".join(f"{x:.17g}" for x in row) + "\n")


def format_path(p) -> str:
    return "[" + ",".join(str(j) for j in p) + "]"


def write_feature_csv(features: FeatureMatrix, path) -> None:
    """One row per (channel, path); channel-major, paths breadth-first."""
    n = features.n
    header = "channel,path," + ",".join(f"vertex_{i}" for i in range(n))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(header + "\n")
        for row_idx in range(features.values.shape[0]):
            d = row_idx // features.num_paths
            p = features.paths[row_idx % features.num_paths]
            cells = ",".join(f"{x:.17g}" for x in features.values[row_idx])
            fh.write(f"{d},{format_path(p)},{cells}\n")


# ---------------------------------------------------------------------------
# small built-in fixture
# ---------------------------------------------------------------------------

def demo_graph() -> SimpleGraph:
    """Four-vertex weighted graph used by the bundled checks and demos."""
    w = np.array([
        [0.0, 2.0, 1.0, 1.0],
        [2.0, 0.0, 1.0, 0.0],
        [1.0, 1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
    ])
    return validate(w)


def demo_permutation():
    """Relabeling used alongside demo_graph: moves (f1,f2,f3,f4) to (f3,f1,f4,f2)."""
    from .graph_core import Permutation
    return Permutation(np.array([2, 0, 3, 1]))
