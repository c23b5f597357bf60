"""Simple weighted graphs: validation, permutation, perturbation, edge flips.

A "simple graph" here is weighted, undirected, connected and loop-free. The
Laplacian is the unnormalized L = D - W, where D is the diagonal matrix of
row sums of the weight matrix W. All types are immutable after construction
and every operation returns new values.
"""
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    AsymmetryExceedsToleranceError,
    DisconnectedAfterFlipError,
    DisconnectedAfterPerturbationError,
    DisconnectedError,
    InvalidBoundError,
    LengthMismatchError,
    NegativeWeightError,
    NonzeroDiagonalError,
    NotSquareError,
    SelfLoopRequestedError,
)

DEFAULT_SYMMETRY_TOL = 1e-10


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class SimpleGraph:
    """Validated weighted graph with cached degrees and Laplacian."""

    n: int
    weights: np.ndarray   # symmetric, nonnegative, zero diagonal
    degrees: np.ndarray   # row sums of weights
    laplacian: np.ndarray  # diag(degrees) - weights


@dataclass(frozen=True)
class Permutation:
    """Relabeling of vertices. mapping[i] is the old index placed at new index i.

    As a 0/1 matrix P this is P[i, j] = 1 iff j == mapping[i], so a permuted
    signal is (P f)[i] = f[mapping[i]].
    """

    mapping: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mapping, dtype=int)
        n = m.shape[0]
        if m.ndim != 1 or not np.array_equal(np.sort(m), np.arange(n)):
            raise ValueError("mapping must be a bijection on 0..n-1")
        object.__setattr__(self, "mapping", m)

    @property
    def n(self) -> int:
        return self.mapping.shape[0]

    def matrix(self) -> np.ndarray:
        return np.eye(self.n)[self.mapping, :]

    def inverse(self) -> "Permutation":
        inv = np.empty(self.n, dtype=int)
        inv[self.mapping] = np.arange(self.n)
        return Permutation(inv)

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(np.arange(n))

    @staticmethod
    def random(n: int, rng: np.random.Generator) -> "Permutation":
        return Permutation(rng.permutation(n))


@dataclass(frozen=True)
class WeightPerturbation:
    """Entrywise-bounded symmetric change of edge weights.

    Every off-diagonal entry of delta is at most c_sharp / n**2 in absolute
    value; the diagonal is zero. laplacian_delta is L - L~ for the perturbed
    graph, whose operator norm is at most c_sharp / n.
    """

    delta: np.ndarray
    c_sharp: float
    laplacian_delta: np.ndarray


def _connected(weights: np.ndarray) -> bool:
    """Breadth-first search over strictly positive entries."""
    n = weights.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    frontier = [0]
    count = 1
    while frontier:
        nxt = []
        for u in frontier:
            for v in np.nonzero(weights[u] > 0.0)[0]:
                if not seen[v]:
                    seen[v] = True
                    count += 1
                    nxt.append(int(v))
        frontier = nxt
    return count == n


def _build(weights: np.ndarray) -> SimpleGraph:
    degrees = weights.sum(axis=1)
    laplacian = np.diag(degrees) - weights
    return SimpleGraph(
        n=weights.shape[0],
        weights=_freeze(weights),
        degrees=_freeze(degrees),
        laplacian=_freeze(laplacian),
    )


def validate(raw_weights, symmetry_tol: float = DEFAULT_SYMMETRY_TOL) -> SimpleGraph:
    """Check a raw weight matrix and return the graph it defines.

    Asymmetry up to symmetry_tol (max entrywise |A - A^T|) is repaired by
    averaging with the transpose; anything larger is rejected.
    """
    a = np.asarray(raw_weights, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 2:
        raise NotSquareError(f"expected a square matrix with n >= 2, got shape {a.shape}")
    asym = np.max(np.abs(a - a.T))
    if asym > symmetry_tol:
        raise AsymmetryExceedsToleranceError(
            f"max |A - A^T| = {asym:.3e} exceeds tolerance {symmetry_tol:.3e}")
    w = (a + a.T) / 2.0
    if np.any(np.diag(w) != 0.0):
        raise NonzeroDiagonalError("self-loops are not allowed (nonzero diagonal)")
    if np.any(w < 0.0):
        raise NegativeWeightError(f"minimum weight {w.min():.3e} is negative")
    if not _connected(w):
        raise DisconnectedError("graph induced by positive weights is not connected")
    return _build(w)


def apply_permutation(g: SimpleGraph, p: Permutation) -> SimpleGraph:
    """Relabel vertices: the returned graph has weights P W P^T."""
    if p.n != g.n:
        raise LengthMismatchError(f"permutation length {p.n} != vertex count {g.n}")
    w = g.weights[np.ix_(p.mapping, p.mapping)]
    return _build(w)


def permute_signal(f: np.ndarray, p: Permutation) -> np.ndarray:
    """Return P f (also accepts an n x D matrix of signals, permuting rows)."""
    f = np.asarray(f, dtype=float)
    if f.shape[0] != p.n:
        raise LengthMismatchError(f"signal length {f.shape[0]} != permutation length {p.n}")
    return f[p.mapping]


def perturb_weights(g: SimpleGraph, c_sharp: float, rng_seed: int):
    """Sample a random entrywise perturbation with |delta| <= c_sharp / n^2.

    Entries are i.i.d. uniform on that interval, symmetrized, zero on the
    diagonal, and clipped from below so the perturbed weights stay >= 0.
    Returns (perturbed graph, WeightPerturbation).
    """
    if c_sharp <= 0.0:
        raise InvalidBoundError(f"c_sharp must be positive, got {c_sharp}")
    n = g.n
    rng = np.random.default_rng(rng_seed)
    bound = c_sharp / n**2
    raw = rng.uniform(-bound, bound, size=(n, n))
    delta = np.triu(raw, 1)
    delta = delta + delta.T
    # clipping keeps each perturbed weight nonnegative without widening the bound
    delta = np.maximum(delta, -g.weights)
    w_tilde = g.weights + delta
    if not _connected(w_tilde):
        raise DisconnectedAfterPerturbationError("perturbation disconnected the graph")
    g_tilde = _build(w_tilde)
    return g_tilde, WeightPerturbation(
        delta=_freeze(delta),
        c_sharp=float(c_sharp),
        laplacian_delta=_freeze(g.laplacian - g_tilde.laplacian),
    )


def flip_edge(g: SimpleGraph, u: int, v: int) -> SimpleGraph:
    """Toggle the connectivity of one vertex pair (added edges get weight 1)."""
    if u == v:
        raise SelfLoopRequestedError(f"cannot flip a self-loop at vertex {u}")
    w = g.weights.copy()
    new_weight = 0.0 if w[u, v] > 0.0 else 1.0
    w[u, v] = new_weight
    w[v, u] = new_weight
    if not _connected(w):
        raise DisconnectedAfterFlipError(f"removing edge ({u}, {v}) disconnected the graph")
    return _build(w)
