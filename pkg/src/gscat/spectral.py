"""Dense symmetric eigendecomposition and the graph spectral toolbox.

The eigensolver is written here rather than delegated: Householder reduction
to tridiagonal form followed by implicit-shift QL iteration with accumulated
rotations. This gives full control over determinism, tolerances, and the
eigenvector sign convention that the rest of the library relies on.

On top of the decomposition: graph Fourier transform, spectral convolution,
spectral gap, and eigenpair deviation between two graphs.
"""
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    KernelDimensionNotOneError,
    LengthMismatchError,
    NoConvergenceError,
)
from .graph_core import SimpleGraph

CLAMP_FACTOR = 1e-8  # relative threshold for zero / repeated eigenvalues


# ---------------------------------------------------------------------------
# raw symmetric eigensolver
# ---------------------------------------------------------------------------

def _tridiagonalize(a: np.ndarray):
    """Householder similarity reduction of a symmetric matrix.

    Returns (d, e, q) where q.T @ a @ q is tridiagonal with diagonal d and
    subdiagonal e (length n-1).
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    q = np.eye(n)
    for k in range(n - 2):
        x = a[k + 1:, k]
        alpha = math.sqrt(float(x @ x))
        if alpha == 0.0:
            continue
        if x[0] > 0.0:
            alpha = -alpha
        u = x.copy()
        u[0] -= alpha
        unorm2 = float(u @ u)
        if unorm2 == 0.0:
            continue
        beta = 2.0 / unorm2
        sub = a[k + 1:, k + 1:]
        p = beta * (sub @ u)
        kappa = 0.5 * beta * float(u @ p)
        w = p - kappa * u
        sub -= np.outer(u, w)
        sub -= np.outer(w, u)
        a[k + 1, k] = alpha
        a[k, k + 1] = alpha
        a[k + 2:, k] = 0.0
        a[k, k + 2:] = 0.0
        qsub = q[:, k + 1:]
        qsub -= np.outer(qsub @ u, beta * u)
    d = np.diag(a).copy()
    e = np.diag(a, -1).copy() if n > 1 else np.zeros(0)
    return d, e, q


def _ql_implicit(d: np.ndarray, e: np.ndarray, z: np.ndarray, max_iter: int = 50):
    """Implicit-shift QL iteration on a tridiagonal matrix.

    d, e are consumed; rotations are accumulated into the columns of z.
    Returns (eigenvalues, eigenvectors), unsorted.
    """
    n = d.shape[0]
    d = d.copy()
    e = np.append(e, 0.0)
    zt = np.ascontiguousarray(z.T)  # row-major: row i is candidate vector i
    eps = np.finfo(float).eps
    for l in range(n):
        niter = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            niter += 1
            if niter > max_iter:
                raise NoConvergenceError(
                    f"eigenvalue {l} did not converge in {max_iter} sweeps")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    # deflate and restart the sweep
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                row_lo = zt[i]
                row_hi = zt[i + 1]
                tmp = s * row_lo + c * row_hi
                row_lo *= c
                row_lo -= s * row_hi
                zt[i + 1] = tmp
            if not underflow:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
    return d, np.ascontiguousarray(zt.T)


def eigh_symmetric(a: np.ndarray, max_iter: int = 50):
    """Full eigendecomposition of a dense symmetric matrix.

    Returns (eigenvalues ascending, eigenvector columns). The caller is
    responsible for any sign convention.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if n == 1:
        return a[0, :1].astype(float).copy(), np.ones((1, 1))
    d, e, q = _tridiagonalize(a)
    w, z = _ql_implicit(d, e, q, max_iter=max_iter)
    order = np.argsort(w, kind="stable")
    return w[order], np.ascontiguousarray(z[:, order])


def operator_norm(a: np.ndarray, tol: float = 1e-10, max_iter: int = 200000) -> float:
    """Spectral norm (largest singular value) via power iteration on a^T a."""
    a = np.asarray(a, dtype=float)
    if not np.any(a):
        return 0.0
    rng = np.random.default_rng(0)
    v = rng.standard_normal(a.shape[1])
    v /= math.sqrt(float(v @ v))
    sigma2_prev = 0.0
    for _ in range(max_iter):
        w = a.T @ (a @ v)
        norm_w = math.sqrt(float(w @ w))
        if norm_w == 0.0:
            return 0.0
        v = w / norm_w
        sigma2 = float(v @ (a.T @ (a @ v)))
        if abs(sigma2 - sigma2_prev) <= tol * max(1.0, abs(sigma2)):
            break
        sigma2_prev = sigma2
    return math.sqrt(max(sigma2, 0.0))


# ---------------------------------------------------------------------------
# graph spectral decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenpairs of a graph Laplacian with accuracy certificates.

    eigenvalues are ascending with eigenvalues[0] == 0 exactly (clamped);
    eigenvector column l corresponds to eigenvalue l. In every column the
    entry of largest absolute value is positive (first such entry on ties).
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residual: float
    lambda_max: float

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]


def _fix_signs(v: np.ndarray) -> np.ndarray:
    idx = np.argmax(np.abs(v), axis=0)
    flip = v[idx, np.arange(v.shape[1])] < 0.0
    v[:, flip] *= -1.0
    return v


def decompose(g: SimpleGraph, max_iter: int = 50) -> SpectralDecomposition:
    """Eigendecompose the Laplacian of a validated graph."""
    w, v = eigh_symmetric(g.laplacian, max_iter=max_iter)
    lam_max = float(w[-1])
    thresh = CLAMP_FACTOR * max(1.0, lam_max)
    if abs(w[0]) <= thresh:
        w[0] = 0.0
    if g.n > 1 and w[1] <= thresh:
        raise KernelDimensionNotOneError(
            f"second eigenvalue {w[1]:.3e} is below the zero threshold {thresh:.3e}")
    v = _fix_signs(v)
    residual = float(np.max(np.sqrt(((g.laplacian @ v - v * w) ** 2).sum(axis=0))))
    w.flags.writeable = False
    v.flags.writeable = False
    return SpectralDecomposition(
        eigenvalues=w, eigenvectors=v, residual=residual, lambda_max=lam_max)


def gft(dec: SpectralDecomposition, f: np.ndarray) -> np.ndarray:
    """Graph Fourier transform: coefficients of f in the eigenvector basis."""
    f = np.asarray(f, dtype=float)
    if f.shape[0] != dec.n:
        raise LengthMismatchError(f"signal length {f.shape[0]} != {dec.n}")
    return dec.eigenvectors.T @ f


def igft(dec: SpectralDecomposition, fhat: np.ndarray) -> np.ndarray:
    """Inverse graph Fourier transform."""
    fhat = np.asarray(fhat, dtype=float)
    if fhat.shape[0] != dec.n:
        raise LengthMismatchError(f"coefficient length {fhat.shape[0]} != {dec.n}")
    return dec.eigenvectors @ fhat


def convolve(dec: SpectralDecomposition, f1: np.ndarray, f2: np.ndarray) -> np.ndarray:
    """Graph convolution: inverse transform of the pointwise product of spectra."""
    return igft(dec, gft(dec, f1) * gft(dec, f2))


def spectral_gap(dec: SpectralDecomposition) -> float:
    """Smallest distance between distinct eigenvalues; 0 if any repeat."""
    diffs = np.diff(dec.eigenvalues)
    gap = float(diffs.min()) if diffs.size else 0.0
    if gap <= CLAMP_FACTOR * max(1.0, dec.lambda_max):
        return 0.0
    return gap


def eigenpair_deviation(dec_a: SpectralDecomposition, dec_b: SpectralDecomposition):
    """Largest eigenvalue shift and eigenvector angle between two decompositions.

    Returns (max_l |lambda_l - lambda~_l|, max_l sin(angle(u_l, u~_l))) with
    sin(angle) = sqrt(1 - (u . u~)^2), which is insensitive to sign flips.
    """
    if dec_a.n != dec_b.n:
        raise LengthMismatchError(f"vertex counts differ: {dec_a.n} != {dec_b.n}")
    gap = float(np.max(np.abs(dec_a.eigenvalues - dec_b.eigenvalues)))
    dots = np.sum(dec_a.eigenvectors * dec_b.eigenvectors, axis=0)
    sines = np.sqrt(np.maximum(0.0, 1.0 - dots**2))
    return gap, float(np.max(sines))
