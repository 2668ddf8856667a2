"""Discrete and generalized Laplacians with ordered eigen-decompositions.

The multiplicity grouping is the load-bearing part: bound checks that
involve the eigenvalue index need reliable multiplicities, so eigenvalues
are clustered by a gap tolerance relative to the spectral radius.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, connected_components

__all__ = [
    "laplacian", "generalized_laplacian", "is_generalized_laplacian",
    "Spectrum", "eigendecompose", "zero_multiplicity", "spectrum_to_csv",
]

DEFAULT_TOL = 1e-9


def laplacian(g: Graph) -> np.ndarray:
    """L = D - C with integer entries."""
    C = g.adjacency()
    return np.diag(C.sum(axis=1)) - C


def generalized_laplacian(g: Graph, weights, diagonal) -> np.ndarray:
    """Symmetric matrix with -weights on adjacent pairs and a free diagonal.

    weights maps bonds (canonical (i,j) pairs) to positive numbers.
    """
    M = np.zeros((g.vertex_count, g.vertex_count))
    for b in g.bonds:
        w = float(weights[b])
        if w <= 0:
            raise ValueError("weight on bond %s must be positive" % (b,))
        i, j = b[0] - 1, b[1] - 1
        M[i, j] = M[j, i] = -w
    M[np.diag_indices_from(M)] = np.asarray(diagonal, dtype=float)
    return M


def is_generalized_laplacian(M, g: Graph, tol=1e-12) -> bool:
    """Off-diagonal entries negative exactly on adjacent pairs."""
    M = np.asarray(M)
    if M.shape != (g.vertex_count, g.vertex_count):
        return False
    if not np.allclose(M, M.T, atol=tol):
        return False
    C = g.adjacency()
    off = ~np.eye(g.vertex_count, dtype=bool)
    adjacent = (C == 1) & off
    if not (M[adjacent] < 0).all():
        return False
    return np.abs(M[(C == 0) & off]).max(initial=0.0) <= tol


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues with orthonormal eigenvectors and multiplicity
    groups. groups[k] = (start, end) index window (inclusive, 0-based) of the
    k-th eigenvalue cluster."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    groups: tuple
    multiplicity_tolerance: float

    @property
    def size(self):
        return len(self.eigenvalues)

    def multiplicity(self, n):
        """Multiplicity of the cluster containing 0-based index n."""
        s, e = self.group_of(n)
        return e - s + 1

    def group_of(self, n):
        for (s, e) in self.groups:
            if s <= n <= e:
                return (s, e)
        raise IndexError(n)

    def vector(self, n):
        return self.eigenvectors[:, n]


def eigendecompose(L, tol=DEFAULT_TOL) -> Spectrum:
    """Ordered eigen-decomposition of a symmetric matrix.

    Eigenvalues within tol * max|lambda| of their neighbor are clustered
    into one multiplicity group. Each eigenvector is normalized so its first
    entry above the cluster tolerance is positive.
    """
    L = np.asarray(L, dtype=float)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise ValueError("matrix must be square")
    if not np.allclose(L, L.T, atol=1e-10 * max(1.0, np.abs(L).max())):
        raise ValueError("matrix must be symmetric")
    vals, vecs = np.linalg.eigh(L)
    scale = max(1.0, np.abs(vals).max())
    gap = tol * scale
    groups = []
    start = 0
    for n in range(1, len(vals) + 1):
        if n == len(vals) or vals[n] - vals[n - 1] > gap:
            groups.append((start, n - 1))
            start = n
    entry_tol = 1e-10 * max(1.0, np.abs(vecs).max())
    for n in range(vecs.shape[1]):
        col = vecs[:, n]
        nz = np.nonzero(np.abs(col) > entry_tol)[0]
        if len(nz) and col[nz[0]] < 0:
            vecs[:, n] = -col
    return Spectrum(vals, vecs, tuple(groups), tol)


def zero_multiplicity(L, tol=DEFAULT_TOL) -> int:
    """Number of eigenvalues with |lambda| <= tol * max(1, ||L||)."""
    L = np.asarray(L, dtype=float)
    vals = np.linalg.eigvalsh(L)
    scale = max(1.0, np.abs(vals).max())
    return int(np.sum(np.abs(vals) <= tol * scale))


def residuals(L, spectrum: Spectrum):
    """Per-pair residual ||L x - lambda x|| / ||L||."""
    L = np.asarray(L, dtype=float)
    norm = max(np.linalg.norm(L, 2), 1e-300)
    out = []
    for n in range(spectrum.size):
        x = spectrum.vector(n)
        out.append(np.linalg.norm(L @ x - spectrum.eigenvalues[n] * x) / norm)
    return np.array(out)


def spectrum_to_csv(spectrum: Spectrum) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    V = spectrum.size
    w.writerow(["index", "eigenvalue", "multiplicity_group"]
               + ["v%d" % (i + 1) for i in range(V)])
    for n in range(V):
        s, _ = spectrum.group_of(n)
        w.writerow([n + 1, repr(float(spectrum.eigenvalues[n])), s + 1]
                   + [repr(float(x)) for x in spectrum.vector(n)])
    return buf.getvalue()


def laplacian_spectrum(g: Graph, tol=DEFAULT_TOL) -> Spectrum:
    return eigendecompose(laplacian(g), tol)


def check_zero_multiplicity_matches_components(g: Graph, tol=DEFAULT_TOL) -> bool:
    return zero_multiplicity(laplacian(g), tol) == connected_components(g).component_count
