"""Ground-truth numerics: dense A/L/Q matrices, a cyclic Jacobi eigensolver,
and brute-force betweenness/diameter for cross-checking the closed forms.

Everything here is deliberately independent of the recursion code it
validates: matrices are assembled entry by entry from the graph, eigenvalues
come from plane rotations, and betweenness is per-pair path counting with
exact rational accumulation.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph

DEFAULT_ORACLE_CAP = 5000

MATRIX_KINDS = ("adjacency", "laplacian", "signless")


class JacobiConvergenceError(RuntimeError):
    """The rotation sweeps failed to reach the off-diagonal target."""


def build_matrix(g: Graph, kind: str, cap: int = DEFAULT_ORACLE_CAP) -> np.ndarray:
    """Dense symmetric matrix of the requested kind.

    adjacency: A, laplacian: D - A, signless: D + A.
    """
    if kind not in MATRIX_KINDS:
        raise ValueError(f"unknown matrix kind {kind!r}")
    n = g.node_count
    if n > cap:
        raise ValueError(f"graph has {n} nodes, over the oracle cap {cap}")
    a = np.zeros((n, n), dtype=np.float64)
    src = np.repeat(np.arange(n, dtype=np.int64), g.degrees)
    a[src, g.targets] = 1.0
    if kind == "adjacency":
        return a
    d = np.diag(g.degrees.astype(np.float64))
    return d - a if kind == "laplacian" else d + a


def sym_eigenvalues(mat: np.ndarray, max_sweeps: int = 60) -> np.ndarray:
    """Sorted eigenvalues of a symmetric matrix via cyclic Jacobi."""
    vals, _ = _jacobi(mat, want_vectors=False, max_sweeps=max_sweeps)
    return vals


def sym_eigensystem(mat: np.ndarray, max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray]:
    """Sorted eigenvalues and matching orthonormal eigenvector columns."""
    return _jacobi(mat, want_vectors=True, max_sweeps=max_sweeps)


def _jacobi(mat, want_vectors: bool, max_sweeps: int):
    """Cyclic-by-row Jacobi with threshold skipping.

    Sweeps stop once the off-diagonal Frobenius norm drops below
    1e-12 * ||mat||_F; exceeding max_sweeps raises instead of returning a
    half-converged answer.
    """
    a = np.array(mat, dtype=np.float64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if n and not np.array_equal(a, a.T):
        raise ValueError("matrix must be symmetric")
    v = np.eye(n) if want_vectors else None
    if n < 2:
        vals = np.diag(a).copy()
        return vals, v

    fro = float(np.linalg.norm(a))
    target = 1e-12 * fro
    if fro == 0.0:
        return np.zeros(n), v

    # the off-diagonal norm is summed directly from those entries; computing
    # it as ||A||_F^2 - ||diag||^2 cancels and floors around ||A||*sqrt(eps)
    upper = np.triu_indices(n, 1)
    for _ in range(max_sweeps):
        off = math.sqrt(2.0 * float(np.sum(a[upper] ** 2)))
        if off <= target:
            vals = np.diag(a).copy()
            order = np.argsort(vals, kind="stable")
            return vals[order], (v[:, order] if want_vectors else None)
        skip = off / (n * n)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip * 1e-4:
                    continue
                theta = 0.5 * math.atan2(2.0 * apq, a[q, q] - a[p, p])
                c = math.cos(theta)
                s = math.sin(theta)
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                if want_vectors:
                    vp = v[:, p].copy()
                    v[:, p] = c * vp - s * v[:, q]
                    v[:, q] = s * vp + c * v[:, q]
    raise JacobiConvergenceError(
        f"no convergence after {max_sweeps} sweeps (off-diagonal {off:.3e})"
    )


@dataclass(frozen=True)
class MatchReport:
    """Elementwise comparison of a closed-form spectrum against oracle values."""

    max_abs_delta: float
    mean_abs_delta: float
    count_mismatched: int
    residual_max: float
    passed: bool


def compare_spectra(closed, numeric: np.ndarray, tol: float = 1e-8) -> MatchReport:
    """Compare a closed-form Spectrum with sorted numeric eigenvalues.

    A total-multiplicity mismatch is a hard error (it means a bookkeeping
    bug, not numeric noise); value deltas beyond tol are counted.
    """
    expanded = closed.expand()
    numeric = np.sort(np.asarray(numeric, dtype=np.float64))
    if len(expanded) != len(numeric):
        raise ValueError(
            f"multiplicity total {len(expanded)} != oracle count {len(numeric)}"
        )
    deltas = np.abs(expanded - numeric)
    mismatched = int(np.sum(deltas > tol))
    return MatchReport(
        max_abs_delta=float(deltas.max(initial=0.0)),
        mean_abs_delta=float(deltas.mean()) if len(deltas) else 0.0,
        count_mismatched=mismatched,
        residual_max=0.0,
        passed=mismatched == 0,
    )


# ---------------------------------------------------------------------------
# brute-force shortest-path references


def _bfs_counts(adj: list[list[int]], source: int) -> tuple[list[int], list[int]]:
    """Distances and exact shortest-path counts from one source."""
    n = len(adj)
    dist = [-1] * n
    sigma = [0] * n
    dist[source] = 0
    sigma[source] = 1
    q = deque([source])
    while q:
        u = q.popleft()
        du = dist[u]
        su = sigma[u]
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = du + 1
                q.append(w)
            if dist[w] == du + 1:
                sigma[w] += su
    return dist, sigma


def brute_betweenness(g: Graph, cap: int = 500) -> np.ndarray:
    """Exact betweenness by per-pair path counting, unordered pairs once.

    Accumulates sigma_jk(i)/sigma_jk as Fractions (Python integers never
    overflow) and converts to float at the end.
    """
    n = g.node_count
    if n > cap:
        raise ValueError(f"graph has {n} nodes, over the brute-force cap {cap}")
    adj = [list(map(int, g.neighbors(u))) for u in range(n)]
    dists = []
    sigmas = []
    for s in range(n):
        dist, sigma = _bfs_counts(adj, s)
        if min(dist) < 0:
            raise ValueError("graph must be connected")
        dists.append(np.array(dist, dtype=np.int64))
        sigmas.append(sigma)
    acc = [Fraction(0)] * n
    nodes = np.arange(n)
    for j in range(n):
        dj = dists[j]
        for k in range(j + 1, n):
            dk = dists[k]
            djk = int(dj[k])
            on_path = (dj + dk == djk) & (nodes != j) & (nodes != k)
            if not on_path.any():
                continue
            sigma_jk = sigmas[j][k]
            for i in np.nonzero(on_path)[0]:
                acc[i] += Fraction(sigmas[j][i] * sigmas[i][k], sigma_jk)
    return np.array([float(x) for x in acc])


def brute_diameter(g: Graph, cap: int = 500) -> int:
    """Exact diameter by all-source BFS; raises on disconnected input."""
    n = g.node_count
    if n > cap:
        raise ValueError(f"graph has {n} nodes, over the brute-force cap {cap}")
    adj = [list(map(int, g.neighbors(u))) for u in range(n)]
    best = 0
    for s in range(n):
        dist, _ = _bfs_counts(adj, s)
        ecc = max(dist)
        if min(dist) < 0:
            raise ValueError("graph must be connected")
        best = max(best, ecc)
    return best
