"""Algorithm graphs and the quantities derived from them.

A graph-based splitting method is determined by a pair (G, G') of oriented
graphs over nodes 1..n: G couples the projection steps, its connected
spanning subgraph G' supplies the Laplacian that drives the governing
variables.  Edges are stored 1-based as (i, j) with i < j.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DisconnectedSubgraphError,
    InconsistentSystemError,
    InvalidInputError,
)

NAMED_GRAPHS = (
    "sequential",
    "complete",
    "parallel_down",
    "parallel_up",
    "malitsky_tam",
    "generalized_ryu",
)


def _is_connected(n: int, edges) -> bool:
    """Connectivity of the undirected skeleton, by union-find."""
    parent = list(range(n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in edges:
        parent[find(i)] = find(j)
    roots = {find(i) for i in range(1, n + 1)}
    return len(roots) == 1


@dataclass(frozen=True)
class AlgorithmGraph:
    """The ordered graph pair (G, G') defining one splitting algorithm."""

    n: int
    edges_G: tuple[tuple[int, int], ...]
    edges_Gp: tuple[tuple[int, int], ...]
    name: str = "custom"

    def __post_init__(self):
        if self.n < 2:
            raise InvalidInputError("need at least 2 nodes")
        eG = tuple(sorted(set(map(tuple, self.edges_G))))
        eGp = tuple(sorted(set(map(tuple, self.edges_Gp))))
        for i, j in eG:
            if not (1 <= i < j <= self.n):
                raise InvalidInputError(f"edge ({i},{j}) does not satisfy 1 <= i < j <= n")
        if not set(eGp) <= set(eG):
            raise InvalidInputError("G' must be a subgraph of G")
        if not _is_connected(self.n, eG):
            raise InvalidInputError("G is not connected")
        if not _is_connected(self.n, eGp):
            raise DisconnectedSubgraphError("G' is not connected over all nodes")
        object.__setattr__(self, "edges_G", eG)
        object.__setattr__(self, "edges_Gp", eGp)


def build_named(name: str, n: int) -> AlgorithmGraph:
    """One of the six named (G, G') configurations."""
    if n < 2:
        raise InvalidInputError("need n >= 2")
    sequential = tuple((i, i + 1) for i in range(1, n))
    complete = tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))
    parallel_down = tuple((i, n) for i in range(1, n))
    parallel_up = tuple((1, i) for i in range(2, n + 1))
    if name == "sequential":
        eG, eGp = sequential, sequential
    elif name == "complete":
        eG, eGp = complete, complete
    elif name == "parallel_down":
        eG, eGp = parallel_down, parallel_down
    elif name == "parallel_up":
        eG, eGp = parallel_up, parallel_up
    elif name == "malitsky_tam":
        eG, eGp = sequential + ((1, n),), sequential
    elif name == "generalized_ryu":
        eG, eGp = complete, parallel_down
    else:
        raise InvalidInputError(f"unknown graph name {name!r}")
    return AlgorithmGraph(n=n, edges_G=eG, edges_Gp=eGp, name=name)


def laplacian(g: AlgorithmGraph) -> np.ndarray:
    """Laplacian of the undirected skeleton of G'."""
    L = np.zeros((g.n, g.n))
    for i, j in g.edges_Gp:
        a, b = i - 1, j - 1
        L[a, b] -= 1.0
        L[b, a] -= 1.0
        L[a, a] += 1.0
        L[b, b] += 1.0
    return L


def factor_Z(L: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Full-rank n x (n-1) factor with Z Z^T = L.

    Built from the eigendecomposition of L: columns ordered by descending
    eigenvalue, each eigenvector's sign fixed so its first nonzero entry is
    positive.  The factor is unique only up to an orthogonal gauge; this
    convention pins one representative for reproducibility.
    """
    L = np.asarray(L, dtype=float)
    n = L.shape[0]
    if L.shape != (n, n) or np.linalg.norm(L - L.T) > 1e-12:
        raise InvalidInputError("L must be square and symmetric")
    w, Q = np.linalg.eigh(L)
    scale = max(abs(w[0]), abs(w[-1]), 1.0)
    n_zero = int(np.sum(np.abs(w) <= tol * scale))
    if n_zero != 1 or np.any(w < -tol * scale):
        raise DisconnectedSubgraphError(
            f"Laplacian rank is {n - n_zero}, expected n-1 = {n - 1}"
        )
    order = np.argsort(-w, kind="stable")[: n - 1]
    Z = np.empty((n, n - 1))
    for c, k in enumerate(order):
        q = Q[:, k]
        first = np.flatnonzero(np.abs(q) > 1e-12)[0]
        if q[first] < 0:
            q = -q
        Z[:, c] = np.sqrt(w[k]) * q
    return Z


def degree_balance(g: AlgorithmGraph) -> np.ndarray:
    """Per-node in-degree minus out-degree of G, as an integer vector."""
    delta = np.zeros(g.n, dtype=int)
    for i, j in g.edges_G:
        delta[i - 1] -= 1
        delta[j - 1] += 1
    return delta


def solve_alpha(Z: np.ndarray, delta: np.ndarray) -> np.ndarray:
    """The unique alpha with Z alpha = delta.

    delta is orthogonal to the all-ones kernel of Z^T, so the least-squares
    solution is exact; a large residual signals a broken Z or invalid graph.
    """
    delta = np.asarray(delta, dtype=float)
    alpha, *_ = np.linalg.lstsq(Z, delta, rcond=None)
    residual = np.linalg.norm(Z @ alpha - delta)
    if residual > 1e-8:
        raise InconsistentSystemError(
            f"Z alpha = delta is inconsistent (residual {residual:.3e})"
        )
    return alpha


@dataclass(frozen=True)
class SplittingOperator:
    """All quantities precomputed once per algorithm graph."""

    graph: AlgorithmGraph
    d_in: np.ndarray = field(repr=False)
    d_out: np.ndarray = field(repr=False)
    d: np.ndarray = field(repr=False)
    in_neighbors: tuple[tuple[int, ...], ...] = field(repr=False)
    L: np.ndarray = field(repr=False)
    Z: np.ndarray = field(repr=False)
    delta: np.ndarray = field(repr=False)
    alpha: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.graph.n


def build_operator(g: AlgorithmGraph) -> SplittingOperator:
    """Bundle degrees, neighbor lists, Laplacian, Z, delta and alpha."""
    n = g.n
    d_in = np.zeros(n, dtype=int)
    d_out = np.zeros(n, dtype=int)
    in_nbrs: list[list[int]] = [[] for _ in range(n)]
    for i, j in g.edges_G:
        d_out[i - 1] += 1
        d_in[j - 1] += 1
        in_nbrs[j - 1].append(i - 1)  # 0-based for the iteration kernel
    d = d_in + d_out
    if np.any(d == 0):
        raise InvalidInputError("every node must touch at least one edge of G")
    L = laplacian(g)
    Z = factor_Z(L)
    delta = degree_balance(g)
    alpha = solve_alpha(Z, delta)
    return SplittingOperator(
        graph=g,
        d_in=d_in,
        d_out=d_out,
        d=d,
        in_neighbors=tuple(tuple(sorted(v)) for v in in_nbrs),
        L=L,
        Z=Z,
        delta=delta,
        alpha=alpha,
    )
