"""Seed graphs, the corona product, and exact node/edge count formulas.

A corona step attaches one fresh copy of the seed to every existing node
and joins that node to all vertices of its copy.  Iterating from a seed on
n nodes yields n*(n+1)**m nodes after m steps, so materialization is capped
while the count formulas stay exact at any depth.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path

import numpy as np

U128_MAX = (1 << 128) - 1
DEFAULT_NODE_CAP = 2_000_000


class CountOverflowError(OverflowError):
    """A checked count left the 128-bit unsigned range."""


class CapExceededError(RuntimeError):
    """Materializing the graph would exceed the configured node cap."""


class EdgeListError(ValueError):
    """Malformed edge-list file."""


def _checked(value: int, what: str = "count") -> int:
    if value < 0 or value > U128_MAX:
        raise CountOverflowError(f"{what} outside checked 128-bit range")
    return value


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph in CSR form.

    ``offsets`` has length node_count+1; ``targets`` holds the sorted
    neighbor list of node u in ``targets[offsets[u]:offsets[u+1]]``.  Both
    directions of every edge are stored, so ``len(targets) == 2*edge_count``.
    """

    offsets: np.ndarray
    targets: np.ndarray

    def __post_init__(self) -> None:
        self.offsets.setflags(write=False)
        self.targets.setflags(write=False)

    @property
    def node_count(self) -> int:
        return len(self.offsets) - 1

    @property
    def edge_count(self) -> int:
        return len(self.targets) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def neighbors(self, u: int) -> np.ndarray:
        return self.targets[self.offsets[u]:self.offsets[u + 1]]

    def degree(self, u: int) -> int:
        return int(self.offsets[u + 1] - self.offsets[u])

    def edge_array(self) -> np.ndarray:
        """(edge_count, 2) array with u < v, sorted lexicographically."""
        if self.edge_count == 0:
            return np.empty((0, 2), dtype=np.int64)
        src = np.repeat(np.arange(self.node_count, dtype=np.int64), self.degrees)
        keep = src < self.targets
        return np.column_stack((src[keep], self.targets[keep]))

    @classmethod
    def from_edges(cls, node_count: int, edges) -> "Graph":
        """Build and validate a graph from undirected edge pairs.

        Rejects self-loops, duplicate undirected pairs, and out-of-range
        endpoints.  Isolated nodes are fine; they simply have empty rows.
        """
        if node_count < 0:
            raise ValueError("node_count must be nonnegative")
        uv = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                        dtype=np.int64)
        if uv.size == 0:
            uv = np.empty((0, 2), dtype=np.int64)
        uv = uv.reshape(-1, 2)
        if uv.size:
            if uv.min() < 0 or uv.max() >= node_count:
                raise ValueError("edge endpoint out of range")
            if np.any(uv[:, 0] == uv[:, 1]):
                raise ValueError("self-loops are not allowed")
            lo = np.minimum(uv[:, 0], uv[:, 1])
            hi = np.maximum(uv[:, 0], uv[:, 1])
            norm = lo * node_count + hi
            if len(np.unique(norm)) != len(norm):
                raise ValueError("duplicate undirected edge")
        both = np.concatenate((uv, uv[:, ::-1]), axis=0)
        order = np.lexsort((both[:, 1], both[:, 0]))
        both = both[order]
        counts = np.bincount(both[:, 0], minlength=node_count)
        offsets = np.zeros(node_count + 1, dtype=np.int64)
        np.cumsum(counts, out=offsets[1:])
        return cls(offsets=offsets, targets=both[:, 1].copy())


# ---------------------------------------------------------------------------
# builtin seed families


def complete_graph(k: int) -> Graph:
    if k < 1:
        raise ValueError("complete graph needs k >= 1")
    return Graph.from_edges(k, itertools.combinations(range(k), 2))


def path_graph(k: int) -> Graph:
    if k < 1:
        raise ValueError("path graph needs k >= 1")
    return Graph.from_edges(k, ((i, i + 1) for i in range(k - 1)))


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise ValueError("cycle graph needs k >= 3")
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def star_graph(k: int) -> Graph:
    """Star on k total vertices: node 0 is the center, nodes 1..k-1 leaves."""
    if k < 3:
        raise ValueError("star graph needs k >= 3")
    return Graph.from_edges(k, ((0, i) for i in range(1, k)))


_BUILDERS = {
    "complete": complete_graph,
    "path": path_graph,
    "cycle": cycle_graph,
    "star": star_graph,
}


@dataclass(frozen=True)
class SeedDescriptor:
    """A resolved seed graph plus the kind:param string it came from.

    ``connected`` is a warning flag: disconnected seeds are accepted (they
    generate disconnected corona graphs) but most analyses require
    connectivity.
    """

    kind: str
    param: str
    graph: Graph
    connected: bool

    @property
    def label(self) -> str:
        return f"{self.kind}:{self.param}"

    @classmethod
    def from_spec(cls, spec: str) -> "SeedDescriptor":
        """Parse a ``kind:param`` seed spec, e.g. ``complete:3`` or ``file:g.edges``."""
        kind, sep, param = spec.partition(":")
        if not sep or not param:
            raise ValueError(f"seed spec must be kind:param, got {spec!r}")
        if kind == "file":
            g = read_edge_list(param)
        elif kind in _BUILDERS:
            try:
                k = int(param)
            except ValueError:
                raise ValueError(f"seed parameter must be an integer, got {param!r}")
            g = _BUILDERS[kind](k)
        else:
            raise ValueError(
                f"unknown seed kind {kind!r}; expected one of "
                f"{sorted(_BUILDERS)} or 'file'"
            )
        return cls(kind=kind, param=param, graph=g,
                   connected=connected_component_count(g) == 1)


def build_seed(spec) -> Graph:
    """Resolve a seed spec string or descriptor to its Graph."""
    if isinstance(spec, SeedDescriptor):
        return spec.graph
    return SeedDescriptor.from_spec(spec).graph


# ---------------------------------------------------------------------------
# counts


def node_count_formula(n: int, m: int) -> int:
    """Exact node count n*(n+1)**m of the level-m corona graph."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    return _checked(n * (n + 1) ** m, "node count")


def edge_count_formula(n: int, e: int, m: int) -> int:
    """Exact edge count e + (e + n)*((n+1)**m - 1) of the level-m corona graph."""
    if n < 1 or e < 0 or m < 0:
        raise ValueError("need n >= 1, e >= 0, m >= 0")
    return _checked(e + (e + n) * ((n + 1) ** m - 1), "edge count")


@dataclass(frozen=True)
class CoronaPlan:
    """Seed descriptor, iteration count, and the predicted exact sizes."""

    seed: SeedDescriptor
    m: int
    node_cap: int = DEFAULT_NODE_CAP

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError("m must be nonnegative")
        if self.seed.graph.node_count < 1:
            raise ValueError("seed must be nonempty")

    @property
    def n(self) -> int:
        return self.seed.graph.node_count

    @property
    def seed_edges(self) -> int:
        return self.seed.graph.edge_count

    @property
    def predicted_nodes(self) -> int:
        return node_count_formula(self.n, self.m)

    @property
    def predicted_edges(self) -> int:
        return edge_count_formula(self.n, self.seed_edges, self.m)

    def check_cap(self) -> None:
        if self.predicted_nodes > self.node_cap:
            raise CapExceededError(
                f"level {self.m} has {self.predicted_nodes} nodes, "
                f"over the cap of {self.node_cap}"
            )


def corona_product(g: Graph, seed: Graph) -> Graph:
    """One corona step: attach a seed copy to every node of g.

    Index layout contract: nodes of g keep indices 0..N-1; the copy attached
    to g-node i occupies the contiguous block N+i*n .. N+(i+1)*n-1 in seed
    order.  Downstream eigenvector constructions and step-of-addition
    bookkeeping rely on this.
    """
    n = seed.node_count
    if n < 1:
        raise ValueError("seed must be nonempty")
    N = g.node_count
    new_n = _checked(N * (1 + n), "node count")

    base = g.edge_array()
    seed_e = seed.edge_array()
    e_s = len(seed_e)
    copies = np.tile(seed_e, (N, 1))
    shift = (N + np.repeat(np.arange(N, dtype=np.int64), e_s) * n)[:, None]
    copies = copies + shift
    joins = np.column_stack((
        np.repeat(np.arange(N, dtype=np.int64), n),
        N + np.arange(N * n, dtype=np.int64),
    ))
    return Graph.from_edges(new_n, np.concatenate((base, copies, joins), axis=0))


def corona_iterate(plan: CoronaPlan) -> Graph:
    """Materialize the level-m corona graph; m=0 returns the seed itself."""
    plan.check_cap()
    g = plan.seed.graph
    for _ in range(plan.m):
        g = corona_product(g, plan.seed.graph)
    assert g.node_count == plan.predicted_nodes
    assert g.edge_count == plan.predicted_edges
    return g


# ---------------------------------------------------------------------------
# traversal helpers


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Hop distances from source; unreachable nodes get -1."""
    dist = np.full(g.node_count, -1, dtype=np.int64)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    d = 0
    while len(frontier):
        _, nbrs = expand_frontier(g, frontier)
        fresh = nbrs[dist[nbrs] < 0]
        if len(fresh) == 0:
            break
        frontier = np.unique(fresh)
        d += 1
        dist[frontier] = d
    return dist


def expand_frontier(g: Graph, frontier: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """All CSR rows of ``frontier`` at once: (sources repeated, their targets)."""
    offsets, targets = g.offsets, g.targets
    counts = offsets[frontier + 1] - offsets[frontier]
    nz = counts > 0
    if not nz.all():
        frontier = frontier[nz]
        counts = counts[nz]
    total = int(counts.sum())
    if total == 0:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    # cumsum-of-ones trick: seed each segment start so the running sum jumps
    # to that row's offset
    idx = np.ones(total, dtype=np.int64)
    starts = np.cumsum(counts) - counts
    idx[starts[0]] = offsets[frontier[0]]
    if len(frontier) > 1:
        idx[starts[1:]] = offsets[frontier[1:]] - (
            offsets[frontier[:-1]] + counts[:-1] - 1
        )
    idx = np.cumsum(idx)
    return np.repeat(frontier, counts), targets[idx]


def connected_component_count(g: Graph) -> int:
    n = g.node_count
    seen = np.zeros(n, dtype=bool)
    comps = 0
    for start in range(n):
        if seen[start]:
            continue
        comps += 1
        dist = bfs_distances(g, start)
        seen |= dist >= 0
    return comps


# ---------------------------------------------------------------------------
# edge-list files


def read_edge_list(path) -> Graph:
    """Read the plain edge-list format.

    Optional first line ``# n=<int>`` fixes the node count (needed for
    isolated nodes); other ``#`` lines are comments.  Each data line is
    ``u v`` with 0-based endpoints, u != v, and no repeated undirected pair.
    """
    text = Path(path).read_text(encoding="utf-8")
    node_count = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("n=") and node_count is None and not edges:
                try:
                    node_count = int(body[2:])
                except ValueError:
                    raise EdgeListError(f"line {lineno}: bad node count {body!r}")
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(f"line {lineno}: non-integer endpoint in {raw!r}")
        if u == v:
            raise EdgeListError(f"line {lineno}: self-loop at node {u}")
        edges.append((u, v))
    if node_count is None:
        node_count = 1 + max((max(u, v) for u, v in edges), default=-1)
    try:
        return Graph.from_edges(node_count, edges)
    except ValueError as exc:
        raise EdgeListError(str(exc)) from exc


def write_edge_list(g: Graph, path) -> None:
    """Write the same format back: n header plus lexicographically sorted edges."""
    lines = [f"# n={g.node_count}"]
    for u, v in g.edge_array():
        lines.append(f"{u} {v}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
