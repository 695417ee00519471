"""Shared helpers for the test suite."""

import random

from coronagraphs.graph import Graph


def random_connected_graph(n: int, rng: random.Random) -> Graph:
    """Random spanning tree on n nodes plus a handful of extra edges."""
    edges = set()
    for v in range(1, n):
        edges.add((rng.randrange(v), v))
    for _ in range(n):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, sorted(edges))
