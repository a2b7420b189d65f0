"""Seeded random graph streams for sweeps and property checks."""
from __future__ import annotations

import numpy as np

from .stream_core import GraphStream, Token


def random_tree_edges(n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Uniform random recursive tree on ``n`` nodes, relabelled by a random permutation.

    Node 0 of the returned labelling is always the root of the recursion.
    """
    perm = np.concatenate([[0], 1 + rng.permutation(n - 1)]) if n > 1 else np.array([0])
    edges = []
    for i in range(1, n):
        parent = int(rng.integers(0, i))
        edges.append((int(perm[parent]), int(perm[i])))
    order = rng.permutation(len(edges))
    return [edges[k] for k in order]


def random_tree(n: int, seed: int | None = None, query: int | None = None) -> GraphStream:
    """Tree stream rooted at 0 with a random (or given) query node."""
    rng = np.random.default_rng(seed)
    edges = random_tree_edges(n, rng)
    u = int(rng.integers(0, n)) if query is None else query
    tokens = [Token.query(u)] + [Token.edge(a, b) for a, b in edges]
    return GraphStream(n=n, tokens=tokens, root=0)


def deferred_leaf_tree(n: int, seed: int | None = None) -> tuple[GraphStream, int, int]:
    """Random tree with one leaf ``v`` whose parent edge is withheld.

    Returns ``(stream_without_v_edge, v, parent_of_v)``; the stream queries ``v``.
    """
    if n < 2:
        raise ValueError("need at least two nodes")
    rng = np.random.default_rng(seed)
    edges = random_tree_edges(n, rng)
    degree = np.zeros(n, dtype=int)
    for a, b in edges:
        degree[a] += 1
        degree[b] += 1
    leaves = [x for x in range(1, n) if degree[x] == 1]
    v = int(rng.choice(leaves))
    (edge,) = [e for e in edges if v in e]
    parent = edge[0] if edge[1] == v else edge[1]
    rest = [e for e in edges if e != edge]
    tokens = [Token.query(v)] + [Token.edge(a, b) for a, b in rest]
    return GraphStream(n=n, tokens=tokens, root=0), v, parent


def random_graph(n: int, density: float, seed: int | None = None, *, directed: bool = False,
                 weights: tuple[int, int] | None = None,
                 query: tuple[int, ...] | None = None) -> GraphStream:
    """Erdos-Renyi style stream; ``weights=(lo, hi)`` draws integer weights inclusive."""
    rng = np.random.default_rng(seed)
    tokens: list[Token] = []
    if query:
        tokens.append(Token.query(*query))
    for u in range(n):
        for v in range(n):
            if u == v or (not directed and v < u):
                continue
            if rng.random() < density:
                w = None if weights is None else int(rng.integers(weights[0], weights[1] + 1))
                tokens.append(Token.edge(u, v, w))
    body = tokens[1:] if query else tokens
    order = rng.permutation(len(body))
    body = [body[k] for k in order]
    tokens = (tokens[:1] if query else []) + body
    return GraphStream(n=n, tokens=tokens, directed=directed, weighted=weights is not None)


def random_connected_graph(n: int, density: float, seed: int | None = None) -> GraphStream:
    """Random spanning tree plus extra edges with probability ``density``."""
    rng = np.random.default_rng(seed)
    present = {tuple(sorted(e)) for e in random_tree_edges(n, rng)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                present.add((u, v))
    edges = sorted(present)
    order = rng.permutation(len(edges))
    return GraphStream(n=n, tokens=[Token.edge(*edges[k]) for k in order])
