"""Reference streaming processors.

All of them store the whole stream and solve at :meth:`finish`.  Sublinear
space is impossible for these problems, so plain storage is the matching
upper bound; the point of the metering is to see what it costs.
"""
from __future__ import annotations

from collections import deque
from typing import Callable

from .stream_core import InvalidInput, StreamProcessor

ProcessorFactory = Callable[[], StreamProcessor]


class TreeDepthProcessor(StreamProcessor):
    """Depth of the query node ``u`` in the tree rooted at ``root``."""

    name = "tree-depth"

    def solve(self) -> int:
        if self.root is None or not self.query:
            raise InvalidInput("tree-depth needs a root and a query node")
        u = self.query[0]
        if len(self.edges) != self.n - 1:
            raise InvalidInput(f"{len(self.edges)} edges cannot form a tree on {self.n} nodes")
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for a, b, _ in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        depth = [-1] * self.n
        depth[self.root] = 0
        queue = deque([self.root])
        reached = 1
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if depth[y] < 0:
                    depth[y] = depth[x] + 1
                    reached += 1
                    queue.append(y)
        if reached != self.n:
            raise InvalidInput("stream is not a connected tree")
        return depth[u]


class STDistanceProcessor(StreamProcessor):
    """Hop distance from ``s`` to ``t``; ``-1`` when unreachable."""

    name = "st-distance"

    def solve(self) -> int:
        s, t = _pair(self.query)
        adj = self.adjacency()
        dist = [-1] * self.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist[t]


class WeightedSTMinCutProcessor(StreamProcessor):
    """Min ``s``-``t`` cut value by Dinic's blocking-flow max-flow.

    Undirected edges become two arcs of capacity ``w``; a directed stream is
    taken arc by arc.
    """

    name = "st-mincut"

    def check_edge(self, u: int, v: int, w: int) -> None:
        if w <= 0:
            raise InvalidInput(f"nonpositive weight {w} on edge ({u}, {v})")

    def solve(self) -> int:
        s, t = _pair(self.query)
        if s == t:
            raise InvalidInput("s and t must differ")
        return _dinic(self.n, self.arcs(), s, t)


def _dinic(n: int, arcs, s: int, t: int) -> int:
    # residual graph as parallel arrays; arc i and i^1 are mates
    head = [[] for _ in range(n)]
    to: list[int] = []
    cap: list[int] = []
    for u, v, w in arcs:
        if u == v:
            continue
        head[u].append(len(to))
        to.append(v)
        cap.append(w)
        head[v].append(len(to))
        to.append(u)
        cap.append(0)
    flow = 0
    while True:
        level = [-1] * n
        level[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for e in head[x]:
                if cap[e] > 0 and level[to[e]] < 0:
                    level[to[e]] = level[x] + 1
                    queue.append(to[e])
        if level[t] < 0:
            return flow
        it = [0] * n

        def push(x: int, limit: int) -> int:
            if x == t:
                return limit
            edges = head[x]
            while it[x] < len(edges):
                e = edges[it[x]]
                y = to[e]
                if cap[e] > 0 and level[y] == level[x] + 1:
                    got = push(y, min(limit, cap[e]))
                    if got:
                        cap[e] -= got
                        cap[e ^ 1] += got
                        return got
                it[x] += 1
            return 0

        while True:
            got = push(s, 1 << 62)
            if not got:
                break
            flow += got


class NegCycleProcessor(StreamProcessor):
    """1 iff a directed cycle of negative total weight exists.

    Queue-based relaxation from a virtual source joined to every node with a
    zero arc; a shortest path that needs more than ``n`` arcs proves a cycle.
    """

    name = "neg-cycle"

    def solve(self) -> int:
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for u, v, w in self.arcs():
            if u == v and w < 0:
                return 1
            out[u].append((v, w))
        dist = [0] * self.n
        hops = [0] * self.n
        queue = deque(range(self.n))
        queued = [True] * self.n
        while queue:
            x = queue.popleft()
            queued[x] = False
            for y, w in out[x]:
                if dist[x] + w < dist[y]:
                    dist[y] = dist[x] + w
                    hops[y] = hops[x] + 1
                    if hops[y] >= self.n:
                        return 1
                    if not queued[y]:
                        queued[y] = True
                        queue.append(y)
        return 0


class SCCSameProcessor(StreamProcessor):
    """1 iff ``s`` and ``t`` share a strongly connected component."""

    name = "scc-same"

    def solve(self) -> int:
        s, t = _pair(self.query)
        fwd = self.adjacency()
        rev: list[list[int]] = [[] for _ in range(self.n)]
        for u, vs in enumerate(fwd):
            for v in vs:
                rev[v].append(u)
        return int(_reaches(fwd, s, t) and _reaches(rev, s, t))


def _reaches(adj: list[list[int]], s: int, t: int) -> bool:
    seen = {s}
    stack = [s]
    while stack:
        x = stack.pop()
        if x == t:
            return True
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return False


def _pair(query: tuple[int, ...]) -> tuple[int, int]:
    if len(query) == 2:
        return query[0], query[1]
    if len(query) == 1:
        return query[0], query[0]
    raise InvalidInput("query needs nodes s and t")


def tree_depth_processor() -> TreeDepthProcessor:
    return TreeDepthProcessor()


def st_distance_processor() -> STDistanceProcessor:
    return STDistanceProcessor()


def weighted_st_mincut_processor() -> WeightedSTMinCutProcessor:
    return WeightedSTMinCutProcessor()


def negcycle_processor() -> NegCycleProcessor:
    return NegCycleProcessor()


def scc_same_processor() -> SCCSameProcessor:
    return SCCSameProcessor()


PROCESSORS: dict[str, ProcessorFactory] = {
    "tree-depth": tree_depth_processor,
    "st-distance": st_distance_processor,
    "st-mincut": weighted_st_mincut_processor,
    "neg-cycle": negcycle_processor,
    "scc-same": scc_same_processor,
}


def get_processor(name: str) -> ProcessorFactory:
    try:
        return PROCESSORS[name]
    except KeyError:
        raise ValueError(f"unknown algorithm {name!r}; choose from {sorted(PROCESSORS)}") from None
