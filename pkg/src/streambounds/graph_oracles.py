"""Non-streaming ground truth.

Each problem gets a polynomial solver and, where tiny sizes allow, an
exhaustive counterpart.  Nothing here is shared with
:mod:`streambounds.algorithms`, so processors are never checked against
themselves.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .stream_core import GraphStream


class OracleError(ValueError):
    pass


@dataclass
class StaticGraph:
    n: int
    directed: bool = False
    edges: list[tuple[int, int, int]] = field(default_factory=list)

    @classmethod
    def from_stream(cls, s: GraphStream) -> "StaticGraph":
        return cls(s.n, s.directed,
                   [(t.u, t.v, 1 if t.w is None else t.w) for t in s.edges])

    def arcs(self) -> list[tuple[int, int, int]]:
        if self.directed:
            return list(self.edges)
        return [a for u, v, w in self.edges for a in ((u, v, w), (v, u, w))]

    def neighbours(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v, _ in self.arcs():
            adj[u].append(v)
        return adj


def _is_connected_undirected(g: StaticGraph) -> bool:
    if g.n <= 1:
        return True
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v, _ in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == g.n


def bfs_depths(g: StaticGraph, root: int) -> list[int]:
    """Depth of every node in the tree ``g`` rooted at ``root``."""
    if len(g.edges) != g.n - 1 or not _is_connected_undirected(g):
        raise OracleError("graph is not a tree")
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v, _ in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    depth = [-1] * g.n
    depth[root] = 0
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if depth[y] < 0:
                depth[y] = depth[x] + 1
                queue.append(y)
    return depth


def bfs_distance(g: StaticGraph, s: int, t: int) -> int:
    """Unweighted hop distance, ``-1`` when ``t`` is unreachable."""
    adj = g.neighbours()
    dist = {s: 0}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        if x == t:
            return dist[x]
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return -1


# ---------------------------------------------------------------------------
# cuts

def max_flow_min_cut(g: StaticGraph, s: int, t: int) -> int:
    """Edmonds-Karp on the residual capacity matrix."""
    if s == t:
        raise OracleError("s and t must differ")
    cap: dict[int, dict[int, int]] = {x: {} for x in range(g.n)}
    for u, v, w in g.arcs():
        if w <= 0:
            raise OracleError("capacities must be positive")
        if u == v:
            continue
        cap[u][v] = cap[u].get(v, 0) + w
        cap[v].setdefault(u, 0)
    flow = 0
    while True:
        parent = {s: s}
        queue = deque([s])
        while queue and t not in parent:
            x = queue.popleft()
            for y, c in cap[x].items():
                if c > 0 and y not in parent:
                    parent[y] = x
                    queue.append(y)
        if t not in parent:
            return flow
        bottleneck = None
        y = t
        while y != s:
            x = parent[y]
            c = cap[x][y]
            bottleneck = c if bottleneck is None else min(bottleneck, c)
            y = x
        y = t
        while y != s:
            x = parent[y]
            cap[x][y] -= bottleneck
            cap[y][x] += bottleneck
            y = x
        flow += bottleneck


def _cut_value(arcs, side: set[int]) -> int:
    return sum(w for u, v, w in arcs if u in side and v not in side)


def exhaustive_st_cut(g: StaticGraph, s: int, t: int) -> int:
    """Minimum over all vertex bipartitions separating ``s`` from ``t``."""
    if s == t:
        raise OracleError("s and t must differ")
    arcs = g.arcs()
    rest = [x for x in range(g.n) if x not in (s, t)]
    best = None
    for mask in range(1 << len(rest)):
        side = {s} | {rest[i] for i in range(len(rest)) if mask >> i & 1}
        val = _cut_value(arcs, side)
        best = val if best is None else min(best, val)
    return best


def global_min_cut(g: StaticGraph) -> int:
    """Global min cut of an undirected graph; 0 when disconnected."""
    if g.n < 2 or not _is_connected_undirected(g):
        return 0
    return min(max_flow_min_cut(g, 0, y) for y in range(1, g.n))


def exhaustive_global_min_cut(g: StaticGraph) -> int:
    if g.n < 2:
        return 0
    arcs = g.arcs()
    best = None
    for mask in range(1 << (g.n - 1)):
        side = {0} | {i + 1 for i in range(g.n - 1) if mask >> i & 1}
        if len(side) == g.n:
            continue
        val = _cut_value(arcs, side)
        best = val if best is None else min(best, val)
    return best


# ---------------------------------------------------------------------------
# negative cycles

def _bellman_ford(g: StaticGraph):
    arcs = g.arcs()
    dist = [0] * g.n  # virtual source at distance 0 to every node
    pred: list[tuple[int, int, int] | None] = [None] * g.n
    changed_at = None
    for _ in range(g.n):
        changed_at = None
        for arc in arcs:
            u, v, w = arc
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                pred[v] = arc
                changed_at = v
        if changed_at is None:
            break
    return changed_at, pred


def bellman_ford_negcycle(g: StaticGraph) -> bool:
    changed_at, _ = _bellman_ford(g)
    return changed_at is not None


def negative_cycle_witness(g: StaticGraph) -> list[tuple[int, int, int]] | None:
    """Arcs of one negative cycle, or ``None``."""
    x, pred = _bellman_ford(g)
    if x is None:
        return None
    for _ in range(g.n):
        x = pred[x][0]
    cycle = []
    y = x
    while True:
        arc = pred[y]
        cycle.append(arc)
        y = arc[0]
        if y == x:
            break
    cycle.reverse()
    return cycle


def simple_cycles(g: StaticGraph):
    """Yield each simple directed cycle once as a node list (smallest node first).

    Parallel arcs collapse to the lightest one, which is enough to decide
    whether any negative cycle exists.
    """
    best: dict[tuple[int, int], int] = {}
    for u, v, w in g.arcs():
        if (u, v) not in best or w < best[(u, v)]:
            best[(u, v)] = w
    succ: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in best:
        succ[u].append(v)
    for start in range(g.n):
        path = [start]
        on_path = {start}

        def walk(x):
            for y in succ[x]:
                if y == start:
                    yield list(path)
                elif y > start and y not in on_path:
                    path.append(y)
                    on_path.add(y)
                    yield from walk(y)
                    path.pop()
                    on_path.discard(y)

        yield from walk(start)


def exhaustive_negcycle(g: StaticGraph) -> bool:
    best: dict[tuple[int, int], int] = {}
    for u, v, w in g.arcs():
        best[(u, v)] = min(w, best.get((u, v), w))
    for cyc in simple_cycles(g):
        total = sum(best[(cyc[i], cyc[(i + 1) % len(cyc)])] for i in range(len(cyc)))
        if total < 0:
            return True
    return False


# ---------------------------------------------------------------------------
# strong connectivity

def tarjan_scc(g: StaticGraph) -> list[int]:
    """Component label per node (iterative Tarjan)."""
    adj = g.neighbours()
    index = [-1] * g.n
    low = [0] * g.n
    comp = [-1] * g.n
    on_stack = [False] * g.n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(g.n):
        if index[root] >= 0:
            continue
        work = [(root, iter(adj[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(adj[w])))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def scc_same(g: StaticGraph, s: int, t: int) -> bool:
    comp = tarjan_scc(g)
    return comp[s] == comp[t]


def transitive_closure(g: StaticGraph) -> list[list[bool]]:
    reach = [[i == j for j in range(g.n)] for i in range(g.n)]
    for u, v, _ in g.arcs():
        reach[u][v] = True
    for k, i, j in itertools.product(range(g.n), repeat=3):
        if reach[i][k] and reach[k][j]:
            reach[i][j] = True
    return reach


def closure_same(g: StaticGraph, s: int, t: int) -> bool:
    reach = transitive_closure(g)
    return reach[s][t] and reach[t][s]


def is_dag(g: StaticGraph) -> bool:
    indeg = [0] * g.n
    adj = g.neighbours()
    for u in range(g.n):
        for v in adj[u]:
            indeg[v] += 1
    queue = deque(x for x in range(g.n) if indeg[x] == 0)
    seen = 0
    while queue:
        x = queue.popleft()
        seen += 1
        for y in adj[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    return seen == g.n
