"""Property suites behind ``streambounds verify``.

Each suite returns a :class:`SuiteResult`; a suite never raises on a failed
check, it records it.  Sizes default to the acceptance settings.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from . import algorithms as alg
from . import bounds
from . import graph_oracles as go
from .comm_problems import (FunctionTable, IndexInstance, PCInstance, eval_intersect,
                            eval_pointer_chase, gen_random)
from .generators import deferred_leaf_tree, random_connected_graph, random_graph
from .reductions import (ReductionFailure, Variant, blue_edge_index, build_intersect_graph,
                         build_pc_tree, decode_pc_depth, forked_st_cuts,
                         fork_replay_depth_extraction, simulate_index_protocol,
                         simulate_intersect_protocol, simulate_pc_protocol)
from .stream_core import GraphStream


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond: bool, what: str) -> None:
        self.checked += 1
        if not cond and len(self.failures) < 50:
            self.failures.append(what)
        elif not cond:
            self.failures.append("...")

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return (f"{status} {self.name}: {self.checked} checks, {len(self.failures)} failures, "
                f"{self.seconds:.1f}s")


def _timed(fn: Callable[..., SuiteResult]) -> Callable[..., SuiteResult]:
    def wrapper(*args, **kwargs) -> SuiteResult:
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def all_pc_instances(m: int, q: int) -> Iterator[PCInstance]:
    tables = [FunctionTable(m, img) for img in itertools.product(range(1, m + 1), repeat=m)]
    for combo in itertools.product(tables, repeat=q):
        yield PCInstance(m, combo)


def pc_instance_set(max_m: int = 3, max_q: int = 3, random_count: int = 1000,
                    random_max_m: int = 8, random_max_q: int = 4, min_q: int = 1,
                    seed: int = 0) -> Iterator[PCInstance]:
    """Exhaustive instances for small ``(m, q)`` followed by seeded random ones."""
    for m in range(1, max_m + 1):
        for q in range(min_q, max_q + 1):
            yield from all_pc_instances(m, q)
    rng = np.random.default_rng(seed)
    for _ in range(random_count):
        m = int(rng.integers(1, random_max_m + 1))
        q = int(rng.integers(max(2, min_q), random_max_q + 1))
        yield gen_random("pc", m, q, seed=int(rng.integers(2**31)))


def _is_tree(s: GraphStream) -> bool:
    edges = s.edges
    if len(edges) != s.n - 1:
        return False
    parent = list(range(s.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t in edges:
        a, b = find(t.u), find(t.v)
        if a == b:
            return False
        parent[a] = b
    return True


@_timed
def pc_tree(**sizes) -> SuiteResult:
    """Computation graphs for pointer chasing are trees."""
    res = SuiteResult("pc-tree")
    for inst in pc_instance_set(**sizes):
        res.check(_is_tree(build_pc_tree(inst).stream), f"not a tree: {inst}")
    return res


@_timed
def decode(**sizes) -> SuiteResult:
    """BFS depth of n1 decodes to the pointer-chasing value."""
    res = SuiteResult("decode")
    for inst in pc_instance_set(**sizes):
        g = build_pc_tree(inst)
        depth = go.bfs_depths(go.StaticGraph.from_stream(g.stream), g.terminals["N"])
        k = decode_pc_depth(depth[g.terminals["n1"]], inst.q, inst.m)
        res.check(k == eval_pointer_chase(inst), f"decode mismatch: {inst}")
    return res


@_timed
def pc_protocol(**sizes) -> SuiteResult:
    """Simulated pointer-chasing protocol with the tree-depth processor."""
    res = SuiteResult("pc-protocol")
    sizes.setdefault("min_q", 2)
    for inst in pc_instance_set(**sizes):
        try:
            run = simulate_pc_protocol(inst, alg.tree_depth_processor)
        except ReductionFailure as exc:
            res.check(False, f"{exc}: {inst}")
            continue
        res.check(run.answer == eval_pointer_chase(inst), f"answer mismatch: {inst}")
        res.check(run.handoffs == inst.q * run.passes - 1, f"handoffs {run.handoffs}: {inst}")
    return res


def all_index_instances(n: int) -> Iterator[IndexInstance]:
    N = n * (n - 1) // 2
    for bits in itertools.product((0, 1), repeat=N):
        for i in range(N):
            yield IndexInstance(bits, i)


@_timed
def index(max_n: int = 5) -> SuiteResult:
    """Exhaustive INDEX -> negative-cycle protocol."""
    res = SuiteResult("index")
    for n in range(2, max_n + 1):
        for inst in all_index_instances(n):
            run = simulate_index_protocol(inst, alg.negcycle_processor)
            res.check(run.answer == inst.answer, f"answer {run.answer} != A_i for {inst}")
            res.check(run.handoffs == 1 and run.comm_bits == run.transcript_bits[0],
                      f"accounting: {run}")
    return res


@_timed
def intersect(count: int = 1000, max_m: int = 6, max_p: int = 2,
              densities: tuple[float, ...] = (0.2, 0.5, 0.9), seed: int = 0) -> SuiteResult:
    """All three INTERSECT variants against the referee, plus witness and DAG checks."""
    res = SuiteResult("intersect")
    rng = np.random.default_rng(seed)
    factories = {Variant.CUT: alg.weighted_st_mincut_processor,
                 Variant.NEGCYCLE: alg.negcycle_processor,
                 Variant.SCC: alg.scc_same_processor}
    for k in range(count):
        m = int(rng.integers(1, max_m + 1))
        p = int(rng.integers(1, max_p + 1))
        density = densities[k % len(densities)]
        inst = gen_random("intersect", m, p + 1, density, seed=int(rng.integers(2**31)))
        truth = eval_intersect(inst)
        for variant, factory in factories.items():
            run = simulate_intersect_protocol(inst, factory, variant, check=False)
            res.check(run.answer == truth, f"{variant.value} said {run.answer}, referee {truth}")
            res.check(run.handoffs == 2 * inst.q * p - 1, f"{variant.value} handoffs {run.handoffs}")
            if variant is Variant.CUT:
                continue
            g = build_intersect_graph(inst, variant)
            blue = blue_edge_index(g)
            static = go.StaticGraph.from_stream(g.stream)
            # the closing edge is always the final token
            without = go.StaticGraph(static.n, True, static.edges[:-1])
            res.check(blue == len(g.stream.tokens) - 1 and go.is_dag(without),
                      f"{variant.value}: not a DAG")
            if variant is Variant.NEGCYCLE:
                cyc = go.negative_cycle_witness(static)
                res.check((cyc is not None) == truth, "witness presence disagrees with referee")
                if cyc is not None:
                    res.check(sum(w for _, _, w in cyc) == -1,
                              f"witness weight {sum(w for _, _, w in cyc)}")
    return res


@_timed
def fork_replay(count: int = 500, max_n: int = 200, seed: int = 0) -> SuiteResult:
    """Depths of all nodes recovered from one memory image."""
    res = SuiteResult("fork-replay")
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(2, max_n + 1))
        tree, v, parent = deferred_leaf_tree(n, seed=int(rng.integers(2**31)))
        got = fork_replay_depth_extraction(tree, v, alg.tree_depth_processor)
        full = go.StaticGraph.from_stream(tree)
        full.edges.append((v, parent, 1))
        want = go.bfs_depths(full, 0)
        res.check(got == {u: want[u] for u in range(n) if u != v}, f"n={n}: depth mismatch")
    return res


@_timed
def cut_fork(count: int = 200, max_n: int = 30, seed: int = 0) -> SuiteResult:
    """Global min cut from forked s-t cuts equals the flow oracle."""
    res = SuiteResult("cut-fork")
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(2, max_n + 1))
        density = float(rng.uniform(0.05, 0.6))
        g = random_connected_graph(n, density, seed=int(rng.integers(2**31)))
        x = int(rng.integers(0, n))
        cuts = forked_st_cuts(g, x, alg.weighted_st_mincut_processor)
        res.check(max(cuts.values()) < 2 * n, f"n={n}: forked cut reached 2n")
        want = go.global_min_cut(go.StaticGraph.from_stream(g))
        res.check(min(cuts.values()) == want, f"n={n}: {min(cuts.values())} != {want}")
    return res


@_timed
def oracles(count: int = 400, seed: int = 0) -> SuiteResult:
    """Polynomial oracles against their exhaustive counterparts."""
    res = SuiteResult("oracles")
    rng = np.random.default_rng(seed)
    for k in range(count):
        n = int(rng.integers(2, 13))
        g = go.StaticGraph.from_stream(random_graph(n, float(rng.uniform(0.1, 0.7)),
                                                    seed=int(rng.integers(2**31)),
                                                    weights=(1, 3)))
        s, t = (int(x) for x in rng.choice(n, size=2, replace=False))
        res.check(go.max_flow_min_cut(g, s, t) == go.exhaustive_st_cut(g, s, t),
                  f"max-flow vs cuts, case {k}")
        if n <= 10:
            res.check(go.global_min_cut(g) == go.exhaustive_global_min_cut(g),
                      f"global cut, case {k}")

        n = int(rng.integers(1, 9))
        d = go.StaticGraph.from_stream(random_graph(n, float(rng.uniform(0.1, 0.5)),
                                                    seed=int(rng.integers(2**31)),
                                                    directed=True, weights=(-3, 6)))
        res.check(go.bellman_ford_negcycle(d) == go.exhaustive_negcycle(d),
                  f"negcycle vs cycle enumeration, case {k}")
        s, t = (int(x) for x in rng.integers(0, n, size=2))
        res.check(go.scc_same(d, s, t) == go.closure_same(d, s, t), f"scc vs closure, case {k}")
    return res


@_timed
def bounds_suite(max_n: int = 8) -> SuiteResult:
    """Stirling numbers against partition enumeration, plus spot values."""
    res = SuiteResult("bounds")
    for n in range(0, max_n + 1):
        counts = partition_block_counts(n)
        for k in range(0, n + 1):
            res.check(bounds.stirling2(n, k) == counts.get(k, 0), f"S({n},{k})")
    res.check(bounds.depth_count_lower(4)[0] == 16, "depth_count_lower(4)")
    res.check(bounds.realizable_depth_profiles(3) == 3, "realizable_depth_profiles(3)")
    res.check(bounds.pc_cc_bound(2**20, 1) == 1048556, "pc_cc_bound(2^20, 1)")
    res.check(bounds.depth_pass_bound(2**14, 2) == 115, "depth_pass_bound(2^14, 2)")
    res.check(math.isclose(bounds.intersect_cc_bound(2**10, 1), 2**12.5 / 10**1.5, rel_tol=1e-12),
              "intersect_cc_bound(2^10, 1)")
    return res


def set_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def partition_block_counts(n: int) -> dict[int, int]:
    counts: dict[int, int] = {}
    for part in set_partitions(list(range(n))):
        counts[len(part)] = counts.get(len(part), 0) + 1
    return counts


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "pc-tree": pc_tree,
    "decode": decode,
    "pc-protocol": pc_protocol,
    "index": index,
    "intersect": intersect,
    "fork-replay": fork_replay,
    "cut-fork": cut_fork,
    "oracles": oracles,
    "bounds": bounds_suite,
}

# older name kept for the command-line contract
SUITE_ALIASES = {"lemma1": "pc-tree"}
