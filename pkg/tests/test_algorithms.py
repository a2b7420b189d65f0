import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import streambounds.graph_oracles as go
from streambounds import GraphStream, InvalidInput, Token, run_stream
from streambounds.algorithms import (PROCESSORS, get_processor, negcycle_processor,
                                     scc_same_processor, st_distance_processor,
                                     tree_depth_processor, weighted_st_mincut_processor)
from streambounds.comm_problems import FunctionTable, PCInstance, SetFunctionTable, IntersectInstance
from streambounds.generators import random_graph, random_tree
from streambounds.reductions import build_intersect_graph, build_pc_tree


def stream(n, edges, query=(), directed=False, weighted=False, root=None):
    toks = ([Token.query(*query)] if query else []) + [Token.edge(*e) for e in edges]
    return GraphStream(n=n, tokens=toks, directed=directed, weighted=weighted, root=root)


def oracle_answer(name: str, s: GraphStream) -> int:
    g = go.StaticGraph.from_stream(s)
    q = s.query
    if name == "tree-depth":
        return go.bfs_depths(g, s.root)[q[0]]
    if name == "st-distance":
        return go.bfs_distance(g, *q)
    if name == "st-mincut":
        return go.max_flow_min_cut(g, *q)
    if name == "neg-cycle":
        return int(go.bellman_ford_negcycle(g))
    return int(go.scc_same(g, *q))


def random_stream(name: str, seed: int) -> GraphStream:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 40))
    if name == "tree-depth":
        return random_tree(n, seed=seed)
    density = float(rng.uniform(0.02, 0.4))
    if name == "st-mincut":
        return random_graph(n, density, seed=seed, weights=(1, 9), query=(0, n - 1),
                            directed=bool(seed % 2))
    if name == "neg-cycle":
        return random_graph(n, density / 2, seed=seed, directed=True, weights=(-3, 8))
    return random_graph(n, density / 2, seed=seed, directed=bool(seed % 2),
                        query=tuple(int(x) for x in rng.integers(0, n, size=2)))


class TestExamples:
    def test_tree_depth_k2(self):
        assert run_stream(tree_depth_processor(), stream(2, [(0, 1)], (1,), root=0))[0] == 1

    def test_tree_depth_on_pc_tree(self):
        g = build_pc_tree(PCInstance(2, (FunctionTable.identity(2),) * 2))
        g.stream.passes = 1
        assert run_stream(tree_depth_processor(), g.stream)[0] == 4

    def test_tree_depth_rejects_non_tree(self):
        with pytest.raises(InvalidInput):
            run_stream(tree_depth_processor(), stream(4, [(0, 1), (1, 2), (2, 0)], (1,), root=0))
        with pytest.raises(InvalidInput):
            run_stream(tree_depth_processor(), stream(3, [(0, 1), (0, 1)], (2,), root=0))

    def test_distance(self):
        assert run_stream(st_distance_processor(), stream(3, [(0, 1)], (2, 2)))[0] == 0
        assert run_stream(st_distance_processor(), stream(4, [(0, 1), (1, 2), (2, 3)], (0, 3)))[0] == 3
        assert run_stream(st_distance_processor(), stream(3, [(0, 1)], (0, 2)))[0] == -1

    def test_mincut(self):
        assert run_stream(weighted_st_mincut_processor(),
                          stream(2, [(0, 1, 1)], (0, 1), weighted=True))[0] == 1
        tri = [(0, 1, 1), (1, 2, 1), (0, 2, 1)]
        for s, t in [(0, 1), (1, 2), (2, 0)]:
            assert run_stream(weighted_st_mincut_processor(),
                              stream(3, tri, (s, t), weighted=True))[0] == 2

    def test_mincut_rejects_nonpositive_weight(self):
        with pytest.raises(InvalidInput):
            run_stream(weighted_st_mincut_processor(), stream(2, [(0, 1, 0)], (0, 1), weighted=True))

    def test_negcycle(self):
        assert run_stream(negcycle_processor(),
                          stream(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)], directed=True,
                                 weighted=True))[0] == 0
        assert run_stream(negcycle_processor(),
                          stream(2, [(0, 1, 1), (1, 0, -2)], directed=True, weighted=True))[0] == 1

    def test_negcycle_on_intersecting_two_sided_graph(self):
        ident = (SetFunctionTable.singletons(FunctionTable.identity(3)),) * 2
        g = build_intersect_graph(IntersectInstance(3, ident, ident), "negcycle")
        g.stream.passes = 1
        assert run_stream(negcycle_processor(), g.stream)[0] == 1

    def test_scc(self):
        assert run_stream(scc_same_processor(), stream(2, [], (1, 1), directed=True))[0] == 1
        assert run_stream(scc_same_processor(),
                          stream(2, [(0, 1), (1, 0)], (0, 1), directed=True))[0] == 1

    def test_scc_on_non_intersecting_gadget(self):
        a = (SetFunctionTable.from_lists(2, [{1}, {2}]),) * 2
        b = (SetFunctionTable.from_lists(2, [{2}, {2}]),) * 2
        inst = IntersectInstance(2, a, b)  # chases end at {1} and {2}
        g = build_intersect_graph(inst, "scc")
        g.stream.passes = 1
        assert run_stream(scc_same_processor(), g.stream)[0] == int(
            go.scc_same(go.StaticGraph.from_stream(g.stream), *g.stream.query)) == 0

    def test_forked_gadget_cut_below_2n(self):
        base = random_graph(5, 0.7, seed=3)
        n = base.n
        for y in range(1, n):
            toks = [Token.query(n, n + 1)] + [Token.edge(t.u, t.v, 1) for t in base.edges]
            toks += [Token.edge(n, 0, n), Token.edge(n + 1, y, n)]
            s = GraphStream(n + 2, toks, weighted=True)
            cut = run_stream(weighted_st_mincut_processor(), s)[0]
            assert cut < 2 * n
            assert cut == go.max_flow_min_cut(go.StaticGraph.from_stream(base), 0, y)

    def test_registry(self):
        assert set(PROCESSORS) == {"tree-depth", "st-distance", "st-mincut", "neg-cycle", "scc-same"}
        with pytest.raises(ValueError):
            get_processor("dijkstra")


@pytest.mark.parametrize("name", sorted(PROCESSORS))
@pytest.mark.parametrize("seed", range(30))
def test_agrees_with_oracle(name, seed):
    s = random_stream(name, seed)
    assert run_stream(PROCESSORS[name](), s)[0] == oracle_answer(name, s)


@pytest.mark.parametrize("name", sorted(PROCESSORS))
@given(seed=st.integers(0, 10_000), perm_seed=st.integers(0, 10_000))
def test_edge_order_invariance(name, seed, perm_seed):
    s = random_stream(name, seed)
    order = np.random.default_rng(perm_seed).permutation(len(s.edges))
    shuffled = GraphStream(s.n, ([Token.query(*s.query)] if s.query else [])
                           + [s.edges[k] for k in order], s.directed, s.weighted, 1, s.root)
    a, b = PROCESSORS[name](), PROCESSORS[name]()
    assert run_stream(a, s)[0] == run_stream(b, shuffled)[0]
    assert a.snapshot().bit_len == b.snapshot().bit_len


@pytest.mark.parametrize("name", sorted(PROCESSORS))
@pytest.mark.parametrize("seed", range(10))
def test_multi_pass_neutral(name, seed):
    s = random_stream(name, seed)
    one = run_stream(PROCESSORS[name](), s)
    s.passes = 2
    two = run_stream(PROCESSORS[name](), s)
    assert one == two
