import io

import pytest
from hypothesis import given
from hypothesis import strategies as st

from streambounds import (GraphStream, Kind, ProtocolViolation, StreamParseError,
                          StreamValidationError, Token, dumps_stream, loads_stream, run_stream)
from streambounds.algorithms import PROCESSORS, negcycle_processor, tree_depth_processor
from streambounds.generators import random_graph, random_tree
from streambounds.stream_core import HEADER_BITS, StreamProcessor


def _graph_of(s: GraphStream) -> list[tuple[int, int, int | None]]:
    return [(t.u, t.v, t.w) for t in s.edges]


class TestFormat:
    def test_empty_graph_has_only_headers(self):
        text = dumps_stream(GraphStream(n=1))
        assert text.splitlines() == ["n 1", "passes 1", "flags undirected unweighted"]
        assert not [ln for ln in text.splitlines() if ln.startswith("E")]

    def test_k2_with_query(self):
        s = GraphStream(n=2, tokens=[Token.query(0, 1), Token.edge(0, 1)])
        lines = dumps_stream(s).splitlines()
        assert lines[-2:] == ["Q 0 1", "E 0 1"]

    def test_weighted_triangle_roundtrip(self):
        s = GraphStream(n=3, directed=True, weighted=True,
                        tokens=[Token.edge(0, 1, -1), Token.edge(1, 2, -1), Token.edge(2, 0, 5)])
        text = dumps_stream(s)
        assert "E 0 1 -1" in text
        assert loads_stream(text) == s

    def test_write_returns_byte_count(self):
        from streambounds import write_stream
        buf = io.StringIO()
        s = random_tree(10, seed=1)
        assert write_stream(s, buf) == len(buf.getvalue().encode())

    def test_out_of_range_endpoint(self):
        with pytest.raises(StreamValidationError):
            loads_stream("n 3\nE 5 0\n")

    def test_rooted_stream_without_query(self):
        with pytest.raises(StreamValidationError):
            loads_stream("n 3\nroot 0\nE 0 1\nE 1 2\n")

    def test_malformed_line_reports_line_number(self):
        with pytest.raises(StreamParseError) as err:
            loads_stream("n 3\n# comment\nE 0 x\n")
        assert err.value.lineno == 3

    def test_comments_and_blank_lines(self):
        s = loads_stream("# header\nn 2\n\nflags undirected unweighted  # trailing\nE 0 1\n")
        assert _graph_of(s) == [(0, 1, None)]

    def test_weight_presence_must_match_flags(self):
        with pytest.raises(StreamValidationError):
            loads_stream("n 2\nflags undirected unweighted\nE 0 1 3\n")
        with pytest.raises(StreamValidationError):
            loads_stream("n 2\nflags undirected weighted\nE 0 1\n")

    @given(st.integers(1, 12), st.floats(0, 1), st.booleans(), st.booleans(), st.integers(0, 99))
    def test_roundtrip_random(self, n, density, directed, weighted, seed):
        s = random_graph(n, density, seed=seed, directed=directed,
                         weights=(-4, 4) if weighted else None,
                         query=(0, n - 1) if n > 1 else (0,))
        s.passes = 1 + seed % 3
        assert loads_stream(dumps_stream(s)) == s


class Spy(StreamProcessor):
    """Counts every EDGE token it is fed."""

    name = "spy"

    def init(self, *args, **kwargs):
        self.seen = 0
        return super().init(*args, **kwargs)

    def feed(self, tok):
        if tok.kind is Kind.EDGE:
            self.seen += 1
        super().feed(tok)

    def solve(self):
        return self.seen


class TestRunStream:
    def test_tree_depth_on_path(self):
        # r=0 - a=1 - b=2, query b
        s = GraphStream(n=3, root=0, tokens=[Token.query(2), Token.edge(0, 1), Token.edge(1, 2)])
        answer, peak = run_stream(tree_depth_processor(), s)
        assert answer == 2 and peak > 0

    def test_two_passes_replay_every_edge_twice(self):
        s = random_tree(9, seed=3)
        s.passes = 2
        spy = Spy()
        answer, _ = run_stream(spy, s)
        assert answer == 2 * 8

    def test_negcycle_positive_triangle(self):
        s = GraphStream(n=3, directed=True, weighted=True,
                        tokens=[Token.edge(0, 1, 1), Token.edge(1, 2, 2), Token.edge(2, 0, 3)])
        answer, peak = run_stream(negcycle_processor(), s)
        assert answer == 0 and peak > 0

    def test_finish_before_last_pass_is_a_violation(self):
        proc = tree_depth_processor().init(2, passes=2, query=(1,), root=0)
        proc.feed(Token.edge(0, 1))
        with pytest.raises(ProtocolViolation):
            proc.finish()

    def test_bad_pass_mark(self):
        proc = tree_depth_processor().init(2, passes=2, query=(1,), root=0)
        with pytest.raises(ProtocolViolation):
            proc.feed(Token.pass_mark(3))

    def test_use_before_init(self):
        with pytest.raises(ProtocolViolation):
            tree_depth_processor().feed(Token.edge(0, 1))

    @pytest.mark.parametrize("name", sorted(PROCESSORS))
    def test_deterministic(self, name):
        s = _stream_for(name, seed=5)
        assert run_stream(PROCESSORS[name](), s) == run_stream(PROCESSORS[name](), s)


def _stream_for(name: str, seed: int, n: int = 12) -> GraphStream:
    if name == "tree-depth":
        return random_tree(n, seed=seed)
    if name == "st-mincut":
        return random_graph(n, 0.4, seed=seed, weights=(1, 5), query=(0, n - 1))
    if name == "neg-cycle":
        return random_graph(n, 0.25, seed=seed, directed=True, weights=(-2, 6))
    return random_graph(n, 0.3, seed=seed, directed=name == "scc-same", query=(0, n - 1))


class TestTranscripts:
    @given(st.sampled_from(sorted(PROCESSORS)), st.integers(0, 10_000), st.data())
    def test_fork_consistency(self, name, seed, data):
        s = _stream_for(name, seed)
        s.passes = 1 + seed % 2
        tape = list(s.tape())
        cut = data.draw(st.integers(0, len(tape)))
        straight, _ = run_stream(PROCESSORS[name](), s)

        proc = PROCESSORS[name]().init(s.n, s.passes, s.query, s.root, s.directed)
        for tok in tape[:cut]:
            proc.feed(tok)
        t = proc.snapshot()
        fork = PROCESSORS[name]().restore(t)
        assert fork.snapshot() == t
        for tok in tape[cut:]:
            fork.feed(tok)
            proc.feed(tok)
            assert fork.snapshot() == proc.snapshot()
        assert fork.finish() == straight

    @given(st.sampled_from(sorted(PROCESSORS)), st.integers(0, 10_000))
    def test_state_bits_is_snapshot_length_and_peak_dominates(self, name, seed):
        s = _stream_for(name, seed)
        proc = PROCESSORS[name]().init(s.n, s.passes, s.query, s.root, s.directed)
        observed = []
        for tok in s.tape():
            proc.feed(tok)
            assert proc.state_bits() == proc.snapshot().bit_len
            observed.append(proc.state_bits())
        _, peak = run_stream(PROCESSORS[name](), s)
        assert peak >= max(observed, default=0)

    def test_header_only_for_empty_state(self):
        proc = tree_depth_processor().init(5, query=(1,), root=0)
        assert proc.snapshot().bit_len == HEADER_BITS

    def test_negative_weights_survive_restore(self):
        proc = negcycle_processor().init(4, directed=True)
        for u, v, w in [(0, 1, -7), (1, 2, 3), (2, 0, 0), (3, 3, -1)]:
            proc.feed(Token.edge(u, v, w))
        back = negcycle_processor().restore(proc.snapshot())
        assert sorted(back.edges) == sorted(proc.edges)

    def test_edge_permutation_gives_identical_snapshot(self):
        s = random_tree(40, seed=2)
        a = tree_depth_processor().init(s.n, 1, s.query, s.root)
        b = tree_depth_processor().init(s.n, 1, s.query, s.root)
        for t in s.edges:
            a.feed(t)
        for t in reversed(s.edges):
            b.feed(Token.edge(t.v, t.u))
        assert a.snapshot() == b.snapshot()
