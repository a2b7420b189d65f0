"""Hard instances and the protocols that wrap streaming processors.

Node numbering is layer-major: element ``k`` (1-based) of layer ``j`` has id
``j*m + (k-1)``.  Gadget nodes come after all layer nodes.  Streams built here
are therefore bit-identical across runs and implementations.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

from .algorithms import ProcessorFactory
from .comm_problems import (IndexInstance, IntersectInstance, PCInstance, eval_intersect,
                            eval_pointer_chase, pair_of, triangular_root)
from .stream_core import GraphStream, Kind, StreamProcessor, Token, Transcript


class ReductionFailure(RuntimeError):
    pass


class DecodeError(ReductionFailure):
    pass


class ExtractionError(ReductionFailure):
    pass


class Variant(enum.Enum):
    CUT = "cut"
    NEGCYCLE = "negcycle"
    SCC = "scc"


@dataclass
class ComputationGraph:
    stream: GraphStream
    terminals: dict[str, int]
    player_spans: list[range]
    decode: dict[int, int] = field(default_factory=dict)

    @property
    def players(self) -> int:
        return len(self.player_spans)


@dataclass
class ProtocolRun:
    answer: int | bool
    handoffs: int
    comm_bits: int
    passes: int
    referee: int | bool | None = None
    transcript_bits: list[int] = field(default_factory=list)

    @property
    def agrees(self) -> bool:
        return self.referee is None or self.answer == self.referee


def _node(layer: int, k: int, m: int) -> int:
    return layer * m + (k - 1)


# ---------------------------------------------------------------------------
# pointer chasing -> tree depth

def build_pc_tree(inst: PCInstance) -> ComputationGraph:
    """Layered tree whose depth of ``n1`` encodes the pointer-chasing value.

    Layer ``j`` is joined to layer ``j+1`` by the graph of ``f_{q-j}``, so the
    walk out of ``n1`` (layer 0, element 1) ends on the rightmost layer at
    ``f_1(...f_q(1))``.  A spine ``N - s_1 - ... - s_m`` hangs rightmost node
    ``k`` off ``s_k``, giving it depth ``k + 1``.
    """
    m, q = inst.m, inst.q
    root = (q + 1) * m
    spine = [root + k for k in range(1, m + 1)]
    n_total = (q + 1) * m + m + 1
    tokens: list[Token] = [Token.query(_node(0, 1, m))]
    spans: list[range] = []
    for player in range(1, q + 1):
        start = len(tokens)
        table = inst.tables[player - 1]
        layer = q - player
        for a in range(1, m + 1):
            tokens.append(Token.edge(_node(layer, a, m), _node(layer + 1, table(a), m)))
        if player == q:
            prev = root
            for s in spine:
                tokens.append(Token.edge(prev, s))
                prev = s
            for k in range(1, m + 1):
                tokens.append(Token.edge(_node(q, k, m), spine[k - 1]))
        spans.append(range(start, len(tokens)))
    stream = GraphStream(n=n_total, tokens=tokens, directed=False, weighted=False,
                         passes=max(1, q - 1), root=root)
    decode = {k + 1 + q: k for k in range(1, m + 1)}
    return ComputationGraph(stream, {"N": root, "n1": _node(0, 1, m)}, spans, decode)


def decode_pc_depth(d_n1: int, q: int, m: int | None = None) -> int:
    k = d_n1 - q - 1
    if k < 1 or (m is not None and k > m):
        raise DecodeError(f"depth {d_n1} with {q} players does not decode to an element"
                          + (f" of [1, {m}]" if m is not None else ""))
    return k


def _run_rounds(graph: ComputationGraph, factory: ProcessorFactory, passes: int):
    """Players speak in order for ``passes`` rounds, handing the transcript on.

    Returns the final answer, the handoff count and the bit length of every
    transcript passed.
    """
    s = graph.stream
    proc: StreamProcessor = factory().init(s.n, passes, s.query, s.root, s.directed)
    sizes: list[int] = []
    last = graph.players - 1
    for rnd in range(1, passes + 1):
        for player, span in enumerate(graph.player_spans):
            if rnd > 1 and player == 0:
                proc.feed(Token.pass_mark(rnd))
            for idx in span:
                proc.feed(s.tokens[idx])
            if rnd == passes and player == last:
                break
            t: Transcript = proc.snapshot()
            sizes.append(t.bit_len)
            proc = factory().restore(t)
    return proc.finish(), sizes


def simulate_pc_protocol(inst: PCInstance, proc_factory: ProcessorFactory,
                         passes: int | None = None) -> ProtocolRun:
    """Pointer chasing with ``q = p + 1`` players driving a ``p``-pass depth processor."""
    p = inst.q - 1 if passes is None else passes
    if p < 1 or inst.q != p + 1:
        raise ValueError(f"protocol needs q = p + 1 >= 2 players (q={inst.q}, p={p})")
    graph = build_pc_tree(inst)
    depth, sizes = _run_rounds(graph, proc_factory, p)
    try:
        k = decode_pc_depth(depth, inst.q, inst.m)
    except DecodeError as exc:
        raise ReductionFailure(f"processor answer {depth} failed to decode") from exc
    return ProtocolRun(k, len(sizes), sum(sizes), p, eval_pointer_chase(inst), sizes)


# ---------------------------------------------------------------------------
# INDEX -> negative cycle

def build_index_negcycle(inst: IndexInstance) -> tuple[list[Token], list[Token], int]:
    """Alice's and Bob's token spans on ``n + 1`` nodes (extra node ``v = n``).

    Alice sends each present pair both ways with weight +1; Bob closes
    ``a -> v -> b`` with two -1 arcs.  A negative cycle then needs the +1 arc
    ``b -> a``; any other route back from ``b`` to ``a`` costs at least 2.
    """
    n = triangular_root(inst.N)
    v = n
    alice: list[Token] = []
    for k, bit in enumerate(inst.bits):
        if bit:
            a, b = pair_of(k, n)
            alice.append(Token.edge(a, b, 1))
            alice.append(Token.edge(b, a, 1))
    a, b = pair_of(inst.i, n)
    bob = [Token.edge(a, v, -1), Token.edge(v, b, -1)]
    return alice, bob, n + 1


def index_stream(inst: IndexInstance) -> GraphStream:
    alice, bob, n_total = build_index_negcycle(inst)
    return GraphStream(n=n_total, tokens=alice + bob, directed=True, weighted=True)


def simulate_index_protocol(inst: IndexInstance, proc_factory: ProcessorFactory) -> ProtocolRun:
    alice, bob, n_total = build_index_negcycle(inst)
    proc = proc_factory().init(n_total, 1, directed=True)
    for tok in alice:
        proc.feed(tok)
    t = proc.snapshot()
    proc = proc_factory().restore(t)
    for tok in bob:
        proc.feed(tok)
    return ProtocolRun(int(proc.finish()), 1, t.bit_len, 1, inst.answer, [t.bit_len])


# ---------------------------------------------------------------------------
# INTERSECT(SC) -> cut / negative cycle / SCC

def build_intersect_graph(inst: IntersectInstance, variant: Variant | str) -> ComputationGraph:
    """Two set-chasing fans meeting on a shared layer.

    Global layers ``0..2q`` run left to right: side A layers ``0..q-1``, the
    shared layer ``q``, then side B layers ``q-1..0`` mirrored, so side-B
    layer ``j`` is global layer ``2q - j``.  ``n1`` and ``n1'`` are element 1
    of global layers ``0`` and ``2q``.  Every variant is directed
    ``n1 -> shared -> n1'``; NEGCYCLE and SCC add the closing edge
    ``n1' -> n1`` (weight ``-(2q+1)`` for NEGCYCLE) at the end of the last
    player's span.
    """
    variant = Variant(variant)
    m, q = inst.m, inst.q
    n_total = (2 * q + 1) * m
    n1 = _node(0, 1, m)
    n1p = _node(2 * q, 1, m)
    weighted = variant is Variant.NEGCYCLE
    w = 1 if weighted else None
    tokens: list[Token] = []
    if variant is not Variant.NEGCYCLE:
        tokens.append(Token.query(n1, n1p))
    spans: list[range] = []
    for player in range(1, q + 1):
        start = len(tokens)
        table = inst.side_a[player - 1]
        layer = q - player
        for a in range(1, m + 1):
            for b in sorted(table(a)):
                tokens.append(Token.edge(_node(layer, a, m), _node(layer + 1, b, m), w))
        spans.append(range(start, len(tokens)))
    for player in range(1, q + 1):
        start = len(tokens)
        table = inst.side_b[player - 1]
        src_layer = 2 * q - (q - player)
        for a in range(1, m + 1):
            for b in sorted(table(a)):
                tokens.append(Token.edge(_node(src_layer - 1, b, m), _node(src_layer, a, m), w))
        if player == q and variant is not Variant.CUT:
            tokens.append(Token.edge(n1p, n1, -(2 * q + 1) if weighted else None))
        spans.append(range(start, len(tokens)))
    stream = GraphStream(n=n_total, tokens=tokens, directed=True, weighted=weighted,
                         passes=max(1, q - 1))
    return ComputationGraph(stream, {"n1": n1, "n1p": n1p}, spans)


def blue_edge_index(graph: ComputationGraph) -> int | None:
    """Token index of the closing ``n1' -> n1`` edge, if the variant has one."""
    last = graph.player_spans[-1]
    if not len(last):
        return None
    tok = graph.stream.tokens[last[-1]]
    if tok.kind is Kind.EDGE and tok.nodes == (graph.terminals["n1p"], graph.terminals["n1"]):
        return last[-1]
    return None


_VARIANT_ANSWER: dict[Variant, Callable[[int], bool]] = {
    Variant.CUT: lambda x: x > 0,
    Variant.NEGCYCLE: lambda x: x == 1,
    Variant.SCC: lambda x: x == 1,
}


def simulate_intersect_protocol(inst: IntersectInstance, proc_factory: ProcessorFactory,
                                variant: Variant | str, passes: int | None = None,
                                check: bool = True) -> ProtocolRun:
    """``2q`` players, ``q = p + 1`` per side, ``p`` rounds.

    With ``check`` the referee answer is compared and a mismatch raises
    :class:`ReductionFailure`.
    """
    variant = Variant(variant)
    p = inst.q - 1 if passes is None else passes
    if p < 1 or inst.q != p + 1:
        raise ValueError(f"protocol needs q = p + 1 >= 2 players per side (q={inst.q}, p={p})")
    graph = build_intersect_graph(inst, variant)
    raw, sizes = _run_rounds(graph, proc_factory, p)
    run = ProtocolRun(_VARIANT_ANSWER[variant](raw), len(sizes), sum(sizes), p,
                      eval_intersect(inst), sizes)
    if check and not run.agrees:
        raise ReductionFailure(f"{variant.value}: processor said {run.answer}, referee {run.referee}")
    return run


# ---------------------------------------------------------------------------
# transcript forking

def fork_replay_depth_extraction(tree: GraphStream, v: int,
                                 proc_factory: ProcessorFactory) -> dict[int, int]:
    """Depth of every ``u != v`` from one memory image.

    ``tree`` holds every edge except ``v``'s own, with query ``v``.  The image
    taken after those edges is forked once per ``u``: attaching ``v`` under
    ``u`` and asking for ``depth(v)`` reveals ``depth(u) = depth(v) - 1``.
    """
    tree.validate()
    if tree.query != (v,):
        raise ValueError(f"stream must query the deferred node {v}")
    if any(v in t.nodes for t in tree.edges):
        raise ValueError(f"node {v} must not appear before its withheld edge")
    proc = proc_factory().init(tree.n, 1, tree.query, tree.root, tree.directed)
    for tok in tree.tokens:
        proc.feed(tok)
    image = proc.snapshot()
    depths: dict[int, int] = {}
    for u in range(tree.n):
        if u == v:
            continue
        fork = proc_factory().restore(image)
        fork.feed(Token.edge(v, u))
        d = fork.finish() - 1
        if d < 0:
            raise ExtractionError(f"fork attaching {v} under {u} reported depth {d + 1}")
        depths[u] = d
    if depths.get(tree.root) != 0:
        raise ExtractionError("root did not come out at depth 0")
    return depths


def forked_st_cuts(g: GraphStream, x: int, proc_factory: ProcessorFactory) -> dict[int, int]:
    """Min ``x``-``y`` cut of ``g`` for every ``y != x`` from one memory image.

    ``g`` is extended by ``u' = n`` and ``v' = n + 1``; ``(u', x)`` and the
    forked ``(v', y)`` weigh ``n`` so neither can sit in a minimum cut.
    """
    if g.directed or g.weighted:
        raise ValueError("expects an undirected unweighted graph")
    n = g.n
    u_aux, v_aux = n, n + 1
    proc = proc_factory().init(n + 2, 1, (u_aux, v_aux), directed=False)
    for tok in g.edges:
        proc.feed(Token.edge(tok.u, tok.v, 1))
    proc.feed(Token.edge(u_aux, x, n))
    image = proc.snapshot()
    cuts = {}
    for y in range(n):
        if y == x:
            continue
        fork = proc_factory().restore(image)
        fork.feed(Token.edge(v_aux, y, n))
        cuts[y] = fork.finish()
    return cuts


def global_mincut_via_st_forking(g: GraphStream, x: int,
                                 proc_factory: ProcessorFactory) -> int:
    if g.n < 2:
        return 0
    return min(forked_st_cuts(g, x, proc_factory).values())
