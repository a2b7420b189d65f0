"""Streaming model: tokens, multi-pass tapes, processors and bit-exact transcripts.

A processor is a single-threaded state machine fed one token at a time.  Its
whole memory can be serialized into a :class:`Transcript`; the length of that
transcript is the space metric *and* the communication unit used by every
protocol simulation in :mod:`streambounds.reductions`.
"""
from __future__ import annotations

import abc
import enum
import io
import struct
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

import numpy as np


class StreamError(Exception):
    """Base class for stream-level failures."""


class StreamParseError(StreamError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class StreamValidationError(StreamError):
    pass


class ProtocolViolation(StreamError):
    """A processor was driven outside its contract (e.g. finish before the last pass)."""


class InvalidInput(StreamError):
    """The stream content does not satisfy the processor's precondition."""


class Kind(enum.Enum):
    QUERY = "Q"
    EDGE = "E"
    PASS_MARK = "P"


@dataclass(frozen=True)
class Token:
    kind: Kind
    nodes: tuple[int, ...] = ()
    w: int | None = None
    ordinal: int = 0

    @classmethod
    def query(cls, *nodes: int) -> "Token":
        if not 1 <= len(nodes) <= 2:
            raise ValueError("QUERY carries one or two node ids")
        return cls(Kind.QUERY, tuple(int(x) for x in nodes))

    @classmethod
    def edge(cls, u: int, v: int, w: int | None = None) -> "Token":
        return cls(Kind.EDGE, (int(u), int(v)), None if w is None else int(w))

    @classmethod
    def pass_mark(cls, ordinal: int) -> "Token":
        return cls(Kind.PASS_MARK, ordinal=int(ordinal))

    @property
    def u(self) -> int:
        return self.nodes[0]

    @property
    def v(self) -> int:
        return self.nodes[1]


@dataclass
class GraphStream:
    n: int
    tokens: list[Token] = field(default_factory=list)
    directed: bool = False
    weighted: bool = False
    passes: int = 1
    root: int | None = None

    @property
    def query(self) -> tuple[int, ...]:
        for tok in self.tokens:
            if tok.kind is Kind.QUERY:
                return tok.nodes
        return ()

    @property
    def edges(self) -> list[Token]:
        return [t for t in self.tokens if t.kind is Kind.EDGE]

    def validate(self) -> None:
        if self.n < 1:
            raise StreamValidationError("n must be positive")
        if self.passes < 1:
            raise StreamValidationError("passes must be positive")
        if self.root is not None and not 0 <= self.root < self.n:
            raise StreamValidationError(f"root {self.root} out of range for n={self.n}")
        seen_edge = False
        seen_query = False
        for idx, tok in enumerate(self.tokens):
            if tok.kind is Kind.PASS_MARK:
                raise StreamValidationError("PASS_MARK tokens are inserted by the runner, not stored")
            if tok.kind is Kind.QUERY:
                if seen_query:
                    raise StreamValidationError("more than one QUERY token")
                if seen_edge:
                    raise StreamValidationError("QUERY must precede all EDGE tokens")
                seen_query = True
            else:
                seen_edge = True
                if self.weighted != (tok.w is not None):
                    raise StreamValidationError(f"token {idx}: weight presence disagrees with flags")
            for x in tok.nodes:
                if not 0 <= x < self.n:
                    raise StreamValidationError(f"token {idx}: node id {x} out of range for n={self.n}")
        if self.root is not None and not seen_query:
            raise StreamValidationError("rooted stream has no QUERY token")

    def tape(self) -> Iterable[Token]:
        """Canonical multi-pass tape: the token list repeated, PASS_MARK between passes."""
        for k in range(1, self.passes + 1):
            if k > 1:
                yield Token.pass_mark(k)
            yield from self.tokens


@dataclass(frozen=True)
class Transcript:
    data: bytes

    @property
    def bit_len(self) -> int:
        return 8 * len(self.data)


# ---------------------------------------------------------------------------
# text format

def write_stream(s: GraphStream, sink: IO[str]) -> int:
    s.validate()
    lines = [
        f"n {s.n}",
        f"passes {s.passes}",
        f"flags {'directed' if s.directed else 'undirected'} "
        f"{'weighted' if s.weighted else 'unweighted'}",
    ]
    q = s.query
    if q:
        lines.append("Q " + " ".join(map(str, q)))
    if s.root is not None:
        lines.append(f"root {s.root}")
    for tok in s.tokens:
        if tok.kind is Kind.EDGE:
            lines.append(f"E {tok.u} {tok.v}" + ("" if tok.w is None else f" {tok.w}"))
    text = "\n".join(lines) + "\n"
    sink.write(text)
    return len(text.encode("utf-8"))


def dumps_stream(s: GraphStream) -> str:
    buf = io.StringIO()
    write_stream(s, buf)
    return buf.getvalue()


def _ints(parts: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise StreamParseError(lineno, f"expected integers, got {' '.join(parts)!r}") from None


def read_stream(source: IO[str] | Iterable[str]) -> GraphStream:
    n = None
    passes = 1
    directed = weighted = False
    root = None
    query: Token | None = None
    edges: list[Token] = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "n":
            if len(rest) != 1:
                raise StreamParseError(lineno, "`n` takes one value")
            (n,) = _ints(rest, lineno)
        elif head == "passes":
            if len(rest) != 1:
                raise StreamParseError(lineno, "`passes` takes one value")
            (passes,) = _ints(rest, lineno)
        elif head == "flags":
            if len(rest) != 2 or rest[0] not in ("directed", "undirected") \
                    or rest[1] not in ("weighted", "unweighted"):
                raise StreamParseError(lineno, "flags must be <directed|undirected> <weighted|unweighted>")
            directed = rest[0] == "directed"
            weighted = rest[1] == "weighted"
        elif head == "Q":
            if query is not None:
                raise StreamParseError(lineno, "duplicate Q line")
            if edges:
                raise StreamParseError(lineno, "Q must precede E lines")
            if not 1 <= len(rest) <= 2:
                raise StreamParseError(lineno, "Q takes one or two node ids")
            query = Token.query(*_ints(rest, lineno))
        elif head == "root":
            if len(rest) != 1:
                raise StreamParseError(lineno, "`root` takes one value")
            (root,) = _ints(rest, lineno)
        elif head == "E":
            vals = _ints(rest, lineno)
            if len(vals) not in (2, 3):
                raise StreamParseError(lineno, "E takes u v [w]")
            edges.append(Token.edge(*vals))
        else:
            raise StreamParseError(lineno, f"unknown record {head!r}")
    if n is None:
        raise StreamValidationError("missing `n` header")
    tokens = ([query] if query is not None else []) + edges
    s = GraphStream(n=n, tokens=tokens, directed=directed, weighted=weighted,
                    passes=passes, root=root)
    s.validate()
    return s


def loads_stream(text: str) -> GraphStream:
    return read_stream(io.StringIO(text))


# ---------------------------------------------------------------------------
# processors

# magic, flags, n, passes, pass_index, nquery, q0, q1, root, edge_count, weight_width
_HEADER = struct.Struct("<4sBIHHBIIIIB")
_MAGIC = b"GSP1"
HEADER_BITS = 8 * _HEADER.size

_F_DIRECTED = 1
_F_ROOT = 2
_F_WEIGHTED = 4


def _zigzag(w: int) -> int:
    return 2 * w if w >= 0 else -2 * w - 1


def _unzigzag(z: np.ndarray) -> np.ndarray:
    return np.where(z & 1, -((z + 1) >> 1), z >> 1)


def _pack(columns: list[tuple[np.ndarray, int]]) -> bytes:
    """Bit-pack equal-length integer columns row-major, MSB first."""
    if not columns or len(columns[0][0]) == 0:
        return b""
    rows = len(columns[0][0])
    pieces = []
    for col, width in columns:
        if width == 0:
            continue
        shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
        pieces.append(((col.astype(np.int64)[:, None] >> shifts) & 1).astype(np.uint8))
    bits = np.concatenate(pieces, axis=1).reshape(rows * sum(w for _, w in columns))
    return np.packbits(bits).tobytes()


def _unpack(data: bytes, rows: int, widths: list[int]) -> list[np.ndarray]:
    total = sum(widths)
    if rows == 0 or total == 0:
        return [np.zeros(rows, dtype=np.int64) for _ in widths]
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), count=rows * total)
    bits = bits.reshape(rows, total).astype(np.int64)
    out = []
    start = 0
    for width in widths:
        if width == 0:
            out.append(np.zeros(rows, dtype=np.int64))
            continue
        weights = np.left_shift(1, np.arange(width - 1, -1, -1, dtype=np.int64))
        out.append(bits[:, start:start + width] @ weights)
        start += width
    return out


class StreamProcessor(abc.ABC):
    """Store-and-solve streaming processor.

    Subclasses implement :meth:`solve`.  The stored state is the edge multiset
    seen during the first pass (later passes are replays and are ignored), the
    query nodes, the root, and the pass counter.  Edges of an undirected stream
    are normalized to ``(min, max)`` so the serialized state is canonical.
    """

    name = "abstract"

    def __init__(self) -> None:
        self._ready = False

    # -- contract ----------------------------------------------------------
    def init(self, n: int, passes: int = 1, query: Sequence[int] = (),
             root: int | None = None, directed: bool = False) -> "StreamProcessor":
        if n < 1 or passes < 1:
            raise ProtocolViolation("n and passes must be positive")
        self.n = int(n)
        self.passes = int(passes)
        self.pass_index = 1
        self.query = tuple(int(x) for x in query)
        self.root = root
        self.directed = bool(directed)
        self.weighted: bool | None = None
        self.edges: list[tuple[int, int, int]] = []
        self._wwidth = 0
        self._ready = True
        return self

    def feed(self, tok: Token) -> None:
        self._require_ready()
        if tok.kind is Kind.PASS_MARK:
            if tok.ordinal != self.pass_index + 1 or tok.ordinal > self.passes:
                raise ProtocolViolation(
                    f"unexpected PASS_MARK {tok.ordinal} during pass {self.pass_index}/{self.passes}")
            self.pass_index = tok.ordinal
        elif tok.kind is Kind.QUERY:
            if self.query and self.query != tok.nodes:
                raise ProtocolViolation(f"QUERY {tok.nodes} disagrees with initialized {self.query}")
            self.query = tok.nodes
        else:
            if self.pass_index > 1:
                return
            u, v = tok.nodes
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidInput(f"edge ({u}, {v}) out of range for n={self.n}")
            has_w = tok.w is not None
            if self.weighted is None:
                self.weighted = has_w
            elif self.weighted != has_w:
                raise InvalidInput("mixed weighted and unweighted edges")
            w = tok.w if has_w else 1
            self.check_edge(u, v, w)
            if not self.directed and u > v:
                u, v = v, u
            self.edges.append((u, v, w))
            if has_w:
                self._wwidth = max(self._wwidth, _zigzag(w).bit_length(), 1)

    def check_edge(self, u: int, v: int, w: int) -> None:
        """Hook for per-edge precondition checks."""

    def finish(self) -> int:
        self._require_ready()
        if self.pass_index != self.passes:
            raise ProtocolViolation(f"finish() during pass {self.pass_index} of {self.passes}")
        return int(self.solve())

    @abc.abstractmethod
    def solve(self) -> int: ...

    # -- memory ------------------------------------------------------------
    @property
    def id_width(self) -> int:
        return max(1, (self.n - 1).bit_length())

    def state_bits(self) -> int:
        self._require_ready()
        body = len(self.edges) * (2 * self.id_width + self._wwidth)
        return HEADER_BITS + 8 * ((body + 7) // 8)

    def snapshot(self) -> Transcript:
        self._require_ready()
        flags = ((_F_DIRECTED if self.directed else 0)
                 | (_F_ROOT if self.root is not None else 0)
                 | (_F_WEIGHTED if self.weighted else 0))
        q = self.query + (0,) * (2 - len(self.query))
        head = _HEADER.pack(_MAGIC, flags, self.n, self.passes, self.pass_index,
                            len(self.query), q[0], q[1], self.root or 0,
                            len(self.edges), self._wwidth)
        edges = sorted(self.edges)
        if edges:
            arr = np.array(edges, dtype=np.int64)
            cols = [(arr[:, 0], self.id_width), (arr[:, 1], self.id_width)]
            if self._wwidth:
                z = np.where(arr[:, 2] >= 0, 2 * arr[:, 2], -2 * arr[:, 2] - 1)
                cols.append((z, self._wwidth))
            body = _pack(cols)
        else:
            body = b""
        return Transcript(head + body)

    def restore(self, t: Transcript) -> "StreamProcessor":
        data = t.data
        if len(data) < _HEADER.size:
            raise ProtocolViolation("transcript too short")
        (magic, flags, n, passes, pass_index, nq, q0, q1, root,
         count, wwidth) = _HEADER.unpack_from(data)
        if magic != _MAGIC:
            raise ProtocolViolation("bad transcript magic")
        self.init(n, passes, (q0, q1)[:nq], root if flags & _F_ROOT else None,
                  bool(flags & _F_DIRECTED))
        self.pass_index = pass_index
        self._wwidth = wwidth
        if count:
            self.weighted = bool(flags & _F_WEIGHTED)
            iw = self.id_width
            cols = _unpack(data[_HEADER.size:], count, [iw, iw, wwidth])
            ws = _unzigzag(cols[2]) if wwidth else np.ones(count, dtype=np.int64)
            self.edges = list(zip(cols[0].tolist(), cols[1].tolist(), ws.tolist()))
        return self

    def _require_ready(self) -> None:
        if not self._ready:
            raise ProtocolViolation("processor used before init() or restore()")

    # -- helpers for solve() -------------------------------------------------
    def arcs(self) -> list[tuple[int, int, int]]:
        """Stored edges as directed arcs; undirected edges yield both directions."""
        if self.directed:
            return list(self.edges)
        out = []
        for u, v, w in self.edges:
            out.append((u, v, w))
            if u != v:
                out.append((v, u, w))
        return out

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v, _ in self.arcs():
            adj[u].append(v)
        return adj


def run_stream(proc: StreamProcessor, s: GraphStream) -> tuple[int, int]:
    """Drive ``proc`` over the full multi-pass tape of ``s``.

    Returns ``(answer, peak_state_bits)`` where the peak is taken over the
    state observed after every token.
    """
    s.validate()
    proc.init(s.n, s.passes, s.query, s.root, s.directed)
    peak = proc.state_bits()
    for tok in s.tape():
        proc.feed(tok)
        peak = max(peak, proc.state_bits())
    return proc.finish(), peak
