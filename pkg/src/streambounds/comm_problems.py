"""Communication problems as data, with exact referees.

Element labels inside tables are 1-based, matching ``[m] = {1, ..., m}``;
conversion to 0-based node ids happens only in :mod:`streambounds.reductions`.
"""
from __future__ import annotations

import io
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class IndexInstance:
    bits: tuple[int, ...]
    i: int

    def __post_init__(self):
        if not 0 <= self.i < len(self.bits):
            raise ValueError(f"index {self.i} out of range for N={len(self.bits)}")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bit array must contain only 0/1")

    @property
    def N(self) -> int:
        return len(self.bits)

    @property
    def answer(self) -> int:
        return self.bits[self.i]


def triangular_root(N: int) -> int:
    """``n`` with ``n(n-1)/2 == N``; raises if ``N`` is not of that form."""
    n = int((1 + (1 + 8 * N) ** 0.5) / 2)
    for cand in (n - 1, n, n + 1):
        if cand >= 2 and cand * (cand - 1) // 2 == N:
            return cand
    raise ValueError(f"N={N} is not n(n-1)/2 for any n >= 2")


def pair_of(k: int, n: int) -> tuple[int, int]:
    """The ``k``-th pair ``(a, b)``, ``a < b``, in lexicographic order."""
    for a in range(n):
        row = n - 1 - a
        if k < row:
            return a, a + 1 + k
        k -= row
    raise ValueError("pair index out of range")


def index_of(a: int, b: int, n: int) -> int:
    if a > b:
        a, b = b, a
    return a * n - a * (a + 1) // 2 + (b - a - 1)


@dataclass(frozen=True)
class FunctionTable:
    m: int
    img: tuple[int, ...]

    def __post_init__(self):
        if len(self.img) != self.m or any(not 1 <= x <= self.m for x in self.img):
            raise ValueError(f"function table must map [1, {self.m}] into itself")

    def __call__(self, x: int) -> int:
        return self.img[x - 1]

    @classmethod
    def identity(cls, m: int) -> "FunctionTable":
        return cls(m, tuple(range(1, m + 1)))


@dataclass(frozen=True)
class SetFunctionTable:
    m: int
    img: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.img) != self.m or any(not s <= frozenset(range(1, self.m + 1)) for s in self.img):
            raise ValueError(f"set table entries must be subsets of [1, {self.m}]")

    def __call__(self, x: int) -> frozenset[int]:
        return self.img[x - 1]

    @classmethod
    def from_lists(cls, m: int, img: Sequence[Iterable[int]]) -> "SetFunctionTable":
        return cls(m, tuple(frozenset(s) for s in img))

    @classmethod
    def singletons(cls, table: FunctionTable) -> "SetFunctionTable":
        return cls(table.m, tuple(frozenset({x}) for x in table.img))


@dataclass(frozen=True)
class PCInstance:
    """Pointer chasing; ``tables[0]`` belongs to player 1 (the outermost function).

    One player is accepted so the smallest computation tree can be built;
    protocol simulation needs at least two.
    """

    m: int
    tables: tuple[FunctionTable, ...]

    def __post_init__(self):
        if not self.tables:
            raise ValueError("need at least one player")
        if any(t.m != self.m for t in self.tables):
            raise ValueError("all tables must share m")

    @property
    def q(self) -> int:
        return len(self.tables)


@dataclass(frozen=True)
class IntersectInstance:
    m: int
    side_a: tuple[SetFunctionTable, ...]
    side_b: tuple[SetFunctionTable, ...]

    def __post_init__(self):
        if len(self.side_a) != len(self.side_b) or len(self.side_a) < 1:
            raise ValueError("both sides need the same positive number of players")
        if any(t.m != self.m for t in self.side_a + self.side_b):
            raise ValueError("all tables must share m")

    @property
    def q(self) -> int:
        return len(self.side_a)

    def swapped(self) -> "IntersectInstance":
        return IntersectInstance(self.m, self.side_b, self.side_a)


def eval_pointer_chase(inst: PCInstance) -> int:
    x = 1
    for table in reversed(inst.tables):
        x = table(x)
    return x


def eval_set_chase(tables: Sequence[SetFunctionTable], m: int | None = None) -> frozenset[int]:
    current = frozenset({1})
    for table in reversed(tables):
        current = frozenset().union(*(table(i) for i in current))
    return current


def eval_intersect(inst: IntersectInstance) -> bool:
    return bool(eval_set_chase(inst.side_a) & eval_set_chase(inst.side_b))


# ---------------------------------------------------------------------------
# generators

def gen_random(kind: str, m: int, q: int = 2, density: float = 0.5, seed: int | None = None):
    """Seeded random instance.

    ``kind`` is ``"pc"``, ``"intersect"`` or ``"index"``.  For ``"index"``
    ``m`` is the vertex count ``n`` of the encoded graph, each of the
    ``n(n-1)/2`` bits is set with probability ``density`` and ``q`` is ignored.
    For set tables each element joins an image set with probability ``density``.
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    if m < 1:
        raise ValueError("m must be positive")
    rng = np.random.default_rng(seed)
    if kind == "pc":
        if q < 1:
            raise ValueError("q must be positive")
        tables = tuple(FunctionTable(m, tuple(int(x) for x in rng.integers(1, m + 1, size=m)))
                       for _ in range(q))
        return PCInstance(m, tables)
    if kind == "intersect":
        if q < 1:
            raise ValueError("q must be positive")

        def one() -> SetFunctionTable:
            mask = rng.random((m, m)) < density
            return SetFunctionTable(m, tuple(frozenset(int(j) + 1 for j in np.flatnonzero(row))
                                             for row in mask))

        side_a = tuple(one() for _ in range(q))
        side_b = tuple(one() for _ in range(q))
        return IntersectInstance(m, side_a, side_b)
    if kind == "index":
        if m < 2:
            raise ValueError("index instances need n >= 2 vertices")
        N = m * (m - 1) // 2
        bits = tuple(int(b) for b in (rng.random(N) < density))
        return IndexInstance(bits, int(rng.integers(0, N)))
    raise ValueError(f"unknown instance kind {kind!r}")


# ---------------------------------------------------------------------------
# text format

def write_instance(inst, sink: IO[str]) -> None:
    if isinstance(inst, PCInstance):
        sink.write(f"PC {inst.q} {inst.m}\n")
        for p, table in enumerate(inst.tables, start=1):
            for x in range(1, inst.m + 1):
                sink.write(f"F {p} {x} {table(x)}\n")
    elif isinstance(inst, IntersectInstance):
        sink.write(f"SC2 {inst.q} {inst.m}\n")
        for p, table in enumerate(inst.side_a + inst.side_b, start=1):
            for x in range(1, inst.m + 1):
                vals = " ".join(str(v) for v in sorted(table(x)))
                sink.write(f"F {p} {x} {vals}".rstrip() + "\n")
    elif isinstance(inst, IndexInstance):
        sink.write(f"IDX {inst.N} {inst.i}\n")
        sink.write("A " + "".join(map(str, inst.bits)) + "\n")
    else:
        raise TypeError(f"cannot serialize {type(inst).__name__}")


def dumps_instance(inst) -> str:
    buf = io.StringIO()
    write_instance(inst, buf)
    return buf.getvalue()


def read_instance(source: IO[str] | Iterable[str]):
    lines = [ln.split("#", 1)[0].split() for ln in source]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty instance file")
    head = lines[0]
    if head[0] == "IDX":
        N, i = int(head[1]), int(head[2])
        bits = next((ln[1] for ln in lines[1:] if ln[0] == "A"), None)
        if bits is None or len(bits) != N:
            raise ValueError("IDX instance needs an `A` line of length N")
        return IndexInstance(tuple(int(c) for c in bits), i)
    if head[0] not in ("PC", "SC2"):
        raise ValueError(f"unknown instance header {head[0]!r}")
    q, m = int(head[1]), int(head[2])
    players = q if head[0] == "PC" else 2 * q
    entries: dict[tuple[int, int], list[int]] = {}
    for ln in lines[1:]:
        if ln[0] != "F" or len(ln) < 3:
            raise ValueError(f"bad table line {' '.join(ln)!r}")
        p, x = int(ln[1]), int(ln[2])
        if not (1 <= p <= players and 1 <= x <= m) or (p, x) in entries:
            raise ValueError(f"bad or duplicate entry F {p} {x}")
        entries[(p, x)] = [int(v) for v in ln[3:]]
    if len(entries) != players * m:
        raise ValueError("instance tables are incomplete")
    if head[0] == "PC":
        if any(len(v) != 1 for v in entries.values()):
            raise ValueError("PC entries take exactly one value")
        return PCInstance(m, tuple(FunctionTable(m, tuple(entries[(p, x)][0] for x in range(1, m + 1)))
                                   for p in range(1, q + 1)))
    tables = [SetFunctionTable.from_lists(m, [entries[(p, x)] for x in range(1, m + 1)])
              for p in range(1, 2 * q + 1)]
    return IntersectInstance(m, tuple(tables[:q]), tuple(tables[q:]))


def loads_instance(text: str):
    return read_instance(io.StringIO(text))
