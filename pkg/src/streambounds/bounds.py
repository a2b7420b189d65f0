"""Bound formulas with constant factor 1, and the depth-counting argument.

None of these can be confirmed by a finite run; :class:`BoundReport` only
puts a measurement next to its formula.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


def pc_cc_bound(n: float, p: float) -> float:
    """Pointer-chasing communication bound ``n/p^4 - p^2 log2 n``, clamped at 0."""
    if n < 1 or p < 1:
        raise ValueError("n and p must be at least 1")
    return max(0.0, n / p**4 - p**2 * math.log2(n))


def depth_pass_bound(n: float, p: float) -> float:
    """p-pass tree-depth space bound ``n/p^7 - log2(n/p)``, clamped at 0."""
    if n < 1 or p < 1:
        raise ValueError("n and p must be at least 1")
    return max(0.0, n / p**7 - math.log2(n / p))


def intersect_cc_bound(n: float, p: float, p_exponent: int = 16) -> float:
    """``n^(1 + 1/(2(p+1))) / (p^e * log2(n)^1.5)``.

    ``p_exponent=16`` is the communication bound for set-chasing
    intersection; pass 19 for the space bounds derived from it.
    """
    if n < 2 or p < 1:
        raise ValueError("need n >= 2 and p >= 1")
    return n ** (1 + 1 / (2 * (p + 1))) / (p**p_exponent * math.log2(n) ** 1.5)


@lru_cache(maxsize=8)
def _stirling_row(n: int) -> tuple[int, ...]:
    row = [1]
    for m in range(1, n + 1):
        row = [0] + [k * (row[k] if k < m else 0) + row[k - 1] for k in range(1, m + 1)]
    return tuple(row)


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind via ``S(n,k) = k S(n-1,k) + S(n-1,k-1)``."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    return _stirling_row(n)[k]


def depth_count_lower(n: int) -> tuple[int, float]:
    """``sum_{i=1}^{n-2} n * S(n-1, i)`` and its base-2 logarithm."""
    if n < 3:
        raise ValueError("need n >= 3")
    total = n * sum(stirling2(n - 1, i) for i in range(1, n - 1))
    return total, math.log2(total)


def depth_count_power_form(n: int) -> tuple[int, float]:
    """The looser ``n * sum_{i=1}^{n-2} i^(n-i)`` used further down the same chain."""
    if n < 3:
        raise ValueError("need n >= 3")
    total = n * sum(i ** (n - i) for i in range(1, n - 1))
    return total, math.log2(total)


def realizable_depth_profiles(n: int) -> int:
    """Count depth functions of rooted trees on ``n`` labelled nodes, by enumeration.

    Node 0 is the root at depth 0; every other node gets a depth in
    ``[1, n-1]`` and the occupied depths must be ``1..max`` without gaps.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n > 9:
        raise ValueError("exhaustive count is capped at n = 9")
    others = n - 1
    if others == 0:
        return 1
    count = 0
    used = [0] * (n + 1)

    def assign(idx: int, top: int) -> None:
        nonlocal count
        if idx == others:
            if all(used[d] for d in range(1, top + 1)):
                count += 1
            return
        remaining = others - idx
        for d in range(1, others + 1):
            new_top = max(top, d)
            gaps = sum(1 for e in range(1, new_top + 1) if not used[e] and e != d)
            if gaps > remaining - 1:
                continue
            used[d] += 1
            assign(idx + 1, new_top)
            used[d] -= 1

    assign(0, 0)
    return count


@dataclass(frozen=True)
class BoundReport:
    name: str
    n: int
    p: int
    formula: float
    measured: float

    @property
    def ratio(self) -> float | None:
        return self.measured / self.formula if self.formula > 0 else None


FORMULAS = {
    "pc-cc": pc_cc_bound,
    "depth-pass": depth_pass_bound,
    "intersect-cc": intersect_cc_bound,
    "intersect-space": lambda n, p: intersect_cc_bound(n, p, p_exponent=19),
    "tree-depth-single": lambda n, p=1: n * math.log2(n) if n > 1 else 0.0,
}


def report(name: str, n: int, p: int, measured: float) -> BoundReport:
    return BoundReport(name, n, p, float(FORMULAS[name](n, p)), float(measured))
