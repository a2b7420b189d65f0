"""Command line: gen | run | simulate | verify | bench | bound.

Exit codes: 0 success, 1 verification or referee failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import csv
import sys
import time
from pathlib import Path

from . import algorithms as alg
from . import bounds
from . import verify as vf
from .comm_problems import IndexInstance, eval_intersect, eval_pointer_chase, gen_random
from .generators import random_connected_graph, random_graph, random_tree
from .graph_oracles import StaticGraph, bfs_depths
from .reductions import (ReductionFailure, Variant, build_intersect_graph, build_pc_tree,
                         index_stream, simulate_index_protocol, simulate_intersect_protocol,
                         simulate_pc_protocol)
from .stream_core import GraphStream, StreamError, Token, read_stream, run_stream, write_stream

GEN_KINDS = ("pc-tree", "intersect-cut", "intersect-negcycle", "intersect-scc",
             "index-negcycle", "random-tree", "random-graph")
SIM_PROBLEMS = ("pc", "index", "intersect-cut", "intersect-negcycle", "intersect-scc")
BENCH_PROBLEMS = ("tree-depth", "st-distance", "pc", "index",
                  "intersect-cut", "intersect-negcycle", "intersect-scc")
BENCH_HEADER = ["problem", "algorithm", "n", "p", "peak_state_bits", "comm_bits", "handoffs",
                "formula_bits", "ratio", "seed", "wall_ms"]
INDEX_EXHAUSTIVE_CAP = 5

DEFAULT_ALGO = {
    "pc": "tree-depth",
    "index": "neg-cycle",
    "intersect-cut": "st-mincut",
    "intersect-negcycle": "neg-cycle",
    "intersect-scc": "scc-same",
}


class UsageError(Exception):
    pass


def _variant(kind: str) -> Variant:
    return Variant(kind.split("-", 1)[1])


def _index_instance(args) -> IndexInstance:
    if args.bits is not None:
        if args.i is None:
            raise UsageError("--bits needs --i")
        return IndexInstance(tuple(int(c) for c in args.bits), args.i)
    inst = gen_random("index", args.n, density=args.density, seed=args.seed)
    return IndexInstance(inst.bits, inst.i) if args.i is None else IndexInstance(inst.bits, args.i)


# ---------------------------------------------------------------------------
# gen

def cmd_gen(args) -> int:
    sidecar: list[str] = []
    if args.kind == "pc-tree":
        inst = gen_random("pc", args.m, args.q, seed=args.seed)
        g = build_pc_tree(inst)
        stream = g.stream
        sidecar.append(f"terminals N {g.terminals['N']} n1 {g.terminals['n1']}")
        sidecar += [f"decode {d} {k}" for d, k in sorted(g.decode.items())]
        sidecar.append(f"referee {eval_pointer_chase(inst)}")
    elif args.kind.startswith("intersect-"):
        inst = gen_random("intersect", args.m, args.q, args.density, seed=args.seed)
        g = build_intersect_graph(inst, _variant(args.kind))
        stream = g.stream
        sidecar.append(f"terminals n1 {g.terminals['n1']} n1p {g.terminals['n1p']}")
        sidecar.append(f"referee {int(eval_intersect(inst))}")
    elif args.kind == "index-negcycle":
        if args.n is None:
            raise UsageError("index-negcycle needs --n")
        inst = _index_instance(args)
        if len(inst.bits) != args.n * (args.n - 1) // 2:
            raise UsageError(f"--bits must have n(n-1)/2 = {args.n * (args.n - 1) // 2} characters")
        stream = index_stream(inst)
        sidecar.append(f"terminals v {args.n}")
        sidecar.append(f"referee {inst.answer}")
    elif args.kind == "random-tree":
        stream = random_tree(args.n, seed=args.seed)
        depth = bfs_depths(StaticGraph.from_stream(stream), 0)
        sidecar.append("terminals root 0")
        sidecar.append(f"referee {depth[stream.query[0]]}")
    else:
        stream = random_graph(args.n, args.density, seed=args.seed, directed=args.directed,
                              query=(0, args.n - 1) if args.n > 1 else (0,))
    if args.out is None:
        write_stream(stream, sys.stdout)
        return 0
    out = Path(args.out)
    with out.open("w", encoding="utf-8") as fh:
        write_stream(stream, fh)
    if sidecar:
        Path(str(out) + ".decode").write_text("\n".join(sidecar) + "\n", encoding="utf-8")
    return 0


# ---------------------------------------------------------------------------
# run

def cmd_run(args) -> int:
    factory = alg.get_processor(args.algorithm)
    with open(args.stream, encoding="utf-8") as fh:
        stream = read_stream(fh)
    answer, peak = run_stream(factory(), stream)
    print(f"answer={answer} bits={peak}")
    return 0


# ---------------------------------------------------------------------------
# simulate

def _report(run, label: str = "") -> bool:
    ok = run.answer == run.referee
    prefix = f"{label} " if label else ""
    print(f"{prefix}answer={int(run.answer)} referee={int(run.referee)} "
          f"handoffs={run.handoffs} comm_bits={run.comm_bits} "
          + ("ok" if ok else "MISMATCH"))
    return ok


def cmd_simulate(args) -> int:
    factory = alg.get_processor(args.algo or DEFAULT_ALGO[args.problem])
    mismatches = 0
    if args.problem == "index":
        if args.exhaustive:
            if args.n > INDEX_EXHAUSTIVE_CAP:
                raise UsageError(f"--exhaustive is capped at n <= {INDEX_EXHAUSTIVE_CAP}")
            total = 0
            for inst in vf.all_index_instances(args.n):
                run = simulate_index_protocol(inst, factory)
                total += 1
                mismatches += run.answer != run.referee
            print(f"cases={total} mismatches={mismatches}")
            return 1 if mismatches else 0
        insts = [_index_instance(args)]
        runs = [simulate_index_protocol(i, factory) for i in insts]
    elif args.problem == "pc":
        runs = []
        for k in range(args.count):
            inst = gen_random("pc", args.m, args.p + 1, seed=args.seed + k)
            try:
                runs.append(simulate_pc_protocol(inst, factory, args.p))
            except ReductionFailure as exc:
                print(f"reduction failure: {exc}")
                return 1
    else:
        runs = []
        for k in range(args.count):
            inst = gen_random("intersect", args.m, args.p + 1, args.density, seed=args.seed + k)
            runs.append(simulate_intersect_protocol(inst, factory, _variant(args.problem),
                                                    args.p, check=False))
    for k, run in enumerate(runs):
        mismatches += not _report(run, f"seed={args.seed + k}" if len(runs) > 1 else "")
    return 1 if mismatches else 0


# ---------------------------------------------------------------------------
# verify

def cmd_verify(args) -> int:
    names = list(vf.SUITES) if args.suite == "all" else [vf.SUITE_ALIASES.get(args.suite, args.suite)]
    failed = False
    for name in names:
        kwargs = {} if name in ("index", "bounds") else {"seed": args.seed}
        res = vf.SUITES[name](**kwargs)
        print(res.line())
        for msg in res.failures[:5]:
            print(f"  {msg}")
        failed |= not res.ok
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# bench

def _bench_row(problem: str, algo: str, n: int, p: int, seed: int) -> dict:
    factory = alg.get_processor(algo)
    t0 = time.perf_counter()
    peak = comm = handoffs = 0
    if problem == "tree-depth":
        _, peak = run_stream(factory(), random_tree(n, seed=seed))
        formula, measured = bounds.FORMULAS["tree-depth-single"](n), peak
    elif problem == "st-distance":
        g = random_connected_graph(n, min(1.0, 4 / n), seed=seed)
        stream = GraphStream(n, [Token.query(0, n - 1), *g.tokens])
        _, peak = run_stream(factory(), stream)
        formula, measured = bounds.FORMULAS["tree-depth-single"](n), peak
    elif problem == "pc":
        run = simulate_pc_protocol(gen_random("pc", n, p + 1, seed=seed), factory, p)
        peak, comm, handoffs = max(run.transcript_bits), run.comm_bits, run.handoffs
        formula, measured = bounds.pc_cc_bound(n, p + 1), comm
    elif problem == "index":
        run = simulate_index_protocol(gen_random("index", n, seed=seed), factory)
        peak, comm, handoffs = run.comm_bits, run.comm_bits, run.handoffs
        formula, measured = n * (n - 1) / 2, comm
    else:
        inst = gen_random("intersect", n, p + 1, 0.5, seed=seed)
        run = simulate_intersect_protocol(inst, factory, _variant(problem), p, check=True)
        peak, comm, handoffs = max(run.transcript_bits), run.comm_bits, run.handoffs
        formula, measured = bounds.intersect_cc_bound(max(n, 2), p + 1), comm
    wall = (time.perf_counter() - t0) * 1000
    return {
        "problem": problem, "algorithm": algo, "n": n, "p": p,
        "peak_state_bits": peak, "comm_bits": comm, "handoffs": handoffs,
        "formula_bits": f"{formula:.6g}",
        "ratio": f"{measured / formula:.6g}" if formula > 0 else "",
        "seed": seed, "wall_ms": f"{wall:.3f}",
    }


def cmd_bench(args) -> int:
    algo = args.algo or DEFAULT_ALGO.get(args.problem, args.problem)
    alg.get_processor(algo)
    ns = list(args.n)
    if args.log2_range:
        lo, hi = (int(x) for x in args.log2_range.split(":"))
        ns += [2**e for e in range(lo, hi + 1)]
    if not ns:
        raise UsageError("give --n and/or --log2-range")
    rows = [_bench_row(args.problem, algo, n, args.p, args.seed + r)
            for n in ns for r in range(args.repeats)]
    rows.sort(key=lambda r: (r["n"], r["seed"]))
    sink = open(args.csv, "w", newline="", encoding="utf-8") if args.csv else sys.stdout
    try:
        writer = csv.DictWriter(sink, fieldnames=BENCH_HEADER)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if sink is not sys.stdout:
            sink.close()
    return 0


# ---------------------------------------------------------------------------
# bound

def cmd_bound(args) -> int:
    name = args.name
    if name == "pc-cc":
        val = bounds.pc_cc_bound(args.n, args.p)
    elif name == "depth-pass":
        val = bounds.depth_pass_bound(args.n, args.p)
    elif name == "intersect-cc":
        val = bounds.intersect_cc_bound(args.n, args.p, 19 if args.space_form else 16)
    elif name == "stirling2":
        val = bounds.stirling2(args.n, args.k)
    elif name == "depth-count":
        total, lg = bounds.depth_count_lower(args.n)
        print(f"{total} log2={lg:.6f}")
        return 0
    else:
        val = bounds.realizable_depth_profiles(args.n)
    print(f"{val:.10g}" if isinstance(val, float) else val)
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="streambounds", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a constructed stream and its decode sidecar")
    g.add_argument("kind", choices=GEN_KINDS)
    g.add_argument("--m", type=int, default=4)
    g.add_argument("--q", type=int, default=2)
    g.add_argument("--n", type=int)
    g.add_argument("--i", type=int)
    g.add_argument("--bits")
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--directed", action="store_true")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("run", help="run a processor over a stream file")
    r.add_argument("algorithm", choices=sorted(alg.PROCESSORS))
    r.add_argument("stream")
    r.set_defaults(func=cmd_run)

    s = sub.add_parser("simulate", help="simulate a reduction protocol against its referee")
    s.add_argument("problem", choices=SIM_PROBLEMS)
    s.add_argument("--algo", choices=sorted(alg.PROCESSORS))
    s.add_argument("--m", type=int, default=4)
    s.add_argument("--p", type=int, default=1)
    s.add_argument("--n", type=int, default=4)
    s.add_argument("--i", type=int)
    s.add_argument("--bits")
    s.add_argument("--density", type=float, default=0.5)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--exhaustive", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_simulate)

    v = sub.add_parser("verify", help="run property suites")
    v.add_argument("suite", choices=[*vf.SUITES, *vf.SUITE_ALIASES, "all"])
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="metering sweep written as CSV")
    b.add_argument("problem", choices=BENCH_PROBLEMS)
    b.add_argument("--algo", choices=sorted(alg.PROCESSORS))
    b.add_argument("--n", type=int, nargs="*", default=[])
    b.add_argument("--log2-range", help="inclusive exponent range, e.g. 8:12")
    b.add_argument("--p", type=int, default=1)
    b.add_argument("--repeats", type=int, default=1)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--csv")
    b.set_defaults(func=cmd_bench)

    o = sub.add_parser("bound", help="evaluate a bound formula")
    o.add_argument("name", choices=["pc-cc", "depth-pass", "intersect-cc", "stirling2",
                                    "depth-count", "depth-profiles"])
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--p", type=int, default=1)
    o.add_argument("--k", type=int, default=1)
    o.add_argument("--space-form", action="store_true", help="use the p^19 denominator")
    o.add_argument("--seed", type=int, default=0)
    o.set_defaults(func=cmd_bound)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, StreamError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ReductionFailure as exc:
        print(f"reduction failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
