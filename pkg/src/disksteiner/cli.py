"""Command-line front end.

Exit codes: 0 = yes / verified / success, 1 = proven no / rejected /
cross-check disagreement, 2 = usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time

from . import fileio
from ._kernels import HAS_NUMBA, resolve_backend
from .cliquegrid import compute_representation
from .fpt import contract_components, dreyfus_wagner, solve_fpt
from .gadgets import GadgetError, cvc_gadget, grid_tiling_gadget
from .geometry import Graph, SteinerTree, build_intersection_graph
from .instances import mark_terminals, random_udg
from .oracle import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    SolveResult,
    brute_force_decide,
    verify_tree,
)
from .subexp import solve_subexp

BUDGET_ENV = "DISKSTEINER_ORACLE_BUDGET"

ALGOS = ("oracle", "fpt", "dw", "subexp")


def _oracle_budget():
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError("%s must be an integer, got %r" % (BUDGET_ENV, raw))
    if value < 1:
        raise ValueError("%s must be positive" % BUDGET_ENV)
    return value


def _solve_dw(g, k, backend=None):
    """Dreyfus-Wagner on the contracted graph, no component-count gate."""
    cg = contract_components(g)
    q = len(cg.comp_members)
    if q == 1:
        return SolveResult(True, SteinerTree(cg.comp_trees[0], ()), 1, 0)
    if k == 0:
        return SolveResult(False, states=1)
    gstar = cg.graph()
    res = dreyfus_wagner(gstar, range(q), backend)
    states = (1 << q) * gstar.n
    if res is None:
        return SolveResult(False, states=states)
    best_edges, star_edges = res
    ksteiner = best_edges - q + 1
    if ksteiner > k:
        return SolveResult(False, states=states)
    from .fpt import _expand

    tree = _expand(g, cg, star_edges)
    return SolveResult(True, tree, states, ksteiner)


def _run_algo(algo, inst, backend=None):
    g = build_intersection_graph(inst, backend)
    k = inst.k
    if algo == "oracle":
        return brute_force_decide(g, g.terminals, k, budget=_oracle_budget(), backend=backend)
    if algo == "fpt":
        return solve_fpt(g, k, backend)
    if algo == "dw":
        return _solve_dw(g, k, backend)
    if algo == "subexp":
        repr_ = compute_representation(inst)
        return solve_subexp(g, repr_, k)
    raise ValueError("unknown algorithm %r" % algo)


def _cmd_solve(args):
    inst = fileio.read_instance(args.instance)
    result = _run_algo(args.algo, inst, args.backend)
    text = fileio.dumps_solution(result.feasible, result.tree)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if result.feasible else 1


def _cmd_verify(args):
    inst = fileio.read_instance(args.instance)
    feasible, tree = fileio.read_solution(args.solution)
    if not feasible:
        print("solution declares no; nothing to verify")
        return 1
    g = build_intersection_graph(inst)
    ok, reason = verify_tree(g, g.terminals, inst.k, tree)
    print(reason)
    return 0 if ok else 1


def _cmd_bench(args):
    with open(args.manifest, "r", encoding="ascii") as fh:
        jobs = []
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if len(fields) != 2 or fields[1] not in ALGOS:
                raise fileio.FormatError(
                    "manifest line %d: expected '<instance> <algo>'" % lineno
                )
            jobs.append((fields[0], fields[1]))
    rows = []
    answers = {}
    for path, algo in sorted(set(jobs)):
        inst = fileio.read_instance(path)
        start = time.perf_counter()
        result = _run_algo(algo, inst, args.backend)
        elapsed = time.perf_counter() - start
        rows.append(
            {
                "instance": path,
                "algo": algo,
                "answer": "yes" if result.feasible else "no",
                "wall_time_s": "%.6f" % elapsed,
                "states": str(result.states),
            }
        )
        answers.setdefault(path, set()).add(result.feasible)
    out = open(args.out, "w", newline="", encoding="ascii") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(
            out, fieldnames=["instance", "algo", "answer", "wall_time_s", "states"]
        )
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    finally:
        if args.out:
            out.close()
    bad = sorted(path for path, seen in answers.items() if len(seen) > 1)
    if bad:
        print("cross-check disagreement on: %s" % ", ".join(bad), file=sys.stderr)
        return 1
    return 0


def _cmd_gen(args):
    inst = random_udg(args.n, args.box, args.radius, args.seed)
    inst = mark_terminals(inst, args.terminals, args.seed + 1)
    inst = inst.with_budget(args.k)
    fileio.write_instance(args.out, inst)
    return 0


def _cmd_gadget_cvc(args):
    emb = fileio.read_embedding(args.embedding)
    gadget = cvc_gadget(emb, args.k)
    fileio.write_instance(args.out, gadget.instance)
    print("budget %d" % gadget.kprime)
    return 0


def _cmd_gadget_gridtiling(args):
    gt = fileio.read_gt_spec(args.spec)
    gadget = grid_tiling_gadget(gt)
    fileio.write_instance(args.out, gadget.instance)
    print("budget %d" % gadget.budget)
    return 0


def _cmd_kernels(args):
    from ._kernels import dreyfus_wagner_table, edges_int64
    import numpy as np

    print("numba available: %s" % HAS_NUMBA)
    print("active backend: %s" % resolve_backend(args.backend))
    inst = random_udg(args.n, 4 * args.n, 32, args.seed)
    xs = np.asarray(inst.xs, dtype=np.int64)
    ys = np.asarray(inst.ys, dtype=np.int64)
    rs = np.asarray(inst.radii, dtype=np.int64)
    backends = (["numba"] if HAS_NUMBA else []) + ["numpy"]
    for backend in backends:
        edges_int64(xs, ys, rs, backend)  # warm up the jit before timing
        start = time.perf_counter()
        eu, ev = edges_int64(xs, ys, rs, backend)
        mid = time.perf_counter()
        graph = Graph(inst.n, zip(eu.tolist(), ev.tolist()))
        indptr, indices = graph.csr()
        terms = np.arange(min(10, inst.n), dtype=np.int64)
        dreyfus_wagner_table(indptr, indices, terms, inst.n, backend)
        done = time.perf_counter()
        print(
            "%-6s edges: %7d  edge kernel: %8.4fs  dw kernel: %8.4fs"
            % (backend, len(eu), mid - start, done - mid)
        )
    return 0


def _parser():
    p = argparse.ArgumentParser(prog="disksteiner", description=__doc__)
    p.add_argument("--backend", choices=("numba", "numpy"), default=None,
                   help="kernel backend override (default: env or autodetect)")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="decide a disk Steiner instance")
    sp.add_argument("instance")
    sp.add_argument("--algo", choices=ALGOS, default="fpt")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=_cmd_solve)

    sp = sub.add_parser("verify", help="check a solution file against its instance")
    sp.add_argument("instance")
    sp.add_argument("solution")
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("bench", help="time algorithms over a manifest")
    sp.add_argument("manifest")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=_cmd_bench)

    sp = sub.add_parser("gen", help="write a random unit disk instance")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--box", type=int, required=True)
    sp.add_argument("--radius", type=int, default=32)
    sp.add_argument("--terminals", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=_cmd_gen)

    sp = sub.add_parser("gadget", help="hardness reduction generators")
    gsub = sp.add_subparsers(dest="gadget", required=True)
    gp = gsub.add_parser("cvc", help="connected vertex cover reduction")
    gp.add_argument("--embedding", required=True)
    gp.add_argument("-k", type=int, required=True)
    gp.add_argument("--out", required=True)
    gp.set_defaults(func=_cmd_gadget_cvc)
    gp = gsub.add_parser("gridtiling", help="grid tiling reduction")
    gp.add_argument("--spec", required=True)
    gp.add_argument("--out", required=True)
    gp.set_defaults(func=_cmd_gadget_gridtiling)

    sp = sub.add_parser("kernels", help="compare numba and numpy kernel timings")
    sp.add_argument("--n", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=_cmd_kernels)

    return p


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, BudgetExceededError, GadgetError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def run():
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
