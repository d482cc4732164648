"""Command-line entry point: ``sizeramsey <subcommand> ...``.

Exit codes: 0 success, 1 mathematically negative result (e.g. no arrowing,
witness check failed), 2 usage or input error, 3 budget or cap exhausted.
Every run appends a JSON record to the results log (``--log``, or the
``SIZERAMSEY_LOG`` environment variable; ``-`` disables logging).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .arrowing import (ArrowingInstance, Budget, BudgetExhausted, NotFound, arrows_check, arrows_via_cnf,
                       export_dimacs, ramsey_number)
from .codecs import encode_graph6, read_graph, write_graph
from .constructions import (bound_table, cycle_blowup, nst_from_json, nst_system, random_plus_clique, ring_glue,
                            tree_closure, u_graph)
from .detect import EnumerationOverflow
from .expansion import PairContext, is_good_pair, is_regular_pair, scaled_density
from .graph import Color, Coloring, GraphError, TargetPattern
from .hamiltonicity import ClaimViolation, extract_blue_cycle
from .witnesses import low_degree_witness, sparse_decomposition, verify_witness, witness_from_json

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _env(name: str, default):
    return os.environ.get(f"SIZERAMSEY_{name.upper()}", default)


def _hash_file(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _coloring_json(col: Coloring) -> dict:
    return {
        "graph6": encode_graph6(col.graph).decode(),
        "red_edges": [list(e) for e in col.edges_of(Color.RED)],
        "blue_edges": [list(e) for e in col.edges_of(Color.BLUE)],
    }


def _read_coloring(path, g) -> Coloring:
    data = json.loads(Path(path).read_text())
    red = [tuple(e) for e in data.get("red_edges", [])]
    if "blue_edges" in data:
        return Coloring.from_edge_colors(g, red, [tuple(e) for e in data["blue_edges"]])
    return Coloring.from_red_edges(g, red)


def _write_json(path, payload) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


# -- subcommands: each returns (exit_code, payload, inputs, outputs) ---------------------------

def cmd_construct(a):
    kind = a.kind
    report = None
    extra_out = []
    if kind == "u_graph":
        g, rep = u_graph(a.n, a.d)
        report = rep.to_json()
    elif kind == "cycle_blowup":
        g, rep = cycle_blowup(a.n, a.d, a.eta)
        report = rep.to_json()
    elif kind == "tree_closure":
        g, leaves = tree_closure(a.N)
        report = {"construction": "tree_closure", "params": {"N": a.N}, "vertices": g.order,
                  "edges": g.size, "leaves": leaves}
    elif kind == "nst":
        orders = [int(x) for x in a.paths.split(",")] if a.paths else []
        sysm = nst_system(a.n, len(orders), a.t, orders)
        g = sysm.graph
        report = {"construction": "nst", "params": sysm.to_json(), "vertices": g.order, "edges": g.size,
                  "uncolored": sysm.frozen.uncolored_mask.bit_count(), "blue_frozen": sysm.frozen.blue.bit_count()}
        if a.system_out:
            _write_json(a.system_out, sysm.to_json())
            extra_out.append(a.system_out)
    elif kind == "ring":
        if not a.gadget:
            raise UsageError("--gadget is required for ring")
        g, sets = ring_glue(read_graph(a.gadget), a.r)
        report = {"construction": "ring", "params": {"r": a.r}, "vertices": g.order, "edges": g.size,
                  "sets": [[s.start, s.stop] for s in sets]}
    elif kind == "random_clique":
        g = random_plus_clique(a.N, a.p, a.clique, a.seed)
        report = {"construction": "random_clique", "params": {"N": a.N, "p": a.p, "clique": a.clique,
                                                              "seed": a.seed}, "vertices": g.order, "edges": g.size}
    else:
        raise UsageError(f"unknown kind {kind}")
    report.setdefault("satisfied", True)
    report["graph6"] = encode_graph6(g).decode()
    outs = list(extra_out)
    if a.out:
        write_graph(g, a.out)
        outs.append(a.out)
    if a.report:
        _write_json(a.report, report)
        outs.append(a.report)
    print(f"{report['construction']}: {g.order} vertices, {g.size} edges"
          + ("" if report["satisfied"] else " (bound NOT satisfied)"))
    return (EXIT_OK if report["satisfied"] else EXIT_NEGATIVE), report, [a.gadget] if kind == "ring" else [], outs


def _budget(a) -> Budget:
    return Budget(max_nodes=a.budget, copy_cap=a.copy_cap)


def _load_instance(a) -> ArrowingInstance:
    g = read_graph(a.input)
    frozen = _read_coloring(a.frozen, g) if a.frozen else None
    if frozen is not None and not frozen.graph.same_as(g):
        raise UsageError("frozen coloring is for a different graph")
    return ArrowingInstance(g, TargetPattern.parse(a.red), TargetPattern.parse(a.blue), frozen)


def cmd_arrows(a):
    inst = _load_instance(a)
    outs = []
    if a.emit_cnf:
        export = export_dimacs(inst, a.copy_cap)
        Path(a.emit_cnf).write_bytes(export.text)
        outs.append(a.emit_cnf)
    if a.method == "cnf":
        res = arrows_via_cnf(inst, _budget(a), solver=a.solver)
    else:
        res = arrows_check(inst, _budget(a), threads=a.threads)
    payload = {
        "instance_hash": inst.instance_hash(),
        "verdict": res.verdict,
        "method": res.method,
        "stats": {"nodes": res.stats.nodes, "propagations": res.stats.propagations, "copies": res.stats.copies},
    }
    if res.arrows:
        print("arrows")
        return EXIT_OK, payload, [a.input], outs
    payload["witness"] = _coloring_json(res.coloring)
    path = a.witness_out or str(Path(a.input).with_suffix(".good.json"))
    _write_json(path, payload["witness"])
    outs.append(path)
    print(f"good coloring: {path}")
    return EXIT_NEGATIVE, payload, [a.input], outs


def cmd_ramsey(a):
    red, blue = TargetPattern.parse(a.red), TargetPattern.parse(a.blue)
    res = ramsey_number(red, blue, a.max, _budget(a), threads=a.threads, method=a.method)
    payload = {"red": str(red), "blue": str(blue), "value": res.value,
               "nodes": [s.nodes for s in res.stats]}
    outs = []
    if res.good_coloring is not None:
        payload["witness"] = _coloring_json(res.good_coloring)
        if a.witness_out:
            _write_json(a.witness_out, payload["witness"])
            outs.append(a.witness_out)
    print(res.value)
    return EXIT_OK, payload, [], outs


def cmd_witness(a):
    g = read_graph(a.input)
    a.mode = "min-degree" if a.mode == "fact41" else a.mode
    if a.mode == "min-degree":
        if g.order != a.n + a.d - 1:
            raise UsageError(f"graph has {g.order} vertices, expected n + d - 1 = {a.n + a.d - 1}")
        try:
            w = low_degree_witness(g, a.n, a.d)
        except GraphError as exc:
            print(f"no witness: {exc}")
            return EXIT_NEGATIVE, {"mode": a.mode, "witness": None, "reason": str(exc)}, [a.input], []
        trace = None
    else:
        trace, w = sparse_decomposition(g, a.b, a.n)
        trace = {"s": str(trace.s_param), "halt": trace.halt, "t": trace.t,
                 "steps": [{"j": st.j, "S": st.S, "X_size": st.X_size, "N_size": len(st.neighborhood)}
                           for st in trace.steps]}
    payload = {"mode": a.mode, "trace": trace, "witness": None}
    if w is None:
        print("no witness found")
        return EXIT_NEGATIVE, payload, [a.input], []
    check = verify_witness(g, w)
    payload["witness"] = w.to_json()
    payload["verified"] = check.passed
    outs = []
    if a.out:
        _write_json(a.out, w.to_json())
        outs.append(a.out)
    print("witness verified" if check.passed else f"witness FAILED: {check.color.name} {check.copy}")
    return (EXIT_OK if check.passed else EXIT_NEGATIVE), payload, [a.input], outs


def cmd_verify(a):
    data = json.loads(Path(a.witness).read_text())
    g, w = witness_from_json(data)
    if a.input:
        g_in = read_graph(a.input)
        if not g_in.same_as(g):
            raise UsageError("witness graph differs from --in graph")
    check = verify_witness(g, w)
    payload = {"passed": check.passed, "color": check.color.name.lower() if check.color else None,
               "copy": list(check.copy) if check.copy else None}
    print("pass" if check.passed else f"fail: {payload['color']} copy {payload['copy']}")
    return (EXIT_OK if check.passed else EXIT_NEGATIVE), payload, [a.witness], []


def cmd_extract(a):
    sysm = nst_from_json(json.loads(Path(a.system).read_text()))
    col = _read_coloring(a.coloring, sysm.graph)
    if not col.is_total():
        col = Coloring(sysm.graph, col.red, col.full_mask & ~col.red)
    ex = extract_blue_cycle(sysm, col, a.d)
    payload = {"cycle": list(ex.blue_cycle) if ex.blue_cycle else None,
               "red_cycle": list(ex.red_cycle) if ex.red_cycle else None,
               "length": len(ex.blue_cycle) if ex.blue_cycle else 0,
               "details": ex.details}
    outs = []
    if a.out:
        _write_json(a.out, payload)
        outs.append(a.out)
    if ex.found:
        print(f"blue cycle on {len(ex.blue_cycle)} vertices")
        return EXIT_OK, payload, [a.system, a.coloring], outs
    print("red C_2d found" if ex.red_cycle else f"no blue cycle: {ex.details.get('reason')}")
    return EXIT_NEGATIVE, payload, [a.system, a.coloring], outs


def _ids(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if "-" in part:
            lo, hi = part.split("-")
            out += list(range(int(lo), int(hi) + 1))
        elif part.strip():
            out.append(int(part))
    return out


def cmd_pair(a):
    g = read_graph(a.input)
    ctx = PairContext(g, _ids(a.v1), _ids(a.v2), a.p)
    payload = {"density": str(scaled_density(ctx)), "check": a.check}
    code = EXIT_OK
    if a.check == "regular":
        v = is_regular_pair(ctx, a.eps, mode=a.mode, trials=a.trials, seed=a.seed)
        payload.update(regular=v.regular, deviation=str(v.deviation), mode=v.mode, heuristic=v.mode == "sampled",
                       witness=[list(v.witness[0]), list(v.witness[1])] if v.witness else None)
        code = EXIT_NEGATIVE if v.regular is False else EXIT_OK
        print({True: "regular", False: "not regular", None: "no violation found (sampled, not a proof)"}[v.regular])
    elif a.check == "good":
        v = is_good_pair(ctx, a.eps)
        payload.update(good=v.good, side=v.side, witness=list(v.witness) if v.witness else None)
        code = EXIT_OK if v.good else EXIT_NEGATIVE
        print("good" if v.good else f"not good: W={list(v.witness)} on side {v.side}")
    else:
        print(payload["density"])
    return code, payload, [a.input], []


def _int_range(text: str) -> list[int]:
    """``a..b:step`` or a comma list."""
    if ".." in text:
        span, _, step = text.partition(":")
        lo, hi = span.split("..")
        return list(range(int(lo), int(hi) + 1, int(step or 1)))
    return [int(x) for x in text.split(",")]


def cmd_bounds(a):
    ds = _int_range(a.d)
    grid = []
    for d in ds:
        if a.n:
            ns = _int_range(a.n)
        elif a.kind == "u_graph":
            ns = list(range(14 * d, a.n_max + 1, 14 * d))
        else:
            ns = list(range(64 * d, a.n_max + 1, 64 * d))
        for n in ns:
            for eta in (a.eta.split(",") if a.kind == "cycle_blowup" else [None]):
                grid.append({"n": n, "d": d, **({"eta": eta} if eta else {})})
    rows = bound_table(a.kind, grid)
    table = []
    ok = True
    for r in rows:
        if a.kind == "interval":
            table.append({"n": r.n, "d": r.d, "lower": r.lower, "upper": r.upper, "satisfied": r.certified})
            ok &= r.certified
        else:
            table.append({"params": r.params, "vertices": r.vertices, "edges": r.edges, "bound": r.bound,
                          "satisfied": r.satisfied})
            ok &= r.satisfied
    payload = {"kind": a.kind, "rows": table, "all_satisfied": ok}
    if a.report:
        _write_json(a.report, payload)
    print(f"{len(table)} rows, {'all satisfied' if ok else 'VIOLATIONS'}")
    return (EXIT_OK if ok else EXIT_NEGATIVE), payload, [], [a.report] if a.report else []


def cmd_encode_sat(a):
    inst = _load_instance(a)
    export = export_dimacs(inst, a.copy_cap)
    Path(a.out).write_bytes(export.text)
    payload = {"instance_hash": inst.instance_hash(), "variables": len(export.variables),
               "clauses": len(export.clauses), "edge_of_variable": export.variables}
    print(export.text.splitlines()[0].decode())
    return EXIT_OK, payload, [a.input], [a.out]


# -- parser --------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sizeramsey", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=int(_env("seed", 0)))
    common.add_argument("--threads", type=int, default=int(_env("threads", 1)))
    common.add_argument("--budget", type=int, default=None, help="max search nodes")
    common.add_argument("--copy-cap", type=int, default=int(_env("copy_cap", 10**7)))
    common.add_argument("--log", default=_env("log", "results.jsonl"))
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common])
    c.add_argument("--kind", required=True,
                   choices=["u_graph", "cycle_blowup", "tree_closure", "nst", "ring", "random_clique"])
    c.add_argument("--n", type=int)
    c.add_argument("--d", type=int)
    c.add_argument("--eta", default="0.5")
    c.add_argument("--N", type=int)
    c.add_argument("--t", type=int)
    c.add_argument("--paths", default="", help="comma list of satellite path orders")
    c.add_argument("--r", type=int)
    c.add_argument("--gadget")
    c.add_argument("--p", type=float, default=0.5)
    c.add_argument("--clique", type=int, default=0)
    c.add_argument("--out")
    c.add_argument("--report")
    c.add_argument("--system-out")
    c.set_defaults(func=cmd_construct)

    for name, func in (("arrows", cmd_arrows), ("encode-sat", cmd_encode_sat)):
        c = sub.add_parser(name, parents=[common])
        c.add_argument("--in", dest="input", required=True)
        c.add_argument("--red", required=True)
        c.add_argument("--blue", required=True)
        c.add_argument("--frozen", help="JSON with red_edges/blue_edges pre-colored")
        if name == "arrows":
            c.add_argument("--emit-cnf")
            c.add_argument("--method", choices=["search", "cnf"], default="search")
            c.add_argument("--solver", choices=["dpll", "pysat"], default="dpll")
            c.add_argument("--witness-out")
        else:
            c.add_argument("--out", required=True)
        c.set_defaults(func=func)

    c = sub.add_parser("ramsey", parents=[common])
    c.add_argument("--red", required=True)
    c.add_argument("--blue", required=True)
    c.add_argument("--max", type=int, required=True)
    c.add_argument("--method", choices=["search", "cnf"], default="search")
    c.add_argument("--witness-out")
    c.set_defaults(func=cmd_ramsey)

    c = sub.add_parser("witness", parents=[common])
    c.add_argument("--mode", choices=["min-degree", "decomp", "fact41"], required=True,
                   help="fact41 is an alias of min-degree")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--d", type=int, default=2)
    c.add_argument("--b", type=int, default=1)
    c.add_argument("--out")
    c.set_defaults(func=cmd_witness)

    c = sub.add_parser("verify", parents=[common])
    c.add_argument("--witness", required=True)
    c.add_argument("--in", dest="input")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("extract", parents=[common])
    c.add_argument("--system", required=True)
    c.add_argument("--coloring", required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_extract)

    c = sub.add_parser("pair", parents=[common])
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--v1", required=True)
    c.add_argument("--v2", required=True)
    c.add_argument("--p", default="1")
    c.add_argument("--check", choices=["regular", "good", "density"], default="density")
    c.add_argument("--eps", default="0.05")
    c.add_argument("--mode", choices=["exact", "sampled"], default="exact")
    c.add_argument("--trials", type=int, default=1000)
    c.set_defaults(func=cmd_pair)

    c = sub.add_parser("bounds", parents=[common])
    c.add_argument("--kind", choices=["u_graph", "cycle_blowup", "interval"], required=True)
    c.add_argument("--d", default="2")
    c.add_argument("--n", help="n values: 'a..b:step' or comma list (default: full grid)")
    c.add_argument("--n-max", type=int, default=2000)
    c.add_argument("--eta", default="0.25,0.5,1")
    c.add_argument("--report")
    c.set_defaults(func=cmd_bounds)
    return p


def _input_files(args) -> list[str]:
    return [getattr(args, k) for k in ("input", "system", "coloring", "witness", "gadget", "frozen")
            if getattr(args, k, None)]


def _error(code: str, message: str) -> None:
    print(json.dumps({"error": code, "message": message}), file=sys.stderr)


def dispatch(argv=None) -> tuple[int, dict | None]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_OK if exc.code == 0 else EXIT_USAGE), None
    t0 = time.perf_counter()
    payload = None
    inputs: list = []
    outputs: list = []
    try:
        code, payload, inputs, outputs = args.func(args)
    except (BudgetExhausted, EnumerationOverflow) as exc:
        _error("budget_exhausted", str(exc))
        code = EXIT_BUDGET
    except NotFound as exc:
        _error("not_found", str(exc))
        code = EXIT_NEGATIVE
    except ClaimViolation as exc:
        _error("claim_violation", str(exc))
        code = EXIT_NEGATIVE
    except (UsageError, GraphError, ValueError, KeyError, OSError, TypeError) as exc:
        _error("usage", f"{type(exc).__name__}: {exc}")
        code = EXIT_USAGE
    params = {k: v for k, v in vars(args).items() if k not in ("func", "log")}
    record = {
        "command": args.command,
        "params": params,
        "version": __version__,
        "seed": args.seed,
        "wall_time": round(time.perf_counter() - t0, 6),
        "exit_code": code,
        "result": payload,
        "inputs": {str(f): _hash_file(f) for f in _input_files(args) if Path(f).exists()},
        "outputs": {str(f): _hash_file(f) for f in outputs if f and Path(f).exists()},
    }
    if args.log and args.log != "-":
        with open(args.log, "a") as fh:
            fh.write(json.dumps(record, sort_keys=True, default=str) + "\n")
    return code, record


def main(argv=None) -> int:
    code, _ = dispatch(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
