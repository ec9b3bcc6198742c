"""Command-line front end: ``groups``, ``verify`` and ``random``.

Exit codes: 0 success, 2 bad input, 3 disconnected graph, 4 a verified
identity failed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .errors import GraphJacError, NotConnected, TheoremViolation
from .graph import Graph, Modulus, graph_from_dict
from .report import NEEDS_MODULUS, SUITES, dumps, groups_report, run_suite

EXIT_INPUT, EXIT_DISCONNECTED, EXIT_VIOLATION = 2, 3, 4
MAX_V = 8

DISPLAY = {
    "J": "J(Γ)",
    "Cl0": "Cl⁰(Γ)",
    "P": "P(Γ)",
    "Clhat0": "Ĉl⁰(Γ)",
    "J_m": "J_m(Γ)",
    "Cl0_m": "Cl⁰_m(Γ)",
    "P_m": "P_m(Γ)",
    "Pic_m": "Pic_m(|Γ|)",
}


class InputError(Exception):
    pass


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _parse_graph(data) -> tuple:
    try:
        return graph_from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad graph: {exc}") from exc


def _parse_modulus(g: Graph, text):
    if text is None:
        return None
    pts = [p.strip() for p in text.split(",") if p.strip()]
    try:
        return Modulus(g, pts)
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad modulus: {exc}") from exc


def _graph_and_modulus(args):
    g, m = _parse_graph(_load_json(args.input))
    if args.modulus is not None:
        m = _parse_modulus(g, args.modulus)
    return g, m


def _emit(report: dict, as_json: bool, lines):
    if as_json:
        sys.stdout.write(dumps(report))
    else:
        for line in lines:
            print(line)


def cmd_groups(args) -> int:
    g, m = _graph_and_modulus(args)
    groups = groups_report(g, m)
    report = {"command": "groups", "input": args.input, "modulus": list(m.points) if m else None, "groups": groups}
    _emit(report, args.json, [f"{DISPLAY[x['name']]} ≅ {x['string']}" for x in groups])
    return 0


def _load_morphism(args):
    from .morphisms import morphism_from_dict

    data = _load_json(args.input)
    if "source" not in data or "target" not in data:
        raise InputError("functoriality input needs 'source' and 'target' graphs")
    src, m = _parse_graph(data["source"])
    tgt, mt = _parse_graph(data["target"])
    mdata = _load_json(args.morphism) if args.morphism else data.get("map")
    if mdata is None:
        raise InputError("no morphism given")
    try:
        f = morphism_from_dict(src, tgt, mdata)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad morphism: {exc}") from exc
    return f, m, mt


def _verdict_lines(verdicts):
    for v in verdicts:
        detail = "" if v["detail"] is None else f"  [{_short(v['detail'])}]"
        yield f"{'PASS' if v['passed'] else 'FAIL'}  {v['name']}{detail}"


def _short(x) -> str:
    return json.dumps(x, ensure_ascii=False, sort_keys=True) if not isinstance(x, str) else x


def cmd_verify(args) -> int:
    if args.suite == "functoriality":
        f, m, mt = _load_morphism(args)
        verdicts = run_suite("functoriality", f.source, m, morphism=f, target_modulus=mt)
        mod = list(m.points) if m else None
    else:
        g, m = _graph_and_modulus(args)
        if args.suite in NEEDS_MODULUS and m is None:
            raise InputError(f"suite {args.suite!r} needs --modulus or a 'modulus' field")
        verdicts = run_suite(args.suite, g, m)
        mod = list(m.points) if m else None
    report = {"command": "verify", "suite": args.suite, "input": args.input, "modulus": mod, "verdicts": verdicts}
    lines = list(_verdict_lines(verdicts)) + [f"suite {args.suite}: pass ({len(verdicts)} checks)"]
    _emit(report, args.json, lines)
    return 0


def _random_one(suite: str, seed: int, index: int, max_v: int):
    from .instances import random_cover_instance, random_instance

    if suite == "functoriality":
        f, m, mt = random_cover_instance(seed, index, max_v=min(max_v, 4))
        instance = {"source": dict(f.source.to_dict(), modulus=list(m.points)),
                    "target": dict(f.target.to_dict(), modulus=list(mt.points)), "map": f.to_dict()}
        return instance, (lambda: run_suite(suite, f.source, m, morphism=f, target_modulus=mt))
    g, m = random_instance(seed, index, max_v=max_v)
    instance = dict(g.to_dict(), modulus=list(m.points))
    if suite in ("sheaf", "sheaf-m") and g.isolated_vertices():
        return instance, (lambda: [])
    return instance, (lambda: run_suite(suite, g, m))


def cmd_random(args) -> int:
    if args.max_v > MAX_V or args.max_v < 1:
        raise InputError(f"--max-v must be between 1 and {MAX_V}")
    if args.count < 0:
        raise InputError("--count must be nonnegative")
    summaries = []
    epsilons = set()
    start = time.perf_counter()
    for index in range(args.count):
        instance, run = _random_one(args.suite, args.seed, index, args.max_v)
        try:
            verdicts = run()
        except TheoremViolation as exc:
            path = Path(args.dump_dir) / f"failing_{args.suite}_{args.seed}_{index}.json"
            path.write_text(dumps({"suite": args.suite, "seed": args.seed, "index": index, **instance,
                                   "error": str(exc), "witness": _jsonable(exc.witness)}))
            print(f"violation on instance {index}: {exc}; instance written to {path}", file=sys.stderr)
            return EXIT_VIOLATION
        for v in verdicts:
            if isinstance(v.get("detail"), dict) and "epsilon" in v["detail"]:
                epsilons.add(v["detail"]["epsilon"])
        summaries.append({"index": index, "instance": instance, "checks": len(verdicts)})
    report = {
        "command": "random",
        "suite": args.suite,
        "seed": args.seed,
        "max_v": args.max_v,
        "count": args.count,
        "passed": len(summaries),
        "instances": summaries,
    }
    if epsilons:
        report["epsilon"] = sorted(epsilons)
    if args.timing:
        report["seconds"] = round(time.perf_counter() - start, 3)
    lines = [f"{args.suite}: {len(summaries)}/{args.count} pass"]
    if epsilons:
        lines.append(f"global sign ε: {sorted(epsilons)}")
    _emit(report, args.json, lines)
    return 0


def _jsonable(x):
    from .report import _jsonable as conv

    return conv(x)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphjac", description="Jacobians, generalized Jacobians and Picard groups of graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    pg = sub.add_parser("groups", help="print the class groups of a graph")
    pg.add_argument("input")
    pg.add_argument("--modulus", help="comma-separated modulus points, repetition allowed")
    pg.add_argument("--json", action="store_true")
    pg.set_defaults(func=cmd_groups)

    pv = sub.add_parser("verify", help="run a verification suite on one input")
    pv.add_argument("input")
    pv.add_argument("morphism", nargs="?", help="morphism JSON (functoriality suite)")
    pv.add_argument("--suite", required=True, choices=SUITES)
    pv.add_argument("--modulus")
    pv.add_argument("--json", action="store_true")
    pv.set_defaults(func=cmd_verify)

    pr = sub.add_parser("random", help="run a suite on seeded random instances")
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--max-v", type=int, default=6)
    pr.add_argument("--count", type=int, default=10)
    pr.add_argument("--suite", required=True, choices=SUITES)
    pr.add_argument("--dump-dir", default=".", help="where a failing instance is written")
    pr.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")
    pr.add_argument("--json", action="store_true")
    pr.set_defaults(func=cmd_random)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotConnected as exc:
        print(f"error: graph is not connected: {exc}", file=sys.stderr)
        return EXIT_DISCONNECTED
    except TheoremViolation as exc:
        print(f"violation: {exc}", file=sys.stderr)
        print(json.dumps({"witness": _jsonable(exc.witness)}, ensure_ascii=False), file=sys.stderr)
        return EXIT_VIOLATION
    except GraphJacError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
