"""Command-line front end: ``python3 -m arboricity <command> [options]``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from multiprocessing import Pool
from pathlib import Path

from . import corpus as corpus_mod
from .arborization import arborization_from_json, verify
from .discharging import check_unavoidable, discharge
from .gadgets import WitnessError, gadget_graph, label_config_a, label_config_b
from .graph import Graph, GraphParseError, from_edgelist_text, from_graph6, named_graph
from .intervals import parse_rational
from .lp import LpError
from .oracles import GuardError, brute_force_max_induced_forest
from .reducible import ExtensionError, arborization_of_deletion, extend_config_A, extend_config_B
from .solvers import (
    acyclic_coloring,
    arborization_from_acyclic5,
    fractional_chromatic_number,
    fractional_vertex_arboricity,
    largest_induced_forest,
    vertex_arboricity,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_GUARD = 4
EXIT_FAILURE = 5

EPILOG = """\
exit codes:
  0  success
  1  a verification failed or a counterexample was found
  2  usage error (unknown command or flag, missing graph, value out of range)
  3  input could not be parsed (graph6, edge list, rational, JSON)
  4  a size guard was exceeded (see --limit)
  5  a computation failed its own internal check

graphs: --graph6 STRING, --file PATH (graph6 lines or an "n / u v" edge list,
'-' for stdin), or --named NAME[:SIZE] with NAME one of k4, cube,
dodecahedron, petersen, cycle, path, complete, gadget-a, gadget-b.
"""

SUITES = ("chain", "chif", "acyclic", "unavoidable", "girth5")


class UsageError(Exception):
    pass


class Violation(Exception):
    def __init__(self, report: dict):
        self.report = report
        super().__init__("verification failed")


# ---------------------------------------------------------------------------
# input


def _read_text(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _parse_graph_text(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GraphParseError("empty graph input")
    first = lines[0]
    if first.startswith(">>graph6<<") or not first.split()[0].isdigit():
        return from_graph6(first)
    return from_edgelist_text(text)


def load_graph(args) -> Graph:
    given = [x for x in (args.graph6, args.file, args.named) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --graph6, --file, --named")
    if args.graph6 is not None:
        return from_graph6(args.graph6)
    if args.file is not None:
        return _parse_graph_text(_read_text(args.file))
    name, _, size = args.named.partition(":")
    name = name.lower()
    if name in ("gadget-a", "gadget-b"):
        return gadget_graph(name[-1])[0]
    try:
        return named_graph(name, int(size) if size else None)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _eps(args) -> Fraction:
    try:
        return parse_rational(args.epsilon)
    except (ValueError, ZeroDivisionError) as exc:
        raise GraphParseError(f"bad epsilon {args.epsilon!r}: {exc}") from exc


def _guard(g: Graph, limit: int | None) -> None:
    if limit is not None and g.n > limit:
        raise GuardError(f"graph has {g.n} vertices, above --limit {limit}")


# ---------------------------------------------------------------------------
# commands


def cmd_fva(args, g):
    _guard(g, args.limit)
    return fractional_vertex_arboricity(g).to_json(), None


def cmd_va(args, g):
    _guard(g, args.limit)
    return vertex_arboricity(g).to_json(), None


def cmd_mif(args, g):
    _guard(g, args.limit)
    out = largest_induced_forest(g).to_json()
    if args.brute_force:
        out["certificate"]["brute_force"] = brute_force_max_induced_forest(g, limit=args.limit or 20)
    return out, None


def cmd_chif(args, g):
    _guard(g, args.limit)
    return fractional_chromatic_number(g).to_json(), None


def cmd_acyclic(args, g):
    _guard(g, args.limit)
    col = acyclic_coloring(g, args.colors)
    out = {"colors": args.colors, "exists": col is not None, "coloring": col and {str(v): c for v, c in col.items()}}
    if col is not None and args.colors <= 5:
        phi = arborization_from_acyclic5(g, col)
        rep = verify(g, phi, k=Fraction(5, 2), exact=True)
        out["arborization"] = {str(v): phi[v].to_json() for v in sorted(phi)}
        out["verify"] = rep.to_json()
        if not rep.ok:
            raise Violation(out)
    return out, None


def cmd_discharge(args, g):
    rep = check_unavoidable(g)
    out = rep.to_json()
    out["ledger"] = discharge(g).to_json()
    if not rep.ok:
        raise Violation(out)
    return out, None


def cmd_verify(args, g):
    if args.phi is None:
        raise UsageError("verify needs --phi FILE (JSON {vertex: [[a, b], ...]})")
    try:
        phi = arborization_from_json(json.loads(_read_text(args.phi)))
    except (ValueError, TypeError, KeyError) as exc:
        raise GraphParseError(f"bad arborization JSON: {exc}") from exc
    k = parse_rational(args.k) if args.k is not None else None
    rep = verify(g, phi, k=k, exact=args.exact)
    out = rep.to_json()
    if not rep.ok:
        raise Violation(out)
    return out, None


def _first_vertex(g: Graph, pred):
    for v in range(g.n):
        try:
            return pred(v)
        except WitnessError:
            continue
    raise UsageError("no vertex of the graph matches the configuration")


def cmd_extend_a(args, g):
    eps = _eps(args)
    if args.vertex is not None:
        wit = label_config_a(g, args.vertex)
    else:
        wit = _first_vertex(g, lambda v: _checked(g, label_config_a(g, v)))
    phi, k0 = arborization_of_deletion(g, wit.roles["u"], eps)
    res = extend_config_A(g, wit, phi, eps)
    out = res.to_json()
    out["witness"] = wit.to_json()
    out["input_k"] = str(k0)
    return out, f"extended to a verified fractional {res.k}-arborization"


def cmd_extend_b(args, g):
    eps = _eps(args)
    if args.vertex is not None:
        nb = [args.v1, args.v2]
        if None in nb:
            raise UsageError("extend-b with --vertex also needs --v1 and --v2")
        wit = label_config_b(g, args.vertex, *nb)
    else:

        def pick(v):
            if g.degree(v) != 3:
                raise WitnessError("degree")
            light = sorted(u for u in g.adj[v] if g.is_light(u))
            for i, a in enumerate(light):
                for b in light[i + 1:]:
                    try:
                        return _checked(g, label_config_b(g, v, a, b))
                    except WitnessError:
                        pass
            raise WitnessError("no pair")

        wit = _first_vertex(g, pick)
    phi, k0 = arborization_of_deletion(g, [wit.roles["v"]], eps)
    res = extend_config_B(g, wit, phi, eps)
    out = res.to_json()
    out["witness"] = wit.to_json()
    out["input_k"] = str(k0)
    return out, f"extended to a verified fractional {res.k}-arborization"


def _checked(g, wit):
    if not wit.check(g):
        raise WitnessError("pattern mismatch")
    return wit


# corpus suites; workers must be top-level for pickling


def _chain_item(g: Graph) -> dict:
    a = largest_induced_forest(g).value
    f = fractional_vertex_arboricity(g).value
    va = vertex_arboricity(g).value
    return {"n": g.n, "a": str(a), "fva": str(f), "va": str(va), "ok": Fraction(g.n) / a <= f <= va}


def _chif_item(g: Graph) -> dict:
    f = fractional_vertex_arboricity(g).value
    c = fractional_chromatic_number(g).value
    return {"n": g.n, "fva": str(f), "chi_f": str(c), "ok": c <= 2 * f}


def _acyclic_item(g: Graph) -> dict:
    col = acyclic_coloring(g, 5)
    if col is None:
        return {"n": g.n, "skipped": True, "ok": True}
    rep = verify(g, arborization_from_acyclic5(g, col), k=Fraction(5, 2), exact=True)
    return {"n": g.n, "ok": rep.ok}


def _unavoidable_item(g: Graph) -> dict:
    rep = check_unavoidable(g)
    return {"n": g.n, "witnesses": len(rep.witnesses), "ok": rep.ok and rep.ledger.conserved()}


def _girth5_item(g: Graph) -> dict:
    f = fractional_vertex_arboricity(g).value
    return {"n": g.n, "fva": str(f), "ok": f <= 2 - Fraction(1, 324)}


_SUITE_FN = {
    "chain": _chain_item,
    "chif": _chif_item,
    "acyclic": _acyclic_item,
    "unavoidable": _unavoidable_item,
    "girth5": _girth5_item,
}


def _suite_graphs(args) -> list[tuple[str, Graph]]:
    if args.file is not None:
        return [(f"line{i + 1}", g) for i, g in enumerate(corpus_mod.read_graph6_stream(_read_text(args.file).splitlines()))]
    if args.suite == "girth5":
        return list(corpus_mod.girth5_fixtures().items())
    max_n = args.max_n
    if args.suite == "unavoidable":
        graphs = corpus_mod.connected_graphs(min(max_n, 9), sparse_only=True)
    else:
        if max_n > 8:
            raise GuardError("the bundled exhaustive corpus stops at 8 vertices")
        graphs = corpus_mod.connected_graphs(max_n)
    items = [(f"corpus{i}", g) for i, g in enumerate(graphs)]
    if args.random:
        if args.suite == "unavoidable":
            extra = corpus_mod.random_sparse_graphs(args.seed, args.random)
        else:
            extra = corpus_mod.random_graphs(args.seed, args.random)
        items += [(f"random{i}", g) for i, g in enumerate(extra)]
    return items


def cmd_corpus(args, _g):
    items = _suite_graphs(args)
    fn = _SUITE_FN[args.suite]
    graphs = [g for _, g in items]
    if args.workers > 1:
        with Pool(args.workers) as pool:
            results = pool.map(fn, graphs, chunksize=16)
    else:
        results = [fn(g) for g in graphs]
    failures = [{"id": name, **res} for (name, _), res in zip(items, results) if not res["ok"]]
    out = {"suite": args.suite, "graphs": len(items), "failures": failures, "ok": not failures}
    if args.details:
        out["results"] = [{"id": name, **res} for (name, _), res in zip(items, results)]
    summary = f"{args.suite}: {len(items) - len(failures)}/{len(items)} graphs pass"
    if failures:
        raise Violation(out)
    return out, summary


COMMANDS = {
    "fva": cmd_fva,
    "va": cmd_va,
    "mif": cmd_mif,
    "chif": cmd_chif,
    "acyclic": cmd_acyclic,
    "discharge": cmd_discharge,
    "verify": cmd_verify,
    "extend-a": cmd_extend_a,
    "extend-b": cmd_extend_b,
    "corpus": cmd_corpus,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="arboricity",
        description="Exact fractional vertex-arboricity toolkit.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    ap.add_argument("command", choices=sorted(COMMANDS))
    src = ap.add_argument_group("graph input")
    src.add_argument("--graph6")
    src.add_argument("--file", help="graph file, '-' for stdin; for corpus, a graph6 stream")
    src.add_argument("--named", metavar="NAME[:SIZE]")
    ap.add_argument("--epsilon", default="1/324", help="exact rational (default 1/324)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--limit", type=int, default=None, help="refuse graphs with more vertices")
    ap.add_argument("--suite", choices=SUITES, default="chain")
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--random", type=int, default=0, metavar="COUNT", help="extra seeded random graphs for corpus suites")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--details", action="store_true", help="include per-graph corpus results")
    ap.add_argument("--colors", type=int, default=5, help="colour count for acyclic")
    ap.add_argument("--brute-force", action="store_true", help="mif: also run exhaustive subset scan")
    ap.add_argument("--phi", help="verify: JSON arborization file")
    ap.add_argument("--k", help="verify: ambient interval [0, k)")
    ap.add_argument("--exact", action="store_true", help="verify: require measure exactly 1")
    ap.add_argument("--vertex", type=int)
    ap.add_argument("--v1", type=int)
    ap.add_argument("--v2", type=int)
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    code = EXIT_OK
    summary = None
    try:
        g = None if args.command == "corpus" else load_graph(args)
        out, summary = COMMANDS[args.command](args, g)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphParseError, OSError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GuardError as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except Violation as exc:
        out, code = exc.report, EXIT_VIOLATION
        summary = "verification failed"
    except (WitnessError, ValueError) as exc:
        # WitnessError is a ValueError too; both mean a bad argument
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LpError, ExtensionError, AssertionError) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    json.dump(out, sys.stdout)
    sys.stdout.write("\n")
    if summary is None and isinstance(out, dict) and "value" in out:
        summary = f"{out.get('invariant', args.command)} = {out['value']}"
    if summary:
        print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
