"""Command-line front end: ``graphdiv <subcommand> [flags]``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import corpus
from .chipfiring import (
    NotEffectiveError,
    burn_trace,
    gonality,
    q_reduce,
    rank,
    riemann_roch_check,
    stable_rank,
)
from .divisor import Divisor, DivisorError
from .formats import (
    FormatError,
    divisor_label,
    format_decomposition,
    parse_decomposition,
    parse_divisor,
    parse_graph,
    scan_to_csv,
    step_to_dot,
    trace_to_dict,
)
from .graph import INFINITY, GraphError, genus, girth, refine
from .series import SeriesError, mu, n_d_table, rho
from .treedecomp import conjecture_scan, find_tree_decomposition

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_BOUND = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: str, message: str, exit_code: int, extra: dict | None = None):
        super().__init__(message)
        self.code = code
        self.exit_code = exit_code
        self.extra = extra or {}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message, EXIT_PARSE)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError("io", str(exc), EXIT_PARSE) from None


def _load_graph(args):
    if args.graph:
        return parse_graph(_read(args.graph), name=Path(args.graph).stem)
    if args.corpus:
        try:
            return corpus.get(args.corpus)
        except KeyError as exc:
            raise CliError("unknown-corpus", exc.args[0], EXIT_VALIDATION) from None
    raise CliError("usage", "one of --corpus or --graph is required", EXIT_PARSE)


def _load_divisor(args, model) -> Divisor:
    if not args.divisor:
        raise CliError("usage", "--divisor is required", EXIT_PARSE)
    return parse_divisor(_read(args.divisor), model)


def _dump(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, default=_jsonable) + "\n"


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    raise TypeError(type(x).__name__)


def _girth_value(g):
    return None if g == INFINITY else g


def _emit(args, text: str):
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
        return ""
    return text


# -- subcommands -----------------------------------------------------------


def cmd_info(args) -> str:
    g = _load_graph(args)
    payload = {
        "name": g.name,
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "totalLength": g.total_length,
        "genus": genus(g),
        "girthCombinatorial": _girth_value(girth(g, "combinatorial")),
        "girthMetric": _girth_value(girth(g, "metric")),
    }
    if args.format == "json":
        return _dump(payload)
    return "".join(f"{k}\t{'inf' if v is None and k.startswith('girth') else v}\n" for k, v in payload.items())


def cmd_rank(args) -> str:
    g = _load_graph(args)
    D = _load_divisor(args, refine(g, args.k))
    cert = rank(D)
    payload = {
        "k": args.k,
        "degree": D.degree,
        "rank": cert.rank,
        "failingSubtraction": None if cert.failing_subtraction is None else cert.failing_subtraction.chips,
    }
    if args.stable:
        st = stable_rank(D)
        payload.update(nextK=st.next_k, nextRank=st.next_rank, stable=st.stable)
    if args.format == "json":
        return _dump(payload)
    line = f"{cert.rank}\n"
    if args.stable:
        line += f"stable\t{str(payload['stable']).lower()}\tk={args.k},{payload['nextK']}\n"
    return line


def cmd_reduce(args) -> str:
    g = _load_graph(args)
    model = refine(g, args.k)
    D = _load_divisor(args, model)
    q = args.q or model.vertices[model.canonical_q]
    tr = q_reduce(D, q)
    payload = {"q": q, "final": tr.final.chips, "steps": len(tr.steps)}
    if args.format == "json":
        return _dump(payload)
    return f"{divisor_label(tr.final)}\n"


def cmd_trace(args) -> str:
    g = _load_graph(args)
    model = refine(g, args.k)
    D = _load_divisor(args, model)
    source = args.source or model.vertices[model.canonical_q]
    tr = burn_trace(D, source)
    if args.format == "dot":
        docs = [step_to_dot(s, i) for i, s in enumerate(tr.steps)]
        if args.out:
            stem = Path(args.out)
            for i, doc in enumerate(docs):
                stem.with_name(f"{stem.stem}_{i:03d}.dot").write_text(doc, encoding="utf-8")
            return ""
        return "".join(docs)
    return _emit(args, _dump(trace_to_dict(tr)))


def cmd_rr(args) -> str:
    g = _load_graph(args)
    D = _load_divisor(args, refine(g, args.k))
    ok = riemann_roch_check(D)
    if args.format == "json":
        return _dump({"holds": ok})
    return f"{str(ok).lower()}\n"


def cmd_gonality(args) -> str:
    g = _load_graph(args)
    res = gonality(
        g,
        args.max_degree,
        k=args.k,
        support=args.support,
        max_multiplicity=args.max_multiplicity,
        strategy=args.strategy,
    )
    if not res.found:
        raise CliError(
            "bound-exceeded",
            f"no positive-rank divisor of degree <= {args.max_degree}",
            EXIT_BOUND,
            {"maxDegree": args.max_degree, "k": args.k},
        )
    payload = {
        "value": res.value,
        "witness": res.witness.chips,
        "certifiedAt": res.certified_at,
        "support": res.support,
    }
    if args.format == "json":
        return _emit(args, _dump(payload))
    return _emit(args, f"{res.value}\t{divisor_label(res.witness)}\n")


def cmd_decompose(args) -> str:
    g = _load_graph(args)
    d = find_tree_decomposition(g, args.n)
    if d is None:
        raise CliError("not-found", f"no tree decomposition rooted on {args.n} vertices", EXIT_VALIDATION)
    return _emit(args, format_decomposition(d))


def cmd_scan(args) -> str:
    if args.decomposition:
        d = parse_decomposition(_read(args.decomposition))
    else:
        g = _load_graph(args)
        d = find_tree_decomposition(g, args.n)
        if d is None:
            raise CliError("not-found", f"no tree decomposition rooted on {args.n} vertices", EXIT_VALIDATION)
    rows = conjecture_scan(d, args.budget, args.samples, args.seed, args.enumerate, k=args.k)
    if args.format == "json":
        out = [
            {
                "lengths": list(r.lengths),
                "girth": _girth_value(r.girth),
                "gonality": r.gonality,
                "witness": divisor_label(r.witness),
                "flag": r.flag,
            }
            for r in rows
        ]
        return _emit(args, _dump(out))
    return _emit(args, scan_to_csv(rows, "\t" if args.format == "tsv" else ","))


def cmd_series(args) -> str:
    table = n_d_table(args.genus, args.degree, args.max_d)
    if args.format == "json":
        return _dump(
            {
                "genus": args.genus,
                "degree": args.degree,
                "geometric": table.geometric,
                "nonIntegral": list(table.non_integral),
                "N": [str(v) for v in table.values],
            }
        )
    return "".join(f"{d}\t{v}\n" for d, v in enumerate(table.values))


def cmd_bn(args) -> str:
    if args.which == "rho":
        value = rho(args.d, args.g, args.r)
    else:
        value = mu(args.d, args.r, args.s)
    if args.format == "json":
        return _dump({args.which: value})
    return f"{value}\n"


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="graphdiv", description="Divisors, rank and gonality on metric graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name, fn, help, formats=("tsv", "json")):
        s = sub.add_parser(name, help=help)
        src = s.add_mutually_exclusive_group()
        src.add_argument("--corpus", help="named graph: k33, wheel4, petersen, heawood, pappus, cycleN, pathN")
        src.add_argument("--graph", help="graph file path")
        s.add_argument("--k", type=int, default=1, help="refinement level")
        s.add_argument("--format", choices=formats, default=formats[0])
        s.add_argument("--out", help="write output to this path")
        s.set_defaults(fn=fn)
        return s

    graph_cmd("info", cmd_info, "genus and girth")
    s = graph_cmd("rank", cmd_rank, "rank of a divisor")
    s.add_argument("--divisor", required=True)
    s.add_argument("--stable", action="store_true", help="also compare with the next refinement")
    s = graph_cmd("reduce", cmd_reduce, "reduced representative")
    s.add_argument("--divisor", required=True)
    s.add_argument("--q", help="base vertex (default: least vertex identifier)")
    s = graph_cmd("trace", cmd_trace, "burn trace as JSON or DOT", formats=("json", "dot"))
    s.add_argument("--divisor", required=True)
    s.add_argument("--source", help="fire source (default: least vertex identifier)")
    s = graph_cmd("rr", cmd_rr, "check the Riemann-Roch identity")
    s.add_argument("--divisor", required=True)
    s = graph_cmd("gonality", cmd_gonality, "least degree of a positive-rank divisor")
    s.add_argument("--max-degree", type=int, required=True)
    s.add_argument("--support", choices=("lattice", "vertices"), default="lattice")
    s.add_argument("--max-multiplicity", type=int)
    s.add_argument("--strategy", choices=("auto", "reduced", "exhaustive"), default="auto")
    s = graph_cmd("decompose", cmd_decompose, "find a tree decomposition")
    s.add_argument("--n", type=int, required=True, help="number of roots")
    s = graph_cmd("scan", cmd_scan, "girth/gonality scan over length assignments", formats=("csv", "tsv", "json"))
    s.add_argument("--decomposition", help="decomposition file (otherwise decomposes --corpus/--graph)")
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--budget", type=int, required=True, help="total edge length")
    s.add_argument("--samples", type=int, default=32)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--enumerate", action="store_true", help="all assignments instead of samples")

    s = sub.add_parser("series", help="secant-plane counts N_0..N_maxd")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--max-d", type=int, required=True)
    s.add_argument("--format", choices=("tsv", "json"), default="tsv")
    s.set_defaults(fn=cmd_series)

    s = sub.add_parser("bn", help="Brill-Noether numbers")
    s.add_argument("which", choices=("rho", "mu"))
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--g", type=int, default=0)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--s", type=int, default=0)
    s.add_argument("--format", choices=("tsv", "json"), default="tsv")
    s.set_defaults(fn=cmd_bn)
    return p


def run(argv: list[str]) -> tuple[int, str]:
    """Execute one command line; returns (exit status, stdout text)."""
    try:
        args = build_parser().parse_args(argv)
        return EXIT_OK, args.fn(args)
    except CliError as exc:
        err = {"code": exc.code, "message": str(exc), **exc.extra}
        return exc.exit_code, _dump({"error": err})
    except FormatError as exc:
        status = EXIT_PARSE if exc.is_parse_error else EXIT_VALIDATION
        return status, _dump({"error": exc.to_dict()})
    except (GraphError, DivisorError, NotEffectiveError, SeriesError, ValueError) as exc:
        code = getattr(exc, "code", "validation")
        return EXIT_VALIDATION, _dump({"error": {"code": code, "message": str(exc)}})


def main(argv: list[str] | None = None) -> int:
    status, text = run(sys.argv[1:] if argv is None else argv)
    (sys.stdout if status == EXIT_OK else sys.stderr).write(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
