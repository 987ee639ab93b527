"""Text formats for graphs, divisors, decompositions, traces and scan reports."""

from __future__ import annotations

import csv
import io
import json

from .chipfiring import ReductionTrace
from .divisor import Divisor, DivisorError
from .graph import DisconnectedGraphError, GraphError, MetricGraph, Model
from .treedecomp import DecompositionError, ScanRow, TreeDecomposition


class FormatError(ValueError):
    """A located input error.  ``code`` distinguishes the failure kind."""

    def __init__(self, code: str, message: str, line: int | None = None, column: int | None = None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.code = code
        self.line = line
        self.column = column

    @property
    def is_parse_error(self) -> bool:
        return self.code == "malformed"

    def to_dict(self) -> dict:
        out = {"code": self.code, "message": str(self)}
        if self.line is not None:
            out["line"] = self.line
            out["column"] = self.column
        return out


def _tokens(text: str):
    """Yield (line number, [(column, token), ...]) for non-blank lines."""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = []
        col = 0
        for part in line.split():
            col = line.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        if toks:
            yield lineno, toks


def _graph_from_lines(lines, name=None) -> MetricGraph:
    order: dict[str, None] = {}
    edges = []
    for lineno, toks in lines:
        kw = toks[0][1]
        if kw == "vertex":
            if len(toks) != 2:
                raise FormatError("malformed", "expected 'vertex <id>'", lineno, toks[0][0])
            order.setdefault(toks[1][1])
        elif kw == "edge":
            if len(toks) != 4:
                raise FormatError("malformed", "expected 'edge <a> <b> <length>'", lineno, toks[0][0])
            (_, a), (_, b), (lcol, ltok) = toks[1:]
            try:
                length = int(ltok)
            except ValueError:
                raise FormatError("malformed", f"length {ltok!r} is not an integer", lineno, lcol) from None
            if a == b:
                raise FormatError("loop", f"loop edge at {a!r}", lineno, toks[1][0])
            if length < 1:
                raise FormatError("nonpositive-length", f"edge length {length} must be positive", lineno, lcol)
            order.setdefault(a)
            order.setdefault(b)
            edges.append((a, b, length))
        else:
            raise FormatError("malformed", f"unknown keyword {kw!r}", lineno, toks[0][0])
    try:
        return MetricGraph.from_edges(edges, name=name, vertices=order)
    except DisconnectedGraphError as exc:
        raise FormatError("disconnected", str(exc)) from None
    except GraphError as exc:
        raise FormatError("invalid-graph", str(exc)) from None


def parse_graph(text: str, name: str | None = None) -> MetricGraph:
    return _graph_from_lines(_tokens(text), name)


def format_graph(graph: MetricGraph) -> str:
    out = []
    if graph.name:
        out.append(f"# {graph.name}")
    out += [f"vertex {v}" for v in graph.vertices]
    out += [f"edge {e.a} {e.b} {e.length}" for e in graph.edges]
    return "\n".join(out) + "\n"


def parse_divisor(text: str, model: Model) -> Divisor:
    chips: dict[str, int] = {}
    for lineno, toks in _tokens(text):
        if toks[0][1] != "chip" or len(toks) != 3:
            raise FormatError("malformed", "expected 'chip <vertex> <integer>'", lineno, toks[0][0])
        (vcol, v), (ccol, c) = toks[1:]
        try:
            count = int(c)
        except ValueError:
            raise FormatError("malformed", f"chip count {c!r} is not an integer", lineno, ccol) from None
        if v not in model.index:
            raise FormatError("unknown-vertex", f"vertex {v!r} is not in the model", lineno, vcol)
        chips[v] = chips.get(v, 0) + count
    return Divisor.from_chips(model, chips)


def format_divisor(divisor: Divisor) -> str:
    return "".join(f"chip {v} {c}\n" for v, c in divisor.chips.items())


def divisor_label(divisor: Divisor | None) -> str:
    if divisor is None:
        return ""
    terms = []
    for v, c in divisor.chips.items():
        terms.append(v if c == 1 else f"{c}*{v}")
    return "+".join(terms) or "0"


def parse_decomposition(text: str) -> TreeDecomposition:
    """``roots <id> ...`` then three blocks, each opened by a ``tree`` line."""
    roots = None
    blocks: list[list] = []
    for lineno, toks in _tokens(text):
        kw = toks[0][1]
        if kw == "roots":
            if roots is not None:
                raise FormatError("malformed", "duplicate roots line", lineno, toks[0][0])
            roots = tuple(t for _, t in toks[1:])
        elif kw == "tree":
            if len(toks) != 1:
                raise FormatError("malformed", "expected a bare 'tree' line", lineno, toks[1][0])
            blocks.append([])
        else:
            if not blocks:
                raise FormatError("malformed", "graph line before the first 'tree' line", lineno, toks[0][0])
            blocks[-1].append((lineno, toks))
    if roots is None:
        raise FormatError("malformed", "missing roots line")
    if len(blocks) != 3:
        raise FormatError("malformed", f"expected 3 tree blocks, found {len(blocks)}")
    trees = tuple(_graph_from_lines(b, f"T{i}") for i, b in enumerate(blocks, 1))
    try:
        return TreeDecomposition(roots, trees)
    except DecompositionError as exc:
        raise FormatError("invalid-decomposition", str(exc)) from None


def format_decomposition(decomp: TreeDecomposition) -> str:
    parts = ["roots " + " ".join(decomp.roots) + "\n"]
    for t in decomp.trees:
        body = "".join(f"edge {e.a} {e.b} {e.length}\n" for e in t.edges)
        extra = "".join(f"vertex {v}\n" for v in t.vertices)
        parts.append("tree\n" + extra + body)
    return "".join(parts)


def _burn_order(step) -> list[str]:
    if step.burn is None:
        return []
    if step.burn.rounds:
        return [step.burn.source] + [v for rnd in step.burn.rounds for v, _, _ in rnd]
    return sorted(step.burn.burnt, key=step.divisor.model.index.__getitem__)


def trace_to_dict(trace: ReductionTrace) -> dict:
    steps = []
    for step in trace.steps:
        steps.append(
            {
                "burntOrder": _burn_order(step),
                "fired": sorted(step.fired, key=step.divisor.model.index.__getitem__),
                "times": step.times,
                "divisor": step.divisor.chips,
            }
        )
    return {
        "source": trace.q,
        "start": trace.start.chips,
        "final": trace.final.chips,
        "allBurnt": trace.final_burn.burns_everything,
        "steps": steps,
    }


def trace_to_json(trace: ReductionTrace) -> str:
    return json.dumps(trace_to_dict(trace), indent=2) + "\n"


def step_to_dot(step, index: int) -> str:
    """One DOT graph: chip counts as labels, burnt vertices shaded."""
    model = step.divisor.model
    burnt = step.burn.burnt if step.burn is not None else frozenset()
    lines = [f"graph step{index} {{", "  node [shape=circle, style=filled];"]
    for v in model.vertices:
        c = step.divisor[v]
        colour = "orange" if v in burnt else "white"
        label = f"{c}" if c else ""
        lines.append(f'  "{v}" [label="{label}", fillcolor={colour}];')
    for a, b in model.unit_edges:
        lines.append(f'  "{model.vertices[a]}" -- "{model.vertices[b]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


SCAN_HEADER = ["lengths", "girth", "gonality", "witness", "flag"]


def scan_to_csv(rows: list[ScanRow], delimiter: str = ",") -> str:
    buf = io.StringIO()
    w = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    w.writerow(SCAN_HEADER)
    for r in rows:
        gon = "" if r.gonality is None else r.gonality
        w.writerow([" ".join(map(str, r.lengths)), r.girth, gon, divisor_label(r.witness), r.flag])
    return buf.getvalue()


__all__ = [
    "DivisorError",
    "FormatError",
    "divisor_label",
    "format_decomposition",
    "format_divisor",
    "format_graph",
    "parse_decomposition",
    "parse_divisor",
    "parse_graph",
    "scan_to_csv",
    "step_to_dot",
    "trace_to_dict",
    "trace_to_json",
]
