"""Command-line front end.

Exit status: 0 when every verdict is positive (or the command has no
verdict), 1 when a verdict is negative, 2 on bad input or a refused budget.
"""

from __future__ import annotations

import argparse
import re
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Iterable, Optional

from . import catalog as cat
from .canon import canonical_form
from .census import MAX_CENSUS_ORDER, census_row, enumerate_census, theorem_census
from .classifier import EXCEPTIONAL, OUTCOMES, Z3_CONNECTED, classify
from .flows import BudgetExceeded, has_nowhere_zero_flow, is_group_connected
from .graph import GraphError, MultiGraph, build_graph
from .graph6 import decode_graph6, encode_graph6, to_dot
from .reduction import MAX_SEARCH_ORDER, ReductionError, ReductionTrace, z3_contraction

# The flow kernel's cost grows like k^(n-1), so the edge budget only guards
# against runaway inputs; 28 = C(8, 2) lets every simple graph up to order 8 through.
DEFAULT_CLI_MAX_EDGES = 28
DEFAULT_CLI_MAX_N = 8

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    pass


# ------------------------------------------------------------------- input


def _looks_like_graph6(s: str) -> bool:
    return bool(s) and all(63 <= ord(c) <= 126 for c in s.removeprefix(">>graph6<<"))


def read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    p = Path(source)
    if p.is_file():
        try:
            return p.read_text()
        except (OSError, UnicodeDecodeError) as exc:
            raise CliError(f"cannot read {source}: {exc}") from exc
    if _looks_like_graph6(source):
        return source + "\n"
    raise CliError(f"input {source!r} is neither a readable file nor a graph6 string")


def read_graphs(source: str) -> list[MultiGraph]:
    out = []
    for lineno, line in enumerate(read_text(source).splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            out.append(decode_graph6(line))
        except GraphError as exc:
            raise CliError(f"line {lineno}: malformed graph6 {line!r}: {exc}") from exc
    if not out:
        raise CliError("no graphs in input")
    return out


_DOT_NODE = re.compile(r'^\s*"?([\w.]+)"?\s*(\[.*\])?\s*;?\s*$')


def parse_dot(text: str) -> MultiGraph:
    """Undirected DOT with ``a -- b`` edges; node names are kept in first-seen order."""
    body = text[text.find("{") + 1 : text.rfind("}")] if "{" in text else ""
    if not body.strip() and "{" not in text:
        raise CliError("not a DOT graph")
    names: dict[str, int] = {}
    edges = []
    for stmt in re.split(r"[;\n]", body):
        stmt = stmt.strip()
        if not stmt or "=" in stmt.split("[")[0]:
            continue
        if "--" in stmt:
            chain = [p.strip().strip('"') for p in stmt.split("[")[0].split("--")]
            for a, b in zip(chain, chain[1:]):
                for x in (a, b):
                    names.setdefault(x, len(names))
                edges.append((names[a], names[b]))
        elif _DOT_NODE.match(stmt) and not stmt.startswith(("node", "edge", "graph")):
            names.setdefault(_DOT_NODE.match(stmt).group(1), len(names))  # type: ignore[union-attr]
    try:
        return build_graph(len(names), edges)
    except GraphError as exc:
        raise CliError(f"bad DOT graph: {exc}") from exc


# ----------------------------------------------------------------- output


class Output:
    def __init__(self, path: Optional[str]):
        self.path = path
        self.lines: list[str] = []

    def emit(self, line: str) -> None:
        self.lines.append(line)

    def flush(self) -> None:
        text = "".join(line if line.endswith("\n") else line + "\n" for line in self.lines)
        if self.path and self.path != "-":
            Path(self.path).write_text(text)
        else:
            sys.stdout.write(text)


# --------------------------------------------------------------- commands


def _decide_common(args, predicate, yes: str, no: str) -> int:
    out = Output(args.out)
    negative = False
    for G in read_graphs(args.input):
        ok = predicate(G)
        negative |= not ok
        out.emit(f"{encode_graph6(G)}\t{yes if ok else no}\tgroup=Z{args.group}")
    out.flush()
    return EXIT_NEGATIVE if negative else EXIT_OK


def cmd_decide(args) -> int:
    return _decide_common(
        args,
        lambda G: is_group_connected(G, args.group, max_edges=args.max_edges),
        f"Z{args.group}-connected",
        f"not-Z{args.group}-connected",
    )


def cmd_nzflow(args) -> int:
    return _decide_common(
        args,
        lambda G: has_nowhere_zero_flow(G, args.group, max_edges=args.max_edges),
        "nowhere-zero-flow",
        "no-nowhere-zero-flow",
    )


def cmd_classify(args) -> int:
    out = Output(args.out)
    verdicts = []
    for G in read_graphs(args.input):
        verdicts.append(classify(G, max_n=args.max_n, max_edges=args.max_edges))
    for v in verdicts:
        out.emit(v.to_json() if args.format == "jsonl" else v.to_tsv())
    out.flush()
    return EXIT_OK


def cmd_reduce(args) -> int:
    out = Output(args.out)
    for G in read_graphs(args.input):
        trace = z3_contraction(G, max_edges=args.max_edges)
        if args.format == "jsonl":
            out.emit(trace.to_jsonl().rstrip("\n"))
        elif args.format == "dot":
            out.emit(to_dot(trace.terminal, "terminal").rstrip("\n"))
        else:
            out.emit(f"# {encode_graph6(G)} -> terminal n={trace.terminal.n} m={trace.terminal.m}")
            if trace.steps:
                out.emit(trace.to_tsv().rstrip("\n"))
    out.flush()
    return EXIT_OK


def _census_line(args: tuple[str, int]) -> tuple[bytes, str, str, bool]:
    g6, max_edges = args
    G = decode_graph6(g6)
    oracle = is_group_connected(G, 3, max_edges=max_edges)
    v = classify(G, max_edges=max_edges)
    agree = (v.outcome == Z3_CONNECTED) == oracle
    label = v.outcome if v.name is None else f"{v.outcome}:{v.name}"
    row = f"{g6}\t{G.n}\t{G.m}\t{'Z3-connected' if oracle else 'not-Z3-connected'}\t{label}\t{'agree' if agree else 'DISAGREE'}"
    return canonical_form(G), row, v.outcome, agree


def census_report(min_n: int, max_n: int, *, workers: int = 1, max_edges: int = DEFAULT_CLI_MAX_EDGES) -> tuple[list[str], bool]:
    """Rows for every class of the theorem census plus a summary row; also whether all rows agree."""
    graphs = theorem_census(min_n, max_n)
    jobs = [(encode_graph6(G), max_edges) for G in graphs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_census_line, jobs, chunksize=8))
    else:
        results = [_census_line(j) for j in jobs]
    results.sort(key=lambda r: (len(r[0]), r[0]))
    counts = Counter(r[2] for r in results)
    agree = sum(r[3] for r in results)
    rows = ["graph6\tn\tm\toracle\toutcome\tagreement"]
    rows += [r[1] for r in results]
    rows.append(
        f"#summary\tclasses={len(results)}\t"
        + "\t".join(f"{o}={counts.get(o, 0)}" for o in OUTCOMES)
        + f"\texceptions={counts.get(EXCEPTIONAL, 0)}\tagree={agree}/{len(results)}"
    )
    return rows, agree == len(results)


def cmd_census(args) -> int:
    if not 1 <= args.min_n <= args.max_n:
        raise CliError(f"bad order range {args.min_n}..{args.max_n}")
    out = Output(args.out)
    if args.raw:
        if args.max_n > MAX_CENSUS_ORDER:
            raise BudgetExceeded(f"census limited to n <= {MAX_CENSUS_ORDER}")
        for n in range(args.min_n, args.max_n + 1):
            for G in enumerate_census(n, alpha_le_2=not args.all, min_edge_connectivity=args.min_conn):
                out.emit(census_row(G))
        out.flush()
        return EXIT_OK
    if args.max_n > args.search_budget:
        raise BudgetExceeded(f"classified census limited to n <= {args.search_budget} (raise --search-budget)")
    rows, ok = census_report(args.min_n, args.max_n, workers=args.workers, max_edges=args.max_edges)
    for r in rows:
        out.emit(r)
    out.flush()
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_catalog(args) -> int:
    out = Output(args.out)
    if args.action == "verify":
        report = cat.verify_catalog(cat.load_catalog(args.catalog or cat.CATALOG_PATH))
        out.emit(report.to_tsv().rstrip("\n"))
        out.flush()
        return EXIT_OK if report.ok else EXIT_NEGATIVE
    if args.action == "derive":
        derived = cat.derive_exception_set(args.min_n, args.max_n)
        stored = {canonical_form(e.graph): e.name for e in cat.load_catalog(args.catalog or cat.CATALOG_PATH)}
        for key in sorted(derived, key=lambda k: (len(k), k)):
            out.emit(f"{encode_graph6(derived[key])}\t{stored.get(key, 'UNMATCHED')}")
        missing = sorted(set(stored.values()) - {stored[k] for k in derived if k in stored})
        for name in missing:
            out.emit(f"#missing\t{name}")
        out.emit(f"#summary\tderived={len(derived)}\tstored={len(stored)}\tequal={set(derived) == set(stored)}")
        out.flush()
        return EXIT_OK if set(derived) == set(stored) else EXIT_NEGATIVE
    if args.action == "families":
        for fam in cat.load_families():
            if not fam.populated:
                out.emit(f"{fam.name}\tfigure data unavailable")
                continue
            H = cat.gen_family_instance(fam, max(args.m, fam.floor))
            out.emit(f"{fam.name}\tm={max(args.m, fam.floor)}\tn={H.n}\tedges={H.m}\t"
                     f"Z3-connected={is_group_connected(H, 3)}\tnz3={has_nowhere_zero_flow(H, 3)}")
        out.flush()
        return EXIT_OK
    # list
    for e in cat.load_catalog(args.catalog or cat.CATALOG_PATH):
        out.emit(e.to_row())
    out.flush()
    return EXIT_OK


def cmd_convert(args) -> int:
    text = read_text(args.input)
    out = Output(args.out)
    if text.lstrip().lower().startswith(("graph", "strict")):
        G = parse_dot(text)
        if not G.is_simple:
            raise CliError("graph6 cannot encode parallel edges")
        out.emit(encode_graph6(G))
    else:
        for i, G in enumerate(read_graphs(args.input)):
            out.emit(to_dot(G, f"G{i}").rstrip("\n"))
    out.flush()
    return EXIT_OK


def cmd_verify_trace(args) -> int:
    trace = ReductionTrace.from_jsonl(read_text(args.input))
    ok = trace.verify(certify=True)
    print(f"trace\t{len(trace.steps)}-steps\t{'valid' if ok else 'INVALID'}\tterminal-n={trace.terminal.n}")
    return EXIT_OK if ok else EXIT_NEGATIVE


# ------------------------------------------------------------------ parser


def _positive(s: str) -> int:
    v = int(s)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def _modulus(s: str) -> int:
    v = int(s)
    if v < 3:
        raise argparse.ArgumentTypeError(f"group modulus must be >= 3, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="z3conn", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", type=_modulus, default=3, metavar="K", help="cyclic group order (default 3)")
    common.add_argument("--max-edges", type=_positive, default=DEFAULT_CLI_MAX_EDGES, metavar="M")
    common.add_argument("--max-n", type=_positive, default=DEFAULT_CLI_MAX_N, metavar="N")
    common.add_argument("--min-n", type=_positive, default=4, metavar="N")
    common.add_argument("--workers", type=_positive, default=1, metavar="W")
    common.add_argument("--out", default=None, metavar="PATH")
    common.add_argument("--format", choices=("tsv", "jsonl", "dot"), default="tsv")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, with_input=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if with_input:
            sp.add_argument("input", help="file of graph6 lines, '-' for stdin, or an inline graph6 string")
        sp.set_defaults(func=func)
        return sp

    add("decide", cmd_decide, "is each graph Z_K-connected?")
    add("nzflow", cmd_nzflow, "does each graph have a nowhere-zero Z_K flow?")
    add("classify", cmd_classify, "Z3Connected / ContractsToK4 / Exceptional with certificate")
    add("reduce", cmd_reduce, "Z3-contraction trace")
    add("convert", cmd_convert, "graph6 to DOT, or DOT to graph6")
    add("verify-trace", cmd_verify_trace, "replay and re-certify a JSON-lines trace")
    cs = add("census", cmd_census, "census report over an order range", with_input=False)
    cs.add_argument("--raw", action="store_true", help="emit graph6/n/m/edge-conn/alpha rows only")
    cs.add_argument("--all", action="store_true", help="with --raw: drop the alpha <= 2 filter")
    cs.add_argument("--min-conn", type=int, default=3, help="with --raw: minimum edge connectivity")
    cs.add_argument("--search-budget", type=_positive, default=DEFAULT_CLI_MAX_N)
    cg = add("catalog", cmd_catalog, "verify, derive or list the exceptional catalog", with_input=False)
    cg.add_argument("action", choices=("verify", "derive", "list", "families"))
    cg.add_argument("--catalog", default=None, metavar="PATH")
    cg.add_argument("-m", type=_positive, default=2, help="multiplicity for 'families'")
    return p


def main(argv: Optional[Iterable[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    if args.min_n > args.max_n and args.command in ("census", "catalog"):
        print(f"error: --min-n {args.min_n} exceeds --max-n {args.max_n}", file=sys.stderr)
        return EXIT_ERROR
    if getattr(args, "max_n", 0) > MAX_SEARCH_ORDER and args.command == "classify":
        print(f"error: search limited to n <= {MAX_SEARCH_ORDER}", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except BudgetExceeded as exc:
        print(f"budget refused: {exc}", file=sys.stderr)
    except (GraphError, ReductionError, cat.CatalogError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except Exception as exc:  # soundness alarms and the like must still exit 2
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
