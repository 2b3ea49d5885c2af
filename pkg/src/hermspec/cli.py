"""``hermspec`` command line.

Graphs travel as edge lists (``-`` reads standard input); every other result
is printed as JSON unless ``--pretty``/``--markdown`` is asked for.
Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from typing import Sequence

from . import dhs as dhs_mod
from . import oracle
from .graph import (
    FAMILIES,
    GraphError,
    IsomorphismCapError,
    MixedGraph,
    converse,
    disjoint_union_isolated,
    format_edge_list,
    gen_family,
    parse_edge_list,
)
from .spectral import graph_rank, spectrum_json
from .structure import Rank2Form, classify_rank2
from .switching import (
    GaugePartition,
    InadmissibleGaugeError,
    SwitchingCapError,
    apply_four_way,
    are_switching_equivalent,
)

__all__ = ["run", "main", "render_table", "build_parser"]


class DomainError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Raise instead of exiting so :func:`run` can report the usage code."""

    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


class _UsageError(Exception):
    pass


def _dumps(obj, pretty: bool = False) -> str:
    return json.dumps(obj, indent=2 if pretty else None, sort_keys=False) + "\n"


def _read_graph(path: str) -> MixedGraph:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="ascii") as fh:
                text = fh.read()
        except OSError as exc:
            raise DomainError(f"cannot read {path}: {exc.strerror}") from None
    return parse_edge_list(text)


# ---------------------------------------------------------------------------
# Table rendering


def _mate_labels(row: dhs_mod.TableRow) -> str:
    if row.dhs:
        return "DHS"
    return ", ".join(m.label(descending=True) for m in row.mates)


def render_table(rows: Sequence[dhs_mod.TableRow], format: str = "json") -> str:
    """Render K_{n,n} rows as ``json``, ``markdown`` or ``pretty`` text."""
    if format == "json":
        return _dumps([r.to_json() for r in rows])
    cells = [(f"K_{{{r.n},{r.n}}}", _mate_labels(r)) for r in rows]
    head = ("Graph", "Cospectral mates")
    if format == "markdown":
        lines = [f"| {head[0]} | {head[1]} |", "|---|---|"]
        lines += [f"| {g} | {m} |" for g, m in cells]
        return "\n".join(lines) + "\n"
    if format == "pretty":
        w = max([len(head[0])] + [len(g) for g, _ in cells])
        lines = [f"{head[0]:<{w}} | {head[1]}", "-" * w + "-+-" + "-" * len(head[1])]
        lines += [f"{g:<{w}} | {m}" for g, m in cells]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown table format {format!r}")


# ---------------------------------------------------------------------------
# Verbs


def _cmd_spectrum(args) -> str:
    return _dumps(spectrum_json(_read_graph(args.graph)), args.pretty)


def _cmd_charpoly(args) -> str:
    return _dumps(spectrum_json(_read_graph(args.graph), with_eigenvalues=False), args.pretty)


def _cmd_rank(args) -> str:
    D = _read_graph(args.graph)
    return _dumps({"n": D.n, "rank": graph_rank(D)}, args.pretty)


def _cmd_converse(args) -> str:
    return format_edge_list(converse(_read_graph(args.graph)))


def _cmd_switch(args) -> str:
    D = _read_graph(args.graph)
    g = GaugePartition.parse(D.n, args.gauge.split() if args.gauge else [])
    return format_edge_list(apply_four_way(D, g))


def _cmd_equiv(args) -> str:
    D1, D2 = _read_graph(args.first), _read_graph(args.second)
    w = are_switching_equivalent(D1, D2, up_to_iso=args.iso)
    return _dumps(w.to_json() if w else {"equivalent": False}, args.pretty)


def _cmd_classify(args) -> str:
    return _dumps(classify_rank2(_read_graph(args.graph)).to_json(), args.pretty)


def _cmd_mates(args) -> str:
    ms = dhs_mod.mates_rank2(args.edges, args.vertices)
    if args.pretty:
        return "".join(f"{m.label(descending=True)}\n" for m in ms)
    return _dumps(ms.to_json())


def _cmd_dhs(args) -> str:
    D = _read_graph(args.graph)
    res = classify_rank2(D)
    if isinstance(res, Rank2Form):
        ok, ms = dhs_mod.is_dhs_rank2(res)
        out = {"dhs": ok, "method": "rank2", "form": res.to_json(), "mates": [m.to_json() for m in ms if m != res]}
    elif D.n <= oracle.DEFAULT_MAX_N:
        bad = oracle.dhs_counterexamples(D)
        out = {"dhs": not bad, "method": "bruteforce", "rank": res.rank, "counterexamples": bad[:10]}
    else:
        raise DomainError(
            f"rank {res.rank} on {D.n} vertices: no decision procedure (rank-2 forms or n <= {oracle.DEFAULT_MAX_N})"
        )
    return _dumps(out, args.pretty)


def _cmd_table(args) -> str:
    fmt = "markdown" if args.markdown else "pretty" if args.pretty else "json"
    return render_table(dhs_mod.table_knn(args.max), fmt)


def _cmd_cor513(args) -> str:
    if args.sweep is not None:
        rows = []
        for a in range(1, args.sweep + 1):
            eq, pr = dhs_mod.cor513_deciders(a)
            sols = dhs_mod.eisenstein_solutions(a)
            rows.append({"a": a, "equation": eq, "primes": pr, "agree": eq == pr,
                         "triples": [[s.p, s.q] for s in sols]})
        if not all(r["agree"] for r in rows):
            raise DomainError("deciders disagree: " + json.dumps([r for r in rows if not r["agree"]]))
        return _dumps(rows, args.pretty)
    if args.n is None or args.a is None:
        raise _UsageError("cor513: need --n and --a, or --sweep AMAX")
    ok = dhs_mod.cor513_is_dhs(args.n, args.a)
    mate = dhs_mod.cor513_mate(args.n, args.a)
    out = {
        "n": args.n,
        "a": args.a,
        "form": Rank2Form("C3", (args.n - args.a, args.n, args.n + args.a)).to_json(),
        "dhs": ok,
        "mate": mate.to_json() if mate else None,
    }
    return _dumps(out, args.pretty)


def _cmd_census(args) -> str:
    census = oracle.build_census(args.n, workers=args.workers)
    buf = io.StringIO()
    census.write_jsonl(buf)
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(buf.getvalue())
        return _dumps({"n": args.n, "graphs": census.total, "classes": len(census.classes), "out": args.out})
    return buf.getvalue()


def _cmd_verify(args) -> tuple[int, str]:
    report = oracle.verify_theorem(
        args.theorem, args.n, samples=args.samples, seed=args.seed, workers=args.workers
    )
    return (0 if report.passed else 1), _dumps(report.to_json(), args.pretty)


def _cmd_gen(args) -> str:
    D = gen_family(args.family, *args.params)
    if args.isolated:
        D = disjoint_union_isolated(D, args.isolated)
    return format_edge_list(D)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hermspec", description="Hermitian spectra and switching of mixed graphs.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def graph_verb(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("graph", help="edge-list file, or - for stdin")
        sp.add_argument("--pretty", action="store_true", help="indented JSON")
        sp.set_defaults(fn=fn)
        return sp

    graph_verb("spectrum", _cmd_spectrum, "char poly and eigenvalues")
    graph_verb("charpoly", _cmd_charpoly, "exact characteristic polynomial")
    graph_verb("rank", _cmd_rank, "exact rank of H(D)")
    graph_verb("converse", _cmd_converse, "reverse every arc")
    sp = graph_verb("switch", _cmd_switch, "apply a four-way switching")
    sp.add_argument("--gauge", metavar="CLASS:V,..", help="e.g. 1:0,3 i:1 -1:2")
    graph_verb("classify", _cmd_classify, "rank-2 normal form")
    graph_verb("dhs", _cmd_dhs, "decide whether D is determined by its spectrum")

    sp = sub.add_parser("equiv", help="switching equivalence with witness")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--iso", action="store_true", help="allow relabelling")
    sp.add_argument("--pretty", action="store_true")
    sp.set_defaults(fn=_cmd_equiv)

    sp = sub.add_parser("mates", help="rank-2 forms with given edges and vertices")
    sp.add_argument("--edges", type=int, required=True)
    sp.add_argument("--vertices", type=int, required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true", help="JSON output (default)")
    g.add_argument("--pretty", action="store_true", help="one label per line")
    sp.set_defaults(fn=_cmd_mates)

    sp = sub.add_parser("table", help="cospectral mates of K_{n,n}")
    sp.add_argument("--max", type=int, default=12)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--markdown", action="store_true")
    g.add_argument("--pretty", action="store_true")
    g.add_argument("--json", action="store_true", help="JSON output (default)")
    sp.set_defaults(fn=_cmd_table)

    sp = sub.add_parser("cor513", help="DHS test for C3(n-a, n, n+a)")
    sp.add_argument("--n", type=int)
    sp.add_argument("--a", type=int)
    sp.add_argument("--sweep", type=int, metavar="AMAX", help="cross-check both deciders for a <= AMAX")
    sp.add_argument("--pretty", action="store_true")
    sp.set_defaults(fn=_cmd_cor513)

    sp = sub.add_parser("census", help="bucket all labeled graphs on n vertices by char poly")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--out", help="JSON-lines output file (default stdout)")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(fn=_cmd_census)

    sp = sub.add_parser("verify", help="check a theorem on small graphs")
    sp.add_argument("--theorem", required=True, choices=sorted(oracle.THEOREMS))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--pretty", action="store_true")
    sp.set_defaults(fn=_cmd_verify)

    sp = sub.add_parser("gen", help="emit a named family: " + ", ".join(sorted(FAMILIES)))
    sp.add_argument("family", choices=sorted(FAMILIES))
    sp.add_argument("params", nargs="*", type=int)
    sp.add_argument("--isolated", type=int, default=0, metavar="T", help="append T isolated vertices")
    sp.set_defaults(fn=_cmd_gen)
    return p


def _join_gauge(argv: list[str]) -> list[str]:
    """Fold ``--gauge 1:0 -1:2 ...`` into one argument; ``-1:2`` would read as a flag."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--gauge":
            j = i + 1
            while j < len(argv) and ":" in argv[j]:
                j += 1
            out.append("--gauge=" + " ".join(argv[i + 1:j]))
            i = j
        else:
            out.append(argv[i])
            i += 1
    return out


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    """Execute one command; returns (exit code, stdout text). Errors go to stderr."""
    argv = _join_gauge(list(sys.argv[1:] if argv is None else argv))
    try:
        args = build_parser().parse_args(argv)
        result = args.fn(args)
    except _UsageError as exc:
        sys.stderr.write(str(exc).rstrip("\n") + "\n")
        return 2, ""
    except SystemExit as exc:  # --help
        return (exc.code if isinstance(exc.code, int) else 0), ""
    except (DomainError, GraphError, InadmissibleGaugeError, SwitchingCapError, IsomorphismCapError,
            oracle.OracleCapError, dhs_mod.CorollaryDisagreement, ValueError) as exc:
        sys.stderr.write(f"hermspec: {exc}\n")
        return 1, ""
    if isinstance(result, tuple):
        return result
    return 0, result


def main(argv: Sequence[str] | None = None) -> int:
    code, out = run(argv)
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
