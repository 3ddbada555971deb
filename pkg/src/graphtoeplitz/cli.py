"""Command-line entry point.

Exit status: 0 when every finding passes, 1 when a finding fails, 2 for
usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import analysis, fock, graph as graphmod, ppi, staralg
from .matrixio import export_rep, format_dense, import_family, read_matrix
from .report import VerificationReport
from .words import parse_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    graph_path: Path | None = None
    depth: int = 1
    tolerances: dict[str, float] = field(default_factory=dict)
    outdir: Path | None = None
    fmt: str = "text"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.depth < 1:
            raise UsageError("depth must be at least 1")

    def tol(self, key: str, default: float) -> float:
        return self.tolerances.get(key, default)


def _read_graph(path) -> graphmod.DirectedGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read graph file: {exc}") from None
    return graphmod.parse_graph(text)


def _emit(report: VerificationReport, fmt: str, out) -> int:
    out.write(report.to_json() if fmt == "json" else report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def _emit_data(data: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        for key, value in data.items():
            if isinstance(value, list):
                value = "{" + ", ".join(map(str, value)) + "}"
            out.write(f"{key}: {value}\n")


def _config(args) -> RunConfig:
    tolerances = {}
    for key in ("tol", "rank_tol", "norm_tol"):
        if getattr(args, key, None) is not None:
            tolerances[key] = getattr(args, key)
    return RunConfig(
        graph_path=getattr(args, "graph", None),
        depth=1 if getattr(args, "depth", None) is None else args.depth,
        tolerances=tolerances,
        outdir=getattr(args, "out", None),
        fmt=args.format,
        seed=args.seed,
    )


# -- subcommands --------------------------------------------------------------

def cmd_graph_info(args, out) -> int:
    g = _read_graph(args.graph)
    verdict = graphmod.simplicity_verdict(g)
    transitive, witness = graphmod.is_transitive(g)
    data = {
        "vertices": list(g.vertices),
        "edges": list(g.edge_ids),
        "out_degree": {v: graphmod.out_degree(g, v) for v in g.vertices},
        "sinks": graphmod.sinks(g),
        "sources": graphmod.sources(g),
        "transitive": transitive,
        "transitivity_witness": list(witness) if witness else None,
        "omega": sorted(g.omega),
        "compact_ideal_support": graphmod.compact_ideal_support(g),
        "simple": verdict.simple if verdict.applicable else "not applicable",
        "simplicity_reasons": list(verdict.reasons),
    }
    if args.format == "text":
        data["out_degree"] = ", ".join(f"{v}={d}" for v, d in data["out_degree"].items())
    _emit_data(data, args.format, out)
    return EXIT_OK


def cmd_fock_build(args, out) -> int:
    cfg = _config(args)
    g = _read_graph(args.graph)
    rep = fock.build_fock(g, cfg.depth)
    files = export_rep(rep, args.out)
    _emit_data(
        {"dim": rep.dim, "depth": rep.depth, "level_sizes": rep.basis.level_sizes(), "files": [p.name for p in files]},
        cfg.fmt,
        out,
    )
    return EXIT_OK


def cmd_verify(args, out) -> int:
    cfg = _config(args)
    g = _read_graph(args.graph)
    fam = import_family(g, args.rep)
    tol = cfg.tol("tol", analysis.RELATION_TOL)
    report = fock.verify_tck(fam, tol)
    if report.passed:
        report.extend(analysis.faithfulness_verdict(fam, tol))
        report.pass_verdict = "TCK family; faithful"
        report.fail_verdict = "TCK family; criterion fails"
    return _emit(report, cfg.fmt, out)


def cmd_norm(args, out) -> int:
    cfg = _config(args)
    g = _read_graph(args.graph)
    p = staralg.parse_polynomial(g, Path(args.poly).read_text(encoding="utf-8"))
    if args.cross_check is None:
        _emit_data({"core_norm": analysis.core_norm(g, p)}, cfg.fmt, out)
        return EXIT_OK
    report = analysis.cross_check_core_norm(g, p, args.cross_check, cfg.tol("norm_tol", analysis.NORM_TOL))
    return _emit(report, cfg.fmt, out)


def cmd_expect(args, out) -> int:
    g = _read_graph(args.graph)
    p = staralg.parse_polynomial(g, Path(args.poly).read_text(encoding="utf-8"))
    e = staralg.gauge_expect(p) if args.mode == "gauge" else staralg.free_expect(p)
    out.write(staralg.format_polynomial(e))
    return EXIT_OK


def _parse_word_set(text: str) -> list[tuple[str, ...]]:
    return [parse_word(w) for w in text.split(";")]


def cmd_partition(args, out) -> int:
    cfg = _config(args)
    g = _read_graph(args.graph)
    rep = fock.build_fock(g, cfg.depth)
    F = _parse_word_set(args.set)
    if () not in F:
        raise UsageError("the word set must contain the empty word '@'")
    residual = analysis.partition_residual(rep, F)
    report = VerificationReport(pass_verdict="partition of unity", fail_verdict="partition fails")
    report.at_most("||sum Q_s - 1||", residual, 0.0)
    for s in sorted(set(F), key=lambda w: (len(w), w)):
        q = fock.q_projection(rep, F, s)
        rank = int(round(q.diagonal().real.sum()))
        report.add(f"rank Q_{','.join(s) or '@'}", rank, 0.0, True)
    return _emit(report, cfg.fmt, out)


def _parse_sequence(head: str, tail: str) -> ppi.TruncatedSequence:
    values = [complex(x.replace(" ", "")) for x in head.split(",") if x.strip()] if head else []
    return ppi.TruncatedSequence(tuple(values), complex(tail.replace(" ", "")))


def cmd_ppi(args, out) -> int:
    cfg = _config(args)
    tol = cfg.tol("tol", 1e-12)
    if args.action == "shift":
        if args.n is None:
            raise UsageError("ppi shift needs --n")
        out.write(format_dense(ppi.truncated_shift(args.n)))
        return EXIT_OK
    if args.matrix is None:
        raise UsageError(f"ppi {args.action} needs a matrix file")
    v = read_matrix(args.matrix)
    v = np.asarray(v.toarray() if hasattr(v, "toarray") else v, dtype=complex)
    if args.action == "check":
        report = ppi.is_power_partial_isometry(v, args.kmax or v.shape[0] + 1, tol)
        if report.passed:
            report = ppi.verify_ppi_rep(v, tol)
        return _emit(report, cfg.fmt, out)
    a = _parse_sequence(args.head, args.tail)
    m = ppi.psi_V(v, a) if args.psi else ppi.pi_V(v, a)
    out.write(format_dense(m))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, help="relation tolerance (default 1e-10)")
    common.add_argument("--rank-tol", dest="rank_tol", type=float, help="singular value threshold (default 1e-8)")
    common.add_argument("--norm-tol", dest="norm_tol", type=float, help="norm comparison tolerance (default 1e-8)")

    parser = argparse.ArgumentParser(prog="graphtoeplitz", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graph-info", parents=[common], help="structural predicates of a graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_graph_info)

    p = sub.add_parser("fock-build", parents=[common], help="export a truncated Fock representation")
    p.add_argument("graph")
    p.add_argument("--depth", "-N", type=int, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_fock_build)

    p = sub.add_parser("verify", parents=[common], help="TCK relations and faithfulness criterion")
    p.add_argument("rep", type=Path, help="directory with S_<edge>.txt, P_<vertex>.txt (and basis.txt)")
    p.add_argument("graph")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("norm", parents=[common], help="norm of a core element")
    p.add_argument("poly")
    p.add_argument("graph")
    p.add_argument("--cross-check", dest="cross_check", type=int, metavar="N")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("expect", parents=[common], help="apply an expectation to a polynomial")
    p.add_argument("poly")
    p.add_argument("graph")
    p.add_argument("--mode", choices=("gauge", "free"), default="gauge")
    p.set_defaults(func=cmd_expect)

    p = sub.add_parser("partition", parents=[common], help="partition of unity by the Q_s projections")
    p.add_argument("graph")
    p.add_argument("--depth", "-N", type=int, required=True)
    p.add_argument("--set", required=True, help="';'-separated word literals, '@' for the empty word")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("ppi", parents=[common], help="power partial isometry tools")
    p.add_argument("action", choices=("check", "shift", "represent"))
    p.add_argument("matrix", nargs="?", help="dense or sparse matrix file")
    p.add_argument("--n", type=int, help="size of the truncated shift")
    p.add_argument("--kmax", type=int)
    p.add_argument("--head", default="", help="comma-separated complex head of the sequence")
    p.add_argument("--tail", default="0", help="constant tail of the sequence")
    p.add_argument("--psi", action="store_true", help="apply psi_V instead of pi_V")
    p.set_defaults(func=cmd_ppi)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except analysis.RelationsFailed as exc:
        out.write(exc.report.to_json() if args.format == "json" else exc.report.to_text())
        return EXIT_FAIL
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
