"""Command-line front end: ``spinstat {nu,table,classify,verify}``.

Exit codes: 0 success, 1 invalid input, 2 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Sequence

from .engine import HARD_TOLERANCE, Problem, classify, dimension_count, nu_with_residue, statistics_name, weighted_sum
from .errors import NonIntegerResult
from .oracle import QuadratureSpec, equal_spin_dim, nu_oracle_with_residue, zero_weight_dim
from .symgroup import irreps
from .tableaux import Partition, format_partition, format_spin, parse_partition
from .verify import sweep

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2
NODES_ENV = "SPINSTAT_NODES"

log = logging.getLogger("spinstat")


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; here 2 is reserved for verification mismatches
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    f: Partition | None = None
    n: int | None = None
    twice_s: int | None = None
    lam: Partition | None = None
    output_format: str = "pretty"
    tolerance: float = HARD_TOLERANCE
    nodes: int | None = None
    max_boxes: int = 6
    n_list: list[int] = field(default_factory=list)
    oracle: bool = False
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.tolerance <= 0:
            raise InputError("tolerance must be positive")
        if self.nodes is not None and self.nodes < 1:
            raise InputError("nodes must be a positive integer")
        need = {"nu": ("f", "n", "twice_s", "lam"), "table": ("f", "n"), "classify": ("f", "n"), "verify": ()}
        missing = [k for k in need[self.command] if getattr(self, k) is None]
        if missing:
            raise InputError(f"{self.command} requires " + ", ".join("--" + k.replace("_", "-").replace("lam", "lambda") for k in missing))
        if self.command == "verify" and not self.n_list:
            raise InputError("verify requires --n")


def parse_lambda(text: str, n: int | None) -> Partition:
    alias = text.strip().lower()
    if alias in ("sym", "antisym"):
        if n is None:
            raise InputError(f"--lambda {alias} needs --n")
        return Partition([n]) if alias == "sym" else Partition([1] * n)
    return parse_partition(text)


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def _env_nodes() -> int | None:
    raw = os.environ.get(NODES_ENV)
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"{NODES_ENV} must be an integer, got {raw!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("pretty", "json", "csv"), default="pretty")
    common.add_argument("--json", dest="output_format", action="store_const", const="json")
    common.add_argument("--csv", dest="output_format", action="store_const", const="csv")
    common.add_argument("--tolerance", type=float, default=HARD_TOLERANCE, help="integrality tolerance")
    common.add_argument("--nodes", type=int, help=f"quadrature nodes per variable (default: bandwidth-exact; env {NODES_ENV})")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    single = argparse.ArgumentParser(add_help=False)
    single.add_argument("--f", required=True, help='SU(2n) tableau, e.g. "3,2,1" ("0" for empty)')
    single.add_argument("--n", required=True, type=int, help="number of particles")

    p = _Parser(prog="spinstat", description="Spin-statistics multiplicities of zero-weight SU(2n) representations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("nu", parents=[common, single], help="one multiplicity nu(f, s lambda)")
    s.add_argument("--twice-s", type=int, required=True, help="2s as an integer")
    s.add_argument("--lambda", dest="lam", required=True, help='S_n irrep as a partition of n, or "sym"/"antisym"')
    s.add_argument("--oracle", action="store_true", help="cross-check against the quadrature oracle")

    sub.add_parser("table", parents=[common, single], help="all (s, lambda) multiplicities for f")
    sub.add_parser("classify", parents=[common, single], help="definite or broken statistics per spin")

    s = sub.add_parser("verify", parents=[common], help="engine-versus-oracle sweep")
    s.add_argument("--max-boxes", type=int, default=6)
    s.add_argument("--n", dest="n_list", required=True, help='particle numbers, e.g. "2,3"')
    s.add_argument("--jobs", type=int, default=1, help="worker processes")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    nodes = args.nodes if args.nodes is not None else _env_nodes()
    kw = dict(command=args.command, output_format=args.output_format, tolerance=args.tolerance, nodes=nodes)
    if args.command == "verify":
        return RunConfig(**kw, max_boxes=args.max_boxes, n_list=_int_list(args.n_list), jobs=args.jobs)
    kw.update(f=parse_partition(args.f), n=args.n)
    if args.command == "nu":
        kw.update(twice_s=args.twice_s, lam=parse_lambda(args.lam, args.n), oracle=args.oracle)
    return RunConfig(**kw)


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _entry(t: int, lam: Partition, v: int) -> dict:
    return {"twice_s": t, "lambda": list(lam), "nu": v}


def _csv(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _residue(x: float) -> float:
    return float(f"{x:.3e}")


def cmd_nu(cfg: RunConfig) -> tuple[int, str]:
    p = Problem(cfg.f, cfg.n, cfg.twice_s, cfg.lam)
    value, res = nu_with_residue(p)
    checks: dict = {"provenance": "engine", "engine_residue": _residue(res)}
    code = EXIT_OK
    if cfg.oracle:
        q = QuadratureSpec(cfg.nodes, cfg.tolerance)
        try:
            ov, ores = nu_oracle_with_residue(p, q)
            checks["oracle"] = {"nu": ov, "residue": _residue(ores), "agrees": ov == value}
            if ov != value:
                code = EXIT_MISMATCH
        except NonIntegerResult as exc:
            checks["oracle"] = {"error": "NonIntegerResult", "detail": str(exc), "agrees": False}
            code = EXIT_MISMATCH
    doc = {"f": list(cfg.f), "n": cfg.n, "entries": [_entry(p.twice_s, p.lam, value)], "checks": checks}

    if cfg.output_format == "json":
        return code, dump_json(doc)
    if cfg.output_format == "csv":
        rows = [["f", "n", "twice_s", "spin", "lambda", "nu"],
                [format_partition(cfg.f), cfg.n, p.twice_s, format_spin(p.twice_s), format_partition(p.lam), value]]
        return code, _csv(rows)
    lines = [f"nu(f=({format_partition(cfg.f)}), n={cfg.n}, s={format_spin(p.twice_s)}, lambda=({format_partition(p.lam)})) = {value}  [engine]"]
    if "oracle" in checks:
        o = checks["oracle"]
        if "nu" in o:
            lines.append(f"oracle: {o['nu']} (residue {o['residue']:.1e}) {'agrees' if o['agrees'] else 'DISAGREES'}")
        else:
            lines.append(f"oracle: NonIntegerResult: {o['detail']}")
    return code, "\n".join(lines) + "\n"


def cmd_table(cfg: RunConfig) -> tuple[int, str]:
    report = classify(cfg.f, cfg.n)
    lams = irreps(cfg.n)
    zw = zero_weight_dim(cfg.f, cfg.n)
    eq = equal_spin_dim(cfg.f, cfg.n)
    dim = dimension_count(report)
    sums = [{"twice_s": t, "weighted_sum": weighted_sum(report, t)} for t in report.admissible_spins]
    checks = {
        "weighted_sums": sums,
        "dimension_count": dim,
        "equal_spin_dim": eq,
        "zero_weight_dim": zw,
        "dimension_consistent": dim == eq,
        "zero_weight_exhausted": dim == zw,
    }
    doc = {
        "f": list(cfg.f), "n": cfg.n,
        "entries": [_entry(t, lam, v) for (t, lam), v in report.entries.items()],
        "checks": checks,
    }
    if cfg.output_format == "json":
        return EXIT_OK, dump_json(doc)
    if cfg.output_format == "csv":
        rows = [["twice_s", "spin", *(format_partition(l) for l in lams), "sum_d_nu"]]
        for t in report.admissible_spins:
            rows.append([t, format_spin(t), *(report.entries[(t, l)] for l in lams), weighted_sum(report, t)])
        return EXIT_OK, _csv(rows)

    head = ["s", *(f"({format_partition(l)})" for l in lams), "sum d*nu"]
    body = [[format_spin(t), *(str(report.entries[(t, l)]) for l in lams), str(weighted_sum(report, t))]
            for t in report.admissible_spins]
    widths = [max(len(r[i]) for r in [head, *body]) for i in range(len(head))]
    fmt = lambda r: "  ".join(c.rjust(w) for c, w in zip(r, widths))
    lines = [f"f=({format_partition(cfg.f)}), n={cfg.n}", fmt(head)]
    lines += [fmt(r) for r in body] or ["(no admissible spin: table is empty)"]
    flag = "ok" if dim == eq else "MISMATCH"
    lines.append(f"total sum (2s+1)^n d nu = {dim}, equal-spin zero-weight dim = {eq} [{flag}]")
    if zw != eq:
        lines.append(f"full zero-weight dim = {zw} ({zw - eq} in unequal-spin sectors, not counted by any nu)")
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_classify(cfg: RunConfig) -> tuple[int, str]:
    report = classify(cfg.f, cfg.n)
    verdicts = []
    for t in report.admissible_spins:
        occ = report.occupied(t)
        v = {"twice_s": t, "verdict": report.verdict(t),
             "occupied": [{"lambda": list(lam), "nu": m, "statistics": statistics_name(lam, cfg.n)} for lam, m in occ]}
        verdicts.append(v)
    doc = {
        "f": list(cfg.f), "n": cfg.n,
        "entries": [_entry(t, lam, v) for (t, lam), v in report.entries.items()],
        "checks": {"verdicts": verdicts},
    }
    if cfg.output_format == "json":
        return EXIT_OK, dump_json(doc)
    if cfg.output_format == "csv":
        rows = [["twice_s", "spin", "verdict", "lambda", "nu", "statistics"]]
        for v in verdicts:
            for o in v["occupied"] or [{"lambda": [], "nu": 0, "statistics": ""}]:
                rows.append([v["twice_s"], format_spin(v["twice_s"]), v["verdict"],
                             format_partition(Partition(o["lambda"])) if o["lambda"] else "", o["nu"], o["statistics"]])
        return EXIT_OK, _csv(rows)

    lines = [f"f=({format_partition(cfg.f)}), n={cfg.n}"]
    if not verdicts:
        lines.append("no admissible spin")
    for v in verdicts:
        occ = ", ".join(f"({format_partition(Partition(o['lambda']))}):{o['nu']} {o['statistics']}" for o in v["occupied"])
        lines.append(f"s={format_spin(v['twice_s'])}: {v['verdict']}" + (f" {{{occ}}}" if occ else ""))
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    summary, results = sweep(cfg.max_boxes, cfg.n_list, cfg.nodes, cfg.tolerance, cfg.jobs)
    d = summary.as_dict()
    d["max_engine_residue"] = _residue(d["max_engine_residue"])
    d["max_oracle_residue"] = _residue(d["max_oracle_residue"])
    code = EXIT_OK if summary.ok else EXIT_MISMATCH

    if cfg.output_format == "json":
        return code, dump_json(d)
    if cfg.output_format == "csv":
        rows = [["f", "n", "twice_s", "lambda", "engine", "oracle"]]
        for r in results:
            for (t, lam), v in r.entries.items():
                rows.append([format_partition(r.f), r.n, t, format_partition(lam), v, r.oracle.get((t, lam), "")])
        return code, _csv(rows)

    lines = [
        f"verify: |f| <= {summary.max_boxes}, n in {summary.n_list}",
        f"problems: {summary.problems}  multiplicities: {summary.multiplicities}  engine==oracle: {summary.agreeing}",
        f"max residue: engine {summary.max_engine_residue:.1e}, oracle {summary.max_oracle_residue:.1e}",
        f"weighted sum rule (sum d_lambda nu = Y): {'holds' if summary.weighted_rule_holds else 'FAILS'}",
        f"unweighted sum rule (sum nu = Y): {'holds' if summary.unweighted_rule_holds else 'fails'}"
        + (f" in {len(summary.unweighted_failures)} case(s)" if summary.unweighted_failures else ""),
    ]
    for u in summary.unweighted_failures[:5]:
        lines.append(f"  f=({format_partition(Partition(u['f']))}) n={u['n']} s={format_spin(u['twice_s'])}: sum nu = {u['sum_nu']}, Y = {u['Y']}")
    lines.append(
        f"dimension identity on the equal-spin sector: {'holds' if not any(v.kind == 'dimension' for v in summary.divergences) else 'FAILS'}; "
        f"zero-weight space has unequal-spin sectors in {len(summary.unequal_spin_cases)} problem(s)"
    )
    if summary.divergences:
        first = d["first_divergence"]
        kind = "NonIntegerResult" if first["kind"] == "non_integer" else first["kind"]
        lines.append(f"FAILED: {len(summary.divergences)} divergence(s); first: {kind} {json.dumps(first, sort_keys=True)}")
    else:
        lines.append("all checks passed")
    return code, "\n".join(lines) + "\n"


COMMANDS = {"nu": cmd_nu, "table": cmd_table, "classify": cmd_classify, "verify": cmd_verify}


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    """Parse ``argv`` and execute; returns (exit code, rendered output)."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        code, text = COMMANDS[cfg.command](cfg)
    except (InputError, ValueError) as exc:
        return EXIT_INPUT, f"error: {type(exc).__name__}: {exc}\n"
    except NonIntegerResult as exc:
        return EXIT_MISMATCH, f"error: NonIntegerResult: {exc}\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        text = ""
    return code, text


def main(argv: Sequence[str] | None = None) -> int:
    code, text = run(argv)
    stream = sys.stdout if code == EXIT_OK or not text.startswith("error:") else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
