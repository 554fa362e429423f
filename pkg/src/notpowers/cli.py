"""Command line: ``notpowers analyze|classify|verify|export``.

Exit codes: 0 success (and no FAIL for verify), 1 a check failed, 2 usage,
parse, or input-validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from typing import Sequence

from .errors import GroupError
from .io import Config, cayley_text, load_corpus, load_source
from .ntheory import is_prime
from .powers import analysis_report, analyze_powers, non_power_profile
from .structure import classify_new_jumps
from .verifier import ALL_CHECKS, CHECKS, VerificationReport, default_jobs, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("notpowers")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="notpowers", description="Non-k-th powers in finite groups.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def caps(p):
        p.add_argument("--lattice-cap", type=int, default=Config.lattice_cap)
        p.add_argument("--closure-cap", type=int, default=Config.closure_cap)
        p.add_argument("--assoc-cap", type=int, default=Config.associativity_full_check_cap,
                       help="full associativity check up to this order")
        p.add_argument("--output", "-o", default="-")

    a = sub.add_parser("analyze", help="power map analysis of one group")
    a.add_argument("source", help="family:<spec> or file:<path>")
    which = a.add_mutually_exclusive_group(required=True)
    which.add_argument("--k", type=int)
    which.add_argument("--prime", type=int)
    a.add_argument("--format", choices=("json", "text"), default="json")
    caps(a)

    c = sub.add_parser("classify", help="case of the odd-prime classification")
    c.add_argument("source")
    c.add_argument("--prime", type=int, required=True)
    c.add_argument("--format", choices=("json", "text"), default="json")
    caps(c)

    v = sub.add_parser("verify", help="run checks over a corpus")
    v.add_argument("--corpus", required=True, help="builtin:<max_order> or dir:<path>")
    v.add_argument("--checks", default="all", help=f"'all' or comma list of: {', '.join(ALL_CHECKS)}")
    v.add_argument("--jobs", type=int, default=None)
    v.add_argument("--format", choices=("json", "csv", "text"), default="json")
    v.add_argument("--full", action="store_true", help="list every result, not just FAIL/SKIPPED")
    caps(v)

    e = sub.add_parser("export", help="write a group as a Cayley file")
    e.add_argument("source")
    caps(e)
    return parser


def _config(args) -> Config:
    jobs = getattr(args, "jobs", None)
    if os.environ.get("NOTPOWERS_JOBS") or jobs is None:
        jobs = default_jobs()
    return Config(
        lattice_cap=args.lattice_cap,
        closure_cap=args.closure_cap,
        associativity_full_check_cap=args.assoc_cap,
        jobs=jobs,
        output=args.output,
        format=getattr(args, "format", "json"),
    )


def _emit(text: str, output: str) -> None:
    if output == "-":
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_analyze(args, config: Config) -> int:
    G = load_source(args.source, config)
    if args.prime is not None:
        if not is_prime(args.prime):
            raise UsageError(f"--prime {args.prime} is not prime")
        k, profile = args.prime, non_power_profile(G, args.prime)
    else:
        if args.k < 1:
            raise UsageError("--k must be positive")
        k, profile = args.k, None
    report = analysis_report(G, analyze_powers(G, k), profile)
    if config.format == "text":
        lines = [
            f"group {report['group_label']}  order {report['order']}",
            f"k = {k}  n_k = {report['n_k']}  (|G| = n^2: {report['order'] == report['n_k'] ** 2})",
            f"root multiplicities: {report['theta_histogram']}",
        ]
        if profile:
            lines.append(f"type {tuple(profile.type)}  length {profile.length}")
        _emit("\n".join(lines) + "\n", config.output)
    else:
        _emit(_dump(report), config.output)
    return EXIT_OK


def cmd_classify(args, config: Config) -> int:
    G = load_source(args.source, config)
    outcome = classify_new_jumps(G, args.prime, config.lattice_cap)
    data = {
        "group_label": G.label,
        "order": outcome.order,
        "p": args.prime,
        "n_p": outcome.n,
        "case": outcome.case.value,
        "case_name": outcome.case.name,
        "also_generic_bound": outcome.also_generic_bound,
        "witness": outcome.witness,
    }
    if config.format == "text":
        _emit(f"{G.label}: case {outcome.case.value} ({outcome.case.name}), |G| = {outcome.order}, "
              f"n_{args.prime} = {outcome.n}, witness {outcome.witness}\n", config.output)
    else:
        _emit(_dump(data), config.output)
    return EXIT_OK if outcome.case.value else EXIT_FAIL


CSV_FIELDS = ("check_id", "group_label", "param", "status", "witness")


def report_csv(report: VerificationReport, full: bool) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for row in report.to_dict(full)["results"]:
        writer.writerow([
            row["check_id"], row["group_label"], "" if row["param"] is None else row["param"],
            row["status"], json.dumps(row["witness"], sort_keys=True),
        ])
    return buf.getvalue()


def report_text(report: VerificationReport) -> str:
    lines = [f"{len(report.corpus)} groups, {len(report.results)} results, {report.runtime:.1f}s"]
    lines.append(f"{'check':24} {'pass':>7} {'fail':>5} {'skip':>5} {'n/a':>7}")
    for cid, t in report.tallies.items():
        lines.append(f"{cid:24} {t['pass']:7} {t['fail']:5} {t['skipped']:5} {t['na']:7}")
    cov = report.coverage()
    if any(cov.values()):
        lines.append("new_jumps cases: " + ", ".join(f"{k}={len(v)}" for k, v in cov.items()))
    for r in report.failures + report.skipped:
        lines.append(f"{r.status.value}: {r.check_id} {r.group_label} param={r.param} {r.witness}")
    return "\n".join(lines) + "\n"


def parse_checks(text: str) -> list[str]:
    if text.strip() == "all":
        return list(ALL_CHECKS)
    checks = [c.strip() for c in text.split(",") if c.strip()]
    bad = [c for c in checks if c not in CHECKS]
    if bad:
        raise UsageError(f"unknown checks {bad}; known: {', '.join(ALL_CHECKS)}")
    return checks


def cmd_verify(args, config: Config) -> int:
    checks = parse_checks(args.checks)
    corpus = load_corpus(args.corpus, config)
    report = run_suite(corpus, checks, lattice_cap=config.lattice_cap, jobs=config.jobs)
    report.config["corpus"] = args.corpus
    if config.format == "csv":
        text = report_csv(report, args.full)
    elif config.format == "text":
        text = report_text(report)
    else:
        text = _dump(report.to_dict(args.full))
    _emit(text, config.output)
    log.info("verify finished in %.1fs", report.runtime)
    return EXIT_FAIL if report.failures else EXIT_OK


def cmd_export(args, config: Config) -> int:
    _emit(cayley_text(load_source(args.source, config)), config.output)
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "classify": cmd_classify, "verify": cmd_verify, "export": cmd_export}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"notpowers: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        config = _config(args)
        return COMMANDS[args.command](args, config)
    except (UsageError, GroupError, OSError) as exc:
        print(f"notpowers: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
