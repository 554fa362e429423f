"""Run a set of checks over a corpus and print tallies plus new_jumps case coverage.

    python3 scripts/sweep.py --max-order 200 --checks theoremB,new_jumps
"""

import argparse
import logging

from notpowers.cli import parse_checks, report_text
from notpowers.families import builtin_corpus
from notpowers.verifier import default_jobs, run_suite


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=60)
    ap.add_argument("--checks", default="all")
    ap.add_argument("--lattice-cap", type=int, default=200)
    ap.add_argument("--jobs", type=int, default=default_jobs())
    ap.add_argument("--show-cases", action="store_true", help="list every group in each new_jumps case")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    corpus = builtin_corpus(args.max_order)
    report = run_suite(corpus, parse_checks(args.checks), lattice_cap=args.lattice_cap, jobs=args.jobs)
    print(report_text(report), end="")
    if args.show_cases:
        for case, entries in report.coverage().items():
            if entries:
                print(f"{case}: {' '.join(entries)}")


if __name__ == "__main__":
    main()
