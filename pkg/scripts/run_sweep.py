#!/usr/bin/env python3
"""Resumable exhaustive sweep with a JSON summary at the end.

    python3 scripts/run_sweep.py --max-n 7 --checks zg,z2id --ledger sweep7.jsonl

Interrupting and rerunning with the same ledger picks up where it stopped.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from sepolytope.lab import SUITES, sweep


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-n", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--checks", default="zg,conjsum,z2id", help=f"comma list from {', '.join(SUITES)}")
    ap.add_argument("--ledger", default=None)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--allow-large", action="store_true")
    ap.add_argument("--time-budget", type=float, default=None)
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")

    summary = sweep(
        args.min_n,
        args.max_n,
        args.checks.split(","),
        jobs=args.jobs,
        ledger_path=args.ledger,
        allow_large=args.allow_large,
        time_budget=args.time_budget,
    )
    print(summary.table(), file=sys.stderr)
    print(json.dumps(summary.to_json(), sort_keys=True, indent=1))
    return summary.status


if __name__ == "__main__":
    sys.exit(main())
