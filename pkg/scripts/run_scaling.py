#!/usr/bin/env python3
"""Scaling experiment over the layered chain family.

Each chain layer doubles the number of justifications, so this family
stresses the hitting set tree and the diagram construction while the
closed-form answer 0.504**n keeps the result checkable.  The script
prints one row per chain length and compares both probability engines
where world enumeration is still feasible.

Usage:
    python3 scripts/run_scaling.py --max-n 10
    python3 scripts/run_scaling.py --max-n 8 --method blackbox --json out.json
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from probalc.generators import CHAIN_PROBABILITY, chain_query, generate_synthetic
from probalc.semantics import RunConfig, probability_bruteforce, probability_query
from probalc.tableau import ResourceLimitError

CLOSED_FORM = CHAIN_PROBABILITY**2 * (2 - CHAIN_PROBABILITY)  # 0.504 per layer
BRUTE_FORCE_MAX_N = 5


def main() -> int:
    cli = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    cli.add_argument("--max-n", type=int, default=10, help="largest chain length")
    cli.add_argument("--method", choices=("glassbox", "blackbox"), default="glassbox")
    cli.add_argument("--timeout", type=float, default=600.0, metavar="SECS")
    cli.add_argument("--json", type=Path, metavar="PATH", help="also dump rows as JSON")
    args = cli.parse_args()

    header = (
        f"{'n':>4} {'axioms':>7} {'justs':>7} {'bdd':>5} {'calls':>9}"
        f" {'probability':>16} {'closed_form':>16} {'brute':>10} {'time_s':>8}"
    )
    print(header)
    print("-" * len(header))
    rows = []
    for n in range(1, args.max_n + 1):
        kb = generate_synthetic(n)
        query = chain_query(n)
        config = RunConfig(method=args.method, timeout_s=args.timeout)
        started = time.monotonic()
        try:
            result = probability_query(kb, query, config)
        except ResourceLimitError as error:
            print(f"{n:>4} {len(kb):>7}  stopped: {error}")
            rows.append({"n": n, "stopped": str(error)})
            continue
        elapsed = time.monotonic() - started
        expected = CLOSED_FORM**n
        brute = (
            probability_bruteforce(kb, query) if n <= BRUTE_FORCE_MAX_N else None
        )
        brute_text = f"{brute:.8f}" if brute is not None else "--"
        print(
            f"{n:>4} {len(kb):>7} {len(result.covering):>7} {result.bdd_nodes:>5}"
            f" {result.covering.tableau_calls:>9} {result.probability:>16.12f}"
            f" {expected:>16.12f} {brute_text:>10} {elapsed:>8.3f}"
        )
        error = abs(result.probability - expected)
        if error > 1e-9:
            print(f"     mismatch against the closed form: {error:.3e}", file=sys.stderr)
            return 1
        rows.append(
            {
                "n": n,
                "axioms": len(kb),
                "justifications": len(result.covering),
                "bdd_nodes": result.bdd_nodes,
                "tableau_calls": result.covering.tableau_calls,
                "probability": result.probability,
                "closed_form": expected,
                "bruteforce": brute,
                "time_s": elapsed,
            }
        )
    if args.json:
        args.json.write_text(json.dumps(rows, indent=2, sort_keys=True) + "\n")
        print(f"wrote {args.json}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
