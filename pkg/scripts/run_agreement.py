#!/usr/bin/env python3
"""Cross-check the pipeline against world enumeration on a random corpus.

Draws seeded random knowledge bases, answers one query per KB with the
full pipeline (justifications, covering formula, decision diagram) and
with brute-force world enumeration, and reports the largest disagreement
seen.  Justification search statistics are aggregated along the way.

Usage:
    python3 scripts/run_agreement.py --count 200 --seed 2026
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from probalc.generators import fuzz_corpus
from probalc.justify import all_justifications
from probalc.semantics import RunConfig, probability_bruteforce, probability_query


def main() -> int:
    cli = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    cli.add_argument("--count", type=int, default=200, help="number of KBs")
    cli.add_argument("--seed", type=int, default=2026, help="corpus base seed")
    cli.add_argument("--max-axioms", type=int, default=10)
    cli.add_argument("--tolerance", type=float, default=1e-9)
    args = cli.parse_args()

    worst = 0.0
    worst_index = None
    sizes = Counter()
    calls = []
    times = []
    method_disagreements = 0
    started = time.monotonic()
    for index, (kb, query) in enumerate(
        fuzz_corpus(args.seed, args.count, max_axioms=args.max_axioms)
    ):
        t0 = time.monotonic()
        fast = probability_query(kb, query, RunConfig(method="glassbox"))
        slow = probability_bruteforce(kb, query)
        times.append(time.monotonic() - t0)
        gap = abs(fast.probability - slow)
        if gap > worst:
            worst, worst_index = gap, index
        sizes[len(fast.covering)] += 1
        calls.append(fast.covering.tableau_calls)
        black = all_justifications(kb, query, "blackbox")
        if black.justifications != fast.covering.justifications:
            method_disagreements += 1
            print(f"KB {index}: methods disagree", file=sys.stderr)
    total = time.monotonic() - started

    print(f"corpus: {args.count} KBs, base seed {args.seed}")
    print(f"engine gap: worst |bdd - bruteforce| = {worst:.3e} (KB {worst_index})")
    print(f"method disagreements: {method_disagreements}")
    print(
        "justification counts: "
        + ", ".join(f"{n}x{c}" for n, c in sorted(sizes.items()))
    )
    print(
        f"tableau calls per KB: median {statistics.median(calls):.0f},"
        f" max {max(calls)}"
    )
    print(
        f"time: total {total:.1f}s, median per KB {statistics.median(times)*1000:.0f}ms,"
        f" max {max(times)*1000:.0f}ms"
    )
    if worst > args.tolerance or method_disagreements:
        print("FAIL: disagreement above tolerance", file=sys.stderr)
        return 1
    print(f"all probabilities agree within {args.tolerance:g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
