#!/usr/bin/env python3
"""Exhaustively scan monic degree-9 hyperelliptic curves over F_3 for 3-rank 0.

Writes one JSON line per match and a final summary; the known genus-4 curve
with Newton slopes {1/4, 3/4} shows up among the matches.

Usage: python scripts/genus4_prank0_survey.py [--workers N] [--out matches.jsonl]
"""

import argparse
import json
import sys
import time

from newton_strata.search import (
    HyperellipticMonic,
    PRankEquals,
    SearchSpec,
    match_to_json_dict,
    run_survey,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out", default=None, help="JSONL output path (default stdout)")
    parser.add_argument("--checkpoint", default=None, help="resumable checkpoint file")
    args = parser.parse_args()

    sink = open(args.out, "w") if args.out else sys.stdout
    spec = SearchSpec(family=HyperellipticMonic(3, 9), filter=PRankEquals(0))

    start = time.perf_counter()
    result = run_survey(
        spec,
        workers=args.workers,
        checkpoint_path=args.checkpoint,
        on_match=lambda rec: sink.write(json.dumps(match_to_json_dict(rec), sort_keys=True) + "\n"),
    )
    elapsed = time.perf_counter() - start

    summary = {
        "family": result.family,
        "filter": result.filter,
        "total_scanned": result.total_scanned,
        "skipped_singular": result.skipped_singular,
        "matches": len(result.matches),
        "complete": result.complete,
    }
    sink.write(json.dumps({"summary": summary}, sort_keys=True) + "\n")
    if args.out:
        sink.close()
    print(f"scanned {result.total_scanned} candidates in {elapsed:.1f}s; "
          f"{len(result.matches)} matches", file=sys.stderr)
    return 0 if result.complete else 1


if __name__ == "__main__":
    sys.exit(main())
