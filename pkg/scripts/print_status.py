#!/usr/bin/env python3
"""Print the complexity status of all 30 canonical pairs of forbidden
order-4 graphs, grouped by status, with the algorithm/reduction id used.

Example:
    python scripts/print_status.py --status Poly
"""

import argparse
import sys
from collections import Counter

from sandwich4.quartets import status_table


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--status", choices=("Poly", "NPComplete", "Open"),
                    help="restrict to one status class")
    args = ap.parse_args(argv)

    table = status_table()
    counts = Counter(e.status for e in table)
    for status in ("Poly", "NPComplete", "Open"):
        if args.status and status != args.status:
            continue
        print(f"{status} ({counts[status]})")
        for e in sorted(table, key=lambda e: e.pair):
            if e.status != status:
                continue
            pair = f"{{{e.pair[0]}, {e.pair[1]}}}"
            detail = e.detail or ""
            print(f"  {pair:28s} {detail}")
        print()
    print(f"total: {counts['Poly']} polynomial, {counts['NPComplete']} "
          f"NP-complete, {counts['Open']} open")
    return 0


if __name__ == "__main__":
    sys.exit(main())
