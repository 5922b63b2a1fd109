"""Run the claim battery and print a grouped summary.

    python scripts/verify_paper.py [--full]
"""
import argparse
from collections import defaultdict

from omlkit.battery import run_battery


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--full", action="store_true", help="all septuples and the complete enumeration")
    p.add_argument("--verbose", action="store_true", help="print every item")
    args = p.parse_args()
    items = run_battery(full=args.full)
    groups = defaultdict(list)
    for it in items:
        groups[it.group].append(it)
        if args.verbose or not it.passed:
            print(it.tsv())
    print()
    for g, its in groups.items():
        bad = sum(not it.passed for it in its)
        print(f"{g:45s} {len(its) - bad:4d}/{len(its)}")
    return 1 if any(not it.passed for it in items) else 0


if __name__ == "__main__":
    raise SystemExit(main())
