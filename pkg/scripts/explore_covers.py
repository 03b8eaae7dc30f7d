"""Enumerate minimal covers of {0,1}^d up to symmetry and tabulate their invariants.

d <= 2 is exhaustive; d = 3 uses the budgeted search (about a second).
"""

import argparse
from collections import Counter

from hollow_helly import patterns as pc


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, default=3)
    ap.add_argument("--group", choices=(pc.HYPEROCTAHEDRAL, pc.GLOBAL_SWAP), default=pc.HYPEROCTAHEDRAL)
    ap.add_argument("--budget", type=int, default=5_000_000)
    ap.add_argument("--list", action="store_true", help="print every class")
    args = ap.parse_args()

    classes = pc.enumerate_minimal_covers(args.d, group=args.group, allow_search=True, node_budget=args.budget)
    sizes = Counter(len(c) for c in classes)
    rel = Counter(str(pc.analyze(c).lemma3_class) for c in classes)
    print(f"d={args.d}: {len(classes)} classes under the {args.group} group")
    print("by size: " + ", ".join(f"{k}:{v}" for k, v in sorted(sizes.items())))
    print("by class: " + ", ".join(f"{k}:{v}" for k, v in sorted(rel.items())))
    if args.list:
        for c in classes:
            r = pc.analyze(c)
            print(f"  {pc.format_cover(c):<40} s={r.s} {r.lemma3_class}")


if __name__ == "__main__":
    main()
