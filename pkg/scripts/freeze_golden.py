"""Regenerate tests/golden/census_counts.json.

Both enumeration methods are run on every catalog group of the requested
orders; the file is only written when they agree exactly.

    python scripts/freeze_golden.py 1-8 12
"""

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from skewbrace.catalog import groups_of_order
from skewbrace.cli import _parse_orders
from skewbrace.enumeration import census, enumerate_gammas, enumerate_via_holomorph, orbit_representatives
from skewbrace.fileformat import digest

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden" / "census_counts.json"


def census_digest(braces) -> str:
    return hashlib.sha256("\n".join(digest(B) for B in braces).encode()).hexdigest()[:16]


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("orders", nargs="+")
    ap.add_argument("--skip", nargs="*", default=[], help="catalog groups to leave out")
    args = ap.parse_args()
    data = json.loads(GOLDEN.read_text()) if GOLDEN.exists() else {}
    for key in ("labelled", "classes", "census"):
        data.setdefault(key, {})
    for n in _parse_orders(args.orders):
        groups = [G for G in groups_of_order(n) if G.name not in args.skip]
        for G in groups:
            t = time.time()
            a = enumerate_gammas(G)
            b = enumerate_via_holomorph(G)
            if [B.key for B in a] != [B.key for B in b]:
                print(f"{G.name}: methods disagree ({len(a)} vs {len(b)}); not freezing", file=sys.stderr)
                return 1
            reps = orbit_representatives(G, a)
            data["labelled"][G.name] = len(a)
            data["classes"][G.name] = {"count": len(reps), "digest": census_digest(reps)}
            print(f"{G.name}: {len(a)} labelled braces, {len(reps)} classes, {time.time() - t:.1f}s")
        if len(groups) < len(groups_of_order(n)):
            continue
        braces = census(n)
        data["census"][str(n)] = {"count": len(braces), "digest": census_digest(braces)}
        print(f"order {n}: {len(braces)} braces")
    GOLDEN.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
