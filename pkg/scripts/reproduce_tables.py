"""Recompute the reference tables for every preset that ships with them and diff.

Usage: python3 scripts/reproduce_tables.py [--preset NAME ...]
"""
import argparse
import sys

from nilcohom import catalog
from nilcohom.cohomology import cross_check


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--preset", action="append", help="restrict to these presets")
    args = ap.parse_args(argv)
    names = args.preset or catalog.names()
    failures = 0
    for name in names:
        pre = catalog.get(name)
        chk = cross_check(pre.presentation)
        if not chk.ok:
            print(f"{name}: quotient/harmonic mismatch {chk.mismatches}")
            failures += 1
            continue
        if pre.expected is None:
            print(f"{name}: no reference table (cross-check ok)")
            continue
        diffs = []
        for th, ref in pre.expected.items():
            got = chk.tables[th]
            diffs += [(th, k, v, got[k]) for k, v in ref.items() if got[k] != v]
        total = sum(len(r) for r in pre.expected.values())
        print(f"{name}: {total - len(diffs)}/{total} entries match" + (f"; diffs {diffs}" if diffs else ""))
        failures += bool(diffs)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
