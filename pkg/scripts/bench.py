"""Time a full five-theory cross-check on Iwasawa-type algebras of growing size.

The algebra of complex dimension n has d f_j = 0 for j < n and
d f_n = -f1^f2, optionally with a few extra mixed terms.
"""
import argparse
import time

from nilcohom.cohomology import THEORIES, cross_check
from nilcohom.structure import parse


def presentation(n: int, mixed: bool):
    lines = [f"ndim {n}"]
    for j in range(1, n + 1):
        if j == 3:
            extra = " + (1/2,1) f1^F2" if mixed else ""
            lines.append(f"d f3 = (-1,0) f1^f2{extra}")
        elif j > 3 and mixed:
            lines.append(f"d f{j} = (0,1) f1^f{j - 1} + (1,0) f2^F2")
        else:
            lines.append(f"d f{j} = 0")
    return parse("\n".join(lines) + "\n")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--mixed", action="store_true", help="use a less sparse differential")
    args = ap.parse_args(argv)
    for n in range(3, args.max_n + 1):
        pres = presentation(n, args.mixed)
        t0 = time.perf_counter()
        chk = cross_check(pres, THEORIES)
        dt = time.perf_counter() - t0
        b = [chk.tables["dR"][k] for k in range(2 * n + 1)]
        print(f"n={n}: {'ok' if chk.ok else 'MISMATCH'} in {dt:.2f}s; betti {b}")


if __name__ == "__main__":
    main()
