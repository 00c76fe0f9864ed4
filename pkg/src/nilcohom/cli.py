"""Command-line front end.

Exit codes: 0 success, 1 semantic failure, 2 input error, 3 internal
quotient/harmonic mismatch.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog
from .cohomology import (CohomologyTable, bidegrees, cross_check, del_delbar_lemma, dualities,
                         harmonic, natural_map_ranks, theory_tag)
from .deformations import classify_deformation, parse_sigma, witnesses
from .structure import ParseError, Presentation, differentials, parse, validate
from .exterior import basis

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2, 3

WHICH = {"derham": "dR", "dolbeault": "dbar", "bc": "BC", "aeppli": "A"}
TITLES = {"dR": "H_dR", "dbar": "H_dbar", "del": "H_del", "BC": "H_BC", "A": "H_A"}


class InputError(Exception):
    pass


def _load(args) -> tuple[Presentation, str]:
    if args.preset:
        try:
            return catalog.get(args.preset).presentation, args.preset
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    try:
        pres = parse(text)
    except ParseError as exc:
        raise InputError(f"{args.file}: {exc}") from None
    return pres, pres.label or Path(args.file).stem


def _require_valid(pres: Presentation) -> None:
    rep = validate(pres)
    if not rep.valid:
        print("invalid presentation: " + rep.summary(), file=sys.stderr)
        for line in rep.lines()[1:]:
            print(line, file=sys.stderr)
        raise SystemExit(EXIT_FAIL)


# ---------------------------------------------------------------- commands

def cmd_validate(args) -> int:
    pres, _ = _load(args)
    rep = validate(pres)
    print("\n".join(rep.lines()))
    return EXIT_OK if rep.valid else EXIT_FAIL


def format_text(tab: CohomologyTable, row_label: str, n: int) -> str:
    if tab.theory == "dR":
        keys = list(range(2 * n + 1))
        heads = [f"b{k}" for k in keys]
        groups = [[i] for i in range(len(keys))]
    else:
        keys = bidegrees(n)
        heads = [f"h{p}{q}" if n < 10 else f"h{p},{q}" for p, q in keys]
        groups = []
        for k in range(2 * n + 1):
            groups.append([i for i, (p, q) in enumerate(keys) if p + q == k])
    vals = [str(tab.dims[k]) for k in keys]
    widths = [max(len(h), len(v)) for h, v in zip(heads, vals)]
    label_w = max(len(TITLES[tab.theory]), len(row_label))

    def render(cells):
        parts = [" ".join(cells[i].rjust(widths[i]) for i in g) for g in groups]
        return " | ".join(parts)

    return "\n".join([
        f"{TITLES[tab.theory].ljust(label_w)} | {render(heads)}",
        "-" * (label_w + 3 + len(render(heads))),
        f"{row_label.ljust(label_w)} | {render(vals)}",
    ])


def cmd_table(args) -> int:
    pres, label = _load(args)
    _require_valid(pres)
    theories = list(WHICH.values()) if args.which == "all" else [WHICH[args.which]]
    chk = cross_check(pres, theories)
    if not chk.ok:
        for th, key, q, h in chk.mismatches:
            print(f"internal mismatch in {th} at {key}: quotient {q} vs harmonic {h}", file=sys.stderr)
        return EXIT_MISMATCH
    tabs = [chk.tables[t] for t in theories]
    if args.format == "csv":
        rows = [r for t in tabs for r in t.rows()]
        sys.stdout.write(catalog.write_expected(rows))
    else:
        print("\n\n".join(format_text(t, label, pres.n) for t in tabs))
    return EXIT_OK


def cmd_harmonic(args) -> int:
    pres, _ = _load(args)
    _require_valid(pres)
    theory = WHICH[args.which]
    n = pres.n
    if theory == "dR":
        if not 0 <= args.p <= 2 * n:
            raise InputError(f"degree {args.p} out of range 0..{2 * n}")
        hb = harmonic(pres, theory, args.p)
    else:
        if args.q is None:
            raise InputError("--q is required for bigraded theories")
        if not (0 <= args.p <= n and 0 <= args.q <= n):
            raise InputError(f"bidegree ({args.p},{args.q}) out of range 0..{n}")
        hb = harmonic(pres, theory, args.p, args.q)
    for f in hb:
        print(f)
    return EXIT_OK


def cmd_check(args) -> int:
    pres, _ = _load(args)
    _require_valid(pres)
    selected = {k for k in ("dualities", "lemma", "natural_maps", "frolicher") if getattr(args, k)}
    if not selected:
        selected = {"dualities", "lemma", "natural_maps", "frolicher"}
    ok = True
    rep = validate(pres)
    if not rep.unimodular and "dualities" in selected:
        print("note: Lie algebra is not unimodular; star and Serre dualities need not hold")
    if selected & {"dualities", "frolicher"}:
        for c in dualities(pres):
            wanted = "frolicher" if c.group == "frolicher" else "dualities"
            if wanted in selected:
                print(c.line())
                ok &= c.passed
    if "natural_maps" in selected:
        for b in bidegrees(pres.n):
            r = natural_map_ranks(pres, *b)
            good = (r.bc_to_dbar <= min(r.h_bc, r.h_dbar) and r.bc_to_dr <= min(r.h_bc, r.b)
                    and r.dbar_to_a <= min(r.h_dbar, r.h_a))
            ok &= good
            print(f"{'PASS' if good else 'FAIL'}  natural maps at {b}: "
                  f"BC->dbar {r.bc_to_dbar}/{r.h_bc}, BC->dR {r.bc_to_dr}/{r.h_bc}, "
                  f"dbar->A {r.dbar_to_a}/{r.h_dbar}")
    if "lemma" in selected:
        lem = del_delbar_lemma(pres)
        if lem.satisfied:
            print("ddbar-lemma: satisfied at all (p,q)")
        else:
            p, q = lem.first_failure
            print(f"ddbar-lemma: NOT satisfied (first failure at ({p},{q}))")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_classify(args) -> int:
    try:
        s = parse_sigma(args.sigma)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    label = classify_deformation(s)
    delta, rk = witnesses(s)
    print(f"{label}; delta = {delta.pretty()}; rk S = {rk}")
    return EXIT_OK


def dot_diagram(pres: Presentation) -> str:
    D = differentials(pres)
    n = pres.n
    lines = ["digraph double_complex {", "  rankdir=LR;", "  node [shape=plaintext];"]
    for p in range(n + 1):
        for q in range(n + 1):
            lines.append(f"  subgraph \"cluster_{p}_{q}\" {{ label=\"({p},{q})\";")
            for m in basis(n, p, q):
                lines.append(f"    \"{m}\";")
            lines.append("  }")
    for p in range(n + 1):
        for q in range(n + 1):
            src = basis(n, p, q)
            for name, mat, dst in (("del", D.del_(p, q), basis(n, p + 1, q) if p < n else []),
                                   ("delbar", D.delbar(p, q), basis(n, p, q + 1) if q < n else [])):
                for i, row in enumerate(mat.rows):
                    for j, c in sorted(row.items()):
                        lines.append(f"  \"{src[j]}\" -> \"{dst[i]}\" [label=\"{name}\", coeff=\"{c}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_diagram(args) -> int:
    pres, _ = _load(args)
    _require_valid(pres)
    sys.stdout.write(dot_diagram(pres))
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nilcohom", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def with_input(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--file", help="structure-equation file")
        g.add_argument("--preset", help="built-in preset: " + ", ".join(catalog.names()))
        return p

    p = with_input(sub.add_parser("validate", help="check d^2 = 0, integrability, nilpotency"))
    p.set_defaults(func=cmd_validate)

    p = with_input(sub.add_parser("table", help="dimension tables"))
    p.add_argument("--which", choices=[*WHICH, "all"], default="all")
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p.set_defaults(func=cmd_table)

    p = with_input(sub.add_parser("harmonic", help="harmonic representatives"))
    p.add_argument("--p", type=int, required=True, help="p, or the degree k for derham")
    p.add_argument("--q", type=int)
    p.add_argument("--which", choices=list(WHICH), default="bc")
    p.set_defaults(func=cmd_harmonic)

    p = with_input(sub.add_parser("check", help="duality, lemma and natural-map checks"))
    p.add_argument("--dualities", action="store_true")
    p.add_argument("--lemma", action="store_true")
    p.add_argument("--natural-maps", dest="natural_maps", action="store_true")
    p.add_argument("--frolicher", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="subclass of a deformed Iwasawa structure")
    p.add_argument("--sigma", required=True, help='five coefficients "(s12)(s11b)(s12b)(s21b)(s22b)"')
    p.set_defaults(func=cmd_classify)

    p = with_input(sub.add_parser("diagram", help="double complex as a DOT graph"))
    p.add_argument("--format", choices=["dot"], default="dot")
    p.set_defaults(func=cmd_diagram)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:
        return int(exc.code)


if __name__ == "__main__":
    sys.exit(main())
