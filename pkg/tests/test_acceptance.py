"""Acceptance criteria, all at tolerance zero.

Each test prints a single ``PASS``/``FAIL`` line naming its criterion. Run
``python3 tests/test_acceptance.py`` to get just the eleven lines, or run it
under pytest (the lines are printed past output capture).
"""
import sys
import time
from math import comb

import pytest

from nilcohom import catalog
from nilcohom.cohomology import (THEORIES, betti, bidegrees, cross_check, del_delbar_lemma, dualities,
                                 form_to_vector, harmonic, natural_map_ranks, table)
from nilcohom.deformations import DeformationParameter, classify_deformation, first_order_sigma
from nilcohom.exterior import Form, Monomial, basis
from nilcohom.linalg import span_rank
from nilcohom.structure import differentials, parse, validate

M = Monomial.from_indices
DEFORMED = ["iwasawa", "class-ii-a", "class-ii-b", "class-iii-a", "class-iii-b"]
ROW = {"iwasawa": "i", "class-ii-a": "ii", "class-ii-b": "ii", "class-iii-a": "iii", "class-iii-b": "iii"}

# Bidegrees with 1 <= p+q <= 5, in the order the reference tables use.
KEYS = [k for k in bidegrees(3) if 1 <= sum(k) <= 5]

# Reference tables for the Iwasawa manifold and its small deformations, frozen by hand.
DOLBEAULT = {
    "i": [3, 2, 3, 6, 2, 1, 6, 6, 1, 2, 6, 3, 2, 3],
    "ii": [2, 2, 2, 5, 2, 1, 5, 5, 1, 2, 5, 2, 2, 2],
    "iii": [2, 2, 1, 5, 2, 1, 4, 4, 1, 2, 5, 1, 2, 2],
}
BOTT_CHERN = {
    "iwasawa": [2, 2, 3, 4, 3, 1, 6, 6, 1, 2, 8, 2, 3, 3],
    "class-ii-a": [2, 2, 2, 4, 2, 1, 6, 6, 1, 2, 7, 2, 3, 3],
    "class-ii-b": [2, 2, 2, 4, 2, 1, 6, 6, 1, 2, 6, 2, 3, 3],
    "class-iii-a": [2, 2, 1, 4, 1, 1, 6, 6, 1, 2, 7, 2, 3, 3],
    "class-iii-b": [2, 2, 1, 4, 1, 1, 6, 6, 1, 2, 6, 2, 3, 3],
}
AEPPLI = {
    "iwasawa": [3, 3, 2, 8, 2, 1, 6, 6, 1, 3, 4, 3, 2, 2],
    "class-ii-a": [3, 3, 2, 7, 2, 1, 6, 6, 1, 2, 4, 2, 2, 2],
    "class-ii-b": [3, 3, 2, 6, 2, 1, 6, 6, 1, 2, 4, 2, 2, 2],
    "class-iii-a": [3, 3, 2, 7, 2, 1, 6, 6, 1, 1, 4, 1, 2, 2],
    "class-iii-b": [3, 3, 2, 6, 2, 1, 6, 6, 1, 1, 4, 1, 2, 2],
}
BETTI = [1, 4, 8, 10, 8, 4, 1]
H22_BC = {"iwasawa": 8, "class-ii-a": 7, "class-ii-b": 6, "class-iii-a": 7, "class-iii-b": 6}
H20_BC = {"iwasawa": 3, "class-ii-a": 2, "class-ii-b": 2, "class-iii-a": 1, "class-iii-b": 1}
SUBCLASS = {"iwasawa": "(i)", "class-ii-a": "(ii.a)", "class-ii-b": "(ii.b)",
            "class-iii-a": "(iii.a)", "class-iii-b": "(iii.b)"}
# Derived by this implementation once, then frozen.
BC_TO_DBAR_22 = 6

HARMONIC_BC = {
    (1, 0): [M((1,)), M((2,))],
    (3, 0): [M((1, 2, 3))],
    (1, 1): [M((1,), (1,)), M((1,), (2,)), M((2,), (1,)), M((2,), (2,))],
    (3, 2): [M((1, 2, 3), (1, 2)), M((1, 2, 3), (1, 3)), M((1, 2, 3), (2, 3))],
    (3, 1): [M((1, 2, 3), (1,)), M((1, 2, 3), (2,))],
}


def emit(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {detail}"
    cap = getattr(emit, "capman", None)
    if cap is not None:
        with cap.global_and_fixture_disabled():
            sys.stdout.write("\n" + line + "\n")
    else:
        print(line)
    return ok


@pytest.fixture(autouse=True)
def _uncaptured(request):
    emit.capman = request.config.pluginmanager.getplugin("capturemanager")
    yield
    emit.capman = None


def P(name):
    return catalog.get(name).presentation


def fresh(name):
    """Re-parse a preset so that timings do not benefit from cached matrices."""
    return parse(P(name).to_text())


def c1_de_rham():
    pres = fresh("iwasawa")
    t0 = time.perf_counter()
    b = [betti(pres, k) for k in range(7)]
    dt = time.perf_counter() - t0
    return emit(1, b == BETTI and dt < 1.0, f"iwasawa Betti numbers {tuple(b)} in {dt:.3f}s")


def c2_dolbeault():
    bad = []
    for name in DEFORMED:
        got = table(P(name), "dbar")
        expected = {**dict(zip(KEYS, DOLBEAULT[ROW[name]])), (0, 0): 1, (3, 3): 1}
        bad += [(name, k) for k, v in expected.items() if got[k] != v]
    return emit(2, not bad, f"Dolbeault rows, 16 entries x 5 presets; mismatches {bad}")


def c3_bott_chern():
    bad = []
    for name in DEFORMED:
        got = table(P(name), "BC")
        bad += [(name, k) for k, v in zip(KEYS, BOTT_CHERN[name]) if got[k] != v]
        if got[(2, 2)] != H22_BC[name] or got[(2, 0)] != H20_BC[name]:
            bad.append((name, "subclass entries"))
        if (got[(1, 0)], got[(2, 1)], got[(3, 2)]) != (2, 6, 3):
            bad.append((name, "odd-degree entries"))
    h22 = "/".join(str(table(P(n), "BC")[(2, 2)]) for n in DEFORMED)
    return emit(3, not bad, f"Bott-Chern rows, h22 = {h22}; mismatches {bad}")


def c4_aeppli():
    bad = []
    for name in DEFORMED:
        got = table(P(name), "A")
        bad += [(name, k) for k, v in zip(KEYS, AEPPLI[name]) if got[k] != v]
    for name in catalog.names():
        a, bc = table(P(name), "A"), table(P(name), "BC")
        bad += [(name, "A=BC*", (p, q)) for p, q in bidegrees(3) if a[(p, q)] != bc[(3 - q, 3 - p)]]
    return emit(4, not bad, f"Aeppli rows and A/BC duality on all presets; mismatches {bad}")


def c5_harmonic():
    bad = []
    pres = P("iwasawa")
    for (p, q), monos in HARMONIC_BC.items():
        b = basis(3, p, q)
        got = [form_to_vector(f, b) for f in harmonic(pres, "BC", p, q)]
        want = [form_to_vector(Form.monomial(m), b) for m in monos]
        r = span_rank(got + want)
        if not (len(got) == len(want) == span_rank(got) == r):
            bad.append((p, q))
    return emit(5, not bad, f"iwasawa BC harmonic spans at {list(HARMONIC_BC)}; mismatches {bad}")


def c6_oracles():
    presets = [fresh(name) for name in catalog.names()]
    t0 = time.perf_counter()
    bad = []
    for name, pres in zip(catalog.names(), presets):
        chk = cross_check(pres, THEORIES)
        bad += [(name, *m) for m in chk.mismatches]
    dt = time.perf_counter() - t0
    return emit(6, not bad and dt < 5.0, f"quotient = harmonic for all presets/theories in {dt:.3f}s; "
                                         f"mismatches {bad}")


def c7_torus():
    pres = P("torus3")
    ok = all(table(pres, th)[(p, q)] == comb(3, p) * comb(3, q)
             for th in ("BC", "A", "dbar") for p, q in bidegrees(3))
    ok &= all(betti(pres, k) == comb(6, k) for k in range(7))
    ok &= del_delbar_lemma(pres).satisfied
    for p, q in bidegrees(3):
        r = natural_map_ranks(pres, p, q)
        full = comb(3, p) * comb(3, q)
        ok &= r.bc_to_dbar == r.bc_to_dr == r.dbar_to_a == full
    return emit(7, ok, "torus3 binomial tables, lemma and full-rank natural maps")


def c8_structure():
    bad = []
    for name in catalog.names():
        pres = P(name)
        D = differentials(pres)
        for p, q in bidegrees(3):
            if p + 2 <= 3 and not (D.del_(p + 1, q) @ D.del_(p, q)).is_zero():
                bad.append((name, "del^2", p, q))
            if q + 2 <= 3 and not (D.delbar(p, q + 1) @ D.delbar(p, q)).is_zero():
                bad.append((name, "delbar^2", p, q))
            if p + 1 <= 3 and q + 1 <= 3:
                anti = D.del_(p, q + 1) @ D.delbar(p, q) + D.delbar(p + 1, q) @ D.del_(p, q)
                if not anti.is_zero():
                    bad.append((name, "anticommutator", p, q))
        bc = table(pres, "BC")
        bad += [(name, "conj", k) for k in bidegrees(3) if bc[k] != bc[k[::-1]]]
        bad += [(name, c.name) for c in dualities(pres) if c.group == "frolicher" and not c.passed]
        if validate(pres).nilpotent and sum((-1) ** k * betti(pres, k) for k in range(7)) != 0:
            bad.append((name, "euler"))
    return emit(8, not bad, f"double-complex identities, BC symmetry, Frolicher, Euler; failures {bad}")


def c9_non_injective():
    r = natural_map_ranks(P("iwasawa"), 2, 2)
    ok = r.bc_to_dbar == BC_TO_DBAR_22 and r.bc_to_dbar < r.h_bc == 8
    return emit(9, ok, f"rank(H22_BC -> H22_dbar) = {r.bc_to_dbar} < h22_BC = {r.h_bc}")


def c10_classification():
    got = {n: classify_deformation(catalog.get(n).sigma) for n in DEFORMED}
    zero = classify_deformation(first_order_sigma(DeformationParameter()))
    ok = got == SUBCLASS and zero == "(i)"
    return emit(10, ok, f"preset subclasses {list(got.values())}; first_order_sigma(0) -> {zero}")


N4 = """ndim 4
label iwasawa+C
d f1 = 0
d f2 = 0
d f3 = (-1,0) f1^f2
d f4 = 0
"""


def c11_performance():
    t0 = time.perf_counter()
    pres = parse(N4)
    chk = cross_check(pres, THEORIES)
    dt = time.perf_counter() - t0
    b = [chk.tables["dR"][k] for k in range(9)]
    return emit(11, chk.ok and dt < 10.0, f"n=4 five-theory cross-check in {dt:.3f}s, b = {b}")


CRITERIA = [c1_de_rham, c2_dolbeault, c3_bott_chern, c4_aeppli, c5_harmonic, c6_oracles,
            c7_torus, c8_structure, c9_non_injective, c10_classification, c11_performance]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion):
    assert criterion()


def test_reference_fixtures_agree_with_frozen_tables():
    for name in DEFORMED:
        exp = catalog.get(name).expected
        assert [exp["dbar"][k] for k in KEYS] == DOLBEAULT[ROW[name]]
        assert [exp["BC"][k] for k in KEYS] == BOTT_CHERN[name]
        assert [exp["A"][k] for k in KEYS] == AEPPLI[name]
        assert [exp["dR"][k] for k in range(1, 6)] == BETTI[1:6]


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
