from itertools import product
from math import comb

import pytest
from hypothesis import given

from nilcohom.exterior import (Form, Monomial, basis, component, conjugate, indices,
                               monomial_wedge, one, phi, phibar, total_basis, wedge)
from nilcohom.scalars import I, GaussianRational as G

from conftest import forms, monomials


def gens(m: Monomial):
    return [("f", j) for j in indices(m.holo)] + [("F", j) for j in indices(m.anti)]


def parity_sort(seq):
    """Brute-force: sign of the permutation sorting ``seq`` (holomorphic first)."""
    key = [(0 if t == "f" else 1, j) for t, j in seq]
    if len(set(key)) < len(key):
        return 0
    inv = sum(1 for a in range(len(key)) for b in range(a + 1, len(key)) if key[a] > key[b])
    return -1 if inv % 2 else 1


def test_basis_examples():
    assert basis(3, 1, 0) == [Monomial(1, 0), Monomial(2, 0), Monomial(4, 0)]
    assert [str(m) for m in basis(3, 1, 0)] == ["f1", "f2", "f3"]
    assert len(basis(3, 2, 1)) == 9
    assert basis(3, 0, 0) == [Monomial(0, 0)]
    assert str(basis(3, 0, 0)[0]) == "1"


def test_basis_out_of_range():
    with pytest.raises(ValueError):
        basis(3, 4, 0)
    with pytest.raises(ValueError):
        basis(3, -1, 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dimensions(n):
    total = 0
    for p, q in product(range(n + 1), repeat=2):
        b = basis(n, p, q)
        assert len(b) == comb(n, p) * comb(n, q) == len(set(b))
        total += len(b)
    assert total == 4 ** n
    assert sum(len(total_basis(n, k)) for k in range(2 * n + 1)) == 4 ** n


def test_wedge_examples():
    assert wedge(phi(2), phi(1)) == -(phi(1) ^ phi(2))
    assert wedge(phi(1), phi(1)) == Form()
    expected = Form({Monomial.from_indices((1,), (1,)): G(-1)})
    assert wedge(phibar(1), phi(1)) == expected


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sign_oracle_exhaustive(n):
    full = (1 << n) - 1
    monos = [Monomial(h, a) for h in range(full + 1) for a in range(full + 1)]
    for a in monos:
        for b in monos:
            sign, m = monomial_wedge(a, b)
            assert sign == parity_sort(gens(a) + gens(b)), (a, b)
            if sign:
                assert m == Monomial(a.holo | b.holo, a.anti | b.anti)


@given(monomials(), monomials())
def test_graded_anticommutativity(a, b):
    fa, fb = Form.monomial(a), Form.monomial(b)
    sign = -1 if (a.degree * b.degree) % 2 else 1
    assert wedge(fa, fb) == wedge(fb, fa).scale(sign)


@given(forms(), forms(), forms())
def test_associativity(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@given(forms(), forms(), forms())
def test_bilinearity(a, b, c):
    assert wedge(a + b, c) == wedge(a, c) + wedge(b, c)


def test_conjugate_examples():
    assert conjugate(phi(1)) == phibar(1)
    # conj(i) * phibar^1 ^ phi^2 = -i * (-phi^2 ^ phibar^1)
    w = (phi(1) ^ phibar(2)).scale(I)
    assert conjugate(w) == (phi(2) ^ phibar(1)).scale(I)


def test_conjugate_matches_generatorwise_oracle():
    # conjugate each generator, then sort by brute force
    for h in range(8):
        for a in range(8):
            m = Monomial(h, a)
            swapped = [("F" if t == "f" else "f", j) for t, j in gens(m)]
            expected = Form({Monomial(a, h): G(parity_sort(swapped))})
            assert conjugate(Form.monomial(m)) == expected


@given(forms())
def test_conjugate_involution(w):
    assert conjugate(conjugate(w)) == w


@given(forms(), forms())
def test_conjugate_is_algebra_map(a, b):
    assert conjugate(wedge(a, b)) == wedge(conjugate(a), conjugate(b))


@given(forms())
def test_conjugate_swaps_bidegree(w):
    assert conjugate(w).bidegrees() == {(q, p) for p, q in w.bidegrees()}


def test_component_examples():
    w = phi(1) + (phi(1) ^ phibar(1))
    assert component(w, 1, 1) == phi(1) ^ phibar(1)
    assert component(phi(1), 0, 1) == Form()


@given(forms())
def test_components_partition(w):
    total = Form()
    for p, q in product(range(4), repeat=2):
        total = total + component(w, p, q)
    assert total == w


def test_printing():
    w = (phi(1) ^ phi(2) ^ phibar(3)) + (phi(1)).scale(G(-1, 0))
    assert str(w) == "(-1,0) f1 + f1^f2^F3"
    assert str(one()) == "1"
    assert str(Form()) == "0"
