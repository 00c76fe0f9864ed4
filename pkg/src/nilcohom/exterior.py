"""Bigraded exterior algebra on phi^1..phi^n and their conjugates.

A :class:`Monomial` stores two bitmasks; bit ``j-1`` stands for generator
``j``.  Canonical order of generators inside a monomial is all holomorphic
ones ascending, then all anti-holomorphic ones ascending, e.g. ``f1^f3^F2``.
"""
from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Mapping, NamedTuple

from .scalars import ONE, GaussianRational

__all__ = ["Monomial", "Form", "basis", "total_basis", "dim", "phi", "phibar", "one",
           "wedge", "conjugate", "component", "indices", "mask_of"]


def indices(mask: int) -> list[int]:
    """1-based generator indices set in ``mask``, ascending."""
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def mask_of(idx: Iterable[int]) -> int:
    m = 0
    for j in idx:
        if j < 1:
            raise ValueError(f"generator indices are 1-based, got {j}")
        m |= 1 << (j - 1)
    return m


def _inversions(left: int, right: int) -> int:
    """Pairs (a in left, b in right) with a > b: transpositions to merge right into left."""
    count = 0
    while right:
        low = right & -right
        count += (left & ~((low << 1) - 1)).bit_count()
        right ^= low
    return count


class Monomial(NamedTuple):
    holo: int
    anti: int

    @classmethod
    def from_indices(cls, holo: Iterable[int] = (), anti: Iterable[int] = ()) -> "Monomial":
        return cls(mask_of(holo), mask_of(anti))

    @property
    def bidegree(self) -> tuple[int, int]:
        return self.holo.bit_count(), self.anti.bit_count()

    @property
    def degree(self) -> int:
        return self.holo.bit_count() + self.anti.bit_count()

    def sort_key(self):
        p, q = self.bidegree
        return (p + q, -p, indices(self.holo), indices(self.anti))

    def __str__(self):
        parts = [f"f{j}" for j in indices(self.holo)] + [f"F{j}" for j in indices(self.anti)]
        return "^".join(parts) if parts else "1"


def monomial_wedge(a: Monomial, b: Monomial) -> tuple[int, Monomial | None]:
    """Sign and product of two monomials; ``(0, None)`` if they share a generator."""
    if a.holo & b.holo or a.anti & b.anti:
        return 0, None
    # move b.holo left past a.anti, then merge each side
    swaps = a.anti.bit_count() * b.holo.bit_count()
    swaps += _inversions(a.holo, b.holo) + _inversions(a.anti, b.anti)
    return (-1 if swaps & 1 else 1), Monomial(a.holo | b.holo, a.anti | b.anti)


def monomial_conjugate(m: Monomial) -> tuple[int, Monomial]:
    # conj(phi^I ^ phibar^J) = phibar^I ^ phi^J = (-1)^{|I||J|} phi^J ^ phibar^I
    sign = -1 if (m.holo.bit_count() * m.anti.bit_count()) & 1 else 1
    return sign, Monomial(m.anti, m.holo)


class Form:
    """Finite Q(i)-linear combination of monomials.  Treat as immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: dict[Monomial, GaussianRational] = {}
        if terms:
            for mono, c in terms.items():
                c = GaussianRational.coerce(c)
                if c:
                    clean[Monomial(*mono)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> "Form":
        f = cls.__new__(cls)
        f.terms = terms
        return f

    @classmethod
    def monomial(cls, mono: Monomial, coeff=ONE) -> "Form":
        return cls({mono: coeff})

    # vector space -------------------------------------------------------
    def __add__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Form._raw(out)

    def __neg__(self) -> "Form":
        return Form._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "Form":
        c = GaussianRational.coerce(c)
        if not c:
            return Form()
        return Form._raw({m: c * v for m, v in self.terms.items()})

    def __rmul__(self, c) -> "Form":
        if isinstance(c, Form):
            return NotImplemented
        return self.scale(c)

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    # queries ------------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Form):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coeff(self, mono: Monomial) -> GaussianRational:
        return self.terms.get(mono, GaussianRational())

    def bidegrees(self) -> set[tuple[int, int]]:
        return {m.bidegree for m in self.terms}

    def is_homogeneous(self, p: int, q: int) -> bool:
        return all(m.bidegree == (p, q) for m in self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, GaussianRational]]:
        return iter(sorted(self.terms.items(), key=lambda t: t[0].sort_key()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self:
            parts.append(str(m) if c == 1 else f"{c} {m}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Form({self})"

    def conjugate(self) -> "Form":
        return conjugate(self)

    def component(self, p: int, q: int) -> "Form":
        return component(self, p, q)


def one() -> Form:
    return Form({Monomial(0, 0): ONE})


def phi(j: int) -> Form:
    return Form({Monomial(1 << (j - 1), 0): ONE})


def phibar(j: int) -> Form:
    return Form({Monomial(0, 1 << (j - 1)): ONE})


def wedge(a: Form, b: Form) -> Form:
    out: dict[Monomial, GaussianRational] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            sign, m = monomial_wedge(ma, mb)
            if not sign:
                continue
            c = ca * cb
            if sign < 0:
                c = -c
            s = out.get(m)
            out[m] = c if s is None else s + c
    return Form._raw({m: c for m, c in out.items() if c})


def conjugate(a: Form) -> Form:
    out = {}
    for m, c in a.terms.items():
        sign, mc = monomial_conjugate(m)
        c = c.conj()
        out[mc] = -c if sign < 0 else c
    return Form._raw(out)


def component(a: Form, p: int, q: int) -> Form:
    return Form._raw({m: c for m, c in a.terms.items() if m.bidegree == (p, q)})


def dim(n: int, p: int, q: int) -> int:
    if p < 0 or q < 0 or p > n or q > n:
        return 0
    return comb(n, p) * comb(n, q)


def basis(n: int, p: int, q: int) -> list[Monomial]:
    """Monomials of bidegree (p, q), lexicographic on (holo, anti) index lists.

    This order fixes the row/column convention of every matrix in the package.
    """
    if not (0 <= p <= n and 0 <= q <= n):
        raise ValueError(f"bidegree ({p},{q}) out of range for n={n}")
    holos = [mask_of(c) for c in combinations(range(1, n + 1), p)]
    antis = [mask_of(c) for c in combinations(range(1, n + 1), q)]
    return [Monomial(h, a) for h in holos for a in antis]


def total_basis(n: int, k: int) -> list[Monomial]:
    """Degree-k monomials, grouped by bidegree with p descending."""
    if not 0 <= k <= 2 * n:
        raise ValueError(f"degree {k} out of range for n={n}")
    out = []
    for p in range(min(k, n), max(0, k - n) - 1, -1):
        out.extend(basis(n, p, k - p))
    return out
