"""Lie algebras with complex structure, given by structure equations on a (1,0) co-frame.

A presentation lists ``d phi^j`` for j = 1..n.  Conjugate generators get
``d phibar^j = conj(d phi^j)`` and the differential extends to the whole
exterior algebra by the Leibniz rule.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from . import exterior as ext
from .exterior import Form, Monomial, basis, component, conjugate, indices, total_basis
from .linalg import Matrix, hstack, rank, vstack
from .scalars import ONE, GaussianRational, parse_gaussian

__all__ = ["Presentation", "ParseError", "IntegrabilityError", "parse", "validate",
           "differentials", "flags", "DifferentialMatrices", "StructureFlags",
           "ValidationReport"]


class ParseError(ValueError):
    """Malformed structure-equation text; carries a 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


class IntegrabilityError(ParseError):
    """A (0,2) term in some d phi^j: the almost complex structure is not integrable."""


@dataclass(frozen=True)
class Presentation:
    n: int
    diff: tuple[Form, ...]
    label: str = ""
    _dcache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one generator")
        if len(self.diff) != self.n:
            raise ValueError(f"expected {self.n} structure equations, got {len(self.diff)}")
        full = (1 << self.n) - 1
        for j, f in enumerate(self.diff, 1):
            for m in f.terms:
                if m.degree != 2 or m.holo & ~full or m.anti & ~full:
                    raise ValueError(f"d f{j} has a term {m} that is not a 2-form on {self.n} generators")

    @classmethod
    def from_equations(cls, n: int, equations: dict[int, Form], label: str = "") -> "Presentation":
        return cls(n, tuple(equations.get(j, Form()) for j in range(1, n + 1)), label)

    def generator_differential(self, j: int, anti: bool = False) -> Form:
        f = self.diff[j - 1]
        return conjugate(f) if anti else f

    def d(self, form: Form) -> Form:
        out = Form()
        for m, c in form.terms.items():
            dm = _d_monomial(self, m)
            if dm:
                out = out + dm.scale(c)
        return out

    def del_(self, form: Form) -> Form:
        """The (1,0) part of d on each homogeneous piece."""
        out = Form()
        for (p, q) in form.bidegrees():
            out = out + component(self.d(component(form, p, q)), p + 1, q)
        return out

    def delbar(self, form: Form) -> Form:
        out = Form()
        for (p, q) in form.bidegrees():
            out = out + component(self.d(component(form, p, q)), p, q + 1)
        return out

    def to_text(self) -> str:
        lines = [f"ndim {self.n}"]
        if self.label:
            lines.append(f"label {self.label}")
        for j, f in enumerate(self.diff, 1):
            if not f:
                lines.append(f"d f{j} = 0")
            else:
                lines.append(f"d f{j} = " + " + ".join(f"{c} {m}" for m, c in f))
        return "\n".join(lines) + "\n"


def _d_monomial(pres: Presentation, m: Monomial) -> Form:
    hit = pres._dcache.get(m)
    if hit is None:
        hit = pres._dcache[m] = _leibniz(pres, m)
    return hit


def _leibniz(pres: Presentation, m: Monomial) -> Form:
    # d(g1^...^gk) = sum_i (-1)^i g1^..^d(gi)^..^gk, gens ordered holo then anti
    gens = [(j, False) for j in indices(m.holo)] + [(j, True) for j in indices(m.anti)]
    out: dict[Monomial, GaussianRational] = {}
    for i, (j, anti) in enumerate(gens):
        dg = pres.generator_differential(j, anti)
        if not dg:
            continue
        before = Monomial(*_mask_pair(gens[:i]))
        after = Monomial(*_mask_pair(gens[i + 1:]))
        for t, c in dg.terms.items():
            s1, m1 = ext.monomial_wedge(before, t)
            if not s1:
                continue
            s2, m2 = ext.monomial_wedge(m1, after)
            if not s2:
                continue
            sign = s1 * s2 * (-1 if i & 1 else 1)
            v = c if sign > 0 else -c
            prev = out.get(m2)
            out[m2] = v if prev is None else prev + v
    return Form._raw({k: v for k, v in out.items() if v})


def _mask_pair(gens) -> tuple[int, int]:
    h = a = 0
    for j, anti in gens:
        if anti:
            a |= 1 << (j - 1)
        else:
            h |= 1 << (j - 1)
    return h, a


# ---------------------------------------------------------------- parsing

_NDIM = re.compile(r"^ndim\s+(\S+)\s*$")
_LABEL = re.compile(r"^label(?:\s+(.*?))?\s*$")
_DLINE = re.compile(r"^d\s*f\s*(\d+)\s*=(.*)$")
_FACTOR = re.compile(r"([fF])\s*(\d+)")


def parse(text: str) -> Presentation:
    """Parse the line-oriented structure-equation format.

    ::

        ndim 3
        label Iwasawa
        d f1 = 0
        d f2 = 0
        d f3 = (-1,0) f1^f2
    """
    n = None
    label = ""
    eqs: dict[int, Form] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        if m := _NDIM.match(stripped):
            if n is not None:
                raise ParseError("duplicate ndim line", lineno, indent + 1)
            try:
                n = int(m.group(1))
            except ValueError:
                raise ParseError(f"ndim expects a positive integer, got {m.group(1)!r}",
                                 lineno, indent + m.start(1) + 1) from None
            if n < 1:
                raise ParseError("ndim must be positive", lineno, indent + m.start(1) + 1)
        elif m := _LABEL.match(stripped):
            label = m.group(1) or ""
        elif m := _DLINE.match(stripped):
            if n is None:
                raise ParseError("'d' line before 'ndim'", lineno, indent + 1)
            j = int(m.group(1))
            if not 1 <= j <= n:
                raise ParseError(f"generator f{j} out of range 1..{n}", lineno, indent + m.start(1) + 1)
            if j in eqs:
                raise ParseError(f"duplicate equation for d f{j}", lineno, indent + 1)
            eqs[j] = _parse_rhs(m.group(2), n, lineno, indent + m.start(2))
        else:
            raise ParseError(f"unrecognised line: {stripped!r}", lineno, indent + 1)
    if n is None:
        raise ParseError("missing 'ndim' line")
    missing = [j for j in range(1, n + 1) if j not in eqs]
    if missing:
        raise ParseError("missing equations for " + ", ".join(f"d f{j}" for j in missing))
    return Presentation.from_equations(n, eqs, label)


def _parse_rhs(rhs: str, n: int, lineno: int, offset: int) -> Form:
    pos = 0
    size = len(rhs)

    def skip():
        nonlocal pos
        while pos < size and rhs[pos].isspace():
            pos += 1

    def fail(msg, at=None):
        raise ParseError(msg, lineno, offset + (pos if at is None else at) + 1)

    skip()
    if rhs[pos:].strip() == "0":
        return Form()
    out = Form()
    while True:
        skip()
        if pos >= size or rhs[pos] != "(":
            fail("expected a coefficient '(re, im)'")
        close = rhs.find(")", pos)
        if close < 0:
            fail("unterminated coefficient")
        try:
            coeff = parse_gaussian(rhs[pos:close + 1])
        except ValueError as exc:
            fail(str(exc))
        start = pos
        pos = close + 1
        skip()
        factors = []
        while True:
            m = _FACTOR.match(rhs, pos)
            if not m:
                fail("expected a generator f<k> or F<k>")
            k = int(m.group(2))
            if not 1 <= k <= n:
                fail(f"generator {m.group(1)}{k} out of range 1..{n}")
            factors.append((m.group(1) == "F", k, pos))
            pos = m.end()
            skip()
            if pos < size and rhs[pos] == "^":
                pos += 1
                skip()
                continue
            break
        if len(factors) != 2:
            fail("structure equations need 2-form terms", start)
        if factors[0][0] and factors[1][0]:
            raise IntegrabilityError("term with two F factors is of bidegree (0,2); "
                                     "the complex structure would not be integrable",
                                     lineno, offset + start + 1)
        term = ext.one()
        for anti, k, _ in factors:
            term = term ^ (ext.phibar(k) if anti else ext.phi(k))
        if not term:
            fail("repeated generator in term", start)
        out = out + term.scale(coeff)
        skip()
        if pos >= size:
            return out
        if rhs[pos] != "+":
            fail("expected '+' between terms")
        pos += 1


# ---------------------------------------------------------------- matrices

def _form_matrix(pres: Presentation, src: Sequence[Monomial], dst: Sequence[Monomial],
                 op) -> Matrix:
    where = {m: i for i, m in enumerate(dst)}
    rows = [{} for _ in dst]
    for j, m in enumerate(src):
        for t, c in op(m).terms.items():
            rows[where[t]][j] = c
    return Matrix(len(dst), len(src), rows)


class DifferentialMatrices:
    """Matrices of del, delbar and d in the :func:`exterior.basis` order.

    Columns index the source basis, rows the target basis.  Bidegrees outside
    ``0..n`` are zero spaces, so every map is defined for every (p, q).
    """

    def __init__(self, pres: Presentation):
        self.pres = pres
        self.n = pres.n
        self._cache: dict = {}

    def _basis(self, p, q):
        if 0 <= p <= self.n and 0 <= q <= self.n:
            return basis(self.n, p, q)
        return []

    def _total(self, k):
        return total_basis(self.n, k) if 0 <= k <= 2 * self.n else []

    def _get(self, key, build):
        m = self._cache.get(key)
        if m is None:
            m = self._cache[key] = build()
        return m

    def dim(self, p: int, q: int) -> int:
        return ext.dim(self.n, p, q)

    def del_(self, p: int, q: int) -> Matrix:
        """del: L^{p,q} -> L^{p+1,q}."""
        def build():
            d = self.pres
            return _form_matrix(d, self._basis(p, q), self._basis(p + 1, q),
                                lambda m: component(_d_monomial(d, m), p + 1, q))
        return self._get(("del", p, q), build)

    def delbar(self, p: int, q: int) -> Matrix:
        """delbar: L^{p,q} -> L^{p,q+1}."""
        def build():
            d = self.pres
            return _form_matrix(d, self._basis(p, q), self._basis(p, q + 1),
                                lambda m: component(_d_monomial(d, m), p, q + 1))
        return self._get(("delbar", p, q), build)

    def d_pure(self, p: int, q: int) -> Matrix:
        """d restricted to L^{p,q}, landing in L^{p+1,q} (+) L^{p,q+1} (stacked in that order)."""
        return self._get(("dpure", p, q), lambda: vstack(self.del_(p, q), self.delbar(p, q)))

    def ddbar(self, p: int, q: int) -> Matrix:
        """del delbar: L^{p,q} -> L^{p+1,q+1}."""
        return self._get(("ddbar", p, q), lambda: self.del_(p, q + 1) @ self.delbar(p, q))

    def d(self, k: int) -> Matrix:
        """d: L^k -> L^{k+1} assembled from the del/delbar blocks."""
        def build():
            n = self.n
            src_bidegs = [(p, k - p) for p in range(n, -1, -1) if 0 <= k - p <= n]
            dst_bidegs = [(p, k + 1 - p) for p in range(n, -1, -1) if 0 <= k + 1 - p <= n]
            dst_off = {}
            off = 0
            for b in dst_bidegs:
                dst_off[b] = off
                off += self.dim(*b)
            nrows = off
            blocks = []
            for (p, q) in src_bidegs:
                col = Matrix(nrows, self.dim(p, q))
                for target, mat in (((p + 1, q), self.del_(p, q)), ((p, q + 1), self.delbar(p, q))):
                    if target in dst_off:
                        o = dst_off[target]
                        for i, r in enumerate(mat.rows):
                            if r:
                                col.rows[o + i] = dict(r)
                blocks.append(col)
            if not blocks:
                return Matrix(nrows, 0)
            return hstack(*blocks)
        return self._get(("d", k), build)

    def d_direct(self, k: int) -> Matrix:
        """d on L^k built straight from the Leibniz rule, without the block assembly."""
        d = self.pres
        return _form_matrix(d, self._total(k), self._total(k + 1), lambda m: _d_monomial(d, m))


@lru_cache(maxsize=64)
def differentials(pres: Presentation) -> DifferentialMatrices:
    return DifferentialMatrices(pres)


# ---------------------------------------------------------------- validation

@dataclass(frozen=True)
class StructureFlags:
    holomorphically_parallelizable: bool
    abelian: bool
    nilpotent_coframe: bool


def flags(pres: Presentation) -> StructureFlags:
    """Structural flags read off the equations on the supplied co-frame.

    ``nilpotent_coframe`` is the triangular condition checked for this
    generator order only; no reordering is attempted.
    """
    par = all(f.is_homogeneous(2, 0) for f in pres.diff)
    abel = all(f.is_homogeneous(1, 1) for f in pres.diff)
    tri = True
    for j, f in enumerate(pres.diff, 1):
        below = (1 << (j - 1)) - 1
        for m in f.terms:
            if (m.holo | m.anti) & ~below:
                tri = False
    return StructureFlags(par, abel, tri)


def bracket_constants(pres: Presentation) -> list[list[list[GaussianRational]]]:
    """``c[a][b]``: coordinates of [e_a, e_b] on the complexified dual frame.

    Index ``a < n`` is e_a dual to phi^{a+1}, ``a >= n`` its conjugate.  Uses
    d theta(x, y) = -theta([x, y]).
    """
    n = pres.n
    N = 2 * n
    zero = GaussianRational()
    c = [[[zero] * N for _ in range(N)] for _ in range(N)]

    def mono(a, b):
        h = an = 0
        for x in (a, b):
            if x < n:
                h |= 1 << x
            else:
                an |= 1 << (x - n)
        return Monomial(h, an)

    for t in range(N):
        dt = pres.generator_differential(t % n + 1, anti=t >= n)
        for a in range(N):
            for b in range(a + 1, N):
                v = dt.coeff(mono(a, b))
                if v:
                    c[a][b][t] = -v
                    c[b][a][t] = v
    return c


def lower_central_series(pres: Presentation) -> list[int]:
    """Dimensions of g = g^1 > g^2 = [g, g] > ... until the series stabilises."""
    c = bracket_constants(pres)
    N = 2 * pres.n
    from .linalg import _reduce_rows
    current = [{i: ONE} for i in range(N)]
    dims = [N]
    while True:
        prods = []
        for a in range(N):
            for v in current:
                w: dict = {}
                for b, vb in v.items():
                    for t, x in enumerate(c[a][b]):
                        if x:
                            w[t] = w.get(t, GaussianRational()) + vb * x
                prods.append({t: x for t, x in w.items() if x})
        nxt = list(_reduce_rows(prods).values())
        if len(nxt) == dims[-1]:
            return dims
        dims.append(len(nxt))
        current = nxt
        if not nxt:
            return dims


def is_unimodular(pres: Presentation) -> bool:
    c = bracket_constants(pres)
    N = 2 * pres.n
    return all(not sum((c[a][b][b] for b in range(N)), GaussianRational()) for a in range(N))


@dataclass
class ValidationReport:
    d_squared: dict[str, bool]
    integrable: bool
    lower_central_dims: list[int]
    unimodular: bool
    flags: StructureFlags
    notes: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.integrable and all(self.d_squared.values())

    @property
    def nilpotent(self) -> bool:
        return self.lower_central_dims[-1] == 0

    @property
    def step(self) -> int | None:
        """Nilpotency step: s with g^{s+1} = 0, or None."""
        return len(self.lower_central_dims) - 1 if self.nilpotent else None

    def summary(self) -> str:
        parts = ["valid" if self.valid else "INVALID"]
        if self.nilpotent:
            parts.append("abelian (1-step nilpotent)" if self.step == 1 else f"{self.step}-step nilpotent")
        else:
            parts.append("NOT nilpotent")
        if self.flags.holomorphically_parallelizable:
            parts.append("holomorphically parallelizable")
        if self.flags.abelian:
            parts.append("abelian complex structure")
        return "; ".join(parts)

    def lines(self) -> list[str]:
        out = [self.summary()]
        for gen, ok in self.d_squared.items():
            out.append(f"  d^2 {gen} = 0: {'ok' if ok else 'FAIL'}")
        out.append(f"  integrable (no (0,2) terms): {'ok' if self.integrable else 'FAIL'}")
        out.append("  lower central series dims: " + " > ".join(map(str, self.lower_central_dims)))
        out.append(f"  unimodular: {'yes' if self.unimodular else 'no'}")
        f = self.flags
        out.append(f"  holomorphically parallelizable: {f.holomorphically_parallelizable}")
        out.append(f"  abelian complex structure: {f.abelian}")
        out.append(f"  nilpotent complex structure on given co-frame: {f.nilpotent_coframe}")
        out.extend(f"  note: {s}" for s in self.notes)
        return out


def validate(pres: Presentation) -> ValidationReport:
    d2 = {}
    for j in range(1, pres.n + 1):
        d2[f"f{j}"] = not pres.d(pres.diff[j - 1])
        d2[f"F{j}"] = not pres.d(conjugate(pres.diff[j - 1]))
    integrable = all(not component(f, 0, 2) for f in pres.diff)
    report = ValidationReport(d2, integrable, lower_central_series(pres), is_unimodular(pres), flags(pres))
    report.notes.append("nilpotent-complex-structure flag checks the supplied co-frame order only")
    if not report.nilpotent:
        report.notes.append("Lie algebra is not nilpotent: invariant cohomology is computed, "
                            "but its agreement with the cohomology of a compact quotient is not verified")
    if not report.unimodular:
        report.notes.append("Lie algebra is not unimodular: Hodge-star and Serre-type dualities need not hold")
    return report
