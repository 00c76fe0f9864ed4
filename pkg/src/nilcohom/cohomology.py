"""De Rham, Dolbeault, Bott-Chern and Aeppli cohomology of the finite-dimensional
double complex of invariant forms.

Every dimension is available two ways: as a quotient (kernel rank minus image
rank) and as the kernel of a stacked "harmonic" system where adjoints are
conjugate transposes in the orthonormal monomial basis.  The two are
independent routes to the same number and are cross-checked.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable

from . import exterior as ext
from .exterior import Form, Monomial, basis, total_basis
from .linalg import Matrix, hstack, kernel_basis, rank, span_rank, vstack
from .scalars import ONE, GaussianRational
from .structure import Presentation, differentials

__all__ = [
    "THEORIES", "BIGRADED", "rank", "kernel_basis", "betti", "dolbeault", "conj_dolbeault",
    "bott_chern", "aeppli", "quotient_dim", "harmonic", "harmonic_dim", "HarmonicBasis",
    "CohomologyTable", "table", "cross_check", "dualities", "Check", "natural_map_ranks",
    "NaturalMapRanks", "del_delbar_lemma", "LemmaReport", "metric_classes", "MetricClasses",
    "bidegrees", "frolicher", "fundamental_form", "theory_tag", "induced_rank",
]

THEORIES = ("dR", "dbar", "del", "BC", "A")
BIGRADED = ("dbar", "del", "BC", "A")

_ALIASES = {
    "dr": "dR", "derham": "dR", "de_rham": "dR",
    "dbar": "dbar", "dolbeault": "dbar", "delbar": "dbar",
    "del": "del", "conj_dolbeault": "del", "partial": "del",
    "bc": "BC", "bott_chern": "BC", "bott-chern": "BC",
    "a": "A", "aeppli": "A",
}


def theory_tag(name: str) -> str:
    try:
        return _ALIASES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown cohomology theory {name!r}; expected one of {THEORIES}") from None


def bidegrees(n: int) -> list[tuple[int, int]]:
    """All (p, q), ordered by total degree then p descending."""
    return [(p, k - p) for k in range(2 * n + 1) for p in range(min(k, n), max(0, k - n) - 1, -1)]


def _dim(n, p, q):
    return ext.dim(n, p, q)


def _check_bideg(pres, p, q):
    if not (0 <= p <= pres.n and 0 <= q <= pres.n):
        raise ValueError(f"bidegree ({p},{q}) out of range for n={pres.n}")


# ------------------------------------------------------------- quotient route

def betti(pres: Presentation, k: int) -> int:
    if not 0 <= k <= 2 * pres.n:
        raise ValueError(f"degree {k} out of range")
    D = differentials(pres)
    dk = D.d(k)
    return dk.ncols - rank(dk) - rank(D.d(k - 1)) if k > 0 else dk.ncols - rank(dk)


def dolbeault(pres: Presentation, p: int, q: int) -> int:
    _check_bideg(pres, p, q)
    D = differentials(pres)
    return _dim(pres.n, p, q) - rank(D.delbar(p, q)) - rank(D.delbar(p, q - 1))


def conj_dolbeault(pres: Presentation, p: int, q: int) -> int:
    _check_bideg(pres, p, q)
    D = differentials(pres)
    return _dim(pres.n, p, q) - rank(D.del_(p, q)) - rank(D.del_(p - 1, q))


def bott_chern(pres: Presentation, p: int, q: int) -> int:
    """dim (ker d on L^{p,q}) / (im del delbar)."""
    _check_bideg(pres, p, q)
    D = differentials(pres)
    return _dim(pres.n, p, q) - rank(D.d_pure(p, q)) - rank(D.ddbar(p - 1, q - 1))


def aeppli(pres: Presentation, p: int, q: int) -> int:
    """dim (ker del delbar) / (im del + im delbar); the images can overlap."""
    _check_bideg(pres, p, q)
    D = differentials(pres)
    image = hstack(D.del_(p - 1, q), D.delbar(p, q - 1))
    return _dim(pres.n, p, q) - rank(D.ddbar(p, q)) - rank(image)


def quotient_dim(pres: Presentation, theory: str, p: int, q: int | None = None) -> int:
    theory = theory_tag(theory)
    if theory == "dR":
        return betti(pres, p)
    return {"dbar": dolbeault, "del": conj_dolbeault, "BC": bott_chern, "A": aeppli}[theory](pres, p, q)


# ------------------------------------------------------------- harmonic route

def harmonic_system(pres: Presentation, theory: str, p: int, q: int | None = None) -> Matrix:
    """Stacked linear system whose kernel is the harmonic space."""
    theory = theory_tag(theory)
    D = differentials(pres)
    if theory == "dR":
        return vstack(D.d(p), D.d(p - 1).H)
    _check_bideg(pres, p, q)
    if theory == "BC":
        return vstack(D.del_(p, q), D.delbar(p, q), D.ddbar(p - 1, q - 1).H)
    if theory == "A":
        return vstack(D.ddbar(p, q), D.del_(p - 1, q).H, D.delbar(p, q - 1).H)
    if theory == "dbar":
        return vstack(D.delbar(p, q), D.delbar(p, q - 1).H)
    return vstack(D.del_(p, q), D.del_(p - 1, q).H)


@dataclass(frozen=True)
class HarmonicBasis:
    theory: str
    degree: tuple  # (k,) for de Rham, (p, q) otherwise
    forms: tuple[Form, ...]

    def __len__(self):
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)


def _space_basis(pres, theory, p, q):
    return total_basis(pres.n, p) if theory == "dR" else basis(pres.n, p, q)


def vector_to_form(vec, monos: list[Monomial]) -> Form:
    return Form({m: c for m, c in zip(monos, vec) if c})


def form_to_vector(form: Form, monos: list[Monomial]) -> list[GaussianRational]:
    where = {m: i for i, m in enumerate(monos)}
    vec = [GaussianRational()] * len(monos)
    for m, c in form.terms.items():
        if m not in where:
            raise ValueError(f"{m} is not in the target space")
        vec[where[m]] = c
    return vec


def harmonic(pres: Presentation, theory: str, p: int, q: int | None = None) -> HarmonicBasis:
    """Basis of the harmonic space for the diagonal metric sum phi^j (.) phibar^j."""
    theory = theory_tag(theory)
    if theory == "dR" and not 0 <= p <= 2 * pres.n:
        raise ValueError(f"degree {p} out of range")
    vecs = kernel_basis(harmonic_system(pres, theory, p, q))
    monos = _space_basis(pres, theory, p, q)
    deg = (p,) if theory == "dR" else (p, q)
    return HarmonicBasis(theory, deg, tuple(vector_to_form(v, monos) for v in vecs))


def harmonic_dim(pres: Presentation, theory: str, p: int, q: int | None = None) -> int:
    m = harmonic_system(pres, theory, p, q)
    return m.ncols - rank(m)


# ------------------------------------------------------------- tables

@dataclass
class CohomologyTable:
    theory: str
    dims: dict  # (p, q) -> int, or k -> int for de Rham
    method: str = "quotient"

    def __getitem__(self, key):
        return self.dims[key]

    def rows(self) -> list[tuple[str, int, int | None, int]]:
        if self.theory == "dR":
            return [(self.theory, k, None, d) for k, d in sorted(self.dims.items())]
        return [(self.theory, p, q, self.dims[(p, q)]) for (p, q) in
                sorted(self.dims, key=lambda b: (b[0] + b[1], -b[0]))]


def table(pres: Presentation, theory: str, method: str = "quotient") -> CohomologyTable:
    theory = theory_tag(theory)
    fn = quotient_dim if method == "quotient" else harmonic_dim
    if method not in ("quotient", "harmonic"):
        raise ValueError(f"unknown method {method!r}")
    if theory == "dR":
        dims = {k: fn(pres, "dR", k) for k in range(2 * pres.n + 1)}
    else:
        dims = {b: fn(pres, theory, *b) for b in bidegrees(pres.n)}
    return CohomologyTable(theory, dims, method)


@dataclass
class CrossCheck:
    mismatches: list[tuple[str, tuple, int, int]] = field(default_factory=list)
    tables: dict[str, CohomologyTable] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def cross_check(pres: Presentation, theories: Iterable[str] = THEORIES) -> CrossCheck:
    """Compare quotient and harmonic dimensions everywhere."""
    out = CrossCheck()
    for th in theories:
        th = theory_tag(th)
        tq = table(pres, th, "quotient")
        th_ = table(pres, th, "harmonic")
        for key, v in tq.dims.items():
            if th_.dims[key] != v:
                out.mismatches.append((th, key, v, th_.dims[key]))
        out.tables[th] = tq
    return out


# ------------------------------------------------------------- dualities

@dataclass(frozen=True)
class Check:
    group: str
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def frolicher(pres: Presentation, dbar: CohomologyTable | None = None,
              dr: CohomologyTable | None = None) -> list[Check]:
    n = pres.n
    dbar = dbar or table(pres, "dbar")
    dr = dr or table(pres, "dR")
    out = []
    for k in range(2 * n + 1):
        s = sum(dbar[(p, k - p)] for p in range(n + 1) if 0 <= k - p <= n)
        out.append(Check("frolicher", f"sum h^(p,q)_dbar over p+q={k} >= b_{k}", s >= dr[k], f"{s} vs {dr[k]}"))
    return out


def dualities(pres: Presentation) -> list[Check]:
    n = pres.n
    bc, a, db, de, dr = (table(pres, t) for t in ("BC", "A", "dbar", "del", "dR"))
    out = []
    for (p, q) in bidegrees(n):
        out.append(Check("conjugation", f"h^({p},{q})_BC = h^({q},{p})_BC",
                         bc[(p, q)] == bc[(q, p)], f"{bc[(p, q)]}, {bc[(q, p)]}"))
        out.append(Check("conjugation", f"h^({p},{q})_A = h^({q},{p})_A",
                         a[(p, q)] == a[(q, p)], f"{a[(p, q)]}, {a[(q, p)]}"))
        out.append(Check("conjugation", f"h^({p},{q})_del = h^({q},{p})_dbar",
                         de[(p, q)] == db[(q, p)], f"{de[(p, q)]}, {db[(q, p)]}"))
        s = (n - q, n - p)
        out.append(Check("star", f"h^({p},{q})_BC = h^({s[0]},{s[1]})_A",
                         bc[(p, q)] == a[s], f"{bc[(p, q)]}, {a[s]}"))
        t = (n - p, n - q)
        out.append(Check("serre", f"h^({p},{q})_dbar = h^({t[0]},{t[1]})_dbar",
                         db[(p, q)] == db[t], f"{db[(p, q)]}, {db[t]}"))
    out.extend(frolicher(pres, db, dr))
    return out


# ------------------------------------------------------------- natural maps

@dataclass(frozen=True)
class NaturalMapRanks:
    bidegree: tuple[int, int]
    bc_to_dbar: int
    bc_to_dr: int
    dbar_to_a: int
    h_bc: int
    h_dbar: int
    h_a: int
    b: int


def _image_vectors(m: Matrix) -> list[list[GaussianRational]]:
    return m.columns()


def induced_rank(sources: list, exact: list) -> int:
    """Rank of the map on classes: rank([sources | exact]) - rank(exact)."""
    return span_rank(list(sources) + list(exact)) - span_rank(exact)


def _embed(form: Form, monos) -> list:
    return form_to_vector(form, monos)


def natural_map_ranks(pres: Presentation, p: int, q: int, lifts: dict | None = None) -> NaturalMapRanks:
    """Ranks of H_BC -> H_dbar, H_BC -> H_dR and H_dbar -> H_A at (p, q).

    ``lifts`` may override the representatives used for the source spaces
    (keys ``"BC"``, ``"dbar"``); by default harmonic ones are used.
    """
    _check_bideg(pres, p, q)
    D = differentials(pres)
    n = pres.n
    lifts = lifts or {}
    bc_forms = lifts.get("BC") or harmonic(pres, "BC", p, q).forms
    db_forms = lifts.get("dbar") or harmonic(pres, "dbar", p, q).forms
    local = basis(n, p, q)
    total = total_basis(n, p + q)

    bc_local = [form_to_vector(f, local) for f in bc_forms]
    r1 = induced_rank(bc_local, _image_vectors(D.delbar(p, q - 1)))
    r2 = induced_rank([_embed(f, total) for f in bc_forms], _image_vectors(D.d(p + q - 1)) if p + q else [])
    exact_a = _image_vectors(D.del_(p - 1, q)) + _image_vectors(D.delbar(p, q - 1))
    r3 = induced_rank([form_to_vector(f, local) for f in db_forms], exact_a)
    return NaturalMapRanks((p, q), r1, r2, r3, bott_chern(pres, p, q), dolbeault(pres, p, q),
                           aeppli(pres, p, q), betti(pres, p + q))


@dataclass
class LemmaReport:
    per_bidegree: dict[tuple[int, int], bool]
    ranks: dict[tuple[int, int], NaturalMapRanks]

    @property
    def satisfied(self) -> bool:
        return all(self.per_bidegree.values())

    @property
    def first_failure(self) -> tuple[int, int] | None:
        for b, ok in self.per_bidegree.items():
            if not ok:
                return b
        return None


def del_delbar_lemma(pres: Presentation) -> LemmaReport:
    """Whether H_BC -> H_dbar -> H_A are isomorphisms at every bidegree."""
    per, ranks = {}, {}
    for b in bidegrees(pres.n):
        r = natural_map_ranks(pres, *b)
        ranks[b] = r
        per[b] = r.h_bc == r.h_dbar == r.h_a == r.bc_to_dbar == r.dbar_to_a
    return LemmaReport(per, ranks)


# ------------------------------------------------------------- metrics

@dataclass(frozen=True)
class MetricClasses:
    kahler: bool
    balanced: bool
    pluriclosed: bool
    astheno_kahler: bool
    gauduchon: bool


def _power(omega: Form, k: int) -> Form:
    out = ext.one()
    for _ in range(k):
        out = out ^ omega
    return out


def metric_classes(pres: Presentation, omega: Form) -> MetricClasses:
    """Closedness conditions on a (1,1)-form; positivity is not checked.

    Powers with negative exponent (n < 2) make the condition vacuous.
    """
    if not omega.is_homogeneous(1, 1):
        raise ValueError("omega must be of pure bidegree (1,1)")
    n = pres.n

    def ddbar(f):
        return pres.del_(pres.delbar(f))

    kahler = not pres.d(omega)
    balanced = not pres.d(_power(omega, n - 1))
    pluriclosed = not ddbar(omega)
    astheno = True if n < 2 else not ddbar(_power(omega, n - 2))
    gauduchon = not ddbar(_power(omega, n - 1))
    return MetricClasses(kahler, balanced, pluriclosed, astheno, gauduchon)


def fundamental_form(n: int) -> Form:
    """i * sum_j phi^j ^ phibar^j, the form of the diagonal metric."""
    i = GaussianRational(0, 1)
    out = Form()
    for j in range(1, n + 1):
        out = out + (ext.phi(j) ^ ext.phibar(j)).scale(i)
    return out
