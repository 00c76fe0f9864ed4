"""Small deformations of the Iwasawa manifold at the structure-equation level.

For a deformation in classes (ii)/(iii) the co-frame satisfies
``d phi^1 = d phi^2 = 0`` and

    d phi^3 = s12 f1^f2 + s11b f1^F1 + s12b f1^F2 + s21b f2^F1 + s22b f2^F2.

Classes are decided from these five coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import exterior as ext
from .exterior import Form
from .linalg import Matrix, rank
from .scalars import GaussianRational, parse_gaussian
from .structure import Presentation

__all__ = ["SigmaCoefficients", "DeformationParameter", "classify_deformation", "witnesses",
           "first_order_sigma", "classify_parameter", "sigma_presentation", "sigma_of",
           "parse_sigma", "LABELS"]

LABELS = ("(i)", "(ii.a)", "(ii.b)", "(iii.a)", "(iii.b)")

_G = GaussianRational.coerce


@dataclass(frozen=True)
class SigmaCoefficients:
    s12: GaussianRational
    s11b: GaussianRational
    s12b: GaussianRational
    s21b: GaussianRational
    s22b: GaussianRational
    approximate: bool = False  # True when only first-order accurate

    def __post_init__(self):
        for name in ("s12", "s11b", "s12b", "s21b", "s22b"):
            object.__setattr__(self, name, _G(getattr(self, name)))

    def as_tuple(self) -> tuple[GaussianRational, ...]:
        return (self.s12, self.s11b, self.s12b, self.s21b, self.s22b)

    @property
    def delta(self) -> GaussianRational:
        """Determinant of the (2,0) Bott-Chern system: s21b*s12b - s11b*s22b."""
        return self.s21b * self.s12b - self.s11b * self.s22b

    def s_matrix(self) -> Matrix:
        c = GaussianRational.conj
        return Matrix.from_dense([
            [c(self.s11b), c(self.s22b), c(self.s12b), c(self.s21b)],
            [self.s11b, self.s22b, self.s21b, self.s12b],
        ])

    @property
    def rank_s(self) -> int:
        return rank(self.s_matrix())


@dataclass(frozen=True)
class DeformationParameter:
    t11: GaussianRational = GaussianRational()
    t12: GaussianRational = GaussianRational()
    t21: GaussianRational = GaussianRational()
    t22: GaussianRational = GaussianRational()
    t31: GaussianRational = GaussianRational()
    t32: GaussianRational = GaussianRational()

    def __post_init__(self):
        for name in ("t11", "t12", "t21", "t22", "t31", "t32"):
            object.__setattr__(self, name, _G(getattr(self, name)))

    @property
    def D(self) -> GaussianRational:
        return self.t11 * self.t22 - self.t12 * self.t21


def witnesses(s: SigmaCoefficients) -> tuple[GaussianRational, int]:
    return s.delta, s.rank_s


def classify_deformation(s: SigmaCoefficients) -> str:
    if not (s.s11b or s.s12b or s.s21b or s.s22b):
        return "(i)"
    cls = "ii" if not s.delta else "iii"
    sub = "a" if s.rank_s == 1 else "b"
    return f"({cls}.{sub})"


def first_order_sigma(t: DeformationParameter) -> SigmaCoefficients:
    """First-order values (-1, t21, t22, -t11, -t12); flagged approximate."""
    return SigmaCoefficients(GaussianRational(-1), t.t21, t.t22, -t.t11, -t.t12, approximate=True)


def classify_parameter(t: DeformationParameter) -> str:
    """Class from D(t); subclass from rank S of the first-order coefficients."""
    if not (t.t11 or t.t12 or t.t21 or t.t22):
        return "(i)"
    cls = "ii" if not t.D else "iii"
    sub = "a" if first_order_sigma(t).rank_s == 1 else "b"
    return f"({cls}.{sub})"


def sigma_presentation(s: SigmaCoefficients, label: str = "") -> Presentation:
    f, F = ext.phi, ext.phibar
    d3 = ((f(1) ^ f(2)).scale(s.s12) + (f(1) ^ F(1)).scale(s.s11b) + (f(1) ^ F(2)).scale(s.s12b)
          + (f(2) ^ F(1)).scale(s.s21b) + (f(2) ^ F(2)).scale(s.s22b))
    return Presentation(3, (Form(), Form(), d3), label)


def sigma_of(pres: Presentation) -> SigmaCoefficients | None:
    """Read the five coefficients back, if ``pres`` has the deformed-Iwasawa shape."""
    if pres.n != 3 or pres.diff[0] or pres.diff[1]:
        return None
    d3 = pres.diff[2]
    M = ext.Monomial.from_indices
    keys = [M((1, 2)), M((1,), (1,)), M((1,), (2,)), M((2,), (1,)), M((2,), (2,))]
    if set(d3.terms) - set(keys):
        return None
    return SigmaCoefficients(*(d3.coeff(k) for k in keys))


def parse_sigma(text: str) -> SigmaCoefficients:
    """Parse five concatenated Gaussian rationals ``(a,b)(c,d)...``."""
    import re
    groups = re.findall(r"\([^()]*\)", text)
    if len(groups) != 5 or re.sub(r"\([^()]*\)|\s", "", text):
        raise ValueError(f"expected five '(re,im)' groups, got {text!r}")
    return SigmaCoefficients(*(parse_gaussian(g) for g in groups))
