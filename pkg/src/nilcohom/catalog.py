"""Built-in presentations and their expected dimension tables.

Each preset lives in ``presets/<name>.eq``; deformation presets also ship a
``<name>.csv`` with rows ``theory,p,q,dim`` (de Rham rows have ``q`` empty and
``p`` holding the degree).
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from math import comb

from .deformations import SigmaCoefficients, classify_deformation, sigma_of
from .structure import Presentation, parse, validate

__all__ = ["Preset", "get", "names", "read_expected", "write_expected", "binomial_table"]

# name -> (declared subclass or None, provenance)
_PRESETS = {
    "iwasawa": ("(i)", "structure equations of the Iwasawa manifold"),
    "class-ii-a": ("(ii.a)", "sigma = (-1, 1, 0, 0, 0); first order for t21 = 1, others 0"),
    "class-ii-b": ("(ii.b)", "sigma = (-1, 1/10, 0, i/10, 0)"),
    "class-iii-a": ("(iii.a)", "sigma = (-1, 0, 1/10, 1/10, 0)"),
    "class-iii-b": ("(iii.b)", "sigma = (-1, 0, 1/10, i/5, 0)"),
    "torus3": (None, "complex 3-torus; expected dims are binomial"),
    "solvable-control": (None, "unimodular solvable non-nilpotent algebra; cohomology is that of "
                               "the Lie algebra only, equality with a compact quotient is not checked"),
}


@dataclass(frozen=True)
class Preset:
    name: str
    presentation: Presentation
    expected: dict | None  # theory -> {(p, q) or k: dim}
    subclass: str | None
    note: str

    @property
    def sigma(self) -> SigmaCoefficients | None:
        return sigma_of(self.presentation) if self.subclass else None


def names() -> list[str]:
    return list(_PRESETS)


def read_expected(text: str) -> dict:
    out: dict = {}
    for row in csv.DictReader(io.StringIO(text)):
        th = row["theory"]
        p = int(row["p"])
        key = p if th == "dR" else (p, int(row["q"]))
        out.setdefault(th, {})[key] = int(row["dim"])
    return out


def write_expected(rows) -> str:
    """CSV text for ``(theory, p, q, dim)`` rows; ``q`` is None for de Rham."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["theory", "p", "q", "dim"])
    for th, p, q, d in rows:
        w.writerow([th, p, "" if q is None else q, d])
    return buf.getvalue()


def binomial_table(n: int) -> dict:
    """Expected tables when every differential vanishes (a complex torus)."""
    bi = {(p, q): comb(n, p) * comb(n, q) for p in range(n + 1) for q in range(n + 1)}
    return {"dR": {k: comb(2 * n, k) for k in range(2 * n + 1)},
            "dbar": dict(bi), "del": dict(bi), "BC": dict(bi), "A": dict(bi)}


def _resource(name: str) -> str | None:
    f = resources.files("nilcohom") / "presets" / name
    return f.read_text() if f.is_file() else None


@lru_cache(maxsize=None)
def get(name: str) -> Preset:
    if name not in _PRESETS:
        raise KeyError(f"unknown preset {name!r}; available: {', '.join(_PRESETS)}")
    subclass, note = _PRESETS[name]
    pres = parse(_resource(f"{name}.eq"))
    report = validate(pres)
    if not report.valid:
        raise RuntimeError(f"preset {name} fails validation: {report.summary()}")
    if subclass is not None:
        got = classify_deformation(sigma_of(pres))
        if got != subclass:
            raise RuntimeError(f"preset {name} declares {subclass} but its coefficients classify as {got}")
    csv_text = _resource(f"{name}.csv")
    expected = read_expected(csv_text) if csv_text else None
    if name == "torus3":
        expected = binomial_table(3)
    return Preset(name, pres, expected, subclass, note)
