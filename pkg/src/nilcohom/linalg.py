"""Sparse exact matrices over Q(i): rank, reduced row echelon form, null space.

Rows are stored as ``{column: entry}`` dicts with no zero entries.  The
differential matrices of a Chevalley-Eilenberg complex are very sparse, so
this beats dense elimination by a wide margin at the sizes we care about.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .scalars import ONE, ZERO, GaussianRational

__all__ = ["Matrix", "rank", "kernel_basis", "rref", "span_rank"]

Row = dict  # dict[int, GaussianRational]


class Matrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[Row] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        self.rows = list(rows)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            row = {}
            for j, v in enumerate(r):
                v = GaussianRational.coerce(v)
                if v:
                    row[j] = v
            rows.append(row)
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        return cls.from_dense([list(c) for c in columns], ncols=nrows).T

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [{i: ONE} for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, ZERO)

    def to_dense(self) -> list[list[GaussianRational]]:
        return [[r.get(j, ZERO) for j in range(self.ncols)] for r in self.rows]

    def is_zero(self) -> bool:
        return not any(self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, nnz={sum(map(len, self.rows))})"

    @property
    def T(self) -> "Matrix":
        rows = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                rows[j][i] = v
        return Matrix(self.ncols, self.nrows, rows)

    @property
    def H(self) -> "Matrix":
        """Conjugate transpose."""
        rows = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                rows[j][i] = v.conj()
        return Matrix(self.ncols, self.nrows, rows)

    def columns(self) -> list[list[GaussianRational]]:
        return self.T.to_dense()

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        rows = []
        for a, b in zip(self.rows, other.rows):
            r = dict(a)
            for j, v in b.items():
                s = r.get(j)
                s = v if s is None else s + v
                if s:
                    r[j] = s
                else:
                    r.pop(j, None)
            rows.append(r)
        return Matrix(self.nrows, self.ncols, rows)

    def __neg__(self) -> "Matrix":
        return Matrix(self.nrows, self.ncols, [{j: -v for j, v in r.items()} for r in self.rows])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        rows = []
        for a in self.rows:
            r: Row = {}
            for k, av in a.items():
                for j, bv in other.rows[k].items():
                    s = r.get(j)
                    p = av * bv
                    r[j] = p if s is None else s + p
            rows.append({j: v for j, v in r.items() if v})
        return Matrix(self.nrows, other.ncols, rows)

    def apply(self, vec: Sequence) -> list[GaussianRational]:
        return [sum((v * vec[j] for j, v in r.items()), ZERO) for r in self.rows]


def vstack(*ms: Matrix) -> Matrix:
    if not ms:
        raise ValueError("nothing to stack")
    ncols = ms[0].ncols
    rows = []
    for m in ms:
        if m.ncols != ncols:
            raise ValueError("vstack column mismatch")
        rows.extend(m.rows)
    return Matrix(len(rows), ncols, rows)


def hstack(*ms: Matrix) -> Matrix:
    if not ms:
        raise ValueError("nothing to stack")
    nrows = ms[0].nrows
    rows = [{} for _ in range(nrows)]
    off = 0
    for m in ms:
        if m.nrows != nrows:
            raise ValueError("hstack row mismatch")
        for i, r in enumerate(m.rows):
            for j, v in r.items():
                rows[i][j + off] = v
        off += m.ncols
    return Matrix(nrows, off, rows)


def _reduce_rows(rows: Iterable[Row]) -> dict[int, Row]:
    """Fully reduced echelon basis of the row space, keyed by pivot column.

    Each stored row has a 1 in its pivot column and zeros in every other
    pivot column, so the result is the (unique) RREF.
    """
    pivots: dict[int, Row] = {}
    for src in rows:
        if not src:
            continue
        r = dict(src)
        for c in [c for c in r if c in pivots]:
            f = r.get(c)
            if not f:
                continue
            for j, v in pivots[c].items():
                s = r.get(j)
                s = -(f * v) if s is None else s - f * v
                if s:
                    r[j] = s
                else:
                    del r[j]
        if not r:
            continue
        lead = min(r)
        inv = r[lead].inv()
        r = {j: v * inv for j, v in r.items()}
        r[lead] = ONE
        for prow in pivots.values():
            f = prow.get(lead)
            if f:
                for j, v in r.items():
                    s = prow.get(j)
                    s = -(f * v) if s is None else s - f * v
                    if s:
                        prow[j] = s
                    else:
                        del prow[j]
        pivots[lead] = r
    return pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    piv = _reduce_rows(m.rows)
    cols = sorted(piv)
    rows = [piv[c] for c in cols]
    rows += [{} for _ in range(m.nrows - len(rows))]
    return Matrix(m.nrows, m.ncols, rows), cols


def rank(m: Matrix) -> int:
    return len(_reduce_rows(m.rows))


def span_rank(vectors: Iterable[Sequence]) -> int:
    """Dimension of the span of coordinate vectors."""
    rows = []
    for v in vectors:
        rows.append({j: GaussianRational.coerce(x) for j, x in enumerate(v) if x})
    return len(_reduce_rows(rows))


def kernel_basis(m: Matrix) -> list[list[GaussianRational]]:
    """Null-space basis, one vector per free column in ascending order.

    The vector for free column ``f`` has a 1 at ``f``, zeros at the other
    free columns, and is determined on pivot columns by the RREF.
    """
    piv = _reduce_rows(m.rows)
    out = []
    for f in range(m.ncols):
        if f in piv:
            continue
        v = [ZERO] * m.ncols
        v[f] = ONE
        for c, row in piv.items():
            x = row.get(f)
            if x:
                v[c] = -x
        out.append(v)
    return out
