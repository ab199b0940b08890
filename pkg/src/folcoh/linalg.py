"""Sparse exact matrices over Q(i): rank, kernel and linear solves.

Matrices coming from the foliated complex are block diagonal after a
permutation (the fields only mix monomials within one block's degree
pattern), so elimination first splits the matrix into connected components
of its row/column incidence graph and runs Gauss-Jordan on each piece.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .scalar import Scalar, as_scalar

__all__ = ["ExactMatrix"]

_B = -1  # key of the right-hand side column during a solve


def _eliminate(rows: Iterable[dict]) -> dict:
    """Gauss-Jordan; returns {pivot column: fully reduced row with pivot 1}.

    Column ``_B`` is never chosen as a pivot. A row reducing to a lone ``_B``
    entry is kept under key ``None`` to flag inconsistency.
    """
    pivots: dict = {}
    bad = None
    for row in rows:
        r = dict(row)
        for pc in [c for c in r if c in pivots]:
            f = r.get(pc)
            if not f:
                continue
            for c, v in pivots[pc].items():
                w = r.get(c)
                w = -f * v if w is None else w - f * v
                if w:
                    r[c] = w
                else:
                    r.pop(c, None)
        cols = [c for c in r if c != _B]
        if not cols:
            if r:
                bad = r
            continue
        pc = min(cols)
        inv = r[pc].inverse()
        r = {c: v * inv for c, v in r.items()}
        for other in pivots.values():
            f = other.get(pc)
            if f:
                for c, v in r.items():
                    w = other.get(c)
                    w = -f * v if w is None else w - f * v
                    if w:
                        other[c] = w
                    else:
                        other.pop(c, None)
        pivots[pc] = r
    if bad is not None:
        pivots[None] = bad
    return pivots


class ExactMatrix:
    """Sparse matrix stored row-wise: ``rows[i]`` maps column -> nonzero Scalar."""

    def __init__(self, nrows: int, ncols: int, entries: Mapping | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: list[dict] = [dict() for _ in range(nrows)]
        for (i, j), v in (entries or {}).items():
            v = as_scalar(v)
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
            if v:
                self.rows[i][j] = v

    @classmethod
    def from_columns(cls, nrows: int, columns: list[Mapping]) -> "ExactMatrix":
        M = cls(nrows, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    M.rows[i][j] = as_scalar(v)
        return M

    @classmethod
    def from_dense(cls, data: list[list]) -> "ExactMatrix":
        ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, {(i, j): v for i, r in enumerate(data) for j, v in enumerate(r)})

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return self.rows[i].get(j, Scalar(0))

    def to_dense(self) -> list[list[Scalar]]:
        return [[self[i, j] for j in range(self.ncols)] for i in range(self.nrows)]

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def columns(self) -> list[dict]:
        cols: list[dict] = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.ncols, self.nrows, {(j, i): v for i, r in enumerate(self.rows) for j, v in r.items()})

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if other.nrows != self.nrows:
            raise ValueError("row counts differ")
        M = ExactMatrix(self.nrows, self.ncols + other.ncols)
        for i in range(self.nrows):
            M.rows[i] = dict(self.rows[i])
            for j, v in other.rows[i].items():
                M.rows[i][self.ncols + j] = v
        return M

    def permuted(self, row_perm: list[int], col_perm: list[int]) -> "ExactMatrix":
        """Row ``i`` of the result is row ``row_perm[i]``; likewise for columns."""
        col_pos = {old: new for new, old in enumerate(col_perm)}
        M = ExactMatrix(self.nrows, self.ncols)
        for new_i, old_i in enumerate(row_perm):
            M.rows[new_i] = {col_pos[j]: v for j, v in self.rows[old_i].items()}
        return M

    def components(self) -> list[tuple[list[int], list[int]]]:
        """Connected pieces as (row indices, column indices); empty rows are skipped."""
        parent = list(range(self.ncols))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for r in self.rows:
            it = iter(r)
            first = next(it, None)
            if first is None:
                continue
            ra = find(first)
            for c in it:
                rc = find(c)
                if rc != ra:
                    parent[rc] = ra
        groups: dict[int, tuple[list, list]] = {}
        for j in range(self.ncols):
            groups.setdefault(find(j), ([], []))[1].append(j)
        for i, r in enumerate(self.rows):
            if r:
                groups[find(next(iter(r)))][0].append(i)
        return [g for g in groups.values()]

    def rank(self) -> int:
        total = 0
        for rows, _ in self.components():
            if rows:
                total += len(_eliminate(self.rows[i] for i in rows))
        return total

    def kernel(self) -> list[dict]:
        """Basis of ``{x : M x = 0}`` as sparse column vectors."""
        basis = []
        for rows, cols in self.components():
            piv = _eliminate(self.rows[i] for i in rows)
            for f in cols:
                if f in piv:
                    continue
                vec = {f: Scalar(1)}
                for pc, r in piv.items():
                    v = r.get(f)
                    if v:
                        vec[pc] = -v
                basis.append(vec)
        return basis

    def solve(self, b: Mapping[int, Scalar]) -> dict | None:
        """One solution of ``M x = b`` (free variables zero), or None."""
        b = {i: as_scalar(v) for i, v in b.items() if as_scalar(v)}
        x: dict = {}
        seen = set()
        for rows, cols in self.components():
            aug = []
            for i in rows:
                r = dict(self.rows[i])
                if i in b:
                    r[_B] = b[i]
                aug.append(r)
                seen.add(i)
            piv = _eliminate(aug)
            if None in piv:
                return None
            for pc, r in piv.items():
                v = r.get(_B)
                if v:
                    x[pc] = v
        # right-hand side on empty rows cannot be matched
        if any(i not in seen for i in b):
            return None
        return x

    def apply(self, x: Mapping[int, Scalar]) -> dict:
        out = {}
        for i, r in enumerate(self.rows):
            acc = Scalar(0)
            for j, v in r.items():
                xv = x.get(j)
                if xv:
                    acc = acc + v * xv
            if acc:
                out[i] = acc
        return out
