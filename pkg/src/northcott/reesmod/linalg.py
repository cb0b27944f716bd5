"""Exact row echelon forms over Q or GF(p), grown in batches.

Vectors are sparse dicts ``{column: value}`` with values in field form (see
:func:`to_field`).  :class:`SparseEchelon` eliminates in pure Python and suits
the many tiny blocks of monomial problems; :class:`FlintEchelon` hands wide
blocks to FLINT's reduced row echelon form.

``insert_batch`` returns rows spanning a complement of the old span inside
the new one: in a reduced echelon basis, the rows whose pivots are new can
only meet the old span in zero, because every nonzero vector of the old span
has a nonzero entry at an old pivot.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Sequence

import flint


def to_field(value, p: int | None):
    if p is None:
        if isinstance(value, Fraction):
            return flint.fmpq(value.numerator, value.denominator)
        return flint.fmpq(value)
    if isinstance(value, Fraction):
        return value.numerator * pow(value.denominator, -1, p) % p
    return int(value) % p


class SparseEchelon:
    """Echelon rows with a unit pivot at their smallest column."""

    __slots__ = ("p", "rows")

    def __init__(self, p: int | None = None):
        self.p = p
        self.rows: dict[int, dict] = {}

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def convert(self, vec: dict) -> dict:
        out = {}
        for k, v in vec.items():
            c = to_field(v, self.p)
            if c:
                out[k] = c
        return out

    def reduce(self, vec: dict) -> dict:
        """Remainder of ``vec`` with no entry in a pivot column."""
        rows, p = self.rows, self.p
        vec = dict(vec)
        # pivots are minimal columns of their rows, so clearing them in
        # increasing order never re-creates an entry that was already cleared
        pending = [k for k in vec if k in rows]
        heapq.heapify(pending)
        seen = set(pending)
        while pending:
            k = heapq.heappop(pending)
            c = vec.get(k)
            if not c:
                continue
            for col, val in rows[k].items():
                nv = vec.get(col, 0) - c * val
                if p is not None:
                    nv %= p
                if nv:
                    vec[col] = nv
                    if col in rows and col not in seen:
                        seen.add(col)
                        heapq.heappush(pending, col)
                else:
                    vec.pop(col, None)
        return vec

    def insert(self, vec: dict, converted: bool = False) -> dict | None:
        """Add ``vec``; return the new basis row, or None if it was dependent."""
        v = self.reduce(vec if converted else self.convert(vec))
        if not v:
            return None
        piv = min(v)
        if self.p is None:
            inv = 1 / v[piv]
            row = {k: c * inv for k, c in v.items()}
        else:
            inv = pow(int(v[piv]), -1, self.p)
            row = {k: c * inv % self.p for k, c in v.items()}
        self.rows[piv] = row
        return row

    def insert_batch(self, vecs: Sequence[dict]) -> list[dict]:
        out = []
        for v in vecs:
            row = self.insert(v, converted=True)
            if row is not None:
                out.append(row)
        return out

    def contains(self, vec: dict, converted: bool = False) -> bool:
        return not self.reduce(vec if converted else self.convert(vec))

    def contains_unit(self, k: int) -> bool:
        return self.contains({k: 1}, converted=True)


class FlintEchelon:
    """Reduced echelon basis of a subspace of the span of ``columns``."""

    def __init__(self, columns: Sequence[int], p: int | None = None):
        self.p = p
        self.columns = list(columns)
        self.local = {k: i for i, k in enumerate(self.columns)}
        self.width = len(self.columns)
        self.entries: list = []  # flat rows of the current basis
        self.pivots: set[int] = set()
        self.unit_pivots: set[int] = set()

    def __len__(self) -> int:
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _matrix(self, nrows: int, flat: list):
        if self.p is None:
            return flint.fmpq_mat(nrows, self.width, flat)
        return flint.nmod_mat(nrows, self.width, flat, self.p)

    def _flat(self, vecs: Sequence[dict]) -> list:
        zero = flint.fmpq(0) if self.p is None else 0
        flat = []
        for v in vecs:
            row = [zero] * self.width
            for k, c in v.items():
                row[self.local[k]] = c
            flat.extend(row)
        return flat

    def _rref(self, vecs: Sequence[dict]):
        k = self.rank
        M = self._matrix(k + len(vecs), self.entries + self._flat(vecs))
        R, rank = M.rref()
        return R, rank

    def insert_batch(self, vecs: Sequence[dict]) -> list[dict]:
        if not vecs:
            return []
        R, rank = self._rref(vecs)
        if rank == self.rank:
            return []
        flat = R.entries()[: rank * self.width]
        if self.p is not None:
            flat = [int(x) for x in flat]
        w = self.width
        new, pivots, units = [], set(), set()
        for i in range(rank):
            row = flat[i * w:(i + 1) * w]
            nz = [j for j, x in enumerate(row) if x]
            piv = nz[0]
            pivots.add(piv)
            if len(nz) == 1:
                units.add(piv)
            if piv not in self.pivots:
                new.append({self.columns[j]: row[j] for j in nz})
        self.entries = flat
        self.pivots = pivots
        self.unit_pivots = units
        return new

    def contains(self, vec: dict, converted: bool = True) -> bool:
        if not vec:
            return True
        if any(k not in self.local for k in vec):
            return False
        return self._rref([vec])[1] == self.rank

    def contains_unit(self, k: int) -> bool:
        return self.local.get(k) in self.unit_pivots
