"""Finite-dimensional truncations of graded pieces and certified quotient lengths.

A :class:`TruncatedSpace` is W / m^c W for W = sum_w B_w t^w (|w| = n), where
each B_w is a monomial ideal (the unit ideal unless a ``base`` is given).  Its
coordinates are the monomials of B_w outside m^c B_w and the relations.

To measure l(W/B) for the submodule B spanned by some elements, the span is
closed under multiplication by the variables inside W / m^{c+1} W.  If every
coordinate of depth exactly c lies in that span then m^c W is contained in
B + m^{c+1} W, hence (locally, by Nakayama) in B, and the truncated
codimension is the true length.  Otherwise c is doubled.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..multiplicity import compositions
from ..staircase import MonomialIdeal, Ring, divides
from .elements import Exponent, SymElement
from .linalg import FlintEchelon, SparseEchelon, to_field

C_MAX = 256

log = logging.getLogger(__name__)


class TruncationError(RuntimeError):
    """The Nakayama certificate was not reached below the cap."""


def _monomials_below(dim: int, cap: int) -> list[Exponent]:
    """All exponent vectors of total degree < cap."""
    out: list[Exponent] = []

    def rec(prefix: list[int], left: int, k: int):
        if k == dim - 1:
            out.append(tuple(prefix + [left]))
            return
        for v in range(left, -1, -1):
            rec(prefix + [v], left - v, k + 1)

    for deg in range(cap):
        rec([], deg, 0)
    return out


class TruncatedSpace:
    """W / m^cap W with an exact coordinate index."""

    def __init__(self, ring: Ring, r: int, n: int, cap: int, base: Mapping[Exponent, MonomialIdeal] | None = None):
        if cap < 1:
            raise ValueError("degree cap must be positive")
        self.ring, self.r, self.n, self.cap = ring, r, n, cap
        self.components = sorted(compositions(n, r))
        zero = (0,) * ring.dim
        self.base_gens: dict[Exponent, tuple[Exponent, ...]] = {}
        for w in self.components:
            if base is None:
                self.base_gens[w] = (zero,)
            else:
                B = base[w]
                self.base_gens[w] = (zero,) if B.is_unit else tuple(B.gens)
        below = _monomials_below(ring.dim, cap)
        coords: list[tuple[Exponent, Exponent]] = []
        depths: list[int] = []
        for w in self.components:
            seen = set()
            gens = self.base_gens[w]
            for g in gens:
                for a in below:
                    m = tuple(x + y for x, y in zip(g, a))
                    if m in seen:
                        continue
                    seen.add(m)
                    if ring.relations and ring.in_relations(m):
                        continue
                    dep = self._depth(gens, m)
                    if dep < cap:
                        coords.append((w, m))
                        depths.append(dep)
        self.coords = coords
        self.depths = depths
        self.index = {c: i for i, c in enumerate(coords)}
        self._shift: list[list[int | None]] | None = None

    @staticmethod
    def _depth(gens: Sequence[Exponent], m: Exponent) -> int:
        """max |m - g| over base generators g dividing m; -1 if none does."""
        best = -1
        sm = sum(m)
        for g in gens:
            if divides(g, m):
                best = max(best, sm - sum(g))
        return best

    def __len__(self) -> int:
        return len(self.coords)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def layer(self, depth: int) -> list[int]:
        return [i for i, dep in enumerate(self.depths) if dep == depth]

    def vectorize(self, f: SymElement, p: int | None = None) -> dict[int, object]:
        """Coordinates of f modulo m^cap W, in field form."""
        out: dict[int, object] = {}
        for (w, a), c in f.items():
            k = self.index.get((w, a))
            if k is None:
                if w not in self.base_gens:
                    raise ValueError(f"term t^{w} does not have degree {self.n}")
                if self.ring.relations and self.ring.in_relations(a):
                    continue
                if self._depth(self.base_gens[w], a) < 0:
                    raise ValueError(f"element leaves the ambient module at t^{w} x^{a}")
                continue  # deep enough to vanish in the truncation
            v = to_field(c, p)
            if v:
                out[k] = out.get(k, 0) + v
        if p is not None:
            out = {k: v % p for k, v in out.items()}
        return {k: v for k, v in out.items() if v}

    def shift_table(self) -> list[list[int | None]]:
        """shift_table()[j][k] is the coordinate of x_j times coordinate k, or None."""
        if self._shift is None:
            table = []
            for j in range(self.ring.dim):
                col = []
                for (w, m) in self.coords:
                    mm = m[:j] + (m[j] + 1,) + m[j + 1:]
                    col.append(self.index.get((w, mm)))
                table.append(col)
            self._shift = table
        return self._shift


def _nullspace_integral(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Integer basis of the rational nullspace of ``rows``."""
    mat = [[Fraction(v) for v in row] for row in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
        mat = mat[:rank] + [row for row in mat[rank:] if any(row)]
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][free]
        den = 1
        for v in vec:
            den = den * v.denominator // math.gcd(den, v.denominator)
        basis.append([int(v * den) for v in vec])
    return basis


def detect_grading(elements: Iterable[SymElement], dim: int, r: int) -> list[list[int]]:
    """Weights on (x_1..x_d, t_1..t_r) making every element homogeneous.

    Coordinates of different weight never interact during elimination, so
    the span splits into independent blocks.
    """
    ncols = dim + r
    diffs = set()
    for f in elements:
        keys = iter(f)
        w0, a0 = next(keys, ((), ()))
        v0 = a0 + w0
        for w, a in keys:
            diffs.add(tuple(x - y for x, y in zip(a + w, v0)))
    if not diffs:
        return [[1 if i == k else 0 for i in range(ncols)] for k in range(ncols)]
    return _nullspace_integral(sorted(diffs), ncols)


def _grade(space: TruncatedSpace, grading: list[list[int]], k: int) -> tuple[int, ...]:
    w, m = space.coords[k]
    vec = m + w
    return tuple(sum(g * v for g, v in zip(row, vec)) for row in grading)


class _Blocks:
    """Coordinates of a truncation grouped by weight."""

    def __init__(self, space: TruncatedSpace, grading: list[list[int]]):
        self.space = space
        self.grading = grading
        self.key_of = [_grade(space, grading, k) for k in range(space.dim)]
        self.members: dict = {}
        for k, key in enumerate(self.key_of):
            self.members.setdefault(key, []).append(k)

    def split(self, v: dict) -> dict:
        parts: dict = {}
        for k, c in v.items():
            parts.setdefault(self.key_of[k], {})[k] = c
        return parts


# blocks at least this wide go to FLINT; narrower ones stay in Python
WIDE_BLOCK = 48


class Span:
    """R-submodule generated by some elements, one echelon per weight block."""

    def __init__(self, blocks: _Blocks, p: int | None):
        self.blocks = blocks
        self.p = p
        self.echelons: dict = {}

    @property
    def rank(self) -> int:
        return sum(e.rank for e in self.echelons.values())

    def _echelon(self, key):
        ech = self.echelons.get(key)
        if ech is None:
            cols = self.blocks.members[key]
            ech = FlintEchelon(cols, self.p) if len(cols) >= WIDE_BLOCK else SparseEchelon(self.p)
            self.echelons[key] = ech
        return ech

    def close(self, elements: Sequence[SymElement]) -> None:
        """Saturate under the variables, one round of new rows at a time."""
        space = self.blocks.space
        shifts = space.shift_table()
        pending: dict = {}
        for f in elements:
            for key, part in self.blocks.split(space.vectorize(f, self.p)).items():
                pending.setdefault(key, []).append(part)
        while pending:
            nxt: dict = {}
            for key, vecs in pending.items():
                for row in self._echelon(key).insert_batch(vecs):
                    for table in shifts:
                        nv = {}
                        for k, c in row.items():
                            t = table[k]
                            if t is not None:
                                nv[t] = c
                        if nv:
                            nxt.setdefault(self.blocks.key_of[next(iter(nv))], []).append(nv)
            pending = nxt

    def contains_vector(self, v: dict) -> bool:
        for key, part in self.blocks.split(v).items():
            ech = self.echelons.get(key)
            if ech is None or not ech.contains(part, converted=True):
                return False
        return True

    def contains_unit(self, k: int) -> bool:
        ech = self.echelons.get(self.blocks.key_of[k])
        return ech is not None and ech.contains_unit(k)


def close_span(space: TruncatedSpace, elements: Sequence[SymElement], p: int | None,
               grading: list[list[int]]) -> Span:
    """The R-submodule generated by ``elements`` inside ``space``."""
    span = Span(_Blocks(space, grading), p)
    span.close(elements)
    return span


@dataclass
class CertifiedSpan:
    """Span of some elements inside a truncation that passed the certificate."""

    space: TruncatedSpace
    span: Span
    level: int
    value: int
    p: int | None
    history: list[tuple[int, int]] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return self.span.rank

    def contains(self, f: SymElement) -> bool:
        return self.span.contains_vector(self.space.vectorize(f, self.p))


def default_level(elements: Sequence[SymElement], n: int) -> int:
    deg = max((sum(a) for f in elements for (_, a) in f), default=0)
    return max(2, deg + deg // max(n, 1) + 2)


def certify_span(ring: Ring, r: int, n: int, elements: Sequence[SymElement],
                 base: Mapping[Exponent, MonomialIdeal] | None = None, p: int | None = None,
                 c0: int | None = None, c_max: int = C_MAX) -> CertifiedSpan:
    """Certified l(W / span) for W the degree-n piece (or its submodule ``base``)."""
    elements = list(elements)
    grading = detect_grading(elements, ring.dim, r)
    c = max(1, min(c0 if c0 is not None else default_level(elements, n), c_max))
    history: list[tuple[int, int]] = []
    while True:
        space = TruncatedSpace(ring, r, n, c + 1, base)
        span = close_span(space, elements, p, grading)
        value = space.dim - span.rank
        log.debug("n=%d c=%d dim=%d rank=%d %s", n, c, space.dim, span.rank, type(span).__name__)
        if all(span.contains_unit(k) for k in space.layer(c)):
            return CertifiedSpan(space, span, c, value, p, history)
        history.append((c, value))
        if c >= c_max:
            break
        c = min(2 * c, c_max)
    values = [v for _, v in history]
    if len(values) >= 2 and all(b > a for a, b in zip(values, values[1:])):
        raise TruncationError(
            f"truncated length keeps growing ({', '.join(f'c={c}: {v}' for c, v in history)}); "
            "the quotient most likely has infinite length")
    raise TruncationError(
        f"no Nakayama certificate up to c_max={c_max} (last truncated length {values[-1]}); "
        "the cap may simply be too small")


def certified_colength(elements: Sequence[SymElement], n: int, ring: Ring, r: int, p: int | None = None,
                       c0: int | None = None, c_max: int = C_MAX,
                       base: Mapping[Exponent, MonomialIdeal] | None = None) -> int:
    """Length of the degree-n piece (or ``base``) modulo the submodule spanned by ``elements``."""
    return certify_span(ring, r, n, elements, base=base, p=p, c0=c0, c_max=c_max).value
