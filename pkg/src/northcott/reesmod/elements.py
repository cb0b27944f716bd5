"""Polynomials, generator matrices and elements of the symmetric algebra of F = R^r.

An element of Sym_n(F) is stored flat as ``{(w, a): c}``: the coefficient of
x^a t^w, where w in N^r has |w| = n.  Coefficients are exact rationals (ints
whenever integral); a matrix may carry a prime ``p`` that only matters once
elements are vectorised for linear algebra.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from ..staircase import MonomialIdeal, Ring, _deglex_key, contains_monomial

if TYPE_CHECKING:
    from ..brim import IdealTuple

Exponent = tuple[int, ...]
SymElement = dict  # {(w, a): coefficient}


def _norm(c):
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


class RingElement:
    """Finite sum of terms c x^a with nonzero rational c."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponent, object] | None = None):
        clean = {}
        for a, c in (terms or {}).items():
            c = _norm(c)
            if c:
                clean[tuple(a)] = c
        self.terms: dict[Exponent, object] = clean

    @classmethod
    def from_terms(cls, terms: Mapping[Sequence[int], object]) -> "RingElement":
        return cls({tuple(a): c for a, c in terms.items()})

    @classmethod
    def monomial(cls, a: Sequence[int], coeff=1) -> "RingElement":
        return cls({tuple(a): coeff})

    @classmethod
    def zero(cls) -> "RingElement":
        return cls()

    def reduce(self, ring: Ring) -> "RingElement":
        """Drop the terms that vanish modulo the relations of ``ring``."""
        return RingElement({a: c for a, c in self.terms.items() if not ring.in_relations(a)})

    def sorted_terms(self) -> list[tuple[Exponent, object]]:
        return sorted(self.terms.items(), key=lambda t: _deglex_key(t[0]))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def degree(self) -> int:
        return max((sum(a) for a in self.terms), default=-1)

    @property
    def order(self) -> int:
        return min((sum(a) for a in self.terms), default=-1)

    def in_ideal(self, I: MonomialIdeal) -> bool:
        # a monomial ideal contains a polynomial iff it contains each of its terms
        return all(contains_monomial(I, a) for a in self.terms)

    def scale(self, k) -> "RingElement":
        return RingElement({a: c * k for a, c in self.terms.items()})

    def __add__(self, other: "RingElement") -> "RingElement":
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0) + c
        return RingElement(out)

    def __neg__(self) -> "RingElement":
        return self.scale(-1)

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, other: "RingElement") -> "RingElement":
        out: dict = {}
        for a, c in self.terms.items():
            for b, e in other.terms.items():
                k = _add_exp(a, b)
                out[k] = out.get(k, 0) + c * e
        return RingElement(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, RingElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"RingElement({self.sorted_terms()!r})"

    def to_string(self, ring: Ring) -> str:
        from ..dsl import format_monomial

        if not self.terms:
            return "0"
        star = "*" if ring.dim > 3 else ""
        out = ""
        for a, c in self.sorted_terms():
            mono = format_monomial(a, ring)
            mag = abs(c)
            if all(v == 0 for v in a):
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}{star}{mono}"
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out


def sym_unit(r: int, dim: int) -> SymElement:
    """1 in Sym_0(F) = R."""
    return {((0,) * r, (0,) * dim): 1}


def sym_mul(f: SymElement, g: SymElement, ring: Ring) -> SymElement:
    out: dict = {}
    for (w1, a1), c1 in f.items():
        for (w2, a2), c2 in g.items():
            a = _add_exp(a1, a2)
            if ring.relations and ring.in_relations(a):
                continue
            k = (_add_exp(w1, w2), a)
            out[k] = out.get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def sym_times_monomial(f: SymElement, w: Exponent, a: Exponent, ring: Ring) -> SymElement:
    return sym_mul(f, {(w, a): 1}, ring)


def sym_degree(f: SymElement) -> int:
    """Largest x-degree of a term."""
    return max((sum(a) for (_, a) in f), default=0)


@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    """r x s matrix whose columns generate a submodule of F = R^r.

    ``summands`` is set when the matrix is the canonical presentation of a
    direct sum of monomial ideals; it enables monomial fast paths.
    """

    ring: Ring
    entries: tuple[tuple[RingElement, ...], ...]
    p: int | None = None
    summands: "IdealTuple | None" = None

    def __post_init__(self):
        rows = tuple(tuple(e.reduce(self.ring) for e in row) for row in self.entries)
        if not rows or not rows[0]:
            raise ValueError("a generator matrix needs at least one row and one column")
        if any(len(row) != len(rows[0]) for row in rows):
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, ring: Ring, rows: Iterable[Iterable[RingElement]], p: int | None = None) -> "GeneratorMatrix":
        return cls(ring, tuple(tuple(row) for row in rows), p=p)

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rank, self.ncols

    @property
    def maxdeg(self) -> int:
        return max(max((e.degree for e in row), default=0) for row in self.entries)

    def column(self, j: int) -> SymElement:
        r = self.rank
        out = {}
        for i in range(r):
            w = tuple(1 if k == i else 0 for k in range(r))
            for a, c in self.entries[i][j].terms.items():
                out[(w, a)] = c
        return out

    def columns(self) -> list[SymElement]:
        return [self.column(j) for j in range(self.ncols)]

    def combine(self, coeffs: Sequence[Sequence[object]]) -> "GeneratorMatrix":
        """Matrix whose k-th column is sum_j coeffs[k][j] * column j."""
        rows = []
        for i in range(self.rank):
            row = []
            for comb in coeffs:
                acc = RingElement()
                for j, c in enumerate(comb):
                    if c:
                        acc = acc + self.entries[i][j].scale(c)
                row.append(acc)
            rows.append(row)
        return GeneratorMatrix.from_rows(self.ring, rows, p=self.p)

    def with_field(self, p: int | None) -> "GeneratorMatrix":
        return GeneratorMatrix(self.ring, self.entries, p=p, summands=self.summands)

    def to_strings(self) -> list[list[str]]:
        return [[e.to_string(self.ring) for e in row] for row in self.entries]

    def __str__(self) -> str:
        return "[" + ",".join("[" + ",".join(row) + "]" for row in self.to_strings()) + "]"

    def __repr__(self) -> str:
        return f"GeneratorMatrix({self})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GeneratorMatrix) and self.ring == other.ring and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.ring, self.entries))
