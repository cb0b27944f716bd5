"""Monomial ideals over k[x_1..x_d]/Q with Q a monomial relations ideal.

Exponent vectors are plain tuples of non-negative ints.  A ``MonomialIdeal``
stores its minimal generators in degree-lexicographic order (x_1 > ... > x_d),
so two ideals are equal iff their canonical forms are equal.

Lengths are counted two ways: :func:`colength` marks the staircase inside a
bounding box with numpy, :func:`colength_pivot` recurses on pivot monomials.
The two are kept independent so each can check the other.
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

Exponent = tuple[int, ...]

# boolean boxes above this many cells are refused rather than allocated
BOX_CELL_LIMIT = 200_000_000


class InfiniteColengthError(ValueError):
    """The quotient by the ideal is not of finite length."""


class AmbientMismatchError(ValueError):
    pass


def _deglex_key(e: Exponent):
    return (sum(e), tuple(-v for v in e))


def _check_exponents(vectors: Iterable[Sequence[int]], dim: int | None) -> tuple[list[Exponent], int]:
    out = []
    for v in vectors:
        t = tuple(int(x) for x in v)
        if dim is None:
            dim = len(t)
        if len(t) != dim:
            raise ValueError(f"exponent vector {t} has length {len(t)}, expected {dim}")
        if any(x < 0 for x in t):
            raise ValueError(f"negative exponent in {t}")
        out.append(t)
    if dim is None:
        raise ValueError("cannot infer the ambient dimension from an empty generator set")
    if dim < 1:
        raise ValueError("ambient dimension must be at least 1")
    return out, dim


def divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _minimal_antichain(vectors: list[Exponent]) -> list[Exponent]:
    """Divisibility-minimal elements of ``vectors``, deg-lex sorted."""
    uniq = sorted(set(vectors), key=_deglex_key)
    if len(uniq) <= 1:
        return uniq
    if len(uniq) < 64:
        kept: list[Exponent] = []
        for v in uniq:
            # anything dividing v has degree <= deg v, so it is already in kept
            if not any(divides(k, v) for k in kept):
                kept.append(v)
        return kept
    arr = np.array(uniq, dtype=np.int64)
    keep = np.ones(len(uniq), dtype=bool)
    chunk = max(1, 4_000_000 // (len(uniq) * arr.shape[1]))
    for start in range(0, len(uniq), chunk):
        block = arr[start:start + chunk]
        # div[i, j]: uniq[j] divides block[i]
        div = np.all(arr[None, :, :] <= block[:, None, :], axis=2)
        idx = np.arange(start, start + len(block))
        div[np.arange(len(block)), idx] = False
        # equal vectors were removed by set(), so any divisor is a proper one
        keep[start:start + len(block)] &= ~div.any(axis=1)
    return [uniq[i] for i in np.flatnonzero(keep)]


@dataclass(frozen=True)
class Ring:
    """Ambient ring k[x_1..x_dim]/Q with Q generated by ``relations``."""

    dim: int
    relations: tuple[Exponent, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("ambient dimension must be at least 1")
        rels, _ = _check_exponents(self.relations, self.dim) if self.relations else ([], self.dim)
        object.__setattr__(self, "relations", tuple(_minimal_antichain(rels)))

    def in_relations(self, m: Exponent) -> bool:
        return any(divides(q, m) for q in self.relations)

    @property
    def krull_dim(self) -> int:
        """Dimension of k[x]/Q: largest variable set S with no relation supported in S."""
        if not self.relations:
            return self.dim
        supports = [frozenset(i for i, v in enumerate(q) if v) for q in self.relations]
        for size in range(self.dim, -1, -1):
            for S in itertools.combinations(range(self.dim), size):
                s = frozenset(S)
                if not any(sup <= s for sup in supports):
                    return size
        return 0

    def variable_names(self) -> list[str]:
        if self.dim <= 3:
            return list("xyz"[: self.dim])
        return [f"x{i + 1}" for i in range(self.dim)]


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal of ``ring`` given by its minimal generators.

    Build instances with :func:`minimalize` or :meth:`from_gens`; the bare
    constructor trusts that ``gens`` is already canonical.
    """

    ring: Ring
    gens: tuple[Exponent, ...]

    @classmethod
    def from_gens(cls, gens: Iterable[Sequence[int]], relations: Iterable[Sequence[int]] = (),
                  dim: int | None = None) -> "MonomialIdeal":
        return minimalize(gens, relations, dim=dim)

    @classmethod
    def unit(cls, ring: Ring) -> "MonomialIdeal":
        return cls(ring, ((0,) * ring.dim,))

    @classmethod
    def maximal(cls, ring: Ring) -> "MonomialIdeal":
        return _reduce(ring, [tuple(int(i == j) for i in range(ring.dim)) for j in range(ring.dim)])

    @property
    def dim(self) -> int:
        return self.ring.dim

    @property
    def relations(self) -> tuple[Exponent, ...]:
        return self.ring.relations

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.dim,)

    @property
    def max_degree(self) -> int:
        return max((sum(g) for g in self.gens), default=0)

    def __contains__(self, m) -> bool:
        return contains_monomial(self, m)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_product(self, other)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_sum(self, other)

    def __pow__(self, n: int) -> "MonomialIdeal":
        return ideal_power(self, n)

    def __str__(self) -> str:
        from .dsl import format_ideal

        return format_ideal(self)


def _reduce(ring: Ring, gens: list[Exponent]) -> MonomialIdeal:
    mins = _minimal_antichain(gens)
    if ring.relations:
        mins = [g for g in mins if not ring.in_relations(g)]
    return MonomialIdeal(ring, tuple(mins))


def minimalize(gens: Iterable[Sequence[int]], relations: Iterable[Sequence[int]] | None = None,
               dim: int | None = None) -> MonomialIdeal:
    """Canonical ideal generated by ``gens`` in k[x]/(relations)."""
    rel_list = list(relations or ())
    gen_list, dim = _check_exponents(gens, dim if dim is not None else (len(rel_list[0]) if rel_list else None))
    rels, _ = _check_exponents(rel_list, dim) if rel_list else ([], dim)
    ideal = _reduce(Ring(dim, tuple(rels)), gen_list)
    if ideal.is_zero:
        warnings.warn("generator set reduces to the zero ideal", stacklevel=2)
    return ideal


def ideal(ring: Ring, gens: Iterable[Sequence[int]]) -> MonomialIdeal:
    """Canonical ideal of ``ring`` generated by ``gens``."""
    gen_list, _ = _check_exponents(gens, ring.dim)
    return _reduce(ring, gen_list)


def _same_ring(I: MonomialIdeal, J: MonomialIdeal) -> Ring:
    if I.ring != J.ring:
        raise AmbientMismatchError(f"ambient rings differ: {I.ring} vs {J.ring}")
    return I.ring


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    ring = _same_ring(I, J)
    return _reduce(ring, list(I.gens) + list(J.gens))


@lru_cache(maxsize=4096)
def ideal_product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    ring = _same_ring(I, J)
    if I.is_zero or J.is_zero:
        return MonomialIdeal(ring, ())
    if len(I.gens) * len(J.gens) > 2000:
        a = np.array(I.gens, dtype=np.int64)
        b = np.array(J.gens, dtype=np.int64)
        sums = np.unique((a[:, None, :] + b[None, :, :]).reshape(-1, ring.dim), axis=0)
        prods = [tuple(int(v) for v in row) for row in sums]
    else:
        prods = [tuple(x + y for x, y in zip(g, h)) for g in I.gens for h in J.gens]
    return _reduce(ring, prods)


@lru_cache(maxsize=4096)
def ideal_power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    if n < 0:
        raise ValueError("ideal power needs n >= 0")
    if n == 0:
        return MonomialIdeal.unit(I.ring)
    if n == 1:
        return I
    return ideal_product(ideal_power(I, n - 1), I)


def ideal_multipower(ideals: Sequence[MonomialIdeal], u: Sequence[int]) -> MonomialIdeal:
    """I_1^{u_1} ... I_r^{u_r}."""
    if len(ideals) != len(u):
        raise ValueError("exponent vector length differs from the number of ideals")
    out = MonomialIdeal.unit(ideals[0].ring)
    for I, k in zip(ideals, u):
        if k:
            out = ideal_product(out, ideal_power(I, int(k)))
    return out


def contains_monomial(I: MonomialIdeal, m: Sequence[int]) -> bool:
    m = tuple(m)
    if len(m) != I.dim:
        raise ValueError(f"monomial {m} has length {len(m)}, expected {I.dim}")
    return any(divides(g, m) for g in I.gens) or I.ring.in_relations(m)


def _pure_power_bounds(gens: Iterable[Exponent], dim: int) -> list[int | None]:
    bounds: list[int | None] = [None] * dim
    for g in gens:
        support = [i for i, v in enumerate(g) if v]
        if not support:
            return [0] * dim
        if len(support) == 1:
            j = support[0]
            if bounds[j] is None or g[j] < bounds[j]:
                bounds[j] = g[j]
    return bounds


def box_bounds(I: MonomialIdeal) -> list[int]:
    """Smallest k per axis with x_j^k in I + Q."""
    bounds = _pure_power_bounds(list(I.gens) + list(I.relations), I.dim)
    if any(b is None for b in bounds):
        missing = [I.ring.variable_names()[j] for j, b in enumerate(bounds) if b is None]
        raise InfiniteColengthError(f"no pure power of {', '.join(missing)} lies in the ideal")
    return [int(b) for b in bounds]


def is_finite_colength(I: MonomialIdeal) -> bool:
    return all(b is not None for b in _pure_power_bounds(list(I.gens) + list(I.relations), I.dim))


@lru_cache(maxsize=65536)
def colength(I: MonomialIdeal) -> int:
    """Number of standard monomials of k[x]/(I + Q), by bounding-box enumeration."""
    bounds = box_bounds(I)
    if 0 in bounds:
        return 0
    cells = 1
    for b in bounds:
        cells *= b
    if cells > BOX_CELL_LIMIT:
        raise MemoryError(f"bounding box of {cells} cells exceeds BOX_CELL_LIMIT")
    inside = np.zeros(bounds, dtype=bool)
    for g in itertools.chain(I.gens, I.relations):
        if all(v < b for v, b in zip(g, bounds)):
            inside[tuple(slice(v, None) for v in g)] = True
    return int(inside.size - np.count_nonzero(inside))


def colength_pivot(I: MonomialIdeal) -> int:
    """Colength by pivot splitting: l(R/I) = l(R/(I + p)) + l(R/(I : p))."""
    gens = _minimal_antichain(list(I.gens) + list(I.relations))
    if not is_finite_colength(MonomialIdeal(Ring(I.dim), tuple(gens))):
        raise InfiniteColengthError("ideal is not of finite colength")
    return _pivot_count(tuple(gens), I.dim)


@lru_cache(maxsize=65536)
def _pivot_count(gens: tuple[Exponent, ...], dim: int) -> int:
    if any(sum(g) == 0 for g in gens):
        return 0
    mixed = [g for g in gens if sum(1 for v in g if v) > 1]
    if not mixed:
        total = 1
        for j in range(dim):
            total *= min(g[j] for g in gens if g[j])
        return total
    # pivot on x_j^k taken from the most mixed generator, halving its exponent
    g = max(mixed, key=lambda e: (sum(1 for v in e if v), sum(e)))
    j = max(range(dim), key=lambda i: g[i])
    k = max(1, g[j] // 2) if g[j] > 1 else 1
    pivot = tuple(k if i == j else 0 for i in range(dim))
    plus = _minimal_antichain(list(gens) + [pivot])
    colon = _minimal_antichain([tuple(max(v - p, 0) for v, p in zip(h, pivot)) for h in gens])
    return _pivot_count(tuple(plus), dim) + _pivot_count(tuple(colon), dim)
