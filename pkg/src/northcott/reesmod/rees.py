"""Rees algebra pieces, reduction numbers and Sally lengths of matrix modules.

R_n(A) is spanned by the products of n columns of A inside Sym_n(F).  Lengths
of quotients of Sym_n(F) are obtained with :func:`certify_span`.  When M is a
direct sum of monomial ideals, R_n(M) = sum_w I^w t^w is a monomial module,
which allows two shortcuts that are cross-checked against the general route
in the tests:

* reductions are tested by Nakayama in R_{s+1}(M) / m R_{s+1}(M), whose
  basis is the minimal generators of the I^w;
* Sally lengths are measured inside R_{n+1}(M) instead of Sym_{n+1}(F).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..brim import IdealTuple, as_tuple, bp_polynomial, bf_direct_sum, colength_FM
from ..multiplicity import compositions
from ..staircase import MonomialIdeal, ideal, ideal_multipower, ideal_product
from .elements import GeneratorMatrix, RingElement, SymElement, sym_mul, sym_unit
from .truncation import C_MAX, TruncatedSpace, certify_span, close_span, detect_grading

PRODUCT_CAP = 200_000
DEFAULT_PRIME = 32003


class ProductCapError(RuntimeError):
    """Too many column products requested."""


class NotContainedError(ValueError):
    """A candidate reduction is not a submodule of the module."""


class InconsistencyError(ArithmeticError):
    """Two exact computations that must be compatible are not."""


class ReductionSearchError(RuntimeError):
    """No random candidate passed the reduction test."""


def direct_sum_matrix(T: IdealTuple | Sequence[MonomialIdeal], p: int | None = None) -> GeneratorMatrix:
    """Columns mu t_i for every minimal generator mu of every summand I_i."""
    T = as_tuple(T)
    r = T.r
    rows = [[] for _ in range(r)]
    for i, I in enumerate(T):
        for g in I.gens:
            for k in range(r):
                rows[k].append(RingElement.monomial(g) if k == i else RingElement())
    return GeneratorMatrix(T.ring, tuple(tuple(row) for row in rows), p=p, summands=T)


def band_matrix(I: MonomialIdeal | Sequence[RingElement], variant: str | int = "rank2",
                p: int | None = None) -> GeneratorMatrix:
    """Banded r x (d + r - 1) matrix with a_1..a_d shifted one column per row."""
    rank = {"rank2": 2, "rank3": 3}.get(variant, variant) if isinstance(variant, str) else variant
    if not isinstance(rank, int) or rank < 1:
        raise ValueError(f"unknown band variant {variant!r}")
    if isinstance(I, MonomialIdeal):
        ring = I.ring
        gens = [RingElement.monomial(g) for g in I.gens]
        d = ring.krull_dim
        if len(gens) != d:
            raise ValueError(f"a parameter ideal in dimension {d} needs {d} generators, got {len(gens)}")
    else:
        raise TypeError("band_matrix expects a MonomialIdeal")
    d = len(gens)
    rows = []
    for i in range(rank):
        row = [RingElement() for _ in range(d + rank - 1)]
        for j, a in enumerate(gens):
            row[i + j] = a
        rows.append(row)
    return GeneratorMatrix.from_rows(ring, rows, p=p)


def graded_generators(A: GeneratorMatrix, n: int, cap: int = PRODUCT_CAP) -> list[SymElement]:
    """Products of n columns of A (multisets), spanning R_n(A)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    ring, r = A.ring, A.rank
    if n == 0:
        return [sym_unit(r, ring.dim)]
    s = A.ncols
    count = math.comb(s + n - 1, n)
    if count > cap:
        raise ProductCapError(f"{count} products of {n} columns exceed the cap of {cap}")
    cols = A.columns()
    memo: dict[tuple[int, ...], SymElement] = {}

    def prod(idx: tuple[int, ...]) -> SymElement:
        if len(idx) == 1:
            return cols[idx[0]]
        f = memo.get(idx)
        if f is None:
            f = memo[idx] = sym_mul(prod(idx[:-1]), cols[idx[-1]], ring)
        return f

    out = []
    for idx in itertools.combinations_with_replacement(range(s), n):
        f = prod(idx)
        if f:
            out.append(f)
    return out


def _field(*mats: GeneratorMatrix) -> int | None:
    for A in mats:
        if A.p is not None:
            return A.p
    return None


def _level(A: GeneratorMatrix, n: int) -> int:
    return (n + 1) * max(A.maxdeg, 1) + 2


def bf_general(A: GeneratorMatrix, n: int, c_max: int = C_MAX) -> int:
    """l(Sym_n(F) / R_n(A)), certified."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 0
    gens = graded_generators(A, n)
    return certify_span(A.ring, A.rank, n, gens, p=A.p, c0=_level(A, n), c_max=c_max).value


def module_colength(A: GeneratorMatrix, c_max: int = C_MAX) -> int:
    """l(F / A)."""
    if A.summands is not None:
        return colength_FM(A.summands)
    return bf_general(A, 1, c_max=c_max)


def _products(N: GeneratorMatrix, gens: Sequence[SymElement]) -> list[SymElement]:
    ring = N.ring
    out = []
    for col in N.columns():
        for g in gens:
            f = sym_mul(col, g, ring)
            if f:
                out.append(f)
    return out


def check_containment(N: GeneratorMatrix, M: GeneratorMatrix, c_max: int = C_MAX) -> None:
    """Raise NotContainedError unless every column of N lies in M."""
    if N.ring != M.ring or N.rank != M.rank:
        raise ValueError("N and M must live in the same free module")
    if M.summands is not None:
        for j in range(N.ncols):
            for i, I in enumerate(M.summands):
                if not N.entries[i][j].in_ideal(I):
                    raise NotContainedError(f"column {j + 1} of N is not in M (row {i + 1})")
        return
    span = certify_span(M.ring, M.rank, 1, M.columns(), p=_field(N, M),
                        c0=_level(M, 1) + N.maxdeg, c_max=c_max)
    for j, col in enumerate(N.columns()):
        if not span.contains(col):
            raise NotContainedError(f"column {j + 1} of N is not in M")


def _power_base(T: IdealTuple, n: int) -> dict:
    return {w: ideal_multipower(T.ideals, w) for w in compositions(n, T.r)}


def _nakayama_step(N: GeneratorMatrix, M: GeneratorMatrix, s: int) -> bool:
    """R_{s+1}(M) = N R_s(M) for a direct-sum M, tested modulo m R_{s+1}(M)."""
    T = M.summands
    base = _power_base(T, s + 1)
    space = TruncatedSpace(M.ring, M.rank, s + 1, 1, base)
    lower = [{(u, g): 1} for u in compositions(s, T.r) for g in ideal_multipower(T.ideals, u).gens]
    elements = _products(N, lower)
    span = close_span(space, elements, _field(N, M), detect_grading(elements, M.ring.dim, M.rank))
    return span.rank == space.dim


def _colength_step(N: GeneratorMatrix, M: GeneratorMatrix, s: int, c_max: int) -> bool:
    """Same test by comparing l(W/R_{s+1}(M)) with l(W/N R_s(M))."""
    p = _field(N, M)
    c0 = _level(M, s + 1)
    full = certify_span(M.ring, M.rank, s + 1, graded_generators(M, s + 1), p=p, c0=c0, c_max=c_max).value
    part = certify_span(M.ring, M.rank, s + 1, _products(N, graded_generators(M, s)), p=p,
                        c0=c0, c_max=c_max).value
    if part < full:
        raise InconsistencyError(f"N R_{s}(M) has smaller colength than R_{s + 1}(M); is N inside M?")
    return part == full


def reduction_number(N: GeneratorMatrix, M: GeneratorMatrix, s_max: int = 6, method: str = "auto",
                     c_max: int = C_MAX, check: bool = True) -> int | None:
    """Least s <= s_max with R_{s+1}(M) = N R_s(M); None when N is not a reduction by then.

    ``method`` is "nakayama" (direct sums only), "colength", "both" (runs the
    two and insists they agree) or "auto".
    """
    if method not in ("auto", "nakayama", "colength", "both"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        method = "nakayama" if M.summands is not None else "colength"
    if method in ("nakayama", "both") and M.summands is None:
        raise ValueError("the Nakayama shortcut needs a direct-sum module")
    if check:
        check_containment(N, M, c_max=c_max)
    for s in range(s_max + 1):
        if method == "nakayama":
            ok = _nakayama_step(N, M, s)
        elif method == "colength":
            ok = _colength_step(N, M, s, c_max)
        else:
            ok = _nakayama_step(N, M, s)
            if ok != _colength_step(N, M, s, c_max):
                raise InconsistencyError(f"reduction tests disagree at s = {s}")
        if ok:
            return s
    return None


def sally_length(M: GeneratorMatrix, N: GeneratorMatrix, n: int, method: str = "auto",
                 c_max: int = C_MAX) -> int:
    """l(R_{n+1}(M) / M R_n(N))."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if method not in ("auto", "relative", "colength"):
        raise ValueError(f"unknown method {method!r}")
    if n == 0:
        return 0
    if method == "auto":
        method = "relative" if M.summands is not None else "colength"
    p = _field(N, M)
    elements = _products(M, graded_generators(N, n))
    if method == "relative":
        if M.summands is None:
            raise ValueError("the relative route needs a direct-sum module")
        base = _power_base(M.summands, n + 1)
        value = certify_span(M.ring, M.rank, n + 1, elements, base=base, p=p,
                             c0=1, c_max=c_max).value
    else:
        c0 = _level(M, n + 1) + n * N.maxdeg
        inner = certify_span(M.ring, M.rank, n + 1, elements, p=p, c0=c0, c_max=c_max).value
        outer = certify_span(M.ring, M.rank, n + 1, graded_generators(M, n + 1), p=p,
                             c0=c0, c_max=c_max).value
        value = inner - outer
    if value < 0:
        raise InconsistencyError(f"negative Sally length {value} at n = {n}")
    return value


@dataclass(frozen=True)
class SallyTable:
    values: tuple[int, ...]
    module: GeneratorMatrix
    reduction: GeneratorMatrix

    @property
    def vanishes(self) -> bool:
        return not any(self.values)

    def __getitem__(self, n: int) -> int:
        return self.values[n]


def sally_table(M: GeneratorMatrix, N: GeneratorMatrix, n_max: int, method: str = "auto") -> SallyTable:
    """l(S_n) for n = 0..n_max."""
    return SallyTable(tuple(sally_length(M, N, n, method=method) for n in range(n_max + 1)), M, N)


def verify_sally_identity(T: IdealTuple | Sequence[MonomialIdeal], N: GeneratorMatrix, n: int,
                          br0: int | None = None, method: str = "auto") -> tuple[int, int, bool]:
    """Both sides of BF(n) = br_0 C(n+r, r+1) + [l(F/M) - br_0] C(n+r-1, r) - l(S_{n-1}).

    The left side is counted on the lattice of ideal products; the Sally term
    comes from the truncated linear algebra.
    """
    T = as_tuple(T)
    if T.d != 2:
        raise ValueError("the identity is stated for two-dimensional rings")
    if N.ncols != T.d + T.r - 1:
        raise ValueError(f"a minimal reduction has {T.d + T.r - 1} columns, N has {N.ncols}")
    if n < 0:
        raise ValueError("n must be non-negative")
    r = T.r
    if br0 is None:
        br0 = bp_polynomial(T)[0][0]
    lhs = bf_direct_sum(T, n)
    if n == 0:
        return lhs, 0, lhs == 0
    M = direct_sum_matrix(T, p=N.p)
    lFM = colength_FM(T)
    rhs = br0 * math.comb(n + r, r + 1) + (lFM - br0) * math.comb(n + r - 1, r) - sally_length(M, N, n - 1, method=method)
    return lhs, rhs, lhs == rhs


def verify_rn1_formula(M: GeneratorMatrix, N: GeneratorMatrix, n: int, c_max: int = C_MAX) -> bool:
    """l(S_{n+1}(F)/R_{n+1}(M)) = l(F/N) C(n+r+1, r+1) - l(M/N) C(n+r, r)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    r = M.rank
    lFN = bf_general(N, 1, c_max=c_max)
    lFM = module_colength(M, c_max=c_max)
    lhs = bf_general(M, n + 1, c_max=c_max)
    rhs = lFN * math.comb(n + r + 1, r + 1) - (lFN - lFM) * math.comb(n + r, r)
    return lhs == rhs


def verify_joint_reduction(a: RingElement, b: RingElement, I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """Whether aJ + bI = IJ, for a in I and b in J."""
    if I.ring != J.ring:
        raise ValueError("I and J must share the ambient ring")
    ring = I.ring
    a, b = a.reduce(ring), b.reduce(ring)
    if not a.in_ideal(I):
        raise ValueError(f"{a.to_string(ring)} is not in I")
    if not b.in_ideal(J):
        raise ValueError(f"{b.to_string(ring)} is not in J")
    IJ = ideal_product(I, J)
    if a.is_zero and b.is_zero:
        return IJ.is_zero
    if (a.is_monomial or a.is_zero) and (b.is_monomial or b.is_zero):
        gens = []
        for f, K in ((a, J), (b, I)):
            for m in f.terms:
                gens.extend(tuple(x + y for x, y in zip(m, g)) for g in K.gens)
        return ideal(ring, gens) == IJ
    # a J + b I is inside IJ; equality modulo m IJ suffices by Nakayama
    one = (1,)
    elements = []
    for f, K in ((a, J), (b, I)):
        for g in K.gens:
            elements.append({(one, tuple(x + y for x, y in zip(m, g))): c for m, c in f.terms.items()})
    space = TruncatedSpace(ring, 1, 1, 1, {one: IJ})
    span = close_span(space, elements, None, detect_grading(elements, ring.dim, 1))
    return span.rank == space.dim


def _field_of(field) -> int | None:
    if field in (None, "rationals", "QQ", "Q"):
        return None
    p = int(field)
    if p < 2 or any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
        raise ValueError(f"{field} is not a prime")
    return p


def find_minimal_reduction(M: GeneratorMatrix, seed: int, field="rationals", s_max: int = 6,
                           retries: int = 10, method: str = "auto") -> tuple[GeneratorMatrix, int, int]:
    """Random d+r-1 column reduction of M with its reduction number and the attempt used."""
    p = _field_of(field)
    k = M.ring.krull_dim + M.rank - 1
    if M.ncols <= k:
        # already at (or below, e.g. with a unit summand) the minimal size
        red = reduction_number(M, M, s_max, method=method, check=False)
        return M, red, 0
    Mp = M.with_field(p)
    for attempt in range(retries):
        rng = np.random.default_rng([seed, attempt])
        if p is None:
            coeffs = rng.integers(-9, 10, size=(k, M.ncols))
        else:
            coeffs = rng.integers(0, p, size=(k, M.ncols))
        N = Mp.combine([[int(c) for c in row] for row in coeffs])
        red = reduction_number(N, Mp, s_max, method=method, check=False)
        if red is not None:
            return N, red, attempt
    raise ReductionSearchError(f"no reduction with s <= {s_max} among {retries} candidates (seed {seed})")


def random_minimal_reduction(M: GeneratorMatrix, seed: int, field="rationals", s_max: int = 6,
                             retries: int = 10) -> GeneratorMatrix:
    """d+r-1 random combinations of the columns of M that form a reduction."""
    return find_minimal_reduction(M, seed, field=field, s_max=s_max, retries=retries)[0]
