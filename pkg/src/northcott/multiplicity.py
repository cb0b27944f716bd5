"""Exact polynomial fitting in binomial bases; Hilbert-Samuel and Bhattacharya data.

A :class:`BinomialPoly` of degree D with coefficients (b_0, ..., b_D) is

    P(n) = sum_i (-1)^i b_i C(n + D - i - 1, D - i)

which is the normalisation used for Hilbert-Samuel coefficients e_i and for
Buchsbaum-Rim coefficients br_i.  Fitting never guesses where a function turns
polynomial: windows slide upward until an integral fit also reproduces the
function on three further points, and :class:`FitDiagnostics` records the
evidence.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .staircase import MonomialIdeal, colength, ideal_multipower, ideal_power, is_finite_colength

VERIFY_POINTS = 3


class FitError(ValueError):
    """A window produced non-integral coefficients or an inconsistent system."""


class InstabilityError(RuntimeError):
    """No stable fit was found below the sampling bound."""

    def __init__(self, message: str, diagnostics: "FitDiagnostics"):
        super().__init__(message)
        self.diagnostics = diagnostics


def binom(x: int, k: int) -> int:
    """C(x, k) as a polynomial in x, so C(-1, k) = (-1)^k."""
    if k < 0:
        return 0
    if x >= 0:
        return math.comb(x, k)
    return (-1) ** k * math.comb(k - x - 1, k)


@dataclass(frozen=True)
class BinomialPoly:
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, n: int) -> int:
        D = self.degree
        return sum((-1) ** i * b * binom(n + D - i - 1, D - i) for i, b in enumerate(self.coeffs))

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __str__(self) -> str:
        D = self.degree
        parts = []
        for i, b in enumerate(self.coeffs):
            c = (-1) ** i * b
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign} {abs(c)}*C(n{D - i - 1:+d},{D - i})")
        if not parts:
            return "0"
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


@dataclass(frozen=True)
class FitDiagnostics:
    window_start: int
    window_len: int
    verified_through: int
    stable: bool

    def as_dict(self) -> dict:
        return {
            "window_start": self.window_start,
            "window_len": self.window_len,
            "verified_through": self.verified_through,
            "stable": self.stable,
        }


def solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gauss-Jordan over the rationals for a square nonsingular system."""
    n = len(rows)
    a = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise FitError("singular system")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [v - f * w for v, w in zip(a[i], a[col])]
    return [a[i][n] for i in range(n)]


def fit_univariate(values: Sequence[tuple[int, int]], D: int) -> BinomialPoly:
    """Integer coefficients (b_0..b_D) interpolating D+1 consecutive samples."""
    if D < 0:
        raise ValueError("degree must be non-negative")
    pts = sorted(values)[: D + 1]
    if len(pts) < D + 1:
        raise ValueError(f"need {D + 1} samples for degree {D}, got {len(pts)}")
    ns = [n for n, _ in pts]
    if ns != list(range(ns[0], ns[0] + D + 1)):
        raise ValueError("samples must sit at consecutive n")
    A = [[Fraction((-1) ** i * binom(n + D - i - 1, D - i)) for i in range(D + 1)] for n in ns]
    sol = solve_exact(A, [Fraction(v) for _, v in pts])
    if any(c.denominator != 1 for c in sol):
        raise FitError(f"non-integral coefficients {[str(c) for c in sol]}")
    return BinomialPoly(tuple(int(c) for c in sol))


def fit_stable(func: Callable[[int], int], D: int, n_start: int = 1, n_max: int = 24,
               verify: int = VERIFY_POINTS) -> tuple[BinomialPoly, FitDiagnostics]:
    """Slide a D+1 window up from ``n_start`` until the fit survives ``verify`` extra points."""
    cache: dict[int, int] = {}

    def f(n: int) -> int:
        if n not in cache:
            cache[n] = func(n)
        return cache[n]

    n0 = n_start
    last = FitDiagnostics(n_start, D + 1, n_start - 1, False)
    while n0 + D + verify <= n_max:
        window = [(n, f(n)) for n in range(n0, n0 + D + 1)]
        try:
            poly = fit_univariate(window, D)
        except FitError:
            n0 += 1
            continue
        checked = n0 + D
        for n in range(n0 + D + 1, n0 + D + verify + 1):
            if poly(n) != f(n):
                break
            checked = n
        if checked == n0 + D + verify:
            return poly, FitDiagnostics(n0, D + 1, checked, True)
        last = FitDiagnostics(n0, D + 1, checked, False)
        n0 += 1
    raise InstabilityError(f"no stable degree-{D} fit with samples up to n = {n_max}", last)


def hs_function(I: MonomialIdeal, n: int) -> int:
    return colength(ideal_power(I, n))


def hs_polynomial(I: MonomialIdeal, n_max: int = 24) -> tuple[BinomialPoly, FitDiagnostics]:
    """Hilbert-Samuel coefficients (e_0, ..., e_d) of an m-primary ideal."""
    if not is_finite_colength(I):
        raise ValueError("ideal is not m-primary")
    return fit_stable(lambda n: hs_function(I, n), I.ring.krull_dim, n_max=n_max)


def bhatt_function(ideals: Sequence[MonomialIdeal], u: Sequence[int]) -> int:
    """l(R / I_1^{u_1} ... I_r^{u_r})."""
    if any(v < 0 for v in u):
        raise ValueError("exponents must be non-negative")
    return colength(ideal_multipower(ideals, u))


@dataclass(frozen=True)
class MultiBinomialPoly:
    """P(u) = sum_alpha e_alpha prod_j C(u_j, alpha_j) over |alpha| <= maxdeg."""

    nvars: int
    maxdeg: int
    coeffs: Mapping[tuple[int, ...], int] = field(hash=False)

    def __call__(self, u: Sequence[int]) -> int:
        total = 0
        for alpha, e in self.coeffs.items():
            term = e
            for uj, aj in zip(u, alpha):
                term *= binom(uj, aj)
                if not term:
                    break
            total += term
        return total

    def __getitem__(self, alpha) -> int:
        return self.coeffs.get(tuple(alpha), 0)

    def total(self, i: int) -> int:
        return sum(e for a, e in self.coeffs.items() if sum(a) == i)

    def top(self) -> dict[tuple[int, ...], int]:
        return {a: e for a, e in self.coeffs.items() if sum(a) == self.maxdeg}


def _multi_indices(r: int, maxdeg: int) -> list[tuple[int, ...]]:
    return [a for k in range(maxdeg + 1) for a in _compositions(k, r)]


def _compositions(n: int, r: int) -> Iterable[tuple[int, ...]]:
    """All u in N^r with |u| = n, lexicographically decreasing."""
    if r == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, r - 1):
            yield (first,) + rest


compositions = _compositions


def fit_multivariate(func: Callable[[tuple[int, ...]], int], r: int, maxdeg: int,
                     shift: Sequence[int]) -> MultiBinomialPoly:
    """Interpolate on shift + {beta : |beta| <= maxdeg} and re-express in the unshifted basis.

    Forward differences give P(u) = sum c_gamma prod C(u_j - s_j, gamma_j); the
    Chu-Vandermonde identity C(u - s, k) = sum_i C(-s, k - i) C(u, i) converts
    each coordinate back to prod C(u_j, alpha_j).
    """
    shift = tuple(shift)
    alphas = _multi_indices(r, maxdeg)
    vals = {b: func(tuple(s + bj for s, bj in zip(shift, b))) for b in alphas}
    shifted: dict[tuple[int, ...], int] = {}
    for a in alphas:
        acc = 0
        for g in itertools.product(*(range(aj + 1) for aj in a)):
            sign = (-1) ** (sum(a) - sum(g))
            w = 1
            for aj, gj in zip(a, g):
                w *= math.comb(aj, gj)
            acc += sign * w * vals[g]
        shifted[a] = acc
    coeffs: dict[tuple[int, ...], int] = {}
    for a in alphas:
        acc = 0
        for g, c in shifted.items():
            if not c or any(gj < aj for gj, aj in zip(g, a)):
                continue
            w = c
            for gj, aj, s in zip(g, a, shift):
                w *= binom(-s, gj - aj)
                if not w:
                    break
            acc += w
        if acc:
            coeffs[a] = acc
    return MultiBinomialPoly(r, maxdeg, coeffs)


def bhatt_polynomial(ideals: Sequence[MonomialIdeal], max_shift: int = 12,
                     verify: int = VERIFY_POINTS) -> tuple[MultiBinomialPoly, FitDiagnostics]:
    """Bhattacharya polynomial of (I_1, ..., I_r) by shifted-grid interpolation.

    The fit starts at u0 = (d, ..., d) and moves every coordinate up by 2
    until the polynomial matches the function on the box u0 + [0, d + verify]^r.
    """
    ideals = list(ideals)
    if not ideals:
        raise ValueError("need at least one ideal")
    for I in ideals:
        if not is_finite_colength(I):
            raise ValueError("every ideal must be m-primary")
    r = len(ideals)
    d = ideals[0].ring.krull_dim

    def func(u):
        return bhatt_function(ideals, u)

    s = d
    last = FitDiagnostics(s, d + 1, s - 1, False)
    while s <= max_shift:
        poly = fit_multivariate(func, r, d, (s,) * r)
        top = s + d + verify
        ok = all(poly(u) == func(u) for u in itertools.product(range(s, top + 1), repeat=r))
        if ok:
            return poly, FitDiagnostics(s, d + 1, top, True)
        last = FitDiagnostics(s, d + 1, s + d, False)
        s += 2
    raise InstabilityError(f"Bhattacharya fit unstable up to shift {max_shift}", last)


def hypothesis_holds_on(ideals: Sequence[MonomialIdeal], poly: MultiBinomialPoly, bound: int) -> bool:
    """Whether l(R/I^u) = P(u) for every u in [0, bound]^r."""
    r = len(ideals)
    return all(poly(u) == bhatt_function(ideals, u) for u in itertools.product(range(bound + 1), repeat=r))


def mixed_E(poly, i: int) -> int:
    """Sum of the coefficients e_alpha with |alpha| = i.

    ``poly`` is a fitted :class:`MultiBinomialPoly` or a sequence of ideals.
    """
    if not isinstance(poly, MultiBinomialPoly):
        poly = bhatt_polynomial(list(getattr(poly, "ideals", poly)))[0]
    if not 0 <= i <= poly.maxdeg:
        raise ValueError(f"i must lie in 0..{poly.maxdeg}")
    return poly.total(i)
