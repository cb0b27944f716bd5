"""Buchsbaum-Rim functions and coefficients of direct sums M = I_1 + ... + I_r in R^r.

Since the Rees algebra of a direct sum is R[I_1 t_1, ..., I_r t_r], the
Buchsbaum-Rim function is a lattice sum of colengths,

    BF(n) = sum_{|u| = n} l(R / I_1^{u_1} ... I_r^{u_r}).

(br_0, br_1) is obtained three ways: fitting BF directly, from the
Bhattacharya aggregates E_d and E_{d-1}, and (for r equal summands) from the
Hilbert-Samuel coefficients of the summand.  :func:`northcott_report`
cross-checks the routes before it reports anything.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Sequence

from .multiplicity import (
    BinomialPoly,
    FitDiagnostics,
    MultiBinomialPoly,
    bhatt_function,
    bhatt_polynomial,
    binom,
    compositions,
    fit_stable,
    fit_univariate,
    hs_polynomial,
    hypothesis_holds_on,
)
from .staircase import MonomialIdeal, Ring, colength, is_finite_colength

if TYPE_CHECKING:
    from .reesmod import GeneratorMatrix

REPORT_SCHEMA_VERSION = 1


class CrossCheckError(RuntimeError):
    """Independent routes to the same invariant disagree."""


@dataclass(frozen=True)
class IdealTuple:
    ideals: tuple[MonomialIdeal, ...]

    def __post_init__(self):
        ideals = tuple(self.ideals)
        object.__setattr__(self, "ideals", ideals)
        if not ideals:
            raise ValueError("an ideal tuple needs r >= 1 summands")
        ring = ideals[0].ring
        for I in ideals:
            if I.ring != ring:
                raise ValueError("all summands must share the ambient ring")
            if not is_finite_colength(I):
                raise ValueError(f"summand {I} is not m-primary")

    @property
    def ring(self) -> Ring:
        return self.ideals[0].ring

    @property
    def r(self) -> int:
        return len(self.ideals)

    @property
    def d(self) -> int:
        return self.ring.krull_dim

    @property
    def equal_summands(self) -> bool:
        return all(I == self.ideals[0] for I in self.ideals)

    def __iter__(self):
        return iter(self.ideals)

    def __len__(self):
        return len(self.ideals)

    def __getitem__(self, i):
        return self.ideals[i]

    def __str__(self) -> str:
        from .dsl import format_tuple

        return format_tuple(self.ideals)


def as_tuple(T: IdealTuple | Iterable[MonomialIdeal]) -> IdealTuple:
    return T if isinstance(T, IdealTuple) else IdealTuple(tuple(T))


def colength_FM(T: IdealTuple) -> int:
    """l(F/M) = sum of the summand colengths."""
    return sum(colength(I) for I in as_tuple(T))


def bf_direct_sum(T: IdealTuple, n: int) -> int:
    T = as_tuple(T)
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 0
    if T.equal_summands:
        # every product I^{u} is I^n; there are C(n+r-1, r-1) of them
        return math.comb(n + T.r - 1, T.r - 1) * bhatt_function(T.ideals[:1], (n,))
    return sum(bhatt_function(T.ideals, u) for u in compositions(n, T.r))


def bp_polynomial(T: IdealTuple, n_max: int = 24) -> tuple[BinomialPoly, FitDiagnostics]:
    """Buchsbaum-Rim coefficients (br_0, ..., br_{d+r-1}) by slide-and-verify fitting."""
    T = as_tuple(T)
    return fit_stable(lambda n: bf_direct_sum(T, n), T.d + T.r - 1, n_max=n_max)


def br_from_bhattacharya(poly: MultiBinomialPoly, d: int) -> tuple[int, int]:
    Ed = poly.total(d)
    Ed1 = poly.total(d - 1) if d >= 1 else 0
    return Ed, (d - 1) * Ed - Ed1


def br_prop23(T: IdealTuple) -> tuple[int, int]:
    """(E_d, (d-1) E_d - E_{d-1}) from the Bhattacharya polynomial."""
    T = as_tuple(T)
    poly, _ = bhatt_polynomial(T.ideals)
    return br_from_bhattacharya(poly, T.d)


def bp_equal_ideal(I: MonomialIdeal, r: int, n_max: int = 24) -> BinomialPoly:
    """BP of I^{+r} as the product P_I(n) C(n+r-1, r-1), re-expanded by exact fitting."""
    if r < 1:
        raise ValueError("r must be at least 1")
    P, _ = hs_polynomial(I, n_max=n_max)
    D = I.ring.krull_dim + r - 1
    return fit_univariate([(n, P(n) * binom(n + r - 1, r - 1)) for n in range(1, D + 2)], D)


def br_thm41(I: MonomialIdeal, r: int, n_max: int = 24) -> tuple[int, int]:
    """Closed forms for br_0, br_1 of I^{+r} in terms of e_0(I), e_1(I)."""
    P, _ = hs_polynomial(I, n_max=n_max)
    d = I.ring.krull_dim
    e0, e1 = P[0], P[1]
    br0 = e0 * binom(d + r - 1, r - 1)
    br1 = e0 * (d - 1) * binom(d + r - 2, r - 2) + e1 * binom(d + r - 2, r - 1)
    return br0, br1


@dataclass
class NorthcottReport:
    d: int
    r: int
    colength_FM: int
    br: BinomialPoly
    slack: int
    inequality_holds: bool
    equality: bool
    diagnostics: FitDiagnostics
    reduction_evidence: dict | None = None
    warnings: list[str] = field(default_factory=list)
    routes: dict = field(default_factory=dict)

    @property
    def br0(self) -> int:
        return self.br[0]

    @property
    def br1(self) -> int:
        return self.br[1]

    def as_dict(self) -> dict:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "d": self.d,
            "r": self.r,
            "colength_FM": self.colength_FM,
            "br": list(self.br.coeffs),
            "slack": self.slack,
            "inequality_holds": self.inequality_holds,
            "equality": self.equality,
            "reduction_evidence": self.reduction_evidence,
            "diagnostics": self.diagnostics.as_dict(),
            "warnings": list(self.warnings),
            "routes": self.routes,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)


def northcott_report(T: IdealTuple | Sequence[MonomialIdeal], with_reduction: "GeneratorMatrix | None" = None,
                     s_max: int = 6, n_max: int = 24) -> NorthcottReport:
    """br_0 - br_1 against l(F/M), with every available route cross-checked."""
    T = as_tuple(T)
    d, r = T.d, T.r
    warnings: list[str] = []
    lFM = colength_FM(T)
    br, diag = bp_polynomial(T, n_max=n_max)
    routes: dict[str, list[int]] = {"fit": [br[0], br[1]]}

    bpoly, bdiag = bhatt_polynomial(T.ideals)
    p0, p1 = br_from_bhattacharya(bpoly, d)
    routes["bhattacharya"] = [p0, p1]
    if p0 != br[0]:
        raise CrossCheckError(f"br_0 by fitting ({br[0]}) differs from E_d ({p0})")
    if p1 != br[1]:
        # the E-formula needs l(R/I^u) = P(u) for every u; only then is a mismatch a bug
        if hypothesis_holds_on(T.ideals, bpoly, bdiag.verified_through):
            raise CrossCheckError(f"br_1 by fitting ({br[1]}) differs from (d-1)E_d - E_(d-1) ({p1})")
        warnings.append("Bhattacharya polynomial differs from the colength function near the "
                        "coordinate axes; the E_d/E_(d-1) formula for br_1 does not apply")
    if T.equal_summands:
        t0, t1 = br_thm41(T.ideals[0], r, n_max=n_max)
        routes["closed_form"] = [t0, t1]
        if (t0, t1) != (br[0], br[1]):
            raise CrossCheckError(f"closed form ({t0}, {t1}) differs from fit ({br[0]}, {br[1]})")

    slack = lFM - (br[0] - br[1])
    if d == 1:
        warnings.append("dimension one: br_0 - br_1 <= l(F/M) can fail here (k[[x,y]]/(x^2) with M = m + m "
                        "gives 3 > 2)")
    elif d > 2:
        warnings.append(f"dimension {d}: the inequality is only known for dimension two and special "
                        "modules; this is a data point for the open question")

    evidence = None
    if with_reduction is not None:
        from .reesmod import direct_sum_matrix, reduction_number

        red = reduction_number(with_reduction, direct_sum_matrix(T), s_max)
        evidence = {
            "matrix": with_reduction.to_strings(),
            "reduction_number": red,
            "s_max": s_max,
        }
    return NorthcottReport(
        d=d, r=r, colength_FM=lFM, br=br, slack=slack,
        inequality_holds=slack >= 0, equality=slack == 0,
        diagnostics=diag, reduction_evidence=evidence, warnings=warnings, routes=routes,
    )
