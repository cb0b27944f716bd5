"""The ten acceptance criteria, one PASS/FAIL line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines.  All checks
are exact integer equalities; only the runtimes carry a tolerance.
"""
import time

import numpy as np
import pytest

from northcott.brim import (
    IdealTuple,
    bf_direct_sum,
    bp_polynomial,
    colength_FM,
    northcott_report,
)
from northcott.dsl import parse_ideal, parse_ideal_tuple, parse_matrix, parse_polynomial
from northcott.multiplicity import fit_stable, hs_function, hs_polynomial
from northcott.reesmod import (
    band_matrix,
    bf_general,
    direct_sum_matrix,
    find_minimal_reduction,
    reduction_number,
    sally_length,
    verify_joint_reduction,
    verify_rn1_formula,
    verify_sally_identity,
)
from northcott.search import random_ideal, random_tuple, search
from northcott.staircase import Ring, colength, colength_pivot

STAIR = "x^3,x^2y^4,xy^5,y^7"
THREE_VAR = "x^3,x^2y^2,y^3,z^4"


def verdict(number: int, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'}  criterion {number:2d}: {detail}")
    assert ok, detail


def test_criterion_01_mixed_sum_regression():
    t = time.perf_counter()
    R = Ring(2)
    T = IdealTuple(tuple(parse_ideal_tuple("x,y | x^2,y", R)))
    bf = [bf_direct_sum(T, n) for n in range(1, 5)]
    rep = northcott_report(T)
    dt = time.perf_counter() - t
    ok = (bf == [3, 13, 34, 70] and rep.br.coeffs == (4, 1, 0, 0) and rep.slack == 0 and dt < 1.0)
    verdict(1, ok, f"BF(1..4)={bf} br={list(rep.br.coeffs)} slack={rep.slack} {dt:.2f}s")


def test_criterion_02_one_dimensional_counterexample():
    t = time.perf_counter()
    R = Ring(2, relations=((2, 0),))
    I = parse_ideal("x,y", R)
    lengths = [hs_function(I, n) for n in range(1, 11)]
    e, _ = hs_polynomial(I)
    rep = northcott_report([I, I])
    dt = time.perf_counter() - t
    ok = (lengths == [2 * n - 1 for n in range(1, 11)] and e.coeffs == (2, 1)
          and rep.br.coeffs == (4, 1, -1) and not rep.inequality_holds
          and rep.br0 - rep.br1 == 3 and rep.colength_FM == 2 and dt < 1.0)
    verdict(2, ok, f"l(R/I^n)={lengths} e={list(e.coeffs)} br={list(rep.br.coeffs)} "
                   f"violation {rep.br0 - rep.br1} > {rep.colength_FM} {dt:.2f}s")


def test_criterion_03_staircase_pair():
    t = time.perf_counter()
    R = Ring(2)
    I = parse_ideal(STAIR, R)
    e, _ = hs_polynomial(I)
    rep = northcott_report([I, I])
    M = direct_sum_matrix([I, I])
    N = parse_matrix("[[x^3, y^7, 0], [0, x^3, y^7]]", R)
    red = reduction_number(N, M)
    dt = time.perf_counter() - t
    routes = {k: tuple(v) for k, v in rep.routes.items()}
    ok = (colength(I) == 16 and e.coeffs == (21, 6, 1)
          and routes == {"fit": (63, 33), "bhattacharya": (63, 33), "closed_form": (63, 33)}
          and rep.slack == 2 and red == 2 and dt < 30.0)
    verdict(3, ok, f"l(R/I)={colength(I)} e={list(e.coeffs)} routes={routes} slack={rep.slack} "
                   f"red={red} {dt:.2f}s")


@pytest.mark.slow
def test_criterion_04_three_variables():
    t = time.perf_counter()
    R = Ring(3)
    I = parse_ideal(THREE_VAR, R)
    T = IdealTuple((I, I))
    bp, _ = bp_polynomial(T)
    slack = colength_FM(T) - (bp[0] - bp[1])
    dt = time.perf_counter() - t
    ok = bp.coeffs == (144, 84, 4, 0, 0) and slack == 4 and dt < 120.0
    verdict(4, ok, f"br={list(bp.coeffs)} slack={slack} {dt:.2f}s")


def test_criterion_05_parameter_band_suite():
    R = Ring(2)
    details = []
    ok = True
    for src in ("x,y", "x^2,y^3", "x^3,y^5"):
        I = parse_ideal(src, R)
        M = direct_sum_matrix([I, I])
        N = band_matrix(I)
        red = reduction_number(N, M)
        sally = [sally_length(M, N, n) for n in range(5)]
        rn1 = all(verify_rn1_formula(M, N, n) for n in range(5))
        bp, _ = bp_polynomial(IdealTuple((I, I)))
        good = red == 1 and not any(sally) and rn1 and bp[2] == 0 and bp[3] == 0
        ok &= good
        details.append(f"({src}) red={red} sally={sally} rn1={rn1} br={list(bp.coeffs)}")
    verdict(5, ok, "; ".join(details))


def test_criterion_06_rank_three_band():
    R = Ring(3)
    m = parse_ideal("x,y,z", R)
    N = band_matrix(m, "rank3")
    red = reduction_number(N, direct_sum_matrix([m, m, m]))
    verdict(6, red == 2, f"red of the 3x5 band over m^3 = {red}")


def test_criterion_07_oracle_equivalence():
    R = Ring(2)
    mismatches = []
    for trial in range(25):
        rng = np.random.default_rng([7, trial])
        T = random_tuple(rng, R, r=1 + trial % 3, max_power=4, extra=2)
        M = direct_sum_matrix(T)
        for n in range(1, 4):
            a, b = bf_general(M, n), bf_direct_sum(T, n)
            if a != b:
                mismatches.append((str(T), n, a, b))
    box_bad = []
    for trial in range(100):
        rng = np.random.default_rng([11, trial])
        ring = Ring(1 + trial % 3)
        I = random_ideal(rng, ring, max_power=6, extra=4)
        if colength(I) != colength_pivot(I):
            box_bad.append(str(I))
    ok = not mismatches and not box_bad
    verdict(7, ok, f"bf_general vs lattice: {75 - len(mismatches)}/75 agree; "
                   f"box vs pivot colength: {100 - len(box_bad)}/100 agree")


@pytest.mark.slow
def test_criterion_08_northcott_property():
    t = time.perf_counter()
    records, failures = [], []
    for r, trials in ((1, 67), (2, 67), (3, 66)):
        res = search(2, r, trials, seed=2024, reduction=True)
        records += res.records
        failures += res.failures
    negative = [rec for rec in records if rec.slack < 0]
    unresolved = [rec for rec in records if rec.reduction_number is None]
    eq_bad = [rec for rec in records if rec.slack == 0 and not (rec.reduction_number <= 1)]
    red_bad = [rec for rec in records if rec.reduction_number == 1 and rec.slack != 0]
    dt = time.perf_counter() - t
    ok = (len(records) == 200 and not failures and not negative and not unresolved
          and not eq_bad and not red_bad and dt < 600.0)
    equal = sum(rec.slack == 0 for rec in records)
    verdict(8, ok, f"{len(records)} tuples, {len(failures)} failed, {len(negative)} negative slack, "
                   f"{equal} equalities all with red <= 1, {len(red_bad)} red=1 cases with slack > 0 "
                   f"{dt:.1f}s")


@pytest.mark.slow
def test_criterion_09_sally_identity():
    R = Ring(2)
    bad = []
    positive = 0
    for case in range(20):
        rng = np.random.default_rng([909, case])
        r = 1 + case % 2
        T = random_tuple(rng, R, r, max_power=4, extra=2)
        M = direct_sum_matrix(T)
        N, _, _ = find_minimal_reduction(M, seed=case)
        rep = northcott_report(T)
        positive += rep.slack > 0
        for n in range(1, 6):
            lhs, rhs, equal = verify_sally_identity(T, N, n, br0=rep.br0)
            if not equal:
                bad.append(f"{T} n={n}: {lhs} != {rhs}")
        # l(S_{n-1}) as a polynomial in n of degree r
        fit, _ = fit_stable(lambda n: sally_length(M, N, n - 1), r, n_start=1, n_max=r + 8)
        if fit[0] != rep.slack:
            bad.append(f"{T}: Sally leading coefficient {fit[0]} != slack {rep.slack}")
    verdict(9, not bad, f"20 cases ({positive} with positive slack), n=1..5; {len(bad)} problems {bad[:3]}")


def test_criterion_10_joint_reduction():
    R = Ring(2)
    I, J = parse_ideal("x,y", R), parse_ideal("x^2,y", R)
    ok = verify_joint_reduction(parse_polynomial("x", R), parse_polynomial("y", R), I, J)
    verdict(10, ok is True, f"x J + y I = IJ for I=(x,y), J=(x^2,y): {ok}")

