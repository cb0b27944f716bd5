"""Seeded random sweeps over direct sums of monomial ideals.

Each trial draws its own generator ``default_rng([seed, trial])``, so a
record can be regenerated from (seed, trial, profile, d, r) alone and the
sweep gives identical output for any number of worker processes.
"""
from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .brim import IdealTuple, northcott_report
from .staircase import MonomialIdeal, Ring, ideal

log = logging.getLogger(__name__)

PROFILES = ("random", "equal", "equal-parameter")
WORKERS_ENV = "NORTHCOTT_WORKERS"


@dataclass(frozen=True)
class SearchRecord:
    seed: int
    trial: int
    tuple: str
    d: int
    r: int
    br0: int
    br1: int
    colength_FM: int
    slack: int
    flag: str
    reduction_number: int | None = None

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class SearchResult:
    records: list[SearchRecord] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)

    @property
    def violations(self) -> list[SearchRecord]:
        return [rec for rec in self.records if rec.flag == "violation"]

    @property
    def equalities(self) -> list[SearchRecord]:
        return [rec for rec in self.records if rec.flag == "equality"]


def random_ideal(rng: np.random.Generator, ring: Ring, max_power: int = 5, extra: int = 3) -> MonomialIdeal:
    """m-primary ideal: a pure power of each variable plus up to ``extra`` monomials under them."""
    d = ring.dim
    pure = [int(rng.integers(1, max_power + 1)) for _ in range(d)]
    gens = [tuple(pure[i] if j == i else 0 for j in range(d)) for i in range(d)]
    for _ in range(int(rng.integers(0, extra + 1))):
        g = tuple(int(rng.integers(0, pure[j])) for j in range(d))
        if any(g):  # the zero vector would make the unit ideal
            gens.append(g)
    return ideal(ring, gens)


def parameter_ideal(rng: np.random.Generator, ring: Ring, max_power: int = 5) -> MonomialIdeal:
    d = ring.dim
    return ideal(ring, [tuple(int(rng.integers(1, max_power + 1)) if j == i else 0 for j in range(d))
                        for i in range(d)])


def random_tuple(rng: np.random.Generator, ring: Ring, r: int, profile: str = "random",
                 max_power: int = 5, extra: int = 3) -> IdealTuple:
    if profile == "random":
        return IdealTuple(tuple(random_ideal(rng, ring, max_power, extra) for _ in range(r)))
    if profile == "equal":
        return IdealTuple((random_ideal(rng, ring, max_power, extra),) * r)
    if profile == "equal-parameter":
        # half parameter ideals, half general ones, so both verdicts occur
        if rng.integers(0, 2):
            I = parameter_ideal(rng, ring, max_power)
        else:
            I = random_ideal(rng, ring, max_power, extra)
        return IdealTuple((I,) * r)
    raise ValueError(f"unknown profile {profile!r} (expected one of {', '.join(PROFILES)})")


def _flag(slack: int) -> str:
    if slack < 0:
        return "violation"
    return "equality" if slack == 0 else "strict"


def run_trial(seed: int, trial: int, d: int, r: int, profile: str = "random", max_power: int = 5,
              extra: int = 3, n_max: int = 24, reduction: bool = False, s_max: int = 6) -> SearchRecord:
    rng = np.random.default_rng([seed, trial])
    T = random_tuple(rng, Ring(d), r, profile, max_power, extra)
    rep = northcott_report(T, n_max=n_max)
    red = None
    if reduction:
        from .reesmod import direct_sum_matrix, find_minimal_reduction

        _, red, _ = find_minimal_reduction(direct_sum_matrix(T), seed=int(rng.integers(2 ** 31)), s_max=s_max)
    return SearchRecord(seed, trial, str(T), d, r, rep.br0, rep.br1, rep.colength_FM, rep.slack,
                        _flag(rep.slack), red)


def _guarded(args: tuple) -> SearchRecord | dict:
    seed, trial = args[0], args[1]
    try:
        return run_trial(*args)
    except Exception as err:  # a bad trial must not end the sweep
        return {"seed": seed, "trial": trial, "error": f"{type(err).__name__}: {err}"}


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        log.warning("ignoring %s=%r", WORKERS_ENV, raw)
        return 1


def search(d: int, r: int, trials: int, seed: int, profile: str = "random", max_power: int = 5,
           extra: int = 3, n_max: int = 24, reduction: bool = False, s_max: int = 6,
           workers: int | None = None) -> SearchResult:
    """Northcott slack for ``trials`` random tuples, in trial order."""
    if d < 2:
        raise ValueError("the search needs d >= 2")
    if r < 1 or trials < 0:
        raise ValueError("need r >= 1 and trials >= 0")
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r} (expected one of {', '.join(PROFILES)})")
    jobs = [(seed, t, d, r, profile, max_power, extra, n_max, reduction, s_max) for t in range(trials)]
    workers = worker_count() if workers is None else workers
    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_guarded, jobs))
    else:
        outcomes = [_guarded(job) for job in jobs]
    result = SearchResult()
    for out in outcomes:
        if isinstance(out, SearchRecord):
            result.records.append(out)
        else:
            log.warning("trial %d (seed %d) skipped: %s", out["trial"], out["seed"], out["error"])
            result.failures.append(out)
    return result
