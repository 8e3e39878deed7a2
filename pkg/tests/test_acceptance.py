"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Every criterion checks its stated tolerance and runtime budget.  Run with
``pytest tests/test_acceptance.py -v -s`` to see the per-criterion lines.
"""

import math
import time

import numpy as np
import pytest

from tvbounds import (
    DiscreteDist,
    GridSpec,
    Moments1D,
    MomentPair1D,
    MomentPairND,
    MomentsND,
    OracleStatus,
    anchored_tv,
    check_moments,
    check_nd_bound_random,
    construct_tight_witness,
    construct_vanishing_sequence,
    minimize_tv_on_grid,
    sibling_branch_tv,
    tv_distance,
    tv_lower_bound_1d,
    tv_lower_bound_nd,
    two_point_tv,
)

from conftest import gaussian_tv


def _report(name: str, elapsed: float, limit: float, failures: list) -> None:
    ok = not failures and elapsed < limit
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] {name}: {elapsed * 1000:.2f} ms (limit {limit * 1000:.0f} ms)")
    assert not failures, f"{name}: {failures[:5]}"
    assert elapsed < limit, f"{name}: took {elapsed:.3f}s, budget {limit}s"


def _pair(mp, sp, mq, sq):
    return MomentPair1D.from_scalars(mp, sp, mq, sq)


def _random_config(rng, sigma_lo=0.0, sigma_hi=3.0, zero_sigma_rate=0.0):
    mq = rng.uniform(-5.0, 5.0)
    magnitude = rng.uniform(0.1, 5.0)
    sign = 1.0 if rng.uniform() < 0.5 else -1.0
    mp = mq + sign * magnitude
    sigmas = []
    for _ in range(2):
        if zero_sigma_rate and rng.uniform() < zero_sigma_rate:
            sigmas.append(0.0)
        else:
            sigmas.append(rng.uniform(sigma_lo, sigma_hi))
    return _pair(mp, sigmas[0], mq, sigmas[1])


def test_criterion_1_tightness_equality():
    reference = _pair(1, 1, 0, 1)
    construct_tight_witness(reference)  # warm caches before timing

    start = time.perf_counter()
    bound = tv_lower_bound_1d(reference)
    witness = construct_tight_witness(reference)
    recomputed = tv_distance(witness.p_dist, witness.q_dist)
    elapsed = time.perf_counter() - start

    failures = []
    if bound != 0.2:
        failures.append(("bound", bound))
    if witness.p_dist.compact() != DiscreteDist((0.5, 3.0), (0.8, 0.2)):
        failures.append(("p atoms", witness.p_dist))
    if witness.q_dist.compact() != DiscreteDist((-2.0, 0.5), (0.2, 0.8)):
        failures.append(("q atoms", witness.q_dist))
    if abs(recomputed - 0.2) > 1e-12:
        failures.append(("tv", recomputed))
    if not check_moments(witness.p_dist, Moments1D(1.0, 1.0), 1e-9):
        failures.append(("p moments", witness.p_dist.moments()))
    if not check_moments(witness.q_dist, Moments1D(0.0, 1.0), 1e-9):
        failures.append(("q moments", witness.q_dist.moments()))
    _report("criterion 1 tightness equality", elapsed, 1e-3, failures)


def test_criterion_2_randomized_tightness_sweep():
    rng = np.random.default_rng(202402)
    configs = [
        _random_config(rng, zero_sigma_rate=0.15) for _ in range(200)
    ]

    failures = []
    start = time.perf_counter()
    for pair in configs:
        witness = construct_tight_witness(pair)
        bound = tv_lower_bound_1d(pair)
        if abs(tv_distance(witness.p_dist, witness.q_dist) - bound) > 1e-12:
            failures.append(pair)
        elif not (
            check_moments(witness.p_dist, pair.p_side, 1e-9)
            and check_moments(witness.q_dist, pair.q_side, 1e-9)
        ):
            failures.append(pair)
    elapsed = time.perf_counter() - start
    _report("criterion 2 randomized tightness sweep", elapsed, 0.1, failures)


def _lp_configs():
    rng = np.random.default_rng(202403)
    configs = []
    while len(configs) < 10:
        pair = _random_config(rng, sigma_lo=0.3, sigma_hi=2.5)
        if abs(pair.p_side.mean - pair.q_side.mean) <= 3.0:
            configs.append(pair)
    return configs


def test_criterion_3_lp_attainment():
    configs = _lp_configs()
    failures = []
    start = time.perf_counter()
    for pair in configs:
        result = minimize_tv_on_grid(pair, GridSpec.default_for(pair, count=121))
        bound = tv_lower_bound_1d(pair)
        if result.status is not OracleStatus.OPTIMAL:
            failures.append((pair, result.status))
        elif abs(result.tv_min - bound) > 1e-6:
            failures.append((pair, result.tv_min, bound))
    elapsed = time.perf_counter() - start
    _report("criterion 3 LP attainment", elapsed, 5.0, failures)


def test_criterion_4_lp_soundness_floor():
    configs = _lp_configs()
    failures = []
    start = time.perf_counter()
    for pair in configs:
        result = minimize_tv_on_grid(
            pair, GridSpec.default_for(pair, count=121), include_witness_points=False
        )
        bound = tv_lower_bound_1d(pair)
        if result.status is not OracleStatus.OPTIMAL:
            failures.append((pair, result.status))
        elif result.tv_min < bound - 1e-8:
            failures.append((pair, result.tv_min, bound))
    elapsed = time.perf_counter() - start
    _report("criterion 4 LP soundness floor", elapsed, 5.0, failures)


def test_criterion_5_ordering_suite():
    rng = np.random.default_rng(202405)
    configs = [
        _random_config(rng, sigma_lo=0.1, sigma_hi=3.0) for _ in range(1000)
    ]

    failures = []
    start = time.perf_counter()
    for pair in configs:
        bound = tv_lower_bound_1d(pair)
        if not two_point_tv(pair) > bound:
            failures.append(("two-point", pair))
        if not anchored_tv(pair, "p") > bound:
            failures.append(("anchored p", pair))
        if not anchored_tv(pair, "q") > bound:
            failures.append(("anchored q", pair))
        if not sibling_branch_tv(pair).value >= bound:
            failures.append(("sign branch", pair))
    elapsed = time.perf_counter() - start
    _report("criterion 5 ordering suite", elapsed, 0.1, failures)


def test_criterion_6_dimension_one_dominance():
    rng = np.random.default_rng(202406)
    scalars = [
        (
            rng.uniform(-5, 5),
            rng.uniform(0, 3),
            rng.uniform(-5, 5),
            rng.uniform(0, 3),
        )
        for _ in range(1000)
    ]

    failures = []
    start = time.perf_counter()
    for mp, sp, mq, sq in scalars:
        nd = tv_lower_bound_nd(
            MomentPairND(
                MomentsND([mp], [[sp * sp]]), MomentsND([mq], [[sq * sq]])
            )
        )
        if nd > tv_lower_bound_1d(_pair(mp, sp, mq, sq)) + 1e-12:
            failures.append((mp, sp, mq, sq, nd))
    elapsed = time.perf_counter() - start
    _report("criterion 6 dimension-1 dominance", elapsed, 0.1, failures)


def test_criterion_7_nd_property_check():
    failures = []
    start = time.perf_counter()
    first = check_nd_bound_random(d=2, atoms=6, trials=10000, seed=42)
    second = check_nd_bound_random(d=3, atoms=8, trials=10000, seed=43)
    elapsed = time.perf_counter() - start
    if first != 0:
        failures.append(("d=2", first))
    if second != 0:
        failures.append(("d=3", second))
    _report("criterion 7 trace-bound property check", elapsed, 10.0, failures)


def test_criterion_8_vanishing_sequence():
    failures = []
    start = time.perf_counter()
    for k in (2, 10, 100, 10**6):
        witness = construct_vanishing_sequence(0.0, 2.0, 1.0, k)
        if witness.claimed_tv != 1.0 / k:
            failures.append((k, "claim", witness.claimed_tv))
        if abs(tv_distance(witness.p_dist, witness.q_dist) - 1.0 / k) > 1e-15:
            failures.append((k, "tv"))
        if not check_moments(witness.p_dist, Moments1D(0.0, 2.0), 1e-9):
            failures.append((k, "p moments"))
        if not check_moments(witness.q_dist, Moments1D(0.0, 1.0), 1e-9):
            failures.append((k, "q moments"))
    elapsed = time.perf_counter() - start
    _report("criterion 8 vanishing sequence", elapsed, 0.01, failures)


def test_criterion_9_gaussian_sanity():
    rng = np.random.default_rng(202409)
    configs = []
    for _ in range(99):
        mp, mq = rng.uniform(-3.0, 3.0, size=2)
        sp, sq = rng.uniform(0.2, 2.5, size=2)
        configs.append((mp, sp, mq, sq))
    configs.append((1.0, 1.0, 0.0, 1.0))

    failures = []
    start = time.perf_counter()
    for mp, sp, mq, sq in configs:
        tv = gaussian_tv(mp, sp, mq, sq)
        bound = tv_lower_bound_1d(_pair(mp, sp, mq, sq))
        if tv < bound - 1e-8:
            failures.append((mp, sp, mq, sq, tv, bound))
    elapsed = time.perf_counter() - start
    reference = gaussian_tv(1.0, 1.0, 0.0, 1.0)
    if abs(reference - 0.3829249) > 1e-6:
        failures.append(("reference quadrature", reference))
    if not reference >= 0.2:
        failures.append(("reference bound", reference))
    _report("criterion 9 gaussian sanity", elapsed, 2.0, failures)
