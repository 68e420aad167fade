"""Volumes, closed-form bounds, intersection tables, and their brute-force oracles."""

import itertools
import math
from fractions import Fraction
from math import comb

import mpmath
import numpy as np
import pytest
from mpmath import mpf

from cyclocode import (
    CapacityError,
    DimensionMismatch,
    DivisionDomainError,
    autodistance_census_bound,
    ball_intersection_volume,
    ball_volume,
    bound_report,
    cw_autodistance_census_bound,
    cw_ball_volume,
    fhs_gv_bound,
    gv_bound,
    hamming_distance,
    hcc_gv_bound,
    independence_lower_bound,
    intersection_decay_table,
    levenshtein_bound,
    linear_scale_hcc,
    linear_scale_ooc,
    mcdiarmid_tail,
    word,
)
from cyclocode.volumes import format_rational


def all_words(n, q):
    return itertools.product(range(q), repeat=n)


def rel_close(a, b, tol=1e-12):
    a, b = mpf(a), mpf(b)
    if b == 0:
        return abs(a) <= tol
    return abs(a - b) <= tol * abs(b)


# ------------------------------------------------------------------- volumes


def test_ball_volume_examples():
    for n, q in [(3, 2), (5, 3), (7, 2)]:
        assert ball_volume(n, q, 0) == 1
        assert ball_volume(n, q, n) == q**n
    assert ball_volume(7, 2, 1) == 8
    assert ball_volume(4, 3, 2) == 33  # 1 + 4*2 + 6*4
    with pytest.raises(ValueError):
        ball_volume(5, 2, -1)
    with pytest.raises(ValueError):
        ball_volume(5, 2, 6)


def test_ball_volume_monotone_in_radius():
    for n, q in [(9, 2), (6, 3)]:
        values = [ball_volume(n, q, t) for t in range(n + 1)]
        assert values == sorted(values)
        assert values[-1] == q**n


def test_ball_volume_matches_brute_force():
    for q in (2, 3):
        for n in range(1, 11):
            by_weight = [0] * (n + 1)
            for symbols in all_words(n, q):
                by_weight[sum(1 for s in symbols if s != 0)] += 1
            running = 0
            for t in range(n + 1):
                running += by_weight[t]
                assert ball_volume(n, q, t) == running


def test_cw_ball_volume_examples():
    assert cw_ball_volume(6, 3, 0) == 1
    assert cw_ball_volume(6, 3, 1) == 1  # floor(1/2) = 0 keeps only the center
    assert cw_ball_volume(6, 3, 2) == 10
    with pytest.raises(ValueError):
        cw_ball_volume(6, 3, 7)
    with pytest.raises(ValueError):
        cw_ball_volume(6, 7, 2)


def test_cw_ball_volume_matches_brute_force():
    for n in range(1, 13):
        for w in range(n + 1):
            center = (1,) * w + (0,) * (n - w)
            by_dist = {}
            for symbols in all_words(n, 2):
                if sum(symbols) != w:
                    continue
                d = sum(a != b for a, b in zip(symbols, center))
                by_dist[d] = by_dist.get(d, 0) + 1
            running = 0
            for t in range(2 * w + 1):
                running += by_dist.get(t, 0)
                assert cw_ball_volume(n, w, t) == running


def test_cw_ball_volume_full_radius_covers_slice():
    # Vandermonde: the radius-2w ball on the weight-w slice is the whole slice
    for n in range(1, 21):
        for w in range(n + 1):
            assert cw_ball_volume(n, w, 2 * w) == comb(n, w)


# ------------------------------------------------------------ rational bounds


def test_gv_bound_examples():
    assert gv_bound(7, 2, 3) == Fraction(128, 29)
    for n, q in [(5, 2), (4, 3)]:
        assert gv_bound(n, q, 1) == q**n
        assert gv_bound(n, q, n) == Fraction(q**n, q**n - (q - 1) ** n)
    assert isinstance(gv_bound(6, 2, 3), Fraction)
    with pytest.raises(ValueError):
        gv_bound(6, 2, 0)
    with pytest.raises(ValueError):
        gv_bound(6, 2, 7)


def test_levenshtein_bound_examples():
    assert levenshtein_bound(6, 3, 3) == 2
    assert levenshtein_bound(8, 4, 3) == Fraction(70, 17)
    for n, w in [(6, 2), (7, 3)]:
        assert levenshtein_bound(n, w, 1) == comb(n, w)
    with pytest.raises(ValueError):
        levenshtein_bound(6, 2, 5)  # d > 2w


def test_linear_scales_are_n_times_the_base_bounds():
    for n, q, d in [(7, 2, 3), (9, 2, 4), (6, 3, 2)]:
        assert linear_scale_hcc(n, q, d) == n * gv_bound(n, q, d)
    for n, w, d in [(6, 3, 3), (8, 4, 3)]:
        assert linear_scale_ooc(n, w, d) == n * levenshtein_bound(n, w, d)


# --------------------------------------------------------------- real bounds


def test_hcc_gv_bound_small_n_is_vacuous():
    b = hcc_gv_bound(20, 2, 5, 0.3)
    assert b.vacuous and b.value <= 0
    # decomposition: value = q^n * survivor / (Vol - 1)
    survivor = b.factors["survivor_fraction"]
    assert rel_close(b.value, mpf(2) ** 20 * survivor / (ball_volume(20, 2, 4) - 1))
    assert rel_close(b.factors["correction"], 1 - survivor)


def test_hcc_gv_bound_domain_errors():
    with pytest.raises(DivisionDomainError):
        hcc_gv_bound(10, 2, 1, 0.2)  # Vol(n, 0) = 1 kills the denominator
    with pytest.raises(ValueError):
        hcc_gv_bound(10, 2, 3, 0.6)  # eps >= 1 - 1/q
    with pytest.raises(ValueError):
        hcc_gv_bound(10, 2, 3, 0)


def test_hcc_gv_bound_frozen_fixture():
    # independently recomputed with 60-digit arithmetic and frozen
    b = hcc_gv_bound(10**4, 2, 1000, Fraction(1, 10))
    assert b.vacuous
    assert rel_close(b.value, mpf("-1.1199462115622107851e+1609"), 1e-12)


def test_fhs_gv_bound_relation_and_fixture():
    for n, q, lam, eps in [(100, 2, 60, Fraction(1, 5)), (64, 3, 40, Fraction(1, 4))]:
        inner = hcc_gv_bound(n, q, n - lam, eps)
        outer = fhs_gv_bound(n, q, lam, eps)
        assert rel_close(outer.value, inner.value / n)
        assert outer.vacuous == (outer.value <= 0)
    b = fhs_gv_bound(10**4, 2, 6000, Fraction(5, 100))
    assert b.vacuous
    assert rel_close(b.value, mpf("-1.5264948908247095408e+93"), 1e-12)
    with pytest.raises(ValueError):
        fhs_gv_bound(10, 2, 10, 0.2)  # lam must leave d = n - lam >= 1


def test_big_gv_fixture():
    g = gv_bound(10**4, 2, 1000)
    with mpmath.workdps(60):
        value = mpf(g.numerator) / mpf(g.denominator)
        assert rel_close(value, mpf("1.8281063964510522776e+1601"), 1e-12)


def test_mcdiarmid_tail():
    assert mcdiarmid_tail(0, [1.0]) == 1.0
    assert mcdiarmid_tail(1e-9, [2.0] * 10) == pytest.approx(1.0)
    # influence 2 per coordinate at deviation eps*n gives exp(-eps^2 n / 2)
    n, eps = 50, 0.2
    assert mcdiarmid_tail(eps * n, [2.0] * n) == pytest.approx(math.exp(-1), rel=1e-12)
    for n, eps in [(30, 0.1), (100, 0.25)]:
        assert mcdiarmid_tail(eps * n, [2.0] * n) == pytest.approx(
            math.exp(-(eps**2) * n / 2), rel=1e-12
        )
    with pytest.raises(ValueError):
        mcdiarmid_tail(-1, [2.0])
    with pytest.raises(ValueError):
        mcdiarmid_tail(1, [])
    with pytest.raises(ValueError):
        mcdiarmid_tail(1, [2.0, 0.0])


def test_independence_lower_bound():
    assert independence_lower_bound(100, 10, 1) == 0.0
    assert independence_lower_bound(100, 10, 50) == pytest.approx(10 * math.log(10))
    assert independence_lower_bound(1000, 50, 20) == pytest.approx(20 * math.log(20), rel=1e-12)
    with pytest.raises(ValueError):
        independence_lower_bound(100, 10, 0)
    with pytest.raises(ValueError):
        independence_lower_bound(100, 10, 102)  # K > D^2 + 1
    with pytest.raises(ValueError):
        independence_lower_bound(-1, 10, 5)
    with pytest.raises(ValueError):
        independence_lower_bound(100, 0, 1)


# -------------------------------------------------------------- census bounds


def test_autodistance_census_bound_values():
    b = autodistance_census_bound(4, 2, Fraction(1, 4))
    assert b.threshold == 1
    assert b.total == 16
    assert b.vacuous  # (n-1) e^{-eps^2 n / 2} > 1 here
    big = autodistance_census_bound(100, 2, Fraction(3, 10))
    expect = mpf(2) ** 100 * (1 - 99 * mpmath.exp(mpf("-4.5")))
    assert rel_close(big.count_bound, expect, 1e-12)
    assert big.vacuous  # 99 e^{-4.5} is just above 1
    assert rel_close(big.count_bound, mpf(big.total) - big.shortfall)
    assert big.factors["union_count"] == 99
    assert not autodistance_census_bound(200, 2, Fraction(3, 10)).vacuous
    with pytest.raises(ValueError):
        autodistance_census_bound(10, 2, Fraction(3, 5))  # eps >= 1 - 1/q
    with pytest.raises(ValueError):
        autodistance_census_bound(1, 2, Fraction(1, 4))


def test_cw_autodistance_census_bound_values():
    b = cw_autodistance_census_bound(8, Fraction(1, 2), Fraction(1, 5))
    assert b.threshold == Fraction(8, 5)
    assert b.total == 70
    # recompute the full chain independently
    n, p, eps = 8, 0.5, 0.2
    per_shift = math.exp(-((1 + eps) ** 2) * p**2 * (1 - p) ** 2 * n / 2)
    ell = math.exp(-1 / (12 * n + 1) + 1 / (12 * 4) + 1 / (12 * 4))
    stirling = math.sqrt(2 * math.pi * n * p * (1 - p)) * ell
    assert rel_close(b.shortfall, 70 * 7 * per_shift * stirling, 1e-12)
    assert rel_close(b.count_bound, 70 - float(b.shortfall), 1e-12)
    assert rel_close(b.factors["stirling_factor"], stirling, 1e-12)
    with pytest.raises(ValueError):
        cw_autodistance_census_bound(8, Fraction(1, 3), Fraction(1, 5))  # pn not integral
    with pytest.raises(ValueError):
        cw_autodistance_census_bound(8, Fraction(1, 2), 0)
    with pytest.raises(ValueError):
        cw_autodistance_census_bound(8, Fraction(3, 2), Fraction(1, 5))


# ----------------------------------------------------------- ball intersection


def test_ball_intersection_examples():
    x = word((0, 0, 0), 2)
    y = word((0, 1, 1), 2)
    assert ball_intersection_volume(x, x, 1) == ball_volume(3, 2, 1)
    assert ball_intersection_volume(x, y, 1) == 2  # 001 and 010
    far = word((1, 1, 1), 2)
    assert ball_intersection_volume(x, far, 1) == 0  # separation 3 > 2t
    with pytest.raises(DimensionMismatch):
        ball_intersection_volume(x, word((0, 1), 2), 1)


def test_ball_intersection_matches_brute_force():
    rng = np.random.default_rng(4242)
    for n, q in [(5, 2), (4, 3)]:
        space = list(all_words(n, q))
        for _ in range(25):
            a = tuple(int(v) for v in rng.integers(0, q, n))
            b = tuple(int(v) for v in rng.integers(0, q, n))
            x, y = word(a, q), word(b, q)
            for t in range(n + 1):
                expect = sum(
                    1
                    for z in space
                    if sum(u != v for u, v in zip(z, a)) <= t
                    and sum(u != v for u, v in zip(z, b)) <= t
                )
                assert ball_intersection_volume(x, y, t) == expect


def test_cw_ball_intersection_matches_brute_force():
    n, w = 6, 3
    slice_words = [s for s in all_words(n, 2) if sum(s) == w]
    rng = np.random.default_rng(31337)
    picks = rng.integers(0, len(slice_words), size=(20, 2))
    for ia, ib in picks:
        a, b = slice_words[int(ia)], slice_words[int(ib)]
        x, y = word(a, 2), word(b, 2)
        for t in range(0, 2 * w + 1):
            expect = sum(
                1
                for z in slice_words
                if sum(u != v for u, v in zip(z, a)) <= t
                and sum(u != v for u, v in zip(z, b)) <= t
            )
            assert ball_intersection_volume(x, y, t, constant_weight=True) == expect


def test_ball_intersection_budget():
    x = word((0,) * 16, 2)
    y = word((1,) * 16, 2)
    with pytest.raises(CapacityError):
        ball_intersection_volume(x, y, 8, budget=10)


def test_intersection_decay_table_fixture():
    rows = intersection_decay_table(8, 2, 3)
    vol = ball_volume(8, 2, 3)
    assert vol == 93
    expect = [(0, 93), (1, 58), (2, 58), (3, 38), (4, 38), (5, 20), (6, 20), (7, 0), (8, 0)]
    assert [(r.separation, r.intersection) for r in rows] == expect
    for r in rows:
        assert r.ratio == Fraction(r.intersection, vol)
    assert rows[0].ratio == 1
    assert all(r.ratio == 0 for r in rows if r.separation > 6)  # beyond 2t
    ratios = [r.ratio for r in rows]
    assert ratios == sorted(ratios, reverse=True)  # decay holds at this size


def test_intersection_decay_table_constant_weight():
    rows = intersection_decay_table(6, 2, 2, weight=3)
    assert rows[0].intersection == cw_ball_volume(6, 3, 2)
    assert rows[0].ratio == 1
    seps = [r.separation for r in rows]
    assert seps == sorted(seps)


# -------------------------------------------------------------------- reports


def test_format_rational():
    assert format_rational(Fraction(128, 29)) == "128/29 (~ 4.41379)"
    assert format_rational(Fraction(5, 1)) == "5 (~ 5.0)"


def test_bound_report_core_rows():
    report = bound_report(7, 2, d=3, eps=Fraction(1, 5))
    assert report.gv == Fraction(128, 29)
    assert report.linear_scale == 7 * Fraction(128, 29)
    assert report.hcc_gv is not None and report.hcc_gv.vacuous
    assert report.mcdiarmid_terms == [(6, report.mcdiarmid_terms[0][1])]
    assert rel_close(
        report.mcdiarmid_terms[0][1], mpmath.exp(-mpf(1) / 25 * 7 / 2), 1e-12
    )
    doc = report.to_dict()
    assert doc["gv"] == {"num": "128", "den": "29"}
    assert doc["eps"] == pytest.approx(0.2)
    rendered = dict(report.rows())
    assert rendered["gv"].startswith("128/29")


def test_bound_report_division_domain_note():
    report = bound_report(7, 2, d=1, eps=Fraction(1, 5))
    assert report.hcc_gv is None
    assert report.hcc_gv_note is not None
    assert report.gv == Fraction(128, 1)


def test_bound_report_constant_weight_rows():
    report = bound_report(6, 2, d=3, weight=3)
    assert report.levenshtein == 2
    assert report.linear_scale_cw == 12
    assert report.hcc_gv is None  # no eps supplied
    assert report.to_dict()["levenshtein"] == {"num": "2", "den": "1"}


def test_bound_report_fhs_row():
    report = bound_report(100, 2, lam=60, eps=Fraction(1, 5))
    assert report.fhs_gv is not None
    direct = fhs_gv_bound(100, 2, 60, Fraction(1, 5))
    assert rel_close(report.fhs_gv.value, direct.value)
