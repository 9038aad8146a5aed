"""Acceptance criteria, one test each; a summary line per criterion is printed at the end."""
import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from balanced_words.asymptotics import (INV_PI2, error_B11_series, farey_exponential_series,
                                        franel_integral, gcd_box_sum)
from balanced_words.calibration import random_rectangles
from balanced_words.cli import main
from balanced_words.counting import (Threshold, count_A_naive, count_B_classic, count_B_fast,
                                     count_B_theorem, theorem_A_column)
from balanced_words.farey import farey_sequence, totient_sieve
from balanced_words.geometry import ParamRegion, count_B_oracle, count_B_rectangle
from balanced_words.words import enumerate_balanced

from conftest import ACCEPTANCE_LINES


@contextmanager
def criterion(number, name, limit=None):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
    except BaseException:
        line = f"AC{number:<2} FAIL  {name}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        raise
    line = f"AC{number:<2} PASS  {name}  ({time.perf_counter() - start:.2f}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)


def test_ac01_reference_example(capsys):
    with criterion(1, "B(8, 0.7, 0.59) = 50, A = (1,2,4,4,7,8,10,13)", limit=1):
        assert main(["count", "--n", "8", "--t", "0.7", "--u", "0.59"]) == 0
        assert capsys.readouterr().out == "50\n"
        th = Threshold("0.7", "0.59")
        assert [count_A_naive(m, th) for m in range(1, 9)] == [1, 2, 4, 4, 7, 8, 10, 13]
        assert theorem_A_column(8, th).tolist() == [1, 2, 4, 4, 7, 8, 10, 13]


def test_ac02_closed_formula():
    with criterion(2, "theorem(n,1,1) = classic(n) = 1 + sum Phi for n <= 5000", limit=30):
        N = 5000
        Phi = totient_sieve(N).totient_prefix()
        cum = 1 + np.cumsum(Phi[1:N + 1].astype(object))
        B = 1 + np.cumsum(theorem_A_column(N, (1, 1)).astype(object))
        assert B.tolist() == cum.tolist()
        assert all(count_B_classic(n) == cum[n - 1] for n in range(1, N + 1))
        # the cumulative column and the single-n entry point agree
        assert count_B_theorem(N, (1, 1)) == cum[-1]


def test_ac03_brute_force():
    with criterion(3, "|balanced words of length n| = classic(n) for n <= 18", limit=60):
        for n in range(1, 19):
            assert len(enumerate_balanced(n)) == count_B_classic(n), n


def ac4_thresholds():
    grid = [Threshold(Fraction(i, 7), Fraction(k, 5)) for i in range(1, 8) for k in range(1, 6)]
    rng = random.Random(4)
    extra = []
    while len(extra) < 20:
        t = Fraction(rng.randint(1, 40), rng.randint(1, 40))
        u = Fraction(rng.randint(1, 40), rng.randint(1, 40))
        if 0 < t <= 1 and 0 < u <= 1:
            extra.append(Threshold(t, u))
    return grid + extra


@pytest.mark.slow
def test_ac04_triple_oracle():
    with criterion(4, "oracle = theorem = fast, n <= 10, 55 thresholds", limit=300):
        for th in ac4_thresholds():
            region = ParamRegion(th.u, th.t)
            for n in range(1, 11):
                expected = count_B_theorem(n, th)
                assert count_B_fast(n, th) == expected, (n, th)
                assert count_B_oracle(n, region) == expected, (n, th)


def test_ac05_main_term(bounds):
    with criterion(5, "B(n,1,1) main term within 1% at n=2000, error/n^2 below fitted C"):
        n = 2000
        assert abs(count_B_classic(n) * math.pi ** 2 / (n ** 3 + 3 * n ** 2) - 1) < 0.01
        reports = error_B11_series(4000, exponent=2)[999:]
        assert reports[0].n == 1000
        assert max(abs(r.normalized_error) for r in reports) <= bounds["b11_n2"]


def test_ac06_exponential_sum():
    with criterion(6, "Farey exponential sum = Mertens for m <= 5000", limit=60):
        Phi = totient_sieve(5000).totient_prefix()
        for m, z, M in farey_exponential_series(5000):
            assert abs(z - M) < 1e-6 * Phi[m], m


def midpoint_franel(m, points=1_000_000):
    f = farey_sequence(m).as_floats()
    t = (np.arange(points) + 0.5) / points
    A = np.searchsorted(f, t, side="right")
    return float(np.mean((A - t * len(f)) ** 2))


def test_ac07_franel():
    with criterion(7, "Franel: 1/3 at m=1,2; quadrature within 1e-3; value/m^2 decreasing"):
        assert franel_integral(1) == Fraction(1, 3)
        assert franel_integral(2) == Fraction(1, 3)
        for m in range(1, 51):
            exact = float(franel_integral(m))
            assert abs(midpoint_franel(m) - exact) <= 1e-3 * exact, m
        growth = [float(franel_integral(m)) / m ** 2 for m in (50, 100, 200, 400)]
        assert all(a > b for a, b in zip(growth, growth[1:])), growth


def test_ac08_gcd_box(bounds):
    with criterion(8, "gcd box sum error / 4^k below fitted C for k = 4..10"):
        for k in range(4, 11):
            H = 2 ** k
            total, report = gcd_box_sum(H, H)
            main_term = 6 * H * H * INV_PI2 * math.log(2 * H)
            assert abs(total - main_term) / (H * H) <= bounds["gcd_box"], k
            assert report.normalized_error == pytest.approx((total - main_term) / (H * H))


@pytest.mark.slow
def test_ac09_performance():
    th = Threshold(Fraction(1, 2), Fraction(1, 3))
    with criterion(9, "count_B_fast(10^4, 1/2, 1/3) < 60 s; = theorem at n=2000"):
        start = time.perf_counter()
        value = count_B_fast(10_000, th)
        assert time.perf_counter() - start < 60
        assert value == 16925030203
        assert count_B_fast(2000, th) == count_B_theorem(2000, th)


@pytest.mark.slow
def test_ac10_rectangles(bounds):
    with criterion(10, "rectangle oracle = theorem on the square; |IE - oracle| <= C n^2"):
        for n in range(1, 9):
            full = count_B_rectangle(n, 0, 1, 0, 1)
            assert full.oracle == count_B_theorem(n, (1, 1)) == full.inclusion_exclusion
        rects = random_rectangles()
        assert len(rects) == 10
        for n in range(10, 15):
            for a, b, c, d in rects:
                r = count_B_rectangle(n, a, b, c, d)
                assert abs(r.inclusion_exclusion - r.oracle) <= bounds["rectangle_gap"] * n * n
