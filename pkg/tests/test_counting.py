import csv
import io
import json
from fractions import Fraction
from math import floor, gcd

import pytest
from hypothesis import given, settings, strategies as st

from balanced_words.counting import (Threshold, count_A_fast_u1, count_A_naive, count_B_classic,
                                     count_B_fast, count_B_theorem, floor_sum, scan,
                                     theorem_A_column)
from balanced_words.exceptions import DomainError
from balanced_words.farey import totient_summatory

REFERENCE = Threshold(Fraction(7, 10), Fraction(59, 100))


def brute_A(m, t, u):
    """Literal definition in Fraction arithmetic."""
    t, u = Fraction(t), Fraction(u)
    count = 0
    for j in range(1, m + 1):
        for i in range(j):
            if gcd(i, j) == 1 and Fraction(i, j) <= t:
                x = Fraction(m * i, j)
                if x - floor(x) < u:
                    count += 1
    return count


thresholds = st.builds(
    Threshold,
    st.fractions(min_value=0, max_value=1, max_denominator=30).filter(lambda r: r > 0),
    st.fractions(min_value=0, max_value=1, max_denominator=30).filter(lambda r: r > 0),
)


def test_threshold_validation():
    assert Threshold("0.7", "0.59") == REFERENCE
    assert str(REFERENCE) == "(t=7/10, u=59/100)"
    for bad in [(0, 1), (1, 0), (Fraction(3, 2), 1), (1, -1)]:
        with pytest.raises(DomainError):
            Threshold(*bad)


def test_reference_example_columns():
    assert [count_A_naive(m, REFERENCE) for m in range(1, 9)] == [1, 2, 4, 4, 7, 8, 10, 13]
    assert theorem_A_column(8, REFERENCE).tolist() == [1, 2, 4, 4, 7, 8, 10, 13]
    assert count_B_theorem(8, REFERENCE) == count_B_fast(8, REFERENCE) == 50


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 25), thresholds)
def test_naive_matches_fraction_oracle(m, th):
    assert count_A_naive(m, th) == brute_A(m, th.t, th.u)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 60), thresholds)
def test_theorem_column_matches_naive(n, th):
    assert theorem_A_column(n, th).tolist() == [count_A_naive(m, th) for m in range(1, n + 1)]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 120), thresholds)
def test_fast_matches_theorem(n, th):
    assert count_B_fast(n, th) == count_B_theorem(n, th)


def test_full_square():
    for m in range(1, 60):
        assert count_A_naive(m, (1, 1)) == totient_summatory(m)
    for n in range(1, 60):
        assert count_B_theorem(n, (1, 1)) == count_B_classic(n) == count_B_fast(n, (1, 1))


def test_classic_small_values():
    assert [count_B_classic(n) for n in range(1, 7)] == [2, 4, 8, 14, 24, 36]


def test_floor_sum():
    for t in [Fraction(0), Fraction(1, 3), Fraction(7, 5), Fraction(22, 7)]:
        for B in range(0, 40):
            assert floor_sum(B, t) == sum(floor(b * t) for b in range(1, B + 1))
    with pytest.raises(DomainError):
        floor_sum(-1, Fraction(1, 2))


def test_A_fast_u1():
    for t in [Fraction(1, 7), Fraction(1, 2), Fraction(5, 8), Fraction(9, 10)]:
        for m in range(1, 50):
            assert count_A_fast_u1(m, t) == count_A_naive(m, (t, 1))
    with pytest.raises(DomainError):
        count_A_fast_u1(5, 1)


def test_large_fast_against_theorem():
    th = Threshold(Fraction(1, 2), Fraction(1, 3))
    assert count_B_fast(700, th) == count_B_theorem(700, th)


def test_workers_do_not_change_results():
    th = Threshold(Fraction(2, 3), Fraction(3, 7))
    assert count_B_fast(800, th, workers=3) == count_B_fast(800, th, workers=1)
    assert (theorem_A_column(300, th, workers=2).tolist()
            == theorem_A_column(300, th, workers=1).tolist())


@pytest.mark.parametrize("fn", [count_B_theorem, count_B_fast])
def test_domain_errors(fn):
    with pytest.raises(DomainError):
        fn(0, (1, 1))
    with pytest.raises(DomainError):
        fn(5, (0, 1))


def test_scan_table():
    table = scan(8, REFERENCE)
    assert table.column("A") == [1, 2, 4, 4, 7, 8, 10, 13]
    assert table.column("B") == [2, 4, 8, 12, 19, 27, 37, 50]
    rows = list(csv.reader(io.StringIO(table.to_csv())))
    assert rows[0] == ["m", "A", "B", "main_term", "error"]
    assert rows[-1][:3] == ["8", "13", "50"]
    m, B, main = 8, 50, float(rows[-1][3])
    assert abs(main - 0.7 * 0.59 * m ** 3 / 9.869604401089358) < 1e-9
    assert abs(float(rows[-1][4]) - (B - main)) < 1e-9
    payload = json.loads(table.to_json())
    assert payload["t"] == "7/10" and payload["u"] == "59/100"
    assert [r["B"] for r in payload["rows"]] == table.column("B")
