"""Fitted constants for the O-bounds checked by the test suite.

The asymptotic statements only give orders of growth, so each bound
``|quantity| <= C * scale`` is fitted once by running the scan below and
storing ``C``. Later runs must stay within 10% of the stored value.

    python -m balanced_words.calibration tests/fixtures/bounds.json
"""
from __future__ import annotations

import json
import random
import sys
from fractions import Fraction

import numpy as np

from .asymptotics import (INV_PI2, error_B11_series, fit_constant, gcd_box_sum,
                          mertens_error_series, mu_frac_series)
from .geometry import count_B_rectangle

SLACK = 1.10

MU_FRAC_SLOPES = [Fraction(1, 2), Fraction(1, 3), Fraction(2, 7),
                  Fraction(5, 8), Fraction(8, 13), Fraction(13, 21), Fraction(21, 34)]


def random_rectangles(count: int = 10, seed: int = 20240601):
    """Deterministic rectangles ``(a, b, c, d)`` with denominators up to 20."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a, b = sorted(Fraction(rng.randint(0, q), q) for q in (rng.randint(2, 20), rng.randint(2, 20)))
        c, d = sorted(Fraction(rng.randint(0, q), q) for q in (rng.randint(2, 20), rng.randint(2, 20)))
        if a < b and c < d and b - a >= Fraction(1, 5) and d - c >= Fraction(1, 5):
            out.append((a, b, c, d))
    return out


def phi_mertens(m_max: int = 100_000) -> float:
    """``max |Phi(m) - 3 m^2 / pi^2| / (m log(m + 2))`` over ``2 <= m <= m_max``."""
    E = mertens_error_series(m_max)[2:]
    m = np.arange(2, m_max + 1, dtype=float)
    return float(np.max(np.abs(E) / (m * np.log(m + 2))))


def mu_frac(n_max: int = 2000) -> float:
    """``max |sum mu(k) <b t>| / n^2`` over ``n <= n_max`` and the fixed slopes."""
    ratios = []
    for t in MU_FRAC_SLOPES:
        series = mu_frac_series(n_max, t)
        ratios.extend(series[n] / (n * n) for n in range(1, n_max + 1))
    return fit_constant(ratios)


def b11_n2(lo: int = 1000, hi: int = 4000) -> float:
    """``max |B(n,1,1) - (n^3 + 3 n^2)/pi^2| / n^2`` over ``lo <= n <= hi``."""
    reports = error_B11_series(hi, exponent=2)
    return fit_constant(r.normalized_error for r in reports[lo - 1:])


def gcd_box(k_lo: int = 4, k_hi: int = 10) -> float:
    """``max |gcd_box_sum(2^k, 2^k) - main| / 4^k`` over ``k_lo <= k <= k_hi``."""
    return fit_constant(gcd_box_sum(2 ** k, 2 ** k)[1].normalized_error
                        for k in range(k_lo, k_hi + 1))


def rectangle_scan(n_values=range(8, 15)):
    """Per ``(n, rectangle)``: ``(n, area, oracle, inclusion_exclusion)``."""
    rows = []
    for n in n_values:
        for a, b, c, d in random_rectangles():
            oracle, estimate = count_B_rectangle(n, a, b, c, d)
            rows.append((n, (b - a) * (d - c), oracle, estimate))
    return rows


def rectangle_gap(rows) -> float:
    """``max |inclusion_exclusion - oracle| / n^2`` for ``10 <= n <= 14``."""
    return fit_constant(Fraction(est - orc, n * n) for n, _, orc, est in rows if n >= 10)


def rectangle_main(rows) -> float:
    """``max |count - area n^3 / pi^2| / n^2`` over both components."""
    ratios = []
    for n, area, orc, est in rows:
        main = float(area) * n ** 3 * INV_PI2
        ratios += [(orc - main) / n ** 2, (est - main) / n ** 2]
    return fit_constant(ratios)


def calibrate() -> dict:
    rows = rectangle_scan()
    return {
        "phi_mertens": phi_mertens(),
        "mu_frac": mu_frac(),
        "b11_n2": b11_n2(),
        "gcd_box": gcd_box(),
        "rectangle_gap": rectangle_gap(rows),
        "rectangle_main": rectangle_main(rows),
    }


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    constants = calibrate()
    text = json.dumps(constants, indent=2, sort_keys=True) + "\n"
    if argv:
        with open(argv[0], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
