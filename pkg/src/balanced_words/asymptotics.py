"""Main terms, error terms and Farey-fraction statistics at finite range.

Exact quantities are Python ints or Fractions; main terms and normalized
errors are doubles. Each ``ErrorReport`` carries the scale its error is
divided by, so scans show at a glance whether an exponent is right.
"""
from __future__ import annotations

import csv
import io
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from ._rational import to_fraction
from .counting import Threshold, count_A_naive, count_B_classic
from .exceptions import DomainError
from .farey import farey_sequence, mertens, totient_sieve

INV_PI2 = 1 / math.pi ** 2


@dataclass(frozen=True)
class ErrorReport:
    n: int
    exact_value: int | Fraction
    main_term: float
    error: float
    normalized_error: float


def _report(n, exact, main, scale) -> ErrorReport:
    # subtract in exact arithmetic; only the result is rounded
    error = float(to_fraction(exact) - Fraction(main))
    return ErrorReport(n, exact, main, error, error / scale)


def _positive(name, value):
    if value < 1:
        raise DomainError(f"{name} must be positive, got {value}")


def main_term_B(n: int, t, u) -> float:
    """``t u n^3 / pi^2``."""
    return float(to_fraction(t) * to_fraction(u)) * n ** 3 * INV_PI2


def error_B11(n: int, exponent: float = 1.5) -> ErrorReport:
    """``B(n, 1, 1) - (n^3 + 3 n^2) / pi^2``, normalized by ``n**exponent``."""
    _positive("n", n)
    return _report(n, count_B_classic(n), (n ** 3 + 3 * n ** 2) * INV_PI2, n ** exponent)


def error_B11_series(n_max: int, exponent: float = 1.5) -> list[ErrorReport]:
    """:func:`error_B11` for ``n = 1 .. n_max`` from one sieve."""
    _positive("n_max", n_max)
    Phi = totient_sieve(n_max).totient_prefix()
    B = 1 + np.cumsum(Phi[1:n_max + 1].astype(object))
    return [_report(n, int(b), (n ** 3 + 3 * n ** 2) * INV_PI2, n ** exponent)
            for n, b in enumerate(B, 1)]


def mertens_error_phi(n: int) -> ErrorReport:
    """``Phi(n) - 3 n^2 / pi^2``, normalized by ``n log(n + 2)``."""
    _positive("n", n)
    Phi = int(totient_sieve(n).phi[1:n + 1].sum())
    return _report(n, Phi, 3 * n * n * INV_PI2, n * math.log(n + 2))


def mertens_error_series(n_max: int) -> np.ndarray:
    """``E(n) = Phi(n) - 3 n^2 / pi^2`` for ``n = 0 .. n_max`` as doubles."""
    Phi = totient_sieve(n_max).totient_prefix()
    n = np.arange(n_max + 1, dtype=float)
    return Phi.astype(float) - 3 * n * n * INV_PI2


def weighted_totient_sum(x: int) -> tuple[int, ErrorReport]:
    """``sum_{m <= x} (x - m) phi(m)`` and its deviation from ``x^3 / pi^2``."""
    _positive("x", x)
    phi = totient_sieve(x).phi[1:x + 1]
    weights = np.arange(x - 1, -1, -1, dtype=np.int64)
    if x <= 200_000:
        total = int(np.dot(weights, phi))
    else:
        total = int(np.dot(weights.astype(object), phi.astype(object)))
    return total, _report(x, total, x ** 3 * INV_PI2, x * x)


def franel_integral(m: int) -> Fraction:
    """Exact ``integral_0^1 (A(m, t, 1) - t Phi(m))^2 dt``.

    ``A(m, t, 1) = i`` on the gap ``[f_i, f_{i+1})`` of the Farey sequence
    (with ``f_{Phi+1} = 1``). Integrating each gap in closed form and
    telescoping leaves
    ``Phi^2 / 3 - sum_i (2 i - 1) f_i + Phi sum_i f_i^2``.
    """
    _positive("m", m)
    seq = farey_sequence(m)
    size = len(seq)
    linear = defaultdict(int)     # denominator q -> sum of (2 i - 1) a
    square = defaultdict(int)     # denominator q -> sum of a^2
    for i, (a, q) in enumerate(zip(seq.numerators, seq.denominators), 1):
        if a:
            linear[q] += (2 * i - 1) * a
            square[q] += a * a
    total = Fraction(size * size, 3)
    for q in linear:
        total += Fraction(size * square[q] - q * linear[q], q * q)
    return total


def farey_exponential_sum(m: int) -> tuple[complex, int]:
    """``sum_i exp(2 pi i f_m(i))`` in floating point, with ``M(m)`` it must equal."""
    _positive("m", m)
    angles = 2 * math.pi * farey_sequence(m).as_floats()
    value = complex(np.cos(angles).sum(), np.sin(angles).sum())
    return value, mertens(m)


def farey_exponential_series(m_max: int) -> list[tuple[int, complex, int]]:
    """``(m, sum, M(m))`` for ``m = 1 .. m_max``.

    Fractions are added one denominator at a time, so the whole series costs
    one pass over the order-``m_max`` Farey set.
    """
    _positive("m_max", m_max)
    mu = totient_sieve(m_max).mu
    out = []
    re = im = 0.0
    M = 0
    for q in range(1, m_max + 1):
        a = np.arange(q, dtype=np.int64)
        a = a[np.gcd(a, q) == 1]
        theta = (2 * math.pi / q) * a
        re += float(np.cos(theta).sum())
        im += float(np.sin(theta).sum())
        M += int(mu[q])
        out.append((q, complex(re, im), M))
    return out


def mu_frac_series(n_max: int, t) -> list[Fraction]:
    """``S(n) = sum_{m <= n} sum_{k b <= m} mu(k) <b t>`` for ``n = 0 .. n_max``."""
    _positive("n_max", n_max)
    t = to_fraction(t)
    if t < 0:
        raise DomainError(f"t must be nonnegative, got {t}")
    p, q = t.numerator, t.denominator
    mu = totient_sieve(n_max).mu.tolist()
    # h[P] = q * sum_{k b = P} mu(k) <b t>
    h = [0] * (n_max + 1)
    for b in range(1, n_max + 1):
        r = b * p % q
        if r:
            for k in range(1, n_max // b + 1):
                if mu[k]:
                    h[k * b] += mu[k] * r
    out, inner, outer = [Fraction(0)], 0, 0
    for P in range(1, n_max + 1):
        inner += h[P]
        outer += inner
        out.append(Fraction(outer, q))
    return out


def mu_frac_sum(n: int, t) -> Fraction:
    """Exact ``sum_{m <= n} sum_{k b <= m} mu(k) <b t>``."""
    return mu_frac_series(n, t)[n]


def gcd_box_sum(H: int, M: int) -> tuple[int, ErrorReport]:
    """``sum_{H < h <= 2H, M < a <= 2M} gcd(h, a)`` against ``(6 H M / pi^2) log(2 min(H, M))``.

    Uses ``gcd(h, a) = sum_{d | gcd} phi(d)``, so the double sum collapses to
    one sum over ``d`` of ``phi(d)`` times the multiples of ``d`` in each range.
    """
    _positive("H", H)
    _positive("M", M)
    top = 2 * min(H, M)
    d = np.arange(1, top + 1, dtype=np.int64)
    phi = totient_sieve(top).phi[1:top + 1]
    cnt_h = 2 * H // d - H // d
    cnt_a = 2 * M // d - M // d
    total = int(np.dot(phi.astype(object), (cnt_h * cnt_a).astype(object)))
    main = 6 * H * M * INV_PI2 * math.log(2 * min(H, M))
    return total, _report(H, total, main, H * M)


def A_asymptotic_check(m: int, t, u) -> ErrorReport:
    """``A(m, t, u) - 3 t u m^2 / pi^2``, normalized by ``m^{3/2}``."""
    _positive("m", m)
    th = Threshold(t, u)
    A = count_A_naive(m, th)
    return _report(m, A, 3 * float(th.t * th.u) * m * m * INV_PI2, m ** 1.5)


def fit_constant(ratios) -> float:
    """Smallest ``C`` with ``|r| <= C`` for every ratio ``r`` in the scan."""
    return float(max(abs(float(r)) for r in ratios))


# ---------------------------------------------------------------------------
# CSV export


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _num(v) -> str:
    if isinstance(v, Rational) and not isinstance(v, int):
        v = float(v)
    if isinstance(v, float):
        return f"{v:.15g}"
    return str(v)


def error_reports_csv(reports) -> str:
    return _csv(["n", "exact", "main", "error", "normalized"],
                ([r.n, str(r.exact_value), _num(r.main_term), _num(r.error),
                  _num(r.normalized_error)] for r in reports))


def franel_csv(m_max: int) -> str:
    rows = []
    for m in range(1, m_max + 1):
        v = franel_integral(m)
        rows.append([m, v.numerator, v.denominator, _num(float(v))])
    return _csv(["m", "franel_exact_num", "franel_exact_den", "franel_float"], rows)


def expsum_csv(m_max: int) -> str:
    return _csv(["m", "sum_re", "sum_im", "mertens"],
                ([m, _num(z.real), _num(z.imag), M]
                 for m, z, M in farey_exponential_series(m_max)))
