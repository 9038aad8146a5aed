"""Counting balanced words whose slope and intercept lie in a threshold box.

``A(m, t, u)`` counts pairs ``0 <= i < j <= m`` with ``gcd(i, j) = 1``,
``i/j <= t`` and ``<m i / j> < u``; ``B(n, t, u) = 1 + sum_{m <= n} A(m, t, u)``.
All thresholds are exact rationals and every count is an exact integer.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from ._rational import format_fraction, to_fraction
from .exceptions import DomainError
from .farey import totient_sieve

_INT64_SAFE = 2 ** 62


@dataclass(frozen=True)
class Threshold:
    """Slope threshold ``t`` and intercept threshold ``u``, both in (0, 1]."""

    t: Fraction
    u: Fraction

    def __post_init__(self):
        t, u = to_fraction(self.t), to_fraction(self.u)
        if not 0 < t <= 1:
            raise DomainError(f"t must lie in (0, 1], got {t}")
        if not 0 < u <= 1:
            raise DomainError(f"u must lie in (0, 1], got {u}")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "u", u)

    def __str__(self):
        return f"(t={format_fraction(self.t)}, u={format_fraction(self.u)})"


def _threshold(th) -> Threshold:
    if isinstance(th, Threshold):
        return th
    return Threshold(*th)


def _dtype_for(bound: int):
    return np.int64 if bound < _INT64_SAFE else object


def _check_positive(name, value):
    if value < 1:
        raise DomainError(f"{name} must be positive, got {value}")


# ---------------------------------------------------------------------------
# direct definition


def count_A_naive(m: int, th) -> int:
    """``A(m, t, u)`` by testing every pair ``0 <= i < j <= m``."""
    _check_positive("m", m)
    th = _threshold(th)
    tp, tq = th.t.numerator, th.t.denominator
    up, uq = th.u.numerator, th.u.denominator
    dtype = _dtype_for(max(tp, tq, up, uq) * m * m + m * m)
    total = 0
    for j in range(1, m + 1):
        i = np.arange(j, dtype=np.int64)
        ok = np.gcd(i, j) == 1
        i = i.astype(dtype)
        ok &= i * tq <= tp * j
        ok &= ((m * i) % j) * uq < up * j
        total += int(np.count_nonzero(ok))
    return total


def count_B_classic(n: int) -> int:
    """``1 + sum_{k <= n} (n + 1 - k) phi(k)``."""
    _check_positive("n", n)
    phi = totient_sieve(n).phi[1:n + 1]
    weights = np.arange(n, 0, -1, dtype=np.int64)
    if n > 2_000_000:
        return 1 + sum(int(w) * int(p) for w, p in zip(weights, phi))
    return 1 + int(np.dot(weights, phi))


# ---------------------------------------------------------------------------
# coprime pair tables


def _coprime_block(j_lo: int, j_hi: int, t: Fraction, dtype=np.int64):
    """Pairs ``1 <= i <= min(j - 1, floor(t j))``, ``gcd(i, j) = 1``, ``j_lo <= j <= j_hi``."""
    tp, tq = t.numerator, t.denominator
    ii, jj = [], []
    for j in range(max(j_lo, 2), j_hi + 1):
        top = min(j - 1, tp * j // tq)
        if top < 1:
            continue
        i = np.arange(1, top + 1, dtype=np.int64)
        i = i[np.gcd(i, j) == 1]
        ii.append(i)
        jj.append(np.full(i.size, j, dtype=np.int64))
    if not ii:
        empty = np.zeros(0, dtype=np.int64)
        return empty.astype(dtype), empty.astype(dtype)
    return np.concatenate(ii).astype(dtype), np.concatenate(jj).astype(dtype)


def _coprime_counts(n: int, t: Fraction) -> np.ndarray:
    """``out[j]`` = number of ``1 <= i <= min(j - 1, floor(t j))`` coprime to ``j``."""
    tp, tq = t.numerator, t.denominator
    out = np.zeros(n + 1, dtype=np.int64)
    for j in range(2, n + 1):
        top = min(j - 1, tp * j // tq)
        if top >= 1:
            i = np.arange(1, top + 1, dtype=np.int64)
            out[j] = np.count_nonzero(np.gcd(i, j) == 1)
    return out


def _A_block(m_lo: int, m_hi: int, th: Threshold) -> np.ndarray:
    """``A(m, t, u)`` for ``m_lo <= m <= m_hi`` via one shared pair table."""
    up, uq = th.u.numerator, th.u.denominator
    if th.u == 1:
        # <x> < 1 always holds, so every pair with j <= m qualifies
        counts = _coprime_counts(m_hi, th.t)
        return 1 + np.cumsum(counts)[m_lo:m_hi + 1]
    dtype = _dtype_for(max(up, uq) * m_hi * m_hi)
    I, J = _coprime_block(2, m_hi, th.t, dtype)
    ends = np.searchsorted(J.astype(np.int64), np.arange(m_lo, m_hi + 1), side="right")
    upJ = J * up
    buf = np.empty_like(I)
    out = np.empty(m_hi - m_lo + 1, dtype=np.int64)
    for k, m in enumerate(range(m_lo, m_hi + 1)):
        e = ends[k]
        b = buf[:e]
        if dtype is np.int64:
            np.multiply(I[:e], m, out=b)
            np.remainder(b, J[:e], out=b)
            np.multiply(b, uq, out=b)
            hits = np.count_nonzero(b < upJ[:e])
        else:
            hits = np.count_nonzero(((I[:e] * m) % J[:e]) * uq < upJ[:e])
        out[k] = 1 + hits
    return out


def _split(lo: int, hi: int, parts: int):
    # equal-work blocks for O(m^2) per-m cost
    parts = max(1, min(parts, hi - lo + 1))
    cuts = [lo] + [round(((hi ** 3 - lo ** 3) * k / parts + lo ** 3) ** (1 / 3))
                   for k in range(1, parts)] + [hi + 1]
    cuts = sorted(set(min(max(c, lo), hi + 1) for c in cuts))
    return [(a, b - 1) for a, b in zip(cuts, cuts[1:]) if b > a]


def theorem_A_column(n: int, th, workers: int = 1) -> np.ndarray:
    """``[A(1), ..., A(n)]`` with the same predicate as :func:`count_A_naive`."""
    _check_positive("n", n)
    th = _threshold(th)
    if workers <= 1 or n < 200 or th.u == 1:
        return _A_block(1, n, th)
    blocks = _split(1, n, workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_A_block, [b[0] for b in blocks],
                              [b[1] for b in blocks], [th] * len(blocks)))
    return np.concatenate(parts)


def count_B_theorem(n: int, th, workers: int = 1) -> int:
    """``B(n, t, u) = 1 + sum_{m <= n} A(m, t, u)``."""
    return 1 + int(theorem_A_column(n, th, workers).sum())


# ---------------------------------------------------------------------------
# floor sums


def _floor_sum(n: int, m: int, a: int, b: int) -> int:
    """``sum_{k=0}^{n-1} floor((a k + b) / m)`` for ``a, b >= 0``, ``m >= 1``."""
    ans = 0
    while True:
        if a >= m:
            ans += (n - 1) * n // 2 * (a // m)
            a %= m
        if b >= m:
            ans += n * (b // m)
            b %= m
        y_max = a * n + b
        if y_max < m:
            return ans
        n, b = divmod(y_max, m)
        m, a = a, m


def _floor_sum_vec(n, m, a, b) -> np.ndarray:
    """Elementwise :func:`_floor_sum` over int64 arrays."""
    n, m, a, b = (np.array(v, dtype=np.int64, copy=True) for v in (n, m, a, b))
    ans = np.zeros(n.shape, dtype=np.int64)
    idx = np.arange(n.size)
    while idx.size:
        q = a // m
        ans[idx] += (n - 1) * n // 2 * q
        a -= q * m
        q = b // m
        ans[idx] += n * q
        b -= q * m
        y_max = a * n + b
        live = y_max >= m
        idx, y_max = idx[live], y_max[live]
        m, a = m[live], a[live]
        n, b = y_max // m, y_max % m
        m, a = a, m
    return ans


def floor_sum(B: int, t) -> int:
    """``sum_{b=1}^{B} floor(b t)`` for rational ``t >= 0``, in O(log) steps."""
    t = to_fraction(t)
    if B < 0 or t < 0:
        raise DomainError("floor_sum needs B >= 0 and t >= 0")
    if B == 0:
        return 0
    return _floor_sum(B + 1, t.denominator, t.numerator, 0)


def count_A_fast_u1(m: int, t) -> int:
    """``A(m, t, 1) = 1 + sum_{k <= m} mu(k) floor_sum(m // k, t)`` for ``t < 1``."""
    _check_positive("m", m)
    t = to_fraction(t)
    if not 0 < t < 1:
        raise DomainError(f"count_A_fast_u1 needs 0 < t < 1 (use Phi(m) at t=1), got {t}")
    mu = totient_sieve(m).mu
    return 1 + sum(int(mu[k]) * floor_sum(m // k, t) for k in range(1, m + 1) if mu[k])


# ---------------------------------------------------------------------------
# accelerated B: sum over pairs of the number of admissible m


def _pair_hits(I, J, n: int, up: int, uq: int) -> int:
    """``sum over pairs of #{m : j <= m <= n, uq * (m i mod j) < up * j}``."""
    if I.size == 0:
        return 0
    R = np.minimum(J, -((-up * J) // uq))
    span = n - J + 1
    full, rem = span // J, span % J
    zero = np.zeros_like(I)
    partial = rem + _floor_sum_vec(rem, J, I, zero) - _floor_sum_vec(rem, J, I, J - R)
    return int((full * R).sum()) + int(partial.sum())


def _fast_block(j_lo: int, j_hi: int, n: int, th: Threshold) -> int:
    up, uq = th.u.numerator, th.u.denominator
    total = 0
    # keep the vectorized pair arrays to a few million entries
    step = max(1, int(4_000_000 / max(1, j_hi)))
    for lo in range(j_lo, j_hi + 1, step):
        I, J = _coprime_block(lo, min(j_hi, lo + step - 1), th.t)
        total += _pair_hits(I, J, n, up, uq)
    return total


def count_B_fast(n: int, th, workers: int = 1) -> int:
    """``B(n, t, u)`` by counting, per coprime pair, the admissible ``m``.

    For fixed ``(i, j)`` with ``gcd(i, j) = 1`` the residues ``m i mod j`` run
    over a full cycle every ``j`` consecutive ``m``, so whole cycles
    contribute ``ceil(u j)`` (capped at ``j``) each and the leftover partial
    cycle is a difference of two floor sums.
    """
    _check_positive("n", n)
    th = _threshold(th)
    up, uq = th.u.numerator, th.u.denominator
    if max(up, uq) * n > _INT64_SAFE // 4 or n * n > _INT64_SAFE // 4:
        return count_B_theorem(n, th)
    if workers <= 1 or n < 500:
        return 1 + n + _fast_block(2, n, n, th)
    # per-j cost grows linearly; balance blocks on j^2
    edges = [2] + [int(round(math.sqrt(4 + (n * n - 4) * k / workers)))
                   for k in range(1, workers)] + [n + 1]
    blocks = [(a, b - 1) for a, b in zip(edges, edges[1:]) if b > a]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_fast_block, [b[0] for b in blocks], [b[1] for b in blocks],
                         [n] * len(blocks), [th] * len(blocks))
        return 1 + n + sum(parts)


# ---------------------------------------------------------------------------
# scan tables


@dataclass(frozen=True)
class CountRow:
    m: int
    A: int
    B: int
    main_term: float
    error: float


@dataclass(frozen=True)
class CountTable:
    threshold: Threshold
    rows: tuple

    def column(self, name: str) -> list:
        return [getattr(r, name) for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["m", "A", "B", "main_term", "error"])
        for r in self.rows:
            writer.writerow([r.m, r.A, r.B, f"{r.main_term:.15g}", f"{r.error:.15g}"])
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "t": format_fraction(self.threshold.t),
            "u": format_fraction(self.threshold.u),
            "rows": [dict(asdict(r), main_term=float(f"{r.main_term:.15g}"),
                          error=float(f"{r.error:.15g}")) for r in self.rows],
        }
        return json.dumps(payload, indent=1)


def scan(n_max: int, th, workers: int = 1) -> CountTable:
    """Per-``m`` table of ``A``, cumulative ``B``, main term ``t u m^3 / pi^2``."""
    _check_positive("n_max", n_max)
    th = _threshold(th)
    A = theorem_A_column(n_max, th, workers)
    scale = float(th.t * th.u) / math.pi ** 2
    rows, B = [], 1
    for m, a in enumerate(A.tolist(), 1):
        B += a
        main = scale * m ** 3
        rows.append(CountRow(m, a, B, main, float(B - Fraction(main))))
    return CountTable(th, tuple(rows))
