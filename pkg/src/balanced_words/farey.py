"""Totient and Moebius sieves, Farey sequences, Mertens function."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._rational import floor_div, to_fraction
from .exceptions import DomainError


@dataclass(frozen=True)
class SieveTables:
    """``phi[k]`` and ``mu[k]`` for ``0 <= k <= limit`` (index 0 unused)."""

    limit: int
    phi: np.ndarray
    mu: np.ndarray

    def totient_prefix(self) -> np.ndarray:
        """``out[m] = phi(1) + ... + phi(m)``."""
        return np.cumsum(self.phi)

    def mertens_prefix(self) -> np.ndarray:
        return np.cumsum(self.mu)


_cache: SieveTables | None = None


def _linear_sieve(limit: int) -> SieveTables:
    phi = [0] * (limit + 1)
    mu = [0] * (limit + 1)
    phi[1] = mu[1] = 1
    primes = []
    for k in range(2, limit + 1):
        if phi[k] == 0:
            primes.append(k)
            phi[k] = k - 1
            mu[k] = -1
        for p in primes:
            kp = k * p
            if kp > limit:
                break
            if k % p == 0:
                phi[kp] = phi[k] * p
                mu[kp] = 0
                break
            phi[kp] = phi[k] * (p - 1)
            mu[kp] = -mu[k]
    return SieveTables(limit, np.array(phi, dtype=np.int64),
                       np.array(mu, dtype=np.int64))


def totient_sieve(limit: int) -> SieveTables:
    """Euler (linear) sieve filling both totient and Moebius tables.

    The largest table built so far is reused, so repeated calls are cheap.
    """
    global _cache
    if limit < 1:
        raise DomainError(f"sieve limit must be positive, got {limit}")
    if _cache is None or _cache.limit < limit:
        _cache = _linear_sieve(max(limit, 1024))
    if _cache.limit == limit:
        return _cache
    return SieveTables(limit, _cache.phi[:limit + 1], _cache.mu[:limit + 1])


mobius_sieve = totient_sieve


def totient_summatory(m: int) -> int:
    """``Phi(m) = phi(1) + ... + phi(m)``."""
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    return int(totient_sieve(m).phi[1:].sum())


def mertens(m: int) -> int:
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    return int(totient_sieve(m).mu[1:].sum())


def frac_part(r) -> Fraction:
    """Fractional part ``r - floor(r)`` as an exact rational."""
    r = to_fraction(r)
    if r < 0:
        raise DomainError(f"expected a nonnegative rational, got {r}")
    return r - floor_div(r)


@dataclass(frozen=True)
class FareySequence:
    """Irreducible fractions in [0, 1) with denominator at most ``order``.

    Stored as parallel numerator/denominator tuples. Indexing is 0-based;
    :meth:`f` gives the 1-based ``f_m(i)`` convention.
    """

    order: int
    numerators: tuple
    denominators: tuple

    def __len__(self):
        return len(self.numerators)

    def __getitem__(self, i) -> Fraction:
        return Fraction(self.numerators[i], self.denominators[i])

    def __iter__(self):
        return (Fraction(a, b) for a, b in zip(self.numerators, self.denominators))

    def f(self, i: int) -> Fraction:
        if not 1 <= i <= len(self):
            raise IndexError(i)
        return self[i - 1]

    @property
    def fractions(self) -> list[Fraction]:
        return list(self)

    def as_floats(self) -> np.ndarray:
        return np.asarray(self.numerators, dtype=float) / np.asarray(self.denominators, dtype=float)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["index", "numerator", "denominator"])
        for i, (a, b) in enumerate(zip(self.numerators, self.denominators), 1):
            writer.writerow([i, a, b])
        return buf.getvalue()


def farey_sequence(m: int) -> FareySequence:
    """Farey sequence of order ``m`` by the neighbour recurrence.

    Given consecutive terms a/b < c/d, the next term is
    (k c - a)/(k d - b) with k = (m + b) // d.
    """
    if m < 1:
        raise DomainError(f"order must be positive, got {m}")
    nums, dens = [0], [1]
    a, b, c, d = 0, 1, 1, m
    while c < d:
        nums.append(c)
        dens.append(d)
        k = (m + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
    return FareySequence(m, tuple(nums), tuple(dens))
