"""Binary-word primitives: mechanical words, balance, exhaustive enumeration.

Words are plain strings over the alphabet ``"01"``; that is also their wire
format. The enumeration oracle packs letters into Python ints internally.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._rational import ceil_div, floor_div, to_fraction
from .exceptions import DomainError, ResourceLimitError

Word = str

#: longest word length :func:`enumerate_balanced` will build by default
MAX_ENUMERATION_LENGTH = 22


def check_word(w: Word) -> Word:
    if not isinstance(w, str) or w.strip("01"):
        raise DomainError(f"not a binary word: {w!r}")
    return w


@dataclass(frozen=True)
class MechanicalParams:
    """Slope ``alpha`` in [0, 1] and intercept ``rho`` in [0, 1)."""

    alpha: Fraction
    rho: Fraction

    def __post_init__(self):
        alpha = to_fraction(self.alpha)
        rho = to_fraction(self.rho)
        if not 0 <= alpha <= 1:
            raise DomainError(f"slope must lie in [0, 1], got {alpha}")
        if not 0 <= rho < 1:
            raise DomainError(f"intercept must lie in [0, 1), got {rho}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "rho", rho)


def _mechanical(p: MechanicalParams, n: int, rounding, start: int) -> Word:
    if not isinstance(p, MechanicalParams):
        p = MechanicalParams(*p)
    if n < 1:
        raise DomainError(f"prefix length must be positive, got {n}")
    if start < 0:
        raise DomainError(f"start index must be nonnegative, got {start}")
    levels = [rounding(p.alpha * k + p.rho) for k in range(start, start + n + 1)]
    return "".join(str(b - a) for a, b in zip(levels, levels[1:]))


def lower_mechanical_prefix(p: MechanicalParams, n: int, start: int = 1) -> Word:
    """Letters ``s_start .. s_{start+n-1}`` of the lower mechanical word.

    ``s_k = floor(alpha (k + 1) + rho) - floor(alpha k + rho)``.
    """
    return _mechanical(p, n, floor_div, start)


def upper_mechanical_prefix(p: MechanicalParams, n: int, start: int = 1) -> Word:
    """As :func:`lower_mechanical_prefix` with ceilings in place of floors."""
    return _mechanical(p, n, ceil_div, start)


def is_balanced(w: Word) -> bool:
    """True iff equal-length factors of ``w`` differ in weight by at most one."""
    check_word(w)
    n = len(w)
    prefix = [0]
    for ch in w:
        prefix.append(prefix[-1] + (ch == "1"))
    for length in range(1, n):
        sums = [prefix[i + length] - prefix[i] for i in range(n - length + 1)]
        if max(sums) - min(sums) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def _level(n: int) -> tuple:
    # state: (bits, prefix sums, per-length window minima, per-length maxima)
    if n == 0:
        return ((0, (0,), (), ()),)
    out = []
    for bits, prefix, lo, hi in _level(n - 1):
        for letter in (0, 1):
            total = prefix[-1] + letter
            new_lo, new_hi = [], []
            ok = True
            # only windows ending at the new letter are new
            for length in range(1, n + 1):
                s = total - prefix[n - length]
                if length < n:
                    a, b = min(lo[length - 1], s), max(hi[length - 1], s)
                else:
                    a = b = s
                if b - a > 1:
                    ok = False
                    break
                new_lo.append(a)
                new_hi.append(b)
            if ok:
                out.append(((bits << 1) | letter, prefix + (total,),
                            tuple(new_lo), tuple(new_hi)))
    return tuple(out)


def enumerate_balanced(n: int, limit: int = MAX_ENUMERATION_LENGTH) -> list[Word]:
    """All balanced words of length ``n`` in lexicographic order.

    Built by extending balanced prefixes, since every prefix of a balanced
    word is balanced. Raises :class:`ResourceLimitError` above ``limit``.
    """
    if n < 1:
        raise DomainError(f"length must be positive, got {n}")
    if n > limit:
        raise ResourceLimitError(
            f"balanced enumeration bounded at n={limit}, requested n={n}")
    return sorted(format(state[0], f"0{n}b") for state in _level(n))


def coding(x, y, n: int, convention: str = "lower") -> Word:
    """Code the parameter point ``(x, y)`` as a word of length ``n``.

    ``x`` is the intercept and ``1 - y`` the slope, so ``y = 0`` is slope one.
    Letters are ``s_0 .. s_{n-1}``: the cut lines of the length-``n`` coding
    are then exactly ``x = k y - l`` for ``1 <= k <= n``.
    """
    x, y = to_fraction(x), to_fraction(y)
    if not (0 <= x < 1 and 0 <= y <= 1):
        raise DomainError(f"point ({x}, {y}) outside [0,1) x [0,1]")
    params = MechanicalParams(1 - y, x)
    if convention == "lower":
        return lower_mechanical_prefix(params, n, start=0)
    if convention == "upper":
        return upper_mechanical_prefix(params, n, start=0)
    raise DomainError(f"unknown convention {convention!r}")
