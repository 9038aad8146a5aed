"""Geometric oracle for balanced-word counts.

A parameter point ``(x, y)`` in ``[0, 1) x [0, 1]`` codes the mechanical
word of intercept ``x`` and slope ``1 - y``. The set of points coding a given
word is cut out by linear inequalities; splitting on the value of
``floor(1 - y + x)`` makes each piece convex, so a word is attainable from a
region iff one of its pieces meets the region. Feasibility is decided exactly
by Fourier-Motzkin elimination over two variables.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from ._rational import format_fraction, to_fraction
from .counting import Threshold, count_B_theorem
from .exceptions import DomainError, ResourceLimitError
from .words import Word, check_word, enumerate_balanced

#: longest words the oracle will enumerate
ORACLE_MAX_LENGTH = 16

_BRANCHES = {"lower": (0, 1), "upper": (0, 1)}


@dataclass(frozen=True)
class LinearConstraint:
    """``a x + b y < c`` when ``strict``, else ``a x + b y <= c``."""

    a: Fraction
    b: Fraction
    c: Fraction
    strict: bool = False

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))
        if self.a == 0 and self.b == 0:
            raise DomainError("constraint needs a nonzero coefficient")

    def holds(self, x, y) -> bool:
        lhs = self.a * x + self.b * y
        return lhs < self.c if self.strict else lhs <= self.c

    def scaled(self) -> tuple:
        """Integer-coefficient form ``(a, b, c, strict)`` with the same solutions."""
        den = math.lcm(self.a.denominator, self.b.denominator, self.c.denominator)
        return (int(self.a * den), int(self.b * den), int(self.c * den), self.strict)

    def as_json(self) -> list:
        return [format_fraction(self.a), format_fraction(self.b),
                format_fraction(self.c), self.strict]


@dataclass(frozen=True)
class ConstraintSystem:
    constraints: tuple = ()

    def __and__(self, other):
        return ConstraintSystem(self.constraints + _as_system(other).constraints)

    def __len__(self):
        return len(self.constraints)

    def contains(self, x, y) -> bool:
        x, y = to_fraction(x), to_fraction(y)
        return all(c.holds(x, y) for c in self.constraints)

    def closure(self) -> "ConstraintSystem":
        """Same system with every inequality made non-strict."""
        return ConstraintSystem(tuple(
            LinearConstraint(c.a, c.b, c.c) for c in self.constraints))


@dataclass(frozen=True)
class ParamRegion:
    """The box ``[0, u) x [0, t]`` in (intercept, 1 - slope) coordinates."""

    u: Fraction
    t: Fraction

    def __post_init__(self):
        th = Threshold(self.t, self.u)
        object.__setattr__(self, "u", th.u)
        object.__setattr__(self, "t", th.t)

    @property
    def threshold(self) -> Threshold:
        return Threshold(self.t, self.u)

    def system(self) -> ConstraintSystem:
        return ConstraintSystem((
            LinearConstraint(-1, 0, 0),
            LinearConstraint(1, 0, self.u, strict=True),
            LinearConstraint(0, -1, 0),
            LinearConstraint(0, 1, self.t),
        ))


def _as_system(obj) -> ConstraintSystem:
    if obj is None:
        return ConstraintSystem()
    if isinstance(obj, ConstraintSystem):
        return obj
    if isinstance(obj, ParamRegion):
        return obj.system()
    return ConstraintSystem(tuple(obj))


def _domain() -> tuple:
    return (
        LinearConstraint(-1, 0, 0),
        LinearConstraint(1, 0, 1, strict=True),
        LinearConstraint(0, -1, 0),
        LinearConstraint(0, 1, 1),
    )


def parameter_system(w: Word, branch: int, convention: str = "lower") -> ConstraintSystem:
    """Points ``(x, y)`` with ``coding(x, y, n) == w`` and a fixed first level.

    With ``W_k`` the weight of the first ``k`` letters and ``beta = 1 - y``,
    the lower convention needs ``W_k <= k beta + x < W_k + 1`` for
    ``k = 1 .. n``, and ``branch`` is ``floor(beta + x)``. The upper
    convention needs ``branch + W_k - 1 < k beta + x <= branch + W_k`` for
    ``k = 0 .. n`` with ``branch = ceil(x)``.
    """
    check_word(w)
    if not w:
        raise DomainError("parameter_system needs a nonempty word")
    if convention not in _BRANCHES:
        raise DomainError(f"unknown convention {convention!r}")
    if branch not in _BRANCHES[convention]:
        raise DomainError(f"branch {branch} invalid for {convention} convention")
    out = list(_domain())
    # k beta + x = x - k y + k
    if convention == "lower":
        levels = [(1, branch)]
        weight = 0
        for k, letter in enumerate(w, 1):
            weight += letter == "1"
            levels.append((k, weight))
        for k, level in levels:
            out.append(LinearConstraint(-1, k, k - level))
            out.append(LinearConstraint(1, -k, level + 1 - k, strict=True))
    else:
        weight = 0
        for k in range(len(w) + 1):
            if k:
                weight += w[k - 1] == "1"
            level = branch + weight
            out.append(LinearConstraint(-1, k, k - level + 1, strict=True))
            out.append(LinearConstraint(1, -k, level - k))
    return ConstraintSystem(tuple(out))


def _lt(p1, q1, p2, q2):
    # p1/q1 < p2/q2 for positive denominators
    return p1 * q2 < p2 * q1


def _fm_feasible(rows) -> bool:
    """Exact feasibility of integer rows ``(a, b, c, strict)`` meaning ``a x + b y (<|<=) c``."""
    lowers, uppers, ys = [], [], []
    for row in rows:
        a = row[0]
        if a > 0:
            uppers.append(row)
        elif a < 0:
            lowers.append(row)
        else:
            ys.append(row)
    for al, bl, cl, sl in lowers:
        for au, bu, cu, su in uppers:
            ys.append((0, au * bl - al * bu, au * cl - al * cu, sl or su))
    lo = hi = None  # (num, den, strict) with den > 0
    for _, b, c, s in ys:
        if b == 0:
            if c < 0 or (s and c == 0):
                return False
            continue
        if b > 0:
            bound = (c, b, s)
            if hi is None or _lt(c, b, hi[0], hi[1]):
                hi = bound
            elif c * hi[1] == hi[0] * b:
                hi = (hi[0], hi[1], hi[2] or s)
        else:
            num, den = -c, -b
            if lo is None or _lt(lo[0], lo[1], num, den):
                lo = (num, den, s)
            elif num * lo[1] == lo[0] * den:
                lo = (lo[0], lo[1], lo[2] or s)
    if lo is None or hi is None:
        return True
    if _lt(lo[0], lo[1], hi[0], hi[1]):
        return True
    return lo[0] * hi[1] == hi[0] * lo[1] and not lo[2] and not hi[2]


def feasible(sys, region=None) -> bool:
    """Does the conjunction of ``sys`` and ``region`` have a solution?"""
    cons = _as_system(sys).constraints + _as_system(region).constraints
    return _fm_feasible([c.scaled() for c in cons])


def attainable(w: Word, region, convention: str = "lower", closed: bool = True) -> bool:
    """Does the parameter set of ``w`` meet ``region``?

    With ``closed`` (the default) the parameter set is replaced by its
    closure, so a cell touching the region only along a closed edge or at a
    corner still counts, while cells touching only an open edge do not.
    This is the convention under which the oracle reproduces the theorem
    counts; ``closed=False`` gives the strictly pointwise variant.
    """
    extra = [c.scaled() for c in _as_system(region).constraints]
    for br in _BRANCHES[convention]:
        rows = [c.scaled() for c in parameter_system(w, br, convention).constraints]
        if closed:
            rows = [(a, b, c, False) for a, b, c, _ in rows]
        if _fm_feasible(rows + extra):
            return True
    return False


def count_B_oracle(n: int, region, convention: str = "lower",
                   limit: int = ORACLE_MAX_LENGTH, closed: bool = True) -> int:
    """Balanced words of length ``n`` whose parameter cell meets ``region``.

    See :func:`attainable` for the boundary convention.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if n > limit:
        raise ResourceLimitError(f"oracle bounded at n={limit}, requested n={n}")
    if isinstance(region, Threshold):
        region = ParamRegion(region.u, region.t)
    return sum(attainable(w, region, convention, closed) for w in enumerate_balanced(n))


class RectangleCount(NamedTuple):
    oracle: int
    inclusion_exclusion: int


def rectangle_system(a, b, c, d) -> ConstraintSystem:
    """Intercept in ``(a, b]`` and slope in ``[c, d)``, i.e. ``1 - d < y <= 1 - c``."""
    a, b, c, d = map(to_fraction, (a, b, c, d))
    if not (0 <= a < b <= 1 and 0 <= c < d <= 1):
        raise DomainError(f"degenerate rectangle ({a}, {b}] x [{c}, {d})")
    return ConstraintSystem((
        LinearConstraint(-1, 0, -a, strict=True),
        LinearConstraint(1, 0, b),
        LinearConstraint(0, -1, d - 1, strict=True),
        LinearConstraint(0, 1, 1 - c),
    ))


def _B_corner(n, t, u):
    # B for the box slope in [1 - t, 1], intercept in [0, u); empty when t or u is 0
    if t == 0 or u == 0:
        return 0
    return count_B_theorem(n, Threshold(t, u))


def count_B_rectangle(n: int, a, b, c, d) -> RectangleCount:
    """Words with intercept in ``(a, b]`` and slope in ``[c, d)``.

    Returns the exact oracle count alongside the four-corner
    inclusion-exclusion combination of theorem counts.
    """
    system = rectangle_system(a, b, c, d)
    a, b, c, d = map(to_fraction, (a, b, c, d))
    oracle = count_B_oracle(n, system)
    estimate = (_B_corner(n, 1 - c, b) - _B_corner(n, 1 - c, a)
                - _B_corner(n, 1 - d, b) + _B_corner(n, 1 - d, a))
    return RectangleCount(oracle, estimate)


def systems_json(words, convention: str = "lower") -> str:
    """Debug dump of every (word, branch) constraint system."""
    out = []
    for w in words:
        for br in _BRANCHES[convention]:
            sys = parameter_system(w, br, convention)
            out.append({"word": w, "branch": br,
                        "constraints": [c.as_json() for c in sys.constraints]})
    return json.dumps(out, indent=1)


# ---------------------------------------------------------------------------
# partition figure


def new_intersections(m: int, region: ParamRegion) -> list[tuple[Fraction, Fraction]]:
    """Points where the order-``m`` segments ``x = m y - b`` meet earlier ones inside ``region``.

    Earlier segments are ``x = l y - c`` with ``0 <= c < l < m``; the left
    edge ``x = 0`` plays the part of ``l = 0``, where a new segment starts.
    Points are returned sorted by ``y``; each is listed once even if several
    earlier segments pass through it.
    """
    tp, tq = region.t.numerator, region.t.denominator
    up, uq = region.u.numerator, region.u.denominator
    seen = set()
    for ell in range(m):
        d = m - ell
        for c in range(max(ell, 1)):
            for b in range(c, m):
                # y = (b - c) / d must satisfy b/m <= y < (b + 1)/m
                if b * d > m * (b - c) or m * (b - c) >= (b + 1) * d:
                    continue
                if (b - c) * tq > tp * d:
                    continue
                if (ell * b - m * c) * uq >= up * d:
                    continue
                seen.add((Fraction(ell * b - m * c, d), Fraction(b - c, d)))
    return sorted(seen, key=lambda p: (p[1], p[0]))


def partition_svg(m: int, region: ParamRegion | None = None, convention: str = "lower") -> str:
    """SVG of the order-``m`` partition of the unit square.

    Draws every segment ``x = n y - l`` (``1 <= n <= m``, ``0 <= l < n``),
    shades ``region`` and marks the intersections new at order ``m``.
    Segments of slope ``1/m`` are dashed. ``convention`` only labels the
    figure: the two conventions share their segments.
    """
    if not 1 <= m <= 64:
        raise DomainError(f"partition order must be in 1..64, got {m}")
    if region is None:
        region = ParamRegion(1, 1)
    size = 600

    def px(v):
        return f"{size * float(v):.3f}"

    def py(v):
        return f"{size * (1 - float(v)):.3f}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" '
        f'height="{size}" viewBox="0 0 {size} {size}">',
        f"<title>partition m={m} u={format_fraction(region.u)} "
        f"t={format_fraction(region.t)} ({convention})</title>",
        f'<rect class="region" x="0.000" y="{py(region.t)}" width="{px(region.u)}" '
        f'height="{px(region.t)}" fill="#d0d0d0" stroke="none"/>',
        f'<rect class="frame" x="0.000" y="0.000" width="{size}.000" height="{size}.000" '
        'fill="none" stroke="black" stroke-width="1"/>',
    ]
    for n in range(1, m + 1):
        dash = ' stroke-dasharray="6,4"' if n == m and m > 1 else ""
        for ell in range(n):
            # x runs 0 -> 1 as y runs ell/n -> (ell + 1)/n
            lines.append(
                f'<line class="segment" data-n="{n}" data-l="{ell}" '
                f'x1="0.000" y1="{py(Fraction(ell, n))}" x2="{px(1)}" '
                f'y2="{py(Fraction(ell + 1, n))}" stroke="black" stroke-width="1"{dash}/>')
    for x, y in new_intersections(m, region):
        lines.append(f'<circle class="dot" cx="{px(x)}" cy="{py(y)}" r="3" fill="black"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
