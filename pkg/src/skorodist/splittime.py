"""The split real line: every real time doubled into a left and a right copy.

A split time is a pair (real part, sign).  Under the lexicographic order
``t- < t+ < u-`` whenever ``t < u``, so the two copies of a time sit next to
each other and a cadlag function becomes a continuous function of split time.
The two points at infinity close the line off: ``-inf`` carries sign ``+``
and ``+inf`` carries sign ``-``, which makes the extended split line order
isomorphic to a closed interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable

MINUS = -1
PLUS = 1

_SIGN_CHAR = {MINUS: "-", PLUS: "+"}


@total_ordering
@dataclass(frozen=True)
class SplitTime:
    """A real time with a side, e.g. ``1.5-`` or ``1.5+``."""

    real: float
    sign: int

    def __post_init__(self):
        if self.sign not in (MINUS, PLUS):
            raise ValueError(f"sign must be MINUS (-1) or PLUS (+1), got {self.sign!r}")
        if math.isnan(self.real):
            raise ValueError("split time needs a real part, got nan")
        if math.isinf(self.real):
            required = PLUS if self.real < 0 else MINUS
            if self.sign != required:
                raise ValueError("-inf carries sign +, +inf carries sign -")

    @classmethod
    def minus(cls, t: float) -> "SplitTime":
        return cls(float(t), MINUS)

    @classmethod
    def plus(cls, t: float) -> "SplitTime":
        return cls(float(t), PLUS)

    @property
    def finite(self) -> bool:
        return math.isfinite(self.real)

    def __lt__(self, other: "SplitTime") -> bool:
        if self.real != other.real:
            return self.real < other.real
        return self.sign < other.sign

    def __str__(self) -> str:
        if self.real == math.inf:
            return "+inf"
        if self.real == -math.inf:
            return "-inf"
        return f"{self.real:g}{_SIGN_CHAR[self.sign]}"


#: The extended endpoints.  Arithmetic on them is not supported; they exist so
#: half-infinite intervals type-check.
NEG_INF = SplitTime(-math.inf, PLUS)
POS_INF = SplitTime(math.inf, MINUS)


def cmp(a: SplitTime, b: SplitTime) -> int:
    """Lexicographic comparison: -1, 0 or +1."""
    if a < b:
        return -1
    if b < a:
        return 1
    return 0


def split_domain(times: Iterable[float]) -> list[SplitTime]:
    """Double each time of a finite set into its two split copies, in order.

    The empty set maps to the empty list (the trivial path's domain).
    """
    out: list[SplitTime] = []
    for t in sorted(set(float(t) for t in times)):
        out.append(SplitTime.minus(t))
        out.append(SplitTime.plus(t))
    return out


@dataclass(frozen=True)
class SplitInterval:
    """An interval of split times; either end may be open or closed.

    Because the split line is discrete around each real time, open and closed
    intervals can describe the same set, e.g. ``(s-, t+) == [s+, t-]``.
    """

    lo: SplitTime
    hi: SplitTime
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError(f"interval endpoints out of order: {self.lo} > {self.hi}")

    def contains(self, tau: SplitTime) -> bool:
        if tau < self.lo or (self.lo_open and tau == self.lo):
            return False
        if self.hi < tau or (self.hi_open and tau == self.hi):
            return False
        return True

    def __contains__(self, tau: SplitTime) -> bool:
        return self.contains(tau)


def interval_contains(iv: SplitInterval, tau: SplitTime) -> bool:
    """Membership of a split time in a split interval."""
    return iv.contains(tau)


def parse_split(text: str) -> SplitTime:
    """Parse the textual form ``"1.5-"``, ``"1.5+"``, ``"-inf"`` or ``"+inf"``."""
    s = text.strip()
    if s == "-inf":
        return NEG_INF
    if s in ("+inf", "inf"):
        return POS_INF
    if len(s) < 2 or s[-1] not in "+-":
        raise ValueError(f"not a split time: {text!r}")
    sign = PLUS if s[-1] == "+" else MINUS
    try:
        real = float(s[:-1])
    except ValueError as exc:
        raise ValueError(f"not a split time: {text!r}") from exc
    if math.isinf(real):
        return NEG_INF if real < 0 else POS_INF
    return SplitTime(real, sign)


def format_split(tau: SplitTime) -> str:
    """Inverse of :func:`parse_split`."""
    return str(tau)
