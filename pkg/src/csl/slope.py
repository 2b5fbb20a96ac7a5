"""Exact slope arithmetic on the Farey tessellation.

Slopes are extended rationals p/q (with 1/0 standing for infinity).  The
tessellation picture uses cardinal points: West carries the meridian
label, East the page-slope label, and with the standard labelling West is
infinity, East is 0, South is 1 and North is -1.  Going counter-clockwise
around the circle the labels decrease (wrapping through infinity).

A label p/q corresponds to the integer vector (q, p).  Inside tessellation
computations negative labels are written with a negative denominator, so
that e.g. North is 1/(-1) and the vector of -8/5 is (-5, 8).  Canonical
:class:`Slope` storage always keeps ``q >= 0``; the sign convention is
applied only while adding vectors.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DomainError, UndefinedResultError

__all__ = [
    "Slope", "INF", "NcfExpansion", "FareyFrame", "FrameOp",
    "as_slope", "tess_pair", "farey_sum", "farey_combination",
    "is_farey_neighbor", "ncf_expand", "ncf_eval", "ncf_normalize",
    "lemma_farey_sum_rhs", "shortest_farey_path",
    "frame_apply", "frame_label", "frame_coordinates", "frame_history",
]

_SLOPE_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


@dataclass(frozen=True)
class Slope:
    """An extended rational number in lowest terms.

    ``Slope(-8, 5)``, ``Slope(8, -5)`` and ``Slope.parse("-8/5")`` are the
    same value.  Infinity is ``Slope(1, 0)``.  Ordering comparisons
    involving infinity raise :class:`DomainError`.
    """

    p: int
    q: int = 1

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if p == 0 and q == 0:
            raise UndefinedResultError("0/0 is not a slope")
        g = math.gcd(p, q)
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    # construction ---------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "Slope":
        s = str(text).strip()
        if s.lower() in ("inf", "infinity", "oo", "1/0", "-1/0"):
            return INF
        m = _SLOPE_RE.match(s)
        if not m:
            raise DomainError(f"cannot parse slope {text!r}")
        p = int(m.group(1))
        q = int(m.group(2)) if m.group(2) is not None else 1
        return cls(p, q)

    @classmethod
    def from_fraction(cls, x) -> "Slope":
        x = Fraction(x)
        return cls(x.numerator, x.denominator)

    # queries --------------------------------------------------------------

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    @property
    def fraction(self) -> Fraction:
        if self.q == 0:
            raise DomainError("infinity has no rational value")
        return Fraction(self.p, self.q)

    def is_integer(self) -> bool:
        return self.q == 1

    def __str__(self):
        if self.q == 0:
            return "inf"
        if self.q == 1:
            return str(self.p)
        return f"{self.p}/{self.q}"

    def __repr__(self):
        return f"Slope({self})"

    # ordering (finite only) ----------------------------------------------

    def _cmp_value(self, other) -> tuple[Fraction, Fraction]:
        other = as_slope(other)
        if self.q == 0 or other.q == 0:
            raise DomainError("slopes involving infinity are not ordered")
        return self.fraction, other.fraction

    def __lt__(self, other):
        a, b = self._cmp_value(other)
        return a < b

    def __le__(self, other):
        a, b = self._cmp_value(other)
        return a <= b

    def __gt__(self, other):
        a, b = self._cmp_value(other)
        return a > b

    def __ge__(self, other):
        a, b = self._cmp_value(other)
        return a >= b

    # finite arithmetic ----------------------------------------------------

    def __add__(self, other):
        return Slope.from_fraction(self.fraction + as_slope(other).fraction)

    __radd__ = __add__

    def __sub__(self, other):
        return Slope.from_fraction(self.fraction - as_slope(other).fraction)

    def __rsub__(self, other):
        return Slope.from_fraction(as_slope(other).fraction - self.fraction)

    def __neg__(self):
        return Slope(-self.p, self.q)


INF = Slope(1, 0)

SlopeLike = Union[Slope, int, Fraction, str]


def as_slope(x: SlopeLike) -> Slope:
    if isinstance(x, Slope):
        return x
    if isinstance(x, str):
        return Slope.parse(x)
    if isinstance(x, bool):
        raise DomainError("booleans are not slopes")
    if isinstance(x, (int, Fraction)):
        return Slope.from_fraction(x)
    raise DomainError(f"cannot interpret {x!r} as a slope")


def tess_pair(s: SlopeLike, *, north: bool = False) -> tuple[int, int]:
    """Return ``(p, q)`` written in the tessellation convention.

    Negative slopes get a negative denominator.  Zero is ``0/1`` (the
    Southern-hemisphere reading) unless ``north`` is set, in which case it
    is ``0/(-1)``.
    """
    s = as_slope(s)
    if s.q == 0:
        return (1, 0)
    if s.p < 0 or (s.p == 0 and north):
        return (-s.p, -s.q)
    return (s.p, s.q)


def _pair(x) -> tuple[int, int]:
    # literal (p, q) tuples are trusted to already be in tessellation form
    if isinstance(x, tuple):
        p, q = x
        return int(p), int(q)
    return tess_pair(x)


def farey_combination(m: int, a, n: int, b) -> Slope:
    """The mediant ``m.a (+) n.b`` computed on tessellation-form pairs."""
    pa, qa = _pair(a)
    pb, qb = _pair(b)
    p, q = m * pa + n * pb, m * qa + n * qb
    if p == 0 and q == 0:
        raise UndefinedResultError("Farey sum produced 0/0")
    return Slope(p, q)


def farey_sum(a, b) -> Slope:
    """Farey sum ``a (+) b`` of two labels.

    Arguments may be :class:`Slope` values (converted with
    :func:`tess_pair`) or literal ``(p, q)`` tuples such as ``(0, -1)`` for
    the Northern reading of zero.  For non-neighbours this is still the
    plain mediant; no geometric meaning is attached.
    """
    return farey_combination(1, a, 1, b)


def is_farey_neighbor(a: SlopeLike, b: SlopeLike) -> bool:
    a, b = as_slope(a), as_slope(b)
    return abs(a.p * b.q - b.p * a.q) == 1


# -- negative continued fractions -------------------------------------------


class NcfExpansion(tuple):
    """Entries ``[a1+1, a2, ..., an]`` of a negative continued fraction.

    The constructor checks the invariant ``entries[0] <= -1`` and
    ``entries[i] <= -2`` for ``i >= 1``.  Use :func:`ncf_normalize` first
    for expansions ending in ``-1``.
    """

    def __new__(cls, entries: Iterable[int]):
        entries = tuple(int(e) for e in entries)
        if not entries:
            raise DomainError("empty negative continued fraction")
        if entries[0] > -1:
            raise DomainError(f"leading entry must be <= -1, got {entries[0]}")
        for e in entries[1:]:
            if e > -2:
                raise DomainError(f"later entries must be <= -2, got {e}")
        return super().__new__(cls, entries)

    def __repr__(self):
        return f"NcfExpansion({list(self)})"


def _eval_raw(entries: Sequence[int]) -> Fraction:
    # a1+1 - 1/(a2 - 1/(... - 1/an)), no validation
    value = Fraction(entries[-1])
    for e in reversed(entries[:-1]):
        if value == 0:
            raise UndefinedResultError("division by zero while evaluating expansion")
        value = e - 1 / value
    return value


def ncf_expand(r: SlopeLike) -> NcfExpansion:
    """Expand a negative rational as ``[a1+1, a2, ..., an]``.

    The first entry is ``floor(r)``; each remainder ``1/(floor(x) - x)`` is
    again negative and below -1, so later entries are at most -2.
    """
    r = as_slope(r)
    if r.is_infinite or r.fraction >= 0:
        raise DomainError("slope must be negative")
    x = r.fraction
    entries = []
    while True:
        a = math.floor(x)
        entries.append(a)
        if x == a:
            break
        x = 1 / (a - x)
    return NcfExpansion(entries)


def ncf_normalize(entries: Sequence[int]) -> NcfExpansion:
    """Collapse trailing ``-1`` entries: ``[..., b, -1] -> [..., b+1]``."""
    entries = [int(e) for e in entries]
    if not entries:
        raise DomainError("empty negative continued fraction")
    while len(entries) > 1 and entries[-1] == -1:
        entries.pop()
        entries[-1] += 1
    return NcfExpansion(entries)


def ncf_eval(entries: Sequence[int]) -> Slope:
    return Slope.from_fraction(_eval_raw(ncf_normalize(entries)))


def lemma_farey_sum_rhs(entries: Sequence[int]) -> Slope:
    """Evaluate ``|an+1| . [.., a_{n-1}] (+) [.., a_{n-1}+1]``.

    Both operands are non-positive and are written with negative
    denominators (zero as ``0/(-1)``) before the mediant is taken.  The
    result agrees with :func:`ncf_eval` on the same entries.
    """
    entries = [int(e) for e in entries]
    if len(entries) <= 1:
        raise DomainError("need at least two entries")
    head = entries[:-1]
    bumped = head[:-1] + [head[-1] + 1]
    left = Slope.from_fraction(_eval_raw(head))
    right = Slope.from_fraction(_eval_raw(bumped))
    return farey_combination(abs(entries[-1] + 1), tess_pair(left, north=True),
                             1, tess_pair(right, north=True))


# -- shortest counter-clockwise paths ----------------------------------------


def _to_infinity(s: Slope) -> tuple[tuple[int, int], tuple[int, int]]:
    # SL(2,Z) matrix ((u, v), (-q, p)) sending p/q to 1/0
    p, q = s.p, s.q
    g, u, v = _ext_gcd(p, q)
    if g < 0:
        u, v = -u, -v
    return (u, v), (-q, p)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    return a, x0, y0


def _act(m, p: int, q: int) -> tuple[int, int]:
    (a, b), (c, d) = m
    return a * p + b * q, c * p + d * q


def _inverse(m):
    (a, b), (c, d) = m
    return (d, -b), (-c, a)


def shortest_farey_path(a: SlopeLike, b: SlopeLike) -> list[Slope]:
    """Shortest path of Farey neighbours from ``a`` to ``b`` going
    counter-clockwise (decreasing labels, wrapping through infinity).

    Neighbours are returned as a two-element path.  Otherwise ``a`` is sent
    to infinity by an element of SL(2,Z); every counter-clockwise path from
    infinity to a finite x must next visit ceil(x) (the edge from ceil(x)
    to infinity separates x from every larger integer), which makes the
    minimal path unique: it is the sequence of convergents of
    ``x = k1 - 1/(k2 - 1/(...))`` with ``ki = ceil(xi)``.
    """
    a, b = as_slope(a), as_slope(b)
    if a == b:
        raise DomainError("path endpoints must differ")
    if is_farey_neighbor(a, b):
        return [a, b]
    m = _to_infinity(a)
    bp, bq = _act(m, b.p, b.q)
    x = Fraction(bp, bq)
    minv = _inverse(m)
    path = [a]
    ks = []
    while True:
        k = math.ceil(x)
        ks.append(k)
        if x == k:
            break
        x = 1 / (k - x)
    # convergent recurrence h_i = k_i h_{i-1} - h_{i-2}, same for d
    h2, h1, d2, d1 = 1, ks[0], 0, 1
    path.append(Slope(*_act(minv, h1, d1)))
    for k in ks[1:]:
        h2, h1 = h1, k * h1 - h2
        d2, d1 = d1, k * d1 - d2
        path.append(Slope(*_act(minv, h1, d1)))
    return path


# -- frames -------------------------------------------------------------------


class FrameOp(enum.Enum):
    STABILIZE = "S"
    POS_SURGERY = "P"   # +1-surgery w.r.t. the page: South moves to West
    NEG_SURGERY = "N"   # -1-surgery w.r.t. the page: North moves to West


@dataclass(frozen=True)
class FareyFrame:
    """Current (page, meridian) basis in original (q, p) coordinates.

    ``lam`` is the page-slope curve (the East label) and ``mu`` the
    meridian (the West label).  The matrix with columns ``lam, mu`` always
    has determinant 1.
    """

    lam: tuple[int, int] = (1, 0)
    mu: tuple[int, int] = (0, 1)

    def __post_init__(self):
        if self.det != 1:
            raise DomainError(f"frame must be unimodular, det = {self.det}")

    @property
    def det(self) -> int:
        return self.lam[0] * self.mu[1] - self.mu[0] * self.lam[1]

    @property
    def west(self) -> Slope:
        return Slope(self.mu[1], self.mu[0])

    @property
    def east(self) -> Slope:
        return Slope(self.lam[1], self.lam[0])

    @property
    def north(self) -> Slope:
        return frame_label(self, Slope(-1))

    @property
    def south(self) -> Slope:
        return frame_label(self, Slope(1))

    def apply(self, op: FrameOp) -> "FareyFrame":
        (lq, lp), (mq, mp) = self.lam, self.mu
        if op is FrameOp.STABILIZE:
            return FareyFrame((lq - mq, lp - mp), self.mu)
        if op is FrameOp.POS_SURGERY:
            return FareyFrame(self.lam, (mq + lq, mp + lp))
        if op is FrameOp.NEG_SURGERY:
            return FareyFrame(self.lam, (mq - lq, mp - lp))
        raise DomainError(f"unknown frame operation {op!r}")

    def as_matrix(self) -> list[list[int]]:
        return [list(self.lam), list(self.mu)]


def frame_apply(f: FareyFrame, ops) -> FareyFrame:
    """Apply one :class:`FrameOp` or an iterable of them, in order."""
    if isinstance(ops, FrameOp):
        return f.apply(ops)
    for op in ops:
        f = f.apply(FrameOp(op) if not isinstance(op, FrameOp) else op)
    return f


def frame_history(f: FareyFrame, ops) -> list[FareyFrame]:
    """All intermediate frames, starting with ``f`` itself."""
    out = [f]
    for op in ops:
        out.append(out[-1].apply(op))
    return out


def frame_label(f: FareyFrame, position: SlopeLike) -> Slope:
    """Original-coordinate label at the point whose standard label is
    ``position``: the slope of ``q'.lam + p'.mu`` for ``position = p'/q'``."""
    s = as_slope(position)
    pp, qq = (1, 0) if s.is_infinite else (s.p, s.q)
    vq = qq * f.lam[0] + pp * f.mu[0]
    vp = qq * f.lam[1] + pp * f.mu[1]
    if vq == 0 and vp == 0:
        raise UndefinedResultError("frame maps the position to the zero vector")
    return Slope(vp, vq)


def frame_coordinates(f: FareyFrame, slope: SlopeLike) -> Slope:
    """Inverse of :func:`frame_label`: express an original-coordinate
    slope in the current (page, meridian) frame."""
    s = as_slope(slope)
    vp, vq = (1, 0) if s.is_infinite else (s.p, s.q)
    (lq, lp), (mq, mp) = f.lam, f.mu
    # solve qq*lam + pp*mu = (vq, vp); det = lq*mp - mq*lp = 1
    qq = mp * vq - mq * vp
    pp = -lp * vq + lq * vp
    return Slope(pp, qq)
