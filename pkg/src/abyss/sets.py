"""Countable point sets with injective index maps, closed-set and open-set
representations (radius functions vs. rational ball unions).

A CountableSet is the seed of every adversarial instance: an enumeration
n -> a_n of distinct points of [0,1] together with the inverse map, both
exactly decidable over Q(sqrt2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .exact import Q2, DyadicInterval, signed_unit_rationals


class CountableSet:
    """An indexed countable subset of [0,1] with decidable membership.

    `member(n)` enumerates the set, `index_of(x)` inverts it (None when x is
    not a member).  `size` is None for infinite families.  When
    `values_descend` holds, member(n) is strictly decreasing in n, which lets
    interval scans terminate exactly.
    """

    def __init__(self, member, index_of, size=None, surjective=False,
                 name="custom", values_descend=False, all_irrational=False):
        self._member = member
        self._index_of = index_of
        self.size = size
        self.surjective = surjective
        self.name = name
        self.values_descend = values_descend
        self.all_irrational = all_irrational
        self._cache: dict[int, Q2] = {}

    def member(self, n: int) -> Q2:
        if n < 0 or (self.size is not None and n >= self.size):
            raise IndexError("no member with index %d" % n)
        got = self._cache.get(n)
        if got is None:
            got = Q2.of(self._member(n))
            self._cache[n] = got
        return got

    def index_of(self, x) -> Optional[int]:
        return self._index_of(Q2.of(x))

    def __contains__(self, x) -> bool:
        return self.index_of(x) is not None

    def members_upto(self, limit: int) -> list[tuple[int, Q2]]:
        hi = limit if self.size is None else min(limit, self.size)
        return [(n, self.member(n)) for n in range(hi)]

    def members_in(self, iv: DyadicInterval, limit: int) -> list[tuple[int, Q2]]:
        """Members inside iv with index below limit (exhaustive when the
        enumeration descends below iv or the set is finite)."""
        out = []
        hi = limit if self.size is None else min(limit, self.size)
        for n in range(hi):
            p = self.member(n)
            if self.values_descend and p < iv.lower:
                break
            if iv.contains(p):
                out.append((n, p))
        return out

    def scan_is_exhaustive(self, iv: DyadicInterval, limit: int) -> bool:
        """Whether members_in(iv, limit) provably saw every member in iv."""
        if self.size is not None and self.size <= limit:
            return True
        if self.values_descend:
            return self.member(limit) < iv.lower if self.size is None else True
        return False


def sqrt2_family() -> CountableSet:
    """The canonical countable set {sqrt2/2^(n+1) : n in N}, Y(a_n) = n."""

    def member(n: int) -> Q2:
        return Q2.sqrt2_scaled(n)

    def index_of(x: Q2) -> Optional[int]:
        if x.a != 0 or x.b <= 0 or x.b.numerator != 1:
            return None
        den = x.b.denominator
        if den & (den - 1) != 0:  # not a power of two
            return None
        n = den.bit_length() - 2
        return n if n >= 0 else None

    return CountableSet(member, index_of, size=None, surjective=True,
                        name="sqrt2-halving", values_descend=True,
                        all_irrational=True)


def finite_set(points, surjective=False, name="finite") -> CountableSet:
    """A finite countable set from explicit points; rejects duplicates and
    points outside [0,1]."""
    pts = [Q2.of(p) for p in points]
    if not pts:
        raise ValueError("countable set must be nonempty")
    for i, p in enumerate(pts):
        if p < 0 or p > 1:
            raise ValueError("point %s outside [0,1]" % (p,))
        for q in pts[i + 1:]:
            if p == q:
                raise ValueError("duplicate point %s (index map must be injective)" % (p,))
    all_irr = all(not p.is_rational for p in pts)

    def index_of(x: Q2) -> Optional[int]:
        for n, p in enumerate(pts):
            if p == x:
                return n
        return None

    return CountableSet(lambda n: pts[n], index_of, size=len(pts),
                        surjective=surjective, name=name,
                        all_irrational=all_irr)


# --- bands of (0,1]: [2^-(n+1), 2^-n) -------------------------------------


def band_of(x, half_open=True) -> Optional[int]:
    """The band index n with 2^-(n+1) <= x < 2^-n (half-open), or with
    boundaries assigned to the smaller n (half_open=False).  None for x <= 0
    and for x >= 1 in the half-open reading (x = 1 maps to band 0 otherwise).
    """
    p = Q2.of(x)
    if p.sign() <= 0:
        return None
    if half_open:
        if p >= 1:
            return None
        n = 0
        while p < Fraction(1, 1 << (n + 1)):
            n += 1
        return n
    if p > 1:
        return None
    n = 0
    while p < Fraction(1, 1 << (n + 1)):
        n += 1
    return n


# --- the shifted, banded copy of a set (one point per band) ----------------


_SHIFT_ENUM_CACHE: list[Fraction] = []


def _signed_rational(i: int) -> Fraction:
    while len(_SHIFT_ENUM_CACHE) <= i:
        gen = signed_unit_rationals()
        for _ in range(len(_SHIFT_ENUM_CACHE)):
            next(gen)
        _SHIFT_ENUM_CACHE.append(next(gen))
    return _SHIFT_ENUM_CACHE[i]


def minimal_shift_into_band(a: Q2, n: int) -> Fraction:
    """The minimal-index rational q in [-1,1] with a - q in [2^-(n+1), 2^-n).

    The target interval for q is (a - 2^-n, a - 2^-(n+1)], which always
    contains rationals, so the scan over the fixed enumeration terminates.
    """
    lo = a - Fraction(1, 1 << n)       # exclusive
    hi = a - Fraction(1, 1 << (n + 1))  # inclusive
    i = 0
    while True:
        q = _signed_rational(i)
        qq = Q2.of(q)
        if qq > lo and qq <= hi:
            return q
        i += 1


def tilde_set(a_set: CountableSet) -> CountableSet:
    """Banded copy of a_set: member n is a_n shifted by the minimal-index
    rational that lands it in band n.  Nowhere dense: one point per band,
    accumulating only at 0.  Requires a purely irrational source set."""
    if not a_set.all_irrational:
        raise ValueError("banded copy needs an all-irrational source set "
                         "(remove rationals first)")

    def member(n: int) -> Q2:
        a = a_set.member(n)
        return a - minimal_shift_into_band(a, n)

    def index_of(x: Q2) -> Optional[int]:
        n = band_of(x, half_open=True)
        if n is None:
            return None
        if a_set.size is not None and n >= a_set.size:
            return None
        return n if member(n) == x else None

    return CountableSet(member, index_of, size=a_set.size,
                        surjective=a_set.surjective,
                        name="tilde(%s)" % a_set.name,
                        values_descend=True, all_irrational=True)


# --- closed sets and open-set representations ------------------------------


@dataclass(frozen=True)
class R2Rep:
    """An open subset of [0,1] represented by a radius function: every member
    x gets a positive radius with B(x, radius(x)) inside the set.

    Concrete instances are backed by a finite union of disjoint open rational
    intervals, from which the canonical radius map is derived; a custom
    radius map may override it (it must still witness the same set).
    """

    intervals: tuple  # ((lo, hi), ...) open, disjoint, sorted
    radius_fn: Optional[Callable] = None

    @staticmethod
    def from_intervals(spans) -> "R2Rep":
        cleaned = sorted((Fraction(a), Fraction(b)) for a, b in spans if Fraction(a) < Fraction(b))
        for (a1, b1), (a2, b2) in zip(cleaned, cleaned[1:]):
            if b1 > a2:
                raise ValueError("intervals must be disjoint")
        return R2Rep(tuple(cleaned))

    @staticmethod
    def empty() -> "R2Rep":
        return R2Rep(())

    def contains(self, x) -> bool:
        p = Q2.of(x)
        return any(p > a and p < b for a, b in self.intervals)

    def radius(self, x) -> Fraction:
        p = Q2.of(x)
        for a, b in self.intervals:
            if p > a and p < b:
                if self.radius_fn is not None:
                    r = Fraction(self.radius_fn(p))
                    if r <= 0:
                        raise ValueError("radius map returned a non-positive radius on the set")
                    return r
                gap = min(p - a, b - p)
                if gap.is_rational:
                    return gap.as_rational()
                lo, _ = gap.bracket(gap_precision(a, b))
                return lo
        return Fraction(0)

    def boundary_points(self) -> list[Fraction]:
        out = []
        for a, b in self.intervals:
            out.append(a)
            out.append(b)
        return out

    def is_empty(self) -> bool:
        return not self.intervals


def gap_precision(a: Fraction, b: Fraction) -> int:
    width = b - a
    return max(4, width.denominator.bit_length() + 4)


@dataclass(frozen=True)
class FinitePointSet:
    points: tuple

    @staticmethod
    def of(points) -> "FinitePointSet":
        pts = tuple(Q2.of(p) for p in points)
        return FinitePointSet(pts)

    def contains(self, x) -> bool:
        p = Q2.of(x)
        return any(p == q for q in self.points)

    def boundary_candidates(self):
        return list(self.points)


@dataclass(frozen=True)
class ComplementOfR2Open:
    """The closed complement (within [0,1]) of an R2-represented open set."""

    open_rep: R2Rep

    def contains(self, x) -> bool:
        p = Q2.of(x)
        if p < 0 or p > 1:
            return False
        return not self.open_rep.contains(p)

    def boundary_candidates(self):
        return self.open_rep.boundary_points()

    def component_intervals(self) -> list[tuple[Fraction, Fraction]]:
        """Closed components of the complement inside [0,1] (single points
        allowed where open intervals touch)."""
        out = []
        cursor = Fraction(0)
        for a, b in self.open_rep.intervals:
            if b <= cursor:
                continue
            if a > 1:
                break
            if a >= cursor:
                out.append((cursor, min(a, Fraction(1))))
            cursor = max(cursor, b)
            if cursor > 1:
                break
        if cursor <= 1:
            out.append((cursor, Fraction(1)))
        return out


ClosedSetRep = object  # FinitePointSet | ComplementOfR2Open (duck-typed)


# --- RM-codes: open sets as unions of rational balls -----------------------


@dataclass(frozen=True)
class RMCode:
    """An open set coded as a countable union of rational balls; only a
    finite prefix is ever materialised."""

    prefix: tuple  # ((center, radius), ...)
    prefix_of_infinite: bool = False

    def covers(self, x) -> bool:
        p = Q2.of(x)
        return any(p > c - r and p < c + r for c, r in self.prefix if r > 0)

    @staticmethod
    def from_balls(balls, prefix_of_infinite=False) -> "RMCode":
        return RMCode(tuple((Fraction(c), Fraction(r)) for c, r in balls),
                      prefix_of_infinite)
