"""The closed symbolic universe of function families on [0,1].

Every family evaluates exactly over Q(sqrt2) and carries:
  * class tags (witnessed by the test suite, never just asserted),
  * structural collapse certificates where a rational-quantifier collapse is
    valid for reasons the class tags alone cannot see (Thomae),
  * exact interval ranges, punctured cluster bounds and one-sided limits,
    which is what makes honest oracle simulation possible at all.

Functions outside this universe are deliberately not accepted: there is no
sound way to simulate number-quantifier oracles against a black box.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional

from .errors import (ConstructionError, DomainError, NotPointwiseEvaluable,
                     UnsupportedVariant)
from .exact import Bracket, DyadicInterval, Q2, rational_grid
from .sets import (ComplementOfR2Open, CountableSet, FinitePointSet,
                   band_of, tilde_set)

# class tags (vocabulary fixed by the glossary of notions in play)
CONTINUOUS = "continuous"
QUASI_CONTINUOUS = "quasi-continuous"
CLIQUISH = "cliquish"
SIMPLY_CONTINUOUS = "simply-continuous"
USCO = "usco"
LSCO = "lsco"
BV = "BV"
NORMALISED_BV = "normalised-BV"
REGULATED = "regulated"
BAIRE1 = "Baire-1"

ALL_TAGS = frozenset({CONTINUOUS, QUASI_CONTINUOUS, CLIQUISH, SIMPLY_CONTINUOUS,
                      USCO, LSCO, BV, NORMALISED_BV, REGULATED, BAIRE1})

# structural collapse certificates: the named rational collapse is valid for
# this particular function even though its tags alone would not grant it
CERT_SUP = "sup-collapses-to-rationals"
CERT_INF = "inf-collapses-to-rationals"
CERT_OSC = "oscillation-collapses-to-rationals"


def _clip_unit(iv: DyadicInterval) -> DyadicInterval:
    lo = max(iv.lower, Fraction(0))
    hi = min(iv.upper, Fraction(1))
    if lo > hi:
        raise DomainError("interval %s lies outside [0,1]" % (iv,))
    return DyadicInterval(lo, hi)


def irrational_inside(iv: DyadicInterval) -> Q2:
    """A point of iv that is provably irrational (midpoint + tiny sqrt2)."""
    if iv.width == 0:
        raise ValueError("degenerate interval has no irrational point")
    j = max(2, (iv.width.denominator.bit_length() - iv.width.numerator.bit_length()) + 3)
    while Q2(iv.midpoint, Fraction(1, 1 << j)) > iv.upper:
        j += 1
    return Q2(iv.midpoint, Fraction(1, 1 << j))


class Poly:
    """Polynomial with rational coefficients, degree at most 2, so every
    extremum is rational and interval ranges are exact."""

    __slots__ = ("c0", "c1", "c2")

    def __init__(self, c0, c1=0, c2=0):
        self.c0 = Fraction(c0)
        self.c1 = Fraction(c1)
        self.c2 = Fraction(c2)

    def __call__(self, x) -> Q2:
        p = Q2.of(x)
        return Q2.of(self.c0) + p * self.c1 + p * p * self.c2

    @property
    def is_constant(self) -> bool:
        return self.c1 == 0 and self.c2 == 0

    def vertex(self) -> Optional[Fraction]:
        if self.c2 == 0:
            return None
        return -self.c1 / (2 * self.c2)

    def range_on(self, lo: Q2, hi: Q2) -> tuple[Q2, Q2]:
        """Exact (min, max) over the closed interval [lo, hi]."""
        vals = [self(lo), self(hi)]
        v = self.vertex()
        if v is not None and Q2.of(v) > lo and Q2.of(v) < hi:
            vals.append(self(v))
        return min(vals), max(vals)

    def coeffs(self):
        return (self.c0, self.c1, self.c2)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs() == other.coeffs()

    def __repr__(self):
        return "Poly(%s, %s, %s)" % self.coeffs()


class SymbolicFn:
    """Base of the closed variant type; subclasses are the function families."""

    kind = "abstract"

    def __init__(self, tags, certificates=()):
        bad = set(tags) - ALL_TAGS
        if bad:
            raise ValueError("unknown class tags: %s" % sorted(bad))
        self.tags = frozenset(tags)
        self.certificates = frozenset(certificates)

    # -- evaluation --------------------------------------------------------

    def eval(self, x) -> Q2:
        p = Q2.of(x)
        if p < 0 or p > 1:
            raise DomainError("point %s outside [0,1]" % (p,))
        return self._eval(p)

    def _eval(self, x: Q2) -> Q2:
        raise NotImplementedError

    # -- structural data -----------------------------------------------------

    def range_bound(self) -> tuple[Fraction, Fraction]:
        """Cheap a-priori bounds on values over [0,1]."""
        raise NotImplementedError

    def is_positive(self) -> bool:
        """Exact check: f(x) > 0 for every x in [0,1]."""
        return False

    def range_on(self, iv: DyadicInterval, k: int,
                 rationals_only: bool = False) -> tuple[Bracket, Bracket]:
        """(inf, sup) brackets over iv (restricted to rational points when
        asked), each of width at most 2^-k; exact whenever attainable."""
        raise NotImplementedError

    def special_points(self, iv: DyadicInterval, depth: int) -> list[Q2]:
        """Structure-revealing probe points inside iv (members, breakpoints,
        vertices); depth caps enumeration indices."""
        return []

    def one_sided_limit(self, x, side: int, k: int) -> Optional[Bracket]:
        """Bracket of f(x+) (side=+1) or f(x-) (side=-1); None when the point
        has no approach from that side within [0,1] or no limit exists."""
        raise UnsupportedVariant("%s has no one-sided limit data" % self.kind)

    def cluster_bounds(self, x, k: int) -> tuple[Bracket, Bracket]:
        """Brackets of the punctured liminf and limsup of f at x."""
        sides = []
        for side in (-1, 1):
            b = self.one_sided_limit(x, side, k)
            if b is not None:
                sides.append(b)
        if not sides:
            raise UnsupportedVariant("no approach side at %s" % (x,))
        li, ls = sides[0], sides[0]
        for b in sides[1:]:
            li = li.join_min(b)
            ls = ls.join_max(b)
        return li, ls

    def jump_candidates(self, limit: int) -> list[Q2]:
        return []

    def variation_points(self, iv: DyadicInterval) -> Optional[list[Q2]]:
        return None

    # -- exact existential witnesses ----------------------------------------

    def witness_above(self, iv, y, rationals_only=False):
        """Decide (exactly where possible) whether some point of iv has value
        strictly above y; returns (Truth, witness point or None)."""
        return self._witness_via_range(iv, y, rationals_only, above=True)

    def witness_below(self, iv, y, rationals_only=False):
        return self._witness_via_range(iv, y, rationals_only, above=False)

    def _witness_via_range(self, iv, y, rationals_only, above):
        from .exact import Truth
        y = Fraction(y)
        prec = max(8, y.denominator.bit_length() + 4)
        # retry finer once: a quadratic-irrational extremum sits at distance
        # at least ~1/denominator(y)^2 from y, so doubling the bits decides
        for attempt in range(2):
            inf_b, sup_b = self.range_on(iv, prec, rationals_only)
            target = sup_b if above else inf_b
            if above:
                if target.hi <= y:
                    return Truth.NO, None
                if target.lo > y:
                    return Truth.YES, self._find_point(iv, y, rationals_only, above)
            else:
                if target.lo >= y:
                    return Truth.NO, None
                if target.hi < y:
                    return Truth.YES, self._find_point(iv, y, rationals_only, above)
            prec = 2 * prec + 16
        return Truth.UNKNOWN, None

    def _find_point(self, iv, y, rationals_only, above, max_depth=40):
        for depth in range(0, max_depth):
            for p in probe_points(self, iv, depth, rationals_only):
                v = self.eval(p)
                if (v > y) if above else (v < y):
                    return p
        return None

    # -- misc ---------------------------------------------------------------

    def constant_value(self) -> Optional[Q2]:
        return None

    def to_jsonable(self) -> dict:
        raise NotImplementedError

    def __repr__(self):
        return "<%s tags={%s}>" % (self.kind, ",".join(sorted(self.tags)))


def probe_points(f: SymbolicFn, iv: DyadicInterval, depth: int,
                 rationals_only: bool = False) -> list[Q2]:
    """Deterministic probe basis: dyadic grid of iv at `depth`, interval
    endpoints, and the function's own special points, sorted ascending."""
    pts: list[Q2] = [Q2.of(q) for q in rational_grid(iv, depth)]
    for p in f.special_points(iv, depth):
        pts.append(Q2.of(p))
    if rationals_only:
        pts = [p for p in pts if p.is_rational]
    pts.sort()
    out = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# piecewise rational functions
# ---------------------------------------------------------------------------


class PiecewiseRational(SymbolicFn):
    """Finitely many polynomial pieces on (cut_i, cut_{i+1}) with an explicit
    value at every cut; cut_0 = 0 and cut_m = 1."""

    kind = "piecewise"

    def __init__(self, cuts, pieces, bp_values):
        self.cuts = tuple(Q2.of(c) for c in cuts)
        self.pieces = tuple(pieces)
        self.bp_values = tuple(Q2.of(v) for v in bp_values)
        if len(self.cuts) < 2 or self.cuts[0] != Q2.of(0) or self.cuts[-1] != Q2.of(1):
            raise ConstructionError("cuts must run from 0 to 1")
        if any(a >= b for a, b in zip(self.cuts, self.cuts[1:])):
            raise ConstructionError("cuts must be strictly increasing")
        if len(self.pieces) != len(self.cuts) - 1 or len(self.bp_values) != len(self.cuts):
            raise ConstructionError("pieces/values do not match cuts")
        super().__init__(self._compute_tags())

    @staticmethod
    def from_polys(cuts, pieces, policy=None):
        """policy: per-cut entry 'left' | 'right' | explicit value; defaults
        to 'right' (cadlag) at interior cuts, piece limits at 0 and 1."""
        cuts = [Q2.of(c) for c in cuts]
        m = len(cuts)
        if policy is None:
            policy = ["right"] * m
        vals = []
        for i, rule in enumerate(policy):
            if rule == "left":
                j = i - 1 if i > 0 else 0
                vals.append(pieces[j](cuts[i]))
            elif rule == "right":
                j = i if i < len(pieces) else len(pieces) - 1
                vals.append(pieces[j](cuts[i]))
            else:
                vals.append(Q2.of(rule))
        return PiecewiseRational(cuts, pieces, vals)

    def _limits_at_cut(self, i):
        left = self.pieces[i - 1](self.cuts[i]) if i > 0 else None
        right = self.pieces[i](self.cuts[i]) if i < len(self.pieces) else None
        return left, right

    def _compute_tags(self):
        tags = {CLIQUISH, SIMPLY_CONTINUOUS, BV, REGULATED, BAIRE1}
        continuous = True
        qc = True
        usco = True
        lsco = True
        cadlag = True
        for i in range(len(self.cuts)):
            left, right = self._limits_at_cut(i)
            v = self.bp_values[i]
            sides = [s for s in (left, right) if s is not None]
            if any(s != v for s in sides):
                continuous = False
            if all(s != v for s in sides):
                qc = False
            if any(s > v for s in sides):
                usco = False
            if any(s < v for s in sides):
                lsco = False
            if right is not None and right != v:
                cadlag = False
        if continuous:
            tags |= {CONTINUOUS, QUASI_CONTINUOUS, USCO, LSCO}
        else:
            if qc:
                tags.add(QUASI_CONTINUOUS)
            if usco:
                tags.add(USCO)
            if lsco:
                tags.add(LSCO)
        if cadlag and self.bp_values[0] == Q2.of(0):
            tags.add(NORMALISED_BV)
        return tags

    def _locate(self, x: Q2):
        """('cut', i) or ('piece', j)."""
        for i, c in enumerate(self.cuts):
            if x == c:
                return ("cut", i)
            if x < c:
                return ("piece", i - 1)
        raise DomainError("point %s outside [0,1]" % (x,))

    def _eval(self, x):
        where, i = self._locate(x)
        if where == "cut":
            return self.bp_values[i]
        return self.pieces[i](x)

    def range_bound(self):
        inf_b, sup_b = self.range_on(DyadicInterval(0, 1), 8)
        return inf_b.lo, sup_b.hi

    def is_positive(self):
        inf_b, _ = self.range_on(DyadicInterval(0, 1), 16)
        if inf_b.lo > 0:
            return True
        if inf_b.exact:
            return False
        # irrational infimum: compare the exact candidates directly
        return all(v > 0 for v in self._value_candidates(DyadicInterval(0, 1), False))

    def _value_candidates(self, iv, rationals_only):
        iv = _clip_unit(iv)
        vals = []
        lo, hi = Q2.of(iv.lower), Q2.of(iv.upper)
        for j, piece in enumerate(self.pieces):
            a, b = self.cuts[j], self.cuts[j + 1]
            s, t = max(a, lo), min(b, hi)
            if s > t or (s == t and (s == a or s == b)):
                continue
            if s == t:
                vals.append(piece(s))
            else:
                mn, mx = piece.range_on(s, t)
                vals.extend((mn, mx))
        for i, c in enumerate(self.cuts):
            if iv.contains(c) and not (rationals_only and not c.is_rational):
                vals.append(self.bp_values[i])
        if not vals:  # degenerate interval sitting on a cut
            vals.append(self._eval(lo))
        return vals

    def range_on(self, iv, k, rationals_only=False):
        vals = self._value_candidates(iv, rationals_only)
        return Bracket.of_q2(min(vals), k), Bracket.of_q2(max(vals), k)

    def special_points(self, iv, depth):
        out = [c for c in self.cuts if iv.contains(c)]
        for j, piece in enumerate(self.pieces):
            v = piece.vertex()
            if v is not None:
                p = Q2.of(v)
                if p > self.cuts[j] and p < self.cuts[j + 1] and iv.contains(p):
                    out.append(p)
        return out

    def one_sided_limit(self, x, side, k):
        p = Q2.of(x)
        if (p <= 0 and side < 0) or (p >= 1 and side > 0):
            return None
        where, i = self._locate(p)
        if where == "cut":
            left, right = self._limits_at_cut(i)
            val = left if side < 0 else right
        else:
            val = self.pieces[i](p)
        return Bracket.of_q2(val, k)

    def jump_candidates(self, limit):
        out = []
        for i in range(1, len(self.cuts) - 1):
            left, right = self._limits_at_cut(i)
            if left != right:
                out.append(self.cuts[i])
        return out[:limit]

    def variation_points(self, iv):
        iv = _clip_unit(iv)
        pts = set()
        pts.add(Q2.of(iv.lower))
        pts.add(Q2.of(iv.upper))
        for c in self.cuts:
            if iv.contains(c):
                pts.add(c)
        for j, piece in enumerate(self.pieces):
            v = piece.vertex()
            if v is not None:
                p = Q2.of(v)
                if p > self.cuts[j] and p < self.cuts[j + 1] and iv.contains(p):
                    pts.add(p)
        return sorted(pts)

    def constant_value(self):
        vals = {self.bp_values[0]}
        for piece in self.pieces:
            if not piece.is_constant:
                return None
            vals.add(piece(Q2.of(0)))
        vals.update(self.bp_values)
        return self.bp_values[0] if len(vals) == 1 else None

    def to_jsonable(self):
        from .serialize import q2_json
        return {
            "kind": "piecewise",
            "cuts": [q2_json(c) for c in self.cuts],
            "pieces": [[str(c) for c in piece.coeffs()] for piece in self.pieces],
            "values": [q2_json(v) for v in self.bp_values],
        }


def constant(c) -> PiecewiseRational:
    v = Q2.of(c)
    if not v.is_rational:
        return PiecewiseRational([0, 1], [Poly(0)], [v, v])  # pragma: no cover
    return PiecewiseRational([0, 1], [Poly(v.as_rational())], [v, v])


def linear(slope, intercept=0) -> PiecewiseRational:
    p = Poly(intercept, slope)
    return PiecewiseRational([0, 1], [p], [p(Q2.of(0)), p(Q2.of(1))])


def staircase(jumps, right_continuous=True, start=0) -> PiecewiseRational:
    """Step function: value `start` on [0, first jump), then each (pos, value)
    in order; cadlag by default."""
    cuts = [Q2.of(0)]
    pieces = []
    level = start
    policy = ["right"]
    for pos, value in jumps:
        cuts.append(Q2.of(pos))
        pieces.append(Poly(level))
        policy.append("right" if right_continuous else "left")
        level = value
    cuts.append(Q2.of(1))
    pieces.append(Poly(level))
    policy.append("right")
    return PiecewiseRational.from_polys(cuts, pieces, policy)


# ---------------------------------------------------------------------------
# the spike families
# ---------------------------------------------------------------------------


class Thomae(SymbolicFn):
    """1/q at reduced p/q, 0 at irrationals.  Cliquish and usco but not
    quasi-continuous; carries structural certificates because its suprema,
    infima and oscillation are nevertheless decided by rational data."""

    kind = "thomae"

    def __init__(self):
        super().__init__({CLIQUISH, USCO, REGULATED, BAIRE1},
                         {CERT_SUP, CERT_INF, CERT_OSC})

    def _eval(self, x):
        if not x.is_rational:
            return Q2.of(0)
        return Q2.of(Fraction(1, x.as_rational().denominator))

    def range_bound(self):
        return Fraction(0), Fraction(1)

    def min_denominator_in(self, iv: DyadicInterval, cap: int) -> Optional[tuple[Fraction, int]]:
        """(point, q) for the smallest denominator q <= cap with some reduced
        p/q in iv; None if there is none up to cap."""
        import math
        for q in range(1, cap + 1):
            lo = math.ceil(iv.lower * q)
            hi = math.floor(iv.upper * q)
            for p in range(lo, hi + 1):
                if math.gcd(abs(p), q) == 1 and 0 <= Fraction(p, q) <= 1:
                    return Fraction(p, q), q
        return None

    def range_on(self, iv, k, rationals_only=False):
        iv = _clip_unit(iv)
        if iv.width == 0:
            v = self._eval(Q2.of(iv.lower))
            if rationals_only and not Q2.of(iv.lower).is_rational:
                raise DomainError("no rational point in the degenerate interval")
            return Bracket.of_q2(v, k), Bracket.of_q2(v, k)
        # infimum: rational values 1/q get arbitrarily small, irrationals give 0
        inf_b = Bracket.point(0)
        cap = 1 << (k + 2)
        hit = self.min_denominator_in(iv, cap)
        if hit is None:
            sup_b = Bracket(Fraction(0), Fraction(1, cap))
        else:
            sup_b = Bracket.point(Fraction(1, hit[1]))
        return inf_b, sup_b

    def witness_above(self, iv, y, rationals_only=False):
        from .exact import Truth
        iv = _clip_unit(iv)
        y = Fraction(y)
        if y < 0:
            return Truth.YES, Q2.of(iv.lower)
        if y >= 1:
            return Truth.NO, None
        if y == 0:
            # every rational has a positive value, and endpoints are rational
            p = Q2.of(iv.lower)
            if iv.width == 0 and not p.is_rational:
                return Truth.NO, None
            return Truth.YES, p
        cap = int(1 / y)
        hit = self.min_denominator_in(iv, cap)
        if hit is not None and Fraction(1, hit[1]) > y:
            return Truth.YES, Q2.of(hit[0])
        return Truth.NO, None  # all spikes above y were enumerated

    def witness_below(self, iv, y, rationals_only=False):
        from .exact import Truth
        iv = _clip_unit(iv)
        y = Fraction(y)
        if y <= 0:
            return Truth.NO, None
        if iv.width == 0:
            v = self._eval(Q2.of(iv.lower))
            return (Truth.YES, Q2.of(iv.lower)) if v < y else (Truth.NO, None)
        if not rationals_only:
            return Truth.YES, irrational_inside(iv)
        # a rational with denominator above 1/y
        d = 1
        while Fraction(1, 1 << d) >= y or Fraction(1, 1 << d) >= iv.width / 4:
            d += 1
        grid = rational_grid(iv, d)
        for p in grid:
            if self._eval(Q2.of(p)) < y:
                return Truth.YES, Q2.of(p)
        return Truth.UNKNOWN, None

    def special_points(self, iv, depth):
        # spikes with denominator up to depth (the grid supplies dyadics)
        import math
        out = []
        for q in range(1, max(2, depth) + 1):
            lo = math.ceil(iv.lower * q)
            hi = math.floor(iv.upper * q)
            for p in range(lo, hi + 1):
                if math.gcd(abs(p), q) == 1 and 0 <= Fraction(p, q) <= 1:
                    out.append(Q2.of(Fraction(p, q)))
        return out

    def one_sided_limit(self, x, side, k):
        p = Q2.of(x)
        if (p <= 0 and side < 0) or (p >= 1 and side > 0):
            return None
        return Bracket.point(0)

    def to_jsonable(self):
        return {"kind": "thomae"}


class _SpikeFamily(SymbolicFn):
    """Shared machinery for families that are 0 (or a base value) off a
    countable set and assign index-determined values on it."""

    def __init__(self, a_set: CountableSet, tags, certificates=()):
        self.a_set = a_set
        super().__init__(tags, certificates)

    def spike_value(self, n: int) -> Fraction:
        raise NotImplementedError

    def _spike_scan_limit(self, k: int) -> int:
        return max(k + 4, 8)

    def spikes_in(self, iv: DyadicInterval, limit: int):
        return self.a_set.members_in(iv, limit)

    def special_points(self, iv, depth):
        return [p for _, p in self.spikes_in(iv, max(depth, 8))]


class Penny(_SpikeFamily):
    """Value 1/2^(Y(x)+1) on the seed set, 0 elsewhere: the canonical
    adversarial instance.  Equal to its own oscillation function."""

    kind = "penny"

    def __init__(self, a_set: CountableSet):
        if a_set.size == 0:
            raise ConstructionError("seed set must be nonempty")
        super().__init__(a_set, {CLIQUISH, USCO, BV, REGULATED, BAIRE1})

    def spike_value(self, n):
        return Fraction(1, 1 << (n + 1))

    def _eval(self, x):
        n = self.a_set.index_of(x)
        return Q2.of(0) if n is None else Q2.of(self.spike_value(n))

    def range_bound(self):
        return Fraction(0), Fraction(1, 2)

    def _sup_on(self, iv, k, rationals_only):
        limit = self._spike_scan_limit(k)
        best = Fraction(0)
        for n, p in self.spikes_in(iv, limit):
            if rationals_only and not p.is_rational:
                continue
            best = max(best, self.spike_value(n))
            break  # values decrease with the index: first hit is maximal
        if rationals_only:
            # later rational members could still appear; scan the rest
            for n, p in self.spikes_in(iv, limit):
                if p.is_rational:
                    best = max(best, self.spike_value(n))
        exhaustive = self.a_set.scan_is_exhaustive(iv, limit)
        if exhaustive or best >= Fraction(1, 1 << (limit + 1)):
            return Bracket.point(best)
        return Bracket(best, Fraction(1, 1 << (limit + 1)))

    def range_on(self, iv, k, rationals_only=False):
        iv = _clip_unit(iv)
        if iv.width == 0:
            p = Q2.of(iv.lower)
            v = self._eval(p)
            return Bracket.of_q2(v, k), Bracket.of_q2(v, k)
        return Bracket.point(0), self._sup_on(iv, k, rationals_only)

    def witness_above(self, iv, y, rationals_only=False):
        from .exact import Truth
        iv = _clip_unit(iv)
        y = Fraction(y)
        if y < 0:
            return Truth.YES, Q2.of(iv.lower)
        # spikes above y have bounded index: 1/2^(n+1) > y
        limit = 1
        while Fraction(1, 1 << (limit + 1)) > y and limit < 4096:
            limit += 1
        for n, p in self.spikes_in(iv, limit):
            if rationals_only and not p.is_rational:
                continue
            if self.spike_value(n) > y:
                return Truth.YES, p
        if self.a_set.scan_is_exhaustive(iv, limit) or Fraction(1, 1 << (limit + 1)) <= y:
            return Truth.NO, None
        return Truth.UNKNOWN, None

    def witness_below(self, iv, y, rationals_only=False):
        from .exact import Truth
        iv = _clip_unit(iv)
        y = Fraction(y)
        if y <= 0:
            return Truth.NO, None
        if iv.width == 0:
            p = Q2.of(iv.lower)
            return (Truth.YES, p) if self._eval(p) < y else (Truth.NO, None)
        # any off-set point evaluates to 0 < y; dyadic rationals are dense
        d = 2
        while True:
            for g in rational_grid(iv, d):
                p = Q2.of(g)
                if self.a_set.index_of(p) is None:
                    return Truth.YES, p
            d += 1

    def one_sided_limit(self, x, side, k):
        p = Q2.of(x)
        if (p <= 0 and side < 0) or (p >= 1 and side > 0):
            return None
        return Bracket.point(0)

    def to_jsonable(self):
        from .serialize import set_json
        return {"kind": "penny", "set": set_json(self.a_set)}


class PennyK(Penny):
    """The index-truncated variant: spikes only up to index cutoff."""

    kind = "pennyk"

    def __init__(self, a_set: CountableSet, cutoff: int):
        if cutoff < 0:
            raise ConstructionError("cutoff must be >= 0")
        super().__init__(a_set)
        self.cutoff = cutoff

    def spikes_in(self, iv, limit):
        return [(n, p) for n, p in self.a_set.members_in(iv, min(limit, self.cutoff + 1))
                if n <= self.cutoff]

    def _eval(self, x):
        n = self.a_set.index_of(x)
        if n is None or n > self.cutoff:
            return Q2.of(0)
        return Q2.of(self.spike_value(n))

    def _sup_on(self, iv, k, rationals_only):
        best = Fraction(0)
        for n, p in self.spikes_in(iv, self.cutoff + 1):
            if rationals_only and not p.is_rational:
                continue
            best = max(best, self.spike_value(n))
        return Bracket.point(best)

    def witness_above(self, iv, y, rationals_only=False):
        from .exact import Truth
        iv = _clip_unit(iv)
        y = Fraction(y)
        if y < 0:
            return Truth.YES, Q2.of(iv.lower)
        for n, p in self.spikes_in(iv, self.cutoff + 1):
            if rationals_only and not p.is_rational:
                continue
            if self.spike_value(n) > y:
                return Truth.YES, p
        return Truth.NO, None

    def to_jsonable(self):
        from .serialize import set_json
        return {"kind": "pennyk", "set": set_json(self.a_set), "cutoff": self.cutoff}


class TildePenny(_SpikeFamily):
    """The banded copy's spike function: value 2^-(n+1) at the band-n member
    of the shifted set, 0 elsewhere.  Simply continuous."""

    kind = "tilde-penny"

    def __init__(self, a_set: CountableSet):
        tilde = tilde_set(a_set)  # validates irrationality of the source
        super().__init__(tilde, {CLIQUISH, SIMPLY_CONTINUOUS, USCO, BV, REGULATED, BAIRE1})
        self.source = a_set

    def spike_value(self, n):
        return Fraction(1, 1 << (n + 1))

    def _eval(self, x):
        n = self.a_set.index_of(x)
        return Q2.of(0) if n is None else Q2.of(self.spike_value(n))

    range_bound = Penny.range_bound
    range_on = Penny.range_on
    _sup_on = Penny._sup_on
    witness_above = Penny.witness_above
    witness_below = Penny.witness_below
    one_sided_limit = Penny.one_sided_limit

    def to_jsonable(self):
        from .serialize import set_json
        return {"kind": "tilde-penny", "set": set_json(self.source)}


class CoverPsi(_SpikeFamily):
    """The cliquish covering instance: 2^-(n+5) at the band-n member of the
    banded copy, 1/8 everywhere else.  Positive, but any ball multiset centred
    on the copy (plus 0) has total length below 1."""

    kind = "cover-psi"

    def __init__(self, a_set: CountableSet):
        tilde = tilde_set(a_set)
        tags = {CLIQUISH}
        if a_set.size is not None:
            tags |= {BV, REGULATED, BAIRE1, LSCO}
        super().__init__(tilde, tags)
        self.source = a_set

    def spike_value(self, n):
        return Fraction(1, 1 << (n + 5))

    BASE = Fraction(1, 8)

    def _eval(self, x):
        n = self.a_set.index_of(x)
        return Q2.of(self.BASE) if n is None else Q2.of(self.spike_value(n))

    def range_bound(self):
        return Fraction(0), self.BASE

    def is_positive(self):
        return True

    def range_on(self, iv, k, rationals_only=False):
        iv = _clip_unit(iv)
        if iv.width == 0:
            v = self._eval(Q2.of(iv.lower))
            return Bracket.of_q2(v, k), Bracket.of_q2(v, k)
        sup_b = Bracket.point(self.BASE)
        if rationals_only:
            return Bracket.point(self.BASE), sup_b  # members are irrational
        limit = self._spike_scan_limit(k)
        vals = [self.spike_value(n) for n, _ in self.spikes_in(iv, limit)]
        if self.a_set.scan_is_exhaustive(iv, limit):
            inf_b = Bracket.point(min([self.BASE] + vals))
        elif self.a_set.size is None and iv.lower <= 0:
            inf_b = Bracket.point(0)  # spike values decrease to 0 near 0
        else:
            inf_b = Bracket(Fraction(0), min([self.BASE] + vals))
        return inf_b, sup_b

    def one_sided_limit(self, x, side, k):
        p = Q2.of(x)
        if (p <= 0 and side < 0) or (p >= 1 and side > 0):
            return None
        if p == 0 and side > 0 and self.a_set.size is None:
            return None  # values oscillate between 1/8 and the vanishing spikes
        return Bracket.point(self.BASE)

    def cluster_bounds(self, x, k):
        p = Q2.of(x)
        if p == 0 and self.a_set.size is None:
            return Bracket.point(0), Bracket.point(self.BASE)
        return super().cluster_bounds(x, k)

    def to_jsonable(self):
        from .serialize import set_json
        return {"kind": "cover-psi", "set": set_json(self.source)}


class CoverPsiUsco(_SpikeFamily):
    """The usco modification of the covering instance: 2^-(n+5) on the banded
    copy, 2^-(n+6) elsewhere in band n, 2^-6 at 0 (any positive value keeps
    usco there; band boundaries take the larger-value band)."""

    kind = "cover-psi-usco"

    ZERO_VALUE = Fraction(1, 64)

    def __init__(self, a_set: CountableSet):
        tilde = tilde_set(a_set)
        super().__init__(tilde, {USCO, CLIQUISH, BV, REGULATED})
        self.source = a_set

    def spike_value(self, n):
        return Fraction(1, 1 << (n + 5))

    @staticmethod
    def band_value(n):
        return Fraction(1, 1 << (n + 6))

    def _eval(self, x):
        n = self.a_set.index_of(x)
        if n is not None:
            return Q2.of(self.spike_value(n))
        m = band_of(x, half_open=False)
        if m is None:
            return Q2.of(self.ZERO_VALUE)  # x == 0
        return Q2.of(self.band_value(m))

    def range_bound(self):
        return Fraction(0), Fraction(1, 32)

    def is_positive(self):
        return True

    def _bands_meeting(self, iv: DyadicInterval, cap: int):
        if iv.upper <= 0:
            return []
        n0 = band_of(min(iv.upper, Fraction(1)), half_open=False)
        out = []
        n = n0
        while n - n0 <= cap:
            lo_band = Fraction(1, 1 << (n + 1))
            hi_band = Fraction(1, 1 << n)
            if hi_band < iv.lower:
                break
            if lo_band <= iv.upper and hi_band >= iv.lower:
                out.append(n)
            if lo_band <= iv.lower:
                break
            n += 1
        return out

    def range_on(self, iv, k, rationals_only=False):
        iv = _clip_unit(iv)
        if iv.width == 0:
            v = self._eval(Q2.of(iv.lower))
            return Bracket.of_q2(v, k), Bracket.of_q2(v, k)
        cap = max(k + 6, 8)
        bands = self._bands_meeting(iv, cap)
        vals = []
        if iv.lower <= 0:
            vals.append(self.ZERO_VALUE)
        for n in bands:
            band_iv = DyadicInterval(max(iv.lower, Fraction(1, 1 << (n + 1))),
                                     min(iv.upper, Fraction(1, 1 << n)))
            member_here = [m for m, _ in self.spikes_in(band_iv, n + 1) if m == n]
            if band_iv.width > 0 or not member_here:
                vals.append(self.band_value(n))
            if member_here and not rationals_only:
                vals.append(self.spike_value(n))
        truncated = bands and Fraction(1, 1 << (bands[-1] + 1)) > iv.lower and iv.lower > 0
        sup_b = Bracket.point(max(vals))
        if iv.lower <= 0:
            inf_b = Bracket.point(0)  # band values vanish towards 0
        elif truncated:
            inf_b = Bracket(Fraction(0), min(vals))
        else:
            inf_b = Bracket.point(min(vals))
        return inf_b, sup_b

    def one_sided_limit(self, x, side, k):
        p = Q2.of(x)
        if (p <= 0 and side < 0) or (p >= 1 and side > 0):
            return None
        if p == 0:
            return Bracket.point(0)
        if p == 1:
            return Bracket.point(self.band_value(0))
        n = band_of(p, half_open=False)
        boundary = (p == Q2.of(Fraction(1, 1 << (n + 1))))
        if boundary and side < 0:
            return Bracket.point(self.band_value(n + 1))
        return Bracket.point(self.band_value(n))

    def jump_candidates(self, limit):
        return [Q2.of(Fraction(1, 1 << (n + 1))) for n in range(limit)]

    def to_jsonable(self):
        from .serialize import set_json
        return {"kind": "cover-psi-usco", "set": set_json(self.source)}


# ---------------------------------------------------------------------------
# indicators of closed sets
# ---------------------------------------------------------------------------


class Indicator(SymbolicFn):
    """Characteristic function of a closed set: the usco (and cliquish)
    separating function of two disjoint closed sets."""

    kind = "indicator"

    def __init__(self, closed_set):
        self.closed_set = closed_set
        tags = {USCO, CLIQUISH, BV, REGULATED, BAIRE1}
        if isinstance(closed_set, ComplementOfR2Open):
            comps = closed_set.component_intervals()
            if comps and all(a < b for a, b in comps):
                tags.add(QUASI_CONTINUOUS)
            if not closed_set.open_rep.intervals:
                tags |= {CONTINUOUS, LSCO}
        elif isinstance(closed_set, FinitePointSet) and not closed_set.points:
            tags |= {CONTINUOUS, QUASI_CONTINUOUS, LSCO}
        super().__init__(tags)

    def _eval(self, x):
        return Q2.of(1) if self.closed_set.contains(x) else Q2.of(0)

    def range_bound(self):
        return Fraction(0), Fraction(1)

    def _components_in(self, iv):
        if isinstance(self.closed_set, ComplementOfR2Open):
            out = []
            for a, b in self.closed_set.component_intervals():
                lo, hi = max(a, iv.lower), min(b, iv.upper)
                if lo <= hi:
                    out.append((lo, hi))
            return out
        return None

    def range_on(self, iv, k, rationals_only=False):
        iv = _clip_unit(iv)
        if iv.width == 0:
            v = self._eval(Q2.of(iv.lower))
            return Bracket.of_q2(v, k), Bracket.of_q2(v, k)
        if isinstance(self.closed_set, FinitePointSet):
            hits = [p for p in self.closed_set.points if iv.contains(p)
                    and not (rationals_only and not p.is_rational)]
            sup_b = Bracket.point(1 if hits else 0)
            return Bracket.point(0), sup_b
        comps = self._components_in(iv)
        sup_b = Bracket.point(1 if comps else 0)
        covered = any(a <= iv.lower and b >= iv.upper for a, b in comps) if comps else False
        inf_b = Bracket.point(1 if covered else 0)
        return inf_b, sup_b

    def special_points(self, iv, depth):
        out = []
        for p in self.closed_set.boundary_candidates():
            q = Q2.of(p)
            if iv.contains(q):
                out.append(q)
        if isinstance(self.closed_set, FinitePointSet):
            out.extend(p for p in self.closed_set.points if iv.contains(p))
        return out

    def one_sided_limit(self, x, side, k):
        p = Q2.of(x)
        if (p <= 0 and side < 0) or (p >= 1 and side > 0):
            return None
        if isinstance(self.closed_set, FinitePointSet):
            return Bracket.point(0)
        inside = False
        for a, b in self.closed_set.component_intervals():
            if side > 0 and Q2.of(a) <= p and p < Q2.of(b):
                inside = True
            if side < 0 and Q2.of(a) < p and p <= Q2.of(b):
                inside = True
        return Bracket.point(1 if inside else 0)

    def jump_candidates(self, limit):
        if isinstance(self.closed_set, ComplementOfR2Open):
            out = []
            for a, b in self.closed_set.component_intervals():
                if a > 0:
                    out.append(Q2.of(a))
                if b < 1 and b != a:
                    out.append(Q2.of(b))
            return out[:limit]
        return []

    def to_jsonable(self):
        from .serialize import closed_set_json
        return {"kind": "indicator", "closed_set": closed_set_json(self.closed_set)}


# ---------------------------------------------------------------------------
# pointwise limits with representations
# ---------------------------------------------------------------------------


class Baire1Limit(SymbolicFn):
    """A pointwise limit given by its representation: term functions plus an
    optional convergence modulus m(x, j) (terms from index m(x, j) on are
    within 2^-j of the limit) and an optional stabilization witness
    (terms from index s(x) on equal the limit exactly at x).

    Without the modulus the value is not pointwise evaluable; without a
    stabilization witness exact evaluation would be a lie, so it refuses and
    callers use `eval_limit_approx` or the representation-consuming
    algorithms instead.  Built-in constructors always attach both.
    """

    kind = "baire1-limit"

    def __init__(self, terms: Callable[[int], SymbolicFn], conv_modulus=None,
                 stabilizer=None, tags=(BAIRE1,), special=None, label="baire1"):
        super().__init__(tags)
        self._terms = terms
        self.conv_modulus = conv_modulus
        self.stabilizer = stabilizer
        self._special = special
        self.label = label
        self._term_cache: dict[int, SymbolicFn] = {}

    def term(self, n: int) -> SymbolicFn:
        got = self._term_cache.get(n)
        if got is None:
            got = self._terms(n)
            self._term_cache[n] = got
        return got

    def _eval(self, x):
        if self.conv_modulus is None:
            raise NotPointwiseEvaluable(
                "pointwise limit is not evaluable without a convergence modulus")
        if self.stabilizer is None:
            raise NotPointwiseEvaluable(
                "exact evaluation needs a stabilization witness; "
                "use eval_limit_approx for a certified approximation")
        n0 = max(0, self.stabilizer(x))
        return self.term(n0).eval(x)

    def eval_limit_approx(self, x, k: int) -> Fraction:
        """A rational within 2^-k of the limit, via the convergence modulus."""
        if self.conv_modulus is None:
            raise NotPointwiseEvaluable(
                "pointwise limit is not evaluable without a convergence modulus")
        n = max(0, self.conv_modulus(Q2.of(x), k))
        v = self.term(n).eval(x)
        return v.approx(k + 2) if not v.is_rational else v.as_rational()

    def range_bound(self):
        lo, hi = self.term(0).range_bound()
        return min(lo, Fraction(0)), max(hi, Fraction(1))

    def range_on(self, iv, k, rationals_only=False):
        raise UnsupportedVariant(
            "interval ranges of a pointwise limit are consumed through its "
            "representation, not directly")

    def special_points(self, iv, depth):
        if self._special is not None:
            return self._special(iv, depth)
        return self.term(min(depth, 8)).special_points(iv, depth)

    def to_jsonable(self):
        return {"kind": "baire1-limit", "label": self.label}


def pennyk_limit(a_set: CountableSet) -> Baire1Limit:
    """The truncation sequence converging pointwise to the spike function,
    with convergence modulus m(x, j) = j and exact stabilization at the
    member's index."""
    penny_tags = (CLIQUISH, USCO, BV, REGULATED, BAIRE1)

    def stabilizer(x):
        n = a_set.index_of(x)
        return 0 if n is None else n

    f = Baire1Limit(lambda n: PennyK(a_set, n),
                    conv_modulus=lambda x, j: j,
                    stabilizer=stabilizer,
                    tags=penny_tags,
                    label="pennyk-limit")
    f.seed_set = a_set
    return f


def constant_seq_limit(f: SymbolicFn, label="constant-seq") -> Baire1Limit:
    """The constant representation of an already-constructed function."""
    return Baire1Limit(lambda n: f,
                       conv_modulus=lambda x, j: 0,
                       stabilizer=lambda x: 0,
                       tags=tuple(f.tags | {BAIRE1}),
                       special=f.special_points,
                       label=label)


def indicator_baire1(open_rep) -> Baire1Limit:
    """Constant-sequence representation of the indicator of a radius-function
    open set (1 - indicator of the closed complement)."""
    ind = fn_sum(constant(1), scalar_multiple(-1, Indicator(ComplementOfR2Open(open_rep))))
    return constant_seq_limit(ind, label="open-indicator")


# ---------------------------------------------------------------------------
# sums, differences, scalar multiples
# ---------------------------------------------------------------------------


def _merge_piecewise(f: PiecewiseRational, g: PiecewiseRational, gscale=1) -> PiecewiseRational:
    cuts = sorted(set(f.cuts) | set(g.cuts))
    pieces = []
    for a, b in zip(cuts, cuts[1:]):
        mid = (a + b) / Q2.of(2)
        fj = f._locate(mid)[1]
        gj = g._locate(mid)[1]
        cf = f.pieces[fj].coeffs()
        cg = g.pieces[gj].coeffs()
        pieces.append(Poly(*(x + gscale * y for x, y in zip(cf, cg))))
    vals = [f.eval(c) + Q2.of(gscale) * g.eval(c) for c in cuts]
    return PiecewiseRational(cuts, pieces, vals)


def fn_sum(f: SymbolicFn, g: SymbolicFn) -> SymbolicFn:
    if isinstance(f, PiecewiseRational) and isinstance(g, PiecewiseRational):
        return _merge_piecewise(f, g, 1)
    return Sum(f, g)


def fn_difference(f: SymbolicFn, g: SymbolicFn) -> SymbolicFn:
    if isinstance(f, PiecewiseRational) and isinstance(g, PiecewiseRational):
        return _merge_piecewise(f, g, -1)
    return Sum(f, scalar_multiple(-1, g))


def scalar_multiple(c, f: SymbolicFn) -> SymbolicFn:
    if isinstance(f, PiecewiseRational):
        c = Fraction(c)
        pieces = [Poly(*(c * x for x in p.coeffs())) for p in f.pieces]
        vals = [Q2.of(c) * v for v in f.bp_values]
        return PiecewiseRational(f.cuts, pieces, vals)
    return ScalarMultiple(c, f)


def _sum_tags(tf, tg):
    tags = set()
    for t in (CLIQUISH, BV, REGULATED, BAIRE1, NORMALISED_BV, USCO, LSCO, CONTINUOUS):
        if t in tf and t in tg:
            tags.add(t)
    if CONTINUOUS in tags:
        tags |= {QUASI_CONTINUOUS, SIMPLY_CONTINUOUS}
    elif (QUASI_CONTINUOUS in tf and CONTINUOUS in tg) or (CONTINUOUS in tf and QUASI_CONTINUOUS in tg):
        tags.add(QUASI_CONTINUOUS)
    return tags


class Sum(SymbolicFn):
    kind = "sum"

    def __init__(self, f: SymbolicFn, g: SymbolicFn):
        self.f = f
        self.g = g
        super().__init__(_sum_tags(f.tags, g.tags))

    def _eval(self, x):
        return self.f._eval(x) + self.g._eval(x)

    def range_bound(self):
        fl, fh = self.f.range_bound()
        gl, gh = self.g.range_bound()
        return fl + gl, fh + gh

    def _const_side(self):
        for a, b in ((self.f, self.g), (self.g, self.f)):
            c = a.constant_value()
            if c is not None:
                return c, b
        return None, None

    def range_on(self, iv, k, rationals_only=False):
        c, other = self._const_side()
        if c is not None:
            io, so = other.range_on(iv, k + 1, rationals_only)
            cb = Bracket.of_q2(c, k + 1)
            return io + cb, so + cb
        fi, fs = self.f.range_on(iv, k + 2, rationals_only)
        gi, gs = self.g.range_on(iv, k + 2, rationals_only)
        inf_b, sup_b = fi + gi, fs + gs
        # tighten with actual evaluations (sound: values are inside the range)
        best_hi, best_lo = None, None
        for p in probe_points(self, iv, 4, rationals_only):
            v = self._eval(p).approx(k + 4)
            best_hi = v if best_hi is None else max(best_hi, v)
            best_lo = v if best_lo is None else min(best_lo, v)
        if best_hi is not None:
            sup_b = Bracket(max(sup_b.lo, best_hi - Fraction(1, 1 << (k + 3))), sup_b.hi)
            inf_b = Bracket(inf_b.lo, min(inf_b.hi, best_lo + Fraction(1, 1 << (k + 3))))
        return inf_b, sup_b

    def special_points(self, iv, depth):
        return self.f.special_points(iv, depth) + self.g.special_points(iv, depth)

    def one_sided_limit(self, x, side, k):
        a = self.f.one_sided_limit(x, side, k + 1)
        b = self.g.one_sided_limit(x, side, k + 1)
        if a is None or b is None:
            return None
        return a + b

    def jump_candidates(self, limit):
        seen = []
        for p in self.f.jump_candidates(limit) + self.g.jump_candidates(limit):
            if all(p != q for q in seen):
                seen.append(p)
        return sorted(seen)[:limit]

    def is_positive(self):
        c, other = self._const_side()
        if c is not None and c.is_rational:
            inf_b, _ = other.range_on(DyadicInterval(0, 1), 16)
            return inf_b.lo + c.as_rational() > 0
        lo, _ = self.range_bound()
        return lo > 0

    def to_jsonable(self):
        return {"kind": "sum", "f": self.f.to_jsonable(), "g": self.g.to_jsonable()}


class ScalarMultiple(SymbolicFn):
    kind = "scalar-multiple"

    def __init__(self, c, f: SymbolicFn):
        self.c = Fraction(c)
        self.f = f
        tags = set(f.tags)
        certs = set()
        if self.c > 0:
            certs = set(f.certificates)
        elif self.c < 0:
            if CERT_SUP in f.certificates:
                certs.add(CERT_INF)
            if CERT_INF in f.certificates:
                certs.add(CERT_SUP)
            if CERT_OSC in f.certificates:
                certs.add(CERT_OSC)
        if self.c < 0:
            swapped = set(tags)
            swapped.discard(USCO)
            swapped.discard(LSCO)
            if USCO in tags:
                swapped.add(LSCO)
            if LSCO in tags:
                swapped.add(USCO)
            tags = swapped
            tags.discard(NORMALISED_BV)
            if NORMALISED_BV in f.tags:
                tags.add(NORMALISED_BV)  # scaling keeps f(0)=0 and right-continuity
        if self.c == 0:
            tags = {CONTINUOUS, QUASI_CONTINUOUS, CLIQUISH, SIMPLY_CONTINUOUS,
                    USCO, LSCO, BV, NORMALISED_BV, REGULATED, BAIRE1}
            certs = {CERT_SUP, CERT_INF, CERT_OSC}
        super().__init__(tags, certs)

    def _eval(self, x):
        return self.f._eval(x) * self.c

    def range_bound(self):
        lo, hi = self.f.range_bound()
        return (lo * self.c, hi * self.c) if self.c >= 0 else (hi * self.c, lo * self.c)

    def range_on(self, iv, k, rationals_only=False):
        extra = max(0, self.c.numerator.bit_length() - self.c.denominator.bit_length() + 1)
        i_b, s_b = self.f.range_on(iv, k + extra, rationals_only)
        i2, s2 = i_b.scale(self.c), s_b.scale(self.c)
        return (i2, s2) if self.c >= 0 else (s2, i2)

    def special_points(self, iv, depth):
        return self.f.special_points(iv, depth)

    def one_sided_limit(self, x, side, k):
        extra = max(0, self.c.numerator.bit_length() - self.c.denominator.bit_length() + 1)
        b = self.f.one_sided_limit(x, side, k + extra)
        return None if b is None else b.scale(self.c)

    def jump_candidates(self, limit):
        return [] if self.c == 0 else self.f.jump_candidates(limit)

    def constant_value(self):
        v = self.f.constant_value()
        return None if v is None else v * self.c

    def is_positive(self):
        if self.c == 0:
            return False
        if self.c > 0:
            return self.f.is_positive()
        hi = self.f.range_bound()[1]
        return hi * self.c > 0

    def to_jsonable(self):
        return {"kind": "scalar-multiple", "c": str(self.c), "f": self.f.to_jsonable()}


class RestrictedView(SymbolicFn):
    """The same function presented as a member of a weaker class: tags are cut
    down and certificates dropped, exactly how the adversarial arguments hand
    a function to a would-be algorithm."""

    kind = "restricted"

    def __init__(self, f: SymbolicFn, tags):
        tags = frozenset(tags)
        if not tags <= f.tags:
            raise ValueError("a restricted view cannot add tags")
        self.f = f
        super().__init__(tags)

    def _eval(self, x):
        return self.f._eval(x)

    def range_bound(self):
        return self.f.range_bound()

    def range_on(self, iv, k, rationals_only=False):
        return self.f.range_on(iv, k, rationals_only)

    def special_points(self, iv, depth):
        return self.f.special_points(iv, depth)

    def one_sided_limit(self, x, side, k):
        return self.f.one_sided_limit(x, side, k)

    def cluster_bounds(self, x, k):
        return self.f.cluster_bounds(x, k)

    def jump_candidates(self, limit):
        return self.f.jump_candidates(limit)

    def witness_above(self, iv, y, rationals_only=False):
        return self.f.witness_above(iv, y, rationals_only)

    def witness_below(self, iv, y, rationals_only=False):
        return self.f.witness_below(iv, y, rationals_only)

    def is_positive(self):
        return self.f.is_positive()

    def to_jsonable(self):
        return {"kind": "restricted", "tags": sorted(self.tags), "f": self.f.to_jsonable()}


def restrict_tags(f: SymbolicFn, tags) -> RestrictedView:
    return RestrictedView(f, tags)


# ---------------------------------------------------------------------------
# constructors named for what they build
# ---------------------------------------------------------------------------


def build_penny(a_set: CountableSet) -> Penny:
    return Penny(a_set)


def build_pennyk(a_set: CountableSet, cutoff: int) -> PennyK:
    return PennyK(a_set, cutoff)


def build_tilde(a_set: CountableSet) -> tuple[CountableSet, TildePenny]:
    f = TildePenny(a_set)
    return f.a_set, f


def build_cover_psi(a_set: CountableSet, usco_variant: bool) -> SymbolicFn:
    return CoverPsiUsco(a_set) if usco_variant else CoverPsi(a_set)


def thomae() -> Thomae:
    return Thomae()


# ---------------------------------------------------------------------------
# exact pointwise oscillation over the closed universe
# ---------------------------------------------------------------------------


def osc_exact(f: SymbolicFn, x, k: int) -> Bracket:
    """Bracket (width <= 2^-(k+1)) of the oscillation of f at x: the limit of
    sup - inf over shrinking balls, computed from the exact value and the
    punctured cluster bounds."""
    p = Q2.of(x)
    li, ls = f.cluster_bounds(p, k + 2)
    v = Bracket.of_q2(f.eval(p), k + 2)
    return v.join_max(ls) - v.join_min(li)


def osc_selfcheck(f: SymbolicFn, probe_limit: int = 16) -> bool:
    """Whether the symbolic oscillation of a spike function equals the
    function itself pointwise (checked exactly at members and at a rational
    sample; true for the whole penny family)."""
    if not isinstance(f, Penny):  # PennyK included via subclassing
        raise UnsupportedVariant("oscillation self-identity is a spike-family check")
    probes = [p for _, p in f.a_set.members_upto(probe_limit)]
    probes += [Q2.of(Fraction(i, 16)) for i in range(17)]
    for p in probes:
        b = osc_exact(f, p, 24)
        v = f.eval(p)
        if not (b.exact and v.is_rational and b.lo == v.as_rational()):
            return False
    return True
