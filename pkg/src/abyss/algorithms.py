"""Oracle-relative algorithms on the function universe: interval-halving
suprema and infima, pointwise oscillation, continuity points via the
effective Baire category construction, modulus extraction, finite subcovers,
and set/representation conversions.

Every interval-valued result brackets the exact value; every point-valued
result comes with a certificate the caller can re-verify.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .errors import (ClassRefusal, FuelExhausted, RepresentationInsufficient)
from .exact import (DyadicInterval, FueledBool, Q2, Truth,
                    rational_grid, unit_rationals)
from .oracle import (DEFAULT_FUEL, Baire1Above, Found, ValueBelowOnBall,
                     _ball_clipped, ball_oscillation, grid_depth_cap,
                     mu_search, require_rule)
from .sets import FinitePointSet, R2Rep, RMCode
from .universe import (LSCO, QUASI_CONTINUOUS, USCO, Baire1Limit, Indicator,
                       SymbolicFn, osc_exact, probe_points)


def _check_precision(k: int):
    if k < 0:
        raise ValueError("precision exponent must be >= 0")


def _subinterval(p, q) -> DyadicInterval:
    p, q = Fraction(p), Fraction(q)
    if not (0 <= p < q <= 1):
        raise ValueError("need rational endpoints 0 <= p < q <= 1")
    return DyadicInterval(p, q)


# ---------------------------------------------------------------------------
# suprema and infima by value-axis interval halving
# ---------------------------------------------------------------------------


def _halve_values(lo: Fraction, hi: Fraction, k: int,
                  above_mid: Callable[[Fraction], FueledBool]) -> DyadicInterval:
    """Shrink [lo, hi] around the target value: test the upper half first and
    keep the lower half on a NO (deterministic tie-break)."""
    width = Fraction(1, 1 << k)
    while hi - lo > width:
        mid = (lo + hi) / 2
        answer = above_mid(mid)
        if answer.value is Truth.UNKNOWN:
            raise FuelExhausted("value search undecided below the target width",
                                best=DyadicInterval(lo, hi))
        if answer:
            lo = mid
        else:
            hi = mid
    return DyadicInterval(lo, hi)


def sup_qc(f: SymbolicFn, p, q, k: int, fuel: int = DEFAULT_FUEL) -> DyadicInterval:
    """Width-2^-k interval containing sup f over [p,q]; admitted for functions
    whose class collapses 'exists a value above y' to rational points."""
    _check_precision(k)
    iv = _subinterval(p, q)
    require_rule("ExistsValueAbove", f, "sup_qc")
    lo, hi = f.range_bound()

    def above(mid):
        truth, _ = f.witness_above(iv, mid)
        return FueledBool(truth, 1)

    return _halve_values(lo, hi, k, above)


def inf_usco(f: SymbolicFn, p, q, k: int, fuel: int = DEFAULT_FUEL) -> DyadicInterval:
    """Width-2^-k interval containing inf f over [p,q] for upper
    semicontinuous (bounded below) functions."""
    _check_precision(k)
    iv = _subinterval(p, q)
    require_rule("ExistsValueBelow", f, "inf_usco")
    lo, hi = f.range_bound()

    def below(mid):
        truth, _ = f.witness_below(iv, mid)
        return FueledBool(truth, 1)

    # mirrored halving: test the lower half first, keep the upper on NO
    width = Fraction(1, 1 << k)
    while hi - lo > width:
        mid = (lo + hi) / 2
        answer = below(mid)
        if answer.value is Truth.UNKNOWN:
            raise FuelExhausted("value search undecided below the target width",
                                best=DyadicInterval(lo, hi))
        if answer:
            hi = mid
        else:
            lo = mid
    return DyadicInterval(lo, hi)


def sup_baire1(f_rep: Baire1Limit, p, q, k: int, fuel: int = DEFAULT_FUEL) -> DyadicInterval:
    """Supremum of a pointwise limit consumed through its representation: the
    tail condition 'terms stay above the threshold' is bounded by the
    convergence modulus, making each halving step arithmetical."""
    _check_precision(k)
    iv = _subinterval(p, q)
    if not isinstance(f_rep, Baire1Limit):
        raise RepresentationInsufficient("sup_baire1 consumes a pointwise-limit "
                                         "representation")
    if f_rep.conv_modulus is None:
        raise RepresentationInsufficient("representation insufficient: no "
                                         "convergence modulus")
    lo, hi = f_rep.range_bound()

    def above(mid):
        res = mu_search(Baire1Above(f_rep, iv, mid, fuel))
        return FueledBool.yes(1) if isinstance(res, Found) else FueledBool.no(1)

    return _halve_values(lo, hi, k, above)


# ---------------------------------------------------------------------------
# oscillation and continuity
# ---------------------------------------------------------------------------


def _admit_osc(f: SymbolicFn, operation: str):
    require_rule("OscBelow", f, operation)


def osc_point(f: SymbolicFn, x, k: int, fuel: int = DEFAULT_FUEL) -> DyadicInterval:
    """Width-2^-k interval containing the oscillation of f at x, computed as
    the decreasing limit of ball suprema minus ball infima and pinned by the
    exact cluster analysis of the universe."""
    _check_precision(k)
    _admit_osc(f, "osc_point")
    p = Q2.of(x)
    limit_b = osc_exact(f, p, k + 1)  # width <= 2^-(k+2)
    lo = max(Fraction(0), limit_b.lo)
    for n in range(fuel + 1):
        w = ball_oscillation(f, p, n, k + 4)
        if w.hi <= limit_b.hi + Fraction(1, 1 << (k + 2)):
            hi = max(lo, min(w.hi, limit_b.hi))
            return DyadicInterval(lo, hi)
    raise FuelExhausted("ball oscillation did not close onto the cluster value",
                        best=DyadicInterval(lo, limit_b.hi), fuel=fuel)


def is_continuous_at(f: SymbolicFn, x, fuel: int = DEFAULT_FUEL) -> FueledBool:
    """Decide osc_f(x) = 0 through the collapsed formulas; YES and NO are
    exact on the built-in universe."""
    _admit_osc(f, "is_continuous_at")
    prec = min(fuel, 48)
    b = osc_exact(f, Q2.of(x), prec)
    if b.lo > 0:
        return FueledBool.no(prec)
    if b.hi == 0 or (b.exact and b.lo == 0):
        return FueledBool.yes(prec)
    return FueledBool.unknown(fuel)


class ContinuityModulus:
    """G(x, m): least ball exponent at which the oscillation around x drops
    to 2^-(m+1); satisfies the strict continuity-modulus bound at continuity
    points.  Total map: points outside every small-oscillation set get 0."""

    def __init__(self, f: SymbolicFn, fuel: int):
        self.f = f
        self.fuel = fuel
        self._memo: dict = {}

    def __call__(self, x, m: int) -> int:
        p = Q2.of(x)
        key = (p.a, p.b, m)
        if key in self._memo:
            return self._memo[key]
        bound = Fraction(1, 1 << (m + 1))
        result = 0
        for n in range(self.fuel + 1):
            w = ball_oscillation(self.f, p, n, m + 6)
            if w.hi <= bound:
                result = n
                break
        self._memo[key] = result
        return result


def modulus_continuity_qc(f: SymbolicFn, fuel: int = DEFAULT_FUEL) -> ContinuityModulus:
    _admit_osc(f, "modulus_continuity_qc")
    return ContinuityModulus(f, fuel)


def modulus_qc(f: SymbolicFn, x, k: int, big_n: int,
               fuel: int = DEFAULT_FUEL) -> tuple[Fraction, Fraction]:
    """A rational open interval inside B(x, 2^-N) on which values stay within
    2^-k of f(x).

    The returned interval is validated before being returned: exactly (via
    interval ranges) when f is tagged quasi-continuous, at grid level
    (depth 12, including the function's own carried points) otherwise, which
    is the strongest check certificate-admitted families can pass.
    """
    _check_precision(k)
    p = Q2.of(x)
    fx = f.eval(p)
    tol = Fraction(1, 1 << k)
    exact_mode = QUASI_CONTINUOUS in f.tags

    def candidate_ok(c, d) -> bool:
        if not (c < d):
            return False
        iv = DyadicInterval(c, d)
        if exact_mode:
            inf_b, sup_b = f.range_on(iv, k + 4)
            return (Q2.of(sup_b.hi) - fx < tol) and (fx - Q2.of(inf_b.lo) < tol)
        for pt in probe_points(f, iv, 12):
            if pt <= c or pt >= d:
                continue
            if abs(f.eval(pt) - fx) >= tol:
                return False
        return True

    ball_iv = _ball_clipped(p, big_n)
    for j in range(big_n + 2, big_n + 2 + min(fuel, 24)):
        r = Fraction(1, 1 << j)
        # first, an interval straddling x itself
        blo, bhi = p.bracket(j + 2)
        c, d = max(ball_iv.lower, blo - r), min(ball_iv.upper, bhi + r)
        if c < d and candidate_ok(c, d):
            return (c, d)
        # then grid pairs, nearest to x first
        pts = rational_grid(ball_iv, min(j, grid_depth_cap(ball_iv)))
        pairs = sorted(zip(pts, pts[1:]),
                       key=lambda cd: (abs((cd[0] + cd[1]) / 2 - blo), cd[0]))
        for c, d in pairs:
            if candidate_ok(c, d):
                return (c, d)
    raise FuelExhausted("no certified subinterval found within fuel", fuel=fuel)


# ---------------------------------------------------------------------------
# points of continuity via the effective Baire category construction
# ---------------------------------------------------------------------------


def _interior_candidates(iv: DyadicInterval, depth: int) -> list[Fraction]:
    pts = [g for g in rational_grid(iv, depth)
           if iv.contains_interior(g)
           and min(g - iv.lower, iv.upper - g) >= iv.width / 8]
    mid = iv.midpoint
    return sorted(pts, key=lambda g: (abs(g - mid), g))


def point_of_continuity_qc(f: SymbolicFn, k: int, fuel: int = DEFAULT_FUEL) -> Fraction:
    """A dyadic point whose oscillation is certified <= 2^-k, found by nested
    rational balls drawn from the small-oscillation open sets."""
    _check_precision(k)
    _admit_osc(f, "point_of_continuity_qc")
    j = DyadicInterval(Fraction(0), Fraction(1))
    for m in range(k + 1):
        placed = False
        bound = Fraction(1, 1 << m)
        depth0 = 1
        while Fraction(1, 1 << depth0) > j.width / 4:
            depth0 += 1
        for depth in range(depth0, depth0 + 12):
            for c in _interior_candidates(j, depth):
                n_size = 0
                margin = min(c - j.lower, j.upper - c)
                while Fraction(1, 1 << n_size) > min(j.width / 4, margin):
                    n_size += 1
                hit = None
                for n in range(n_size, fuel + 1):
                    w = ball_oscillation(f, Q2.of(c), n, m + 6)
                    if w.hi <= bound:
                        hit = n
                        break
                    if w.lo > bound and n > n_size + 24:
                        break  # oscillation provably too large here
                if hit is not None:
                    r = Fraction(1, 1 << (hit + 1))
                    j = DyadicInterval(c - r, c + r)
                    placed = True
                    break
            if placed:
                break
        if not placed:
            raise FuelExhausted("no small-oscillation ball found inside the "
                                "current interval", best=j, fuel=fuel)
    return j.midpoint


class UscoModulus:
    """Radius map witnessing upper semicontinuity: all values on
    B(x, radius(x,k)) stay below f(x) + 2^-k."""

    def __init__(self, radius: Callable, label="usco-modulus"):
        self._radius = radius
        self.label = label
        self._memo: dict = {}

    def __call__(self, x, k: int) -> Fraction:
        p = Q2.of(x)
        key = (p.a, p.b, k)
        if key not in self._memo:
            r = Fraction(self._radius(p, k))
            if r <= 0:
                raise ValueError("usco modulus must return positive radii")
            self._memo[key] = r
        return self._memo[key]


def natural_usco_modulus(f: SymbolicFn, fuel: int = DEFAULT_FUEL) -> UscoModulus:
    """The canonical modulus computed from exact ball suprema."""
    require = USCO in f.tags
    if not require:
        raise ClassRefusal("natural_usco_modulus", USCO, f)

    def radius(p, k):
        fx = f.eval(p)
        cap = Q2.of(Fraction(1, 1 << k)) + fx
        for n in range(fuel + 1):
            iv = _ball_clipped(p, n)
            _, sup_b = f.range_on(iv, k + 6)
            if Q2.of(sup_b.hi) < cap:
                return Fraction(1, 1 << n)
        raise FuelExhausted("no witnessing ball found within fuel", fuel=fuel)

    return UscoModulus(radius)


def point_of_continuity_usco(f: SymbolicFn, psi: UscoModulus, k: int,
                             fuel: int = DEFAULT_FUEL) -> Fraction:
    """Nested construction through the dense open threshold sets
    O_t = {x : f(x) < t or f >= t on a whole rational ball around x}, with
    radii drawn from the usco modulus or the least-exponent ball witness.

    Thresholds run down the dyadic subfamily t_i = inf + (range+1) 2^-i,
    which is cofinal for the oscillation certificate.
    """
    _check_precision(k)
    if USCO not in f.tags:
        raise ClassRefusal("point_of_continuity_usco", USCO, f)
    rl, rh = f.range_bound()
    span = rh - rl + 1
    j = DyadicInterval(Fraction(0), Fraction(1))
    stage = 1
    while True:
        t = rl + span * Fraction(1, 1 << stage)
        placed = False
        depth0 = 1
        while Fraction(1, 1 << depth0) > j.width / 4:
            depth0 += 1
        for depth in range(depth0, depth0 + 12):
            for c in _interior_candidates(j, depth):
                radius = None
                fc = f.eval(Q2.of(c))
                if fc < Q2.of(t):
                    k0 = 0
                    while not (fc + Q2.of(Fraction(1, 1 << k0)) <= Q2.of(t)):
                        k0 += 1
                        if k0 > fuel:
                            break
                    if k0 <= fuel:
                        radius = psi(c, k0)
                else:
                    res = mu_search(ValueBelowOnBall(f, Q2.of(c), t, min(fuel, 24)))
                    if isinstance(res, Found):
                        radius = Fraction(1, 1 << res.witness.value)
                if radius is not None:
                    margin = min(c - j.lower, j.upper - c)
                    s = min(radius, j.width / 4, margin) / 2
                    j = DyadicInterval(c - s, c + s)
                    placed = True
                    break
            if placed:
                break
        if not placed:
            raise FuelExhausted("no threshold-set ball found inside the current "
                                "interval", best=j, fuel=fuel)
        if span * Fraction(1, 1 << stage) <= Fraction(1, 1 << (k + 1)):
            out = j.midpoint
            cert = osc_exact(f, Q2.of(out), k + 1)
            if cert.hi <= Fraction(1, 1 << k):
                return out
        stage += 1
        if stage > fuel:
            raise FuelExhausted("certificate did not close within fuel",
                                best=j, fuel=fuel)


class LscoOnCfModulus:
    """G0(x, k): least ball exponent with the ball supremum strictly below
    f(x) + 2^-(k+1); a semicontinuity modulus whenever x is a continuity
    point.  Total: falls back to the fuel bound."""

    def __init__(self, f: SymbolicFn, fuel: int):
        self.f = f
        self.fuel = fuel

    def __call__(self, x, k: int) -> int:
        p = Q2.of(x)
        cap = self.f.eval(p) + Q2.of(Fraction(1, 1 << (k + 1)))
        for n in range(self.fuel + 1):
            iv = _ball_clipped(p, n)
            _, sup_b = self.f.range_on(iv, k + 6)
            if Q2.of(sup_b.hi) < cap:
                return n
        return self.fuel


def lsco_modulus_on_cf(f: SymbolicFn, fuel: int = DEFAULT_FUEL) -> LscoOnCfModulus:
    if USCO not in f.tags:
        raise ClassRefusal("lsco_modulus_on_cf", USCO, f)
    return LscoOnCfModulus(f, fuel)


# ---------------------------------------------------------------------------
# Cousin subcovers
# ---------------------------------------------------------------------------


def _covers_unit(spans: list[tuple[Fraction, Fraction]]) -> bool:
    """Exact check that the open intervals cover [0,1]."""
    reach = Fraction(0)
    started = False
    for lo, hi in sorted(spans):
        if not started:
            if lo < 0 <= hi:
                if hi > reach:
                    reach = hi
                started = True
            continue
        if lo >= reach:
            break
        if hi > reach:
            reach = hi
    return started and reach > 1


def cousin_subcover(psi: SymbolicFn, fuel: int = DEFAULT_FUEL) -> list[tuple[Fraction, Fraction]]:
    """A finite prefix of the fixed rational enumeration whose gauge balls
    cover [0,1], verified by exact interval arithmetic."""
    if not (QUASI_CONTINUOUS in psi.tags or LSCO in psi.tags):
        raise ClassRefusal(
            "cousin_subcover", "quasi-continuous or lsco tag", psi,
            statement="rational-centred gauge balls exhaust the interval only "
            "under these tags; the cliquish and usco covering instances defeat "
            "every ball multiset drawn from their banded copy")
    if not psi.is_positive():
        raise ClassRefusal("cousin_subcover", "a strictly positive gauge", psi)
    balls: list[tuple[Fraction, Fraction]] = []
    spans: list[tuple[Fraction, Fraction]] = []
    gen = unit_rationals()
    bound = 1 << min(fuel, 12)
    for n in range(bound):
        q = next(gen)
        v = psi.eval(q)
        r = v.as_rational() if v.is_rational else v.bracket(24)[0]
        balls.append((q, r))
        spans.append((q - r, q + r))
        if _covers_unit(spans):
            return balls
    raise FuelExhausted("enumeration prefix did not cover the interval",
                        best=balls, fuel=fuel)


# ---------------------------------------------------------------------------
# separators and representation conversion
# ---------------------------------------------------------------------------


def _closed_sets_intersect(c0, c1) -> bool:
    if isinstance(c0, FinitePointSet):
        return any(c1.contains(p) for p in c0.points)
    if isinstance(c1, FinitePointSet):
        return any(c0.contains(p) for p in c1.points)
    for a, b in c0.component_intervals():
        for c, d in c1.component_intervals():
            if max(a, c) <= min(b, d):
                return True
    return False


def usco_separator(c0, c1) -> Indicator:
    """The characteristic function of c1: evaluates 1 on c1, 0 on c0, and is
    upper semicontinuous (and cliquish)."""
    if _closed_sets_intersect(c0, c1):
        raise ValueError("closed sets intersect; no separator exists")
    return Indicator(c1)


def _rational_interval_stream():
    """Fixed enumeration of nondegenerate rational intervals in [0,1]."""
    rats: list[Fraction] = []
    gen = unit_rationals()
    t = 0
    while True:
        rats.append(next(gen))
        t += 1
        i = t - 1
        for jx in range(i):
            a, b = rats[jx], rats[i]
            if a != b:
                yield (min(a, b), max(a, b))


def rm_code_from_r2_baire1(o_rep: R2Rep, ind_rep: Baire1Limit,
                           fuel: int = DEFAULT_FUEL) -> RMCode:
    """Convert a radius-function open set, given also a pointwise-limit
    representation of its indicator (with convergence modulus), into a
    rational-ball code: per enumerated rational interval, emit the interval
    itself when the indicator's infimum on it is positive, else re-emit the
    seed ball."""
    if ind_rep.conv_modulus is None:
        raise RepresentationInsufficient("representation insufficient: indicator "
                                         "needs a convergence modulus")
    if o_rep.is_empty():
        # confirm by honest probing before answering with the empty code
        probes = [Q2.of(g) for g in rational_grid(DyadicInterval(0, 1), 6)]
        probes += ind_rep.special_points(DyadicInterval(0, 1), fuel)
        for p in probes:
            if ind_rep.eval(p) > Q2.of(Fraction(1, 2)):
                raise ValueError("representation mismatch: empty set with a "
                                 "positive indicator value")
        return RMCode((), prefix_of_infinite=False)
    seed = None
    gen = unit_rationals()
    for _ in range(1 << 12):
        x0 = next(gen)
        if o_rep.contains(x0):
            m0 = 0
            while Fraction(1, 1 << m0) > o_rep.radius(x0):
                m0 += 1
            seed = (x0, Fraction(1, 1 << m0))
            break
    if seed is None:
        raise FuelExhausted("no rational seed point found in the set", fuel=fuel)
    balls = []
    stream = _rational_interval_stream()
    for _ in range(max(fuel, 16)):
        p, q = next(stream)
        iv = DyadicInterval(p, q)
        probes = [Q2.of(g) for g in rational_grid(iv, 8)]
        probes += [Q2.of(b) for b in o_rep.boundary_points() if iv.contains(b)]
        probes += [s for s in ind_rep.special_points(iv, fuel)]
        inf_low = any(ind_rep.eval(pt) < Q2.of(Fraction(1, 2)) for pt in probes
                      if iv.contains(pt))
        if inf_low:
            balls.append(seed)
        else:
            # probes found no point outside; the radius representation must agree
            inside = any(a < p and q < b for a, b in o_rep.intervals)
            if not inside:
                balls.append(seed)
            else:
                balls.append(((p + q) / 2, (q - p) / 2))
    return RMCode.from_balls(balls, prefix_of_infinite=True)
