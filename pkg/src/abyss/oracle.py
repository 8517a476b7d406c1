"""Fueled simulation of least-witness number search for the five query
shapes the algorithms issue.

General number quantification over function values is not computable; each
shape here is paired with a quantifier-collapse rule that replaces real
quantifiers by rational-grid quantifiers, sound under a class precondition.
Queries on functions whose declared class (or structural certificate) admits
no rule are refused rather than answered: a grid answer without the collapse
theorem behind it is exactly the mistake this package exists to exhibit.

Grid quantifiers additionally probe the function's own carried points
(set members, spikes, breakpoints) up to the fuel bound, which makes answers
exact - not merely grid-sound - on the built-in families.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ClassRefusal, FuelExhausted, RepresentationInsufficient
from .exact import Bracket, DyadicInterval, FueledBool, Truth
from .universe import (BAIRE1, CERT_INF, CERT_OSC, CERT_SUP, QUASI_CONTINUOUS,
                       USCO, Baire1Limit, SymbolicFn, probe_points)

DEFAULT_FUEL = 64


# --- query shapes -----------------------------------------------------------


@dataclass(frozen=True)
class OscBelow:
    """Least ball exponent at which the oscillation over the ball around x
    drops to 2^-m or below."""
    f: SymbolicFn
    x: object
    m: int
    fuel: int = DEFAULT_FUEL


@dataclass(frozen=True)
class ValueBelowOnBall:
    """Least ball exponent M with f >= q at every rational of the ball
    around x (the arithmetical ball formula of the semicontinuity analysis)."""
    f: SymbolicFn
    x: object
    q: Fraction
    fuel: int = DEFAULT_FUEL


@dataclass(frozen=True)
class ExistsValueAbove:
    f: SymbolicFn
    interval: DyadicInterval
    threshold: Fraction
    fuel: int = DEFAULT_FUEL


@dataclass(frozen=True)
class ExistsValueBelow:
    f: SymbolicFn
    interval: DyadicInterval
    threshold: Fraction
    fuel: int = DEFAULT_FUEL


@dataclass(frozen=True)
class Baire1Above:
    f_rep: Baire1Limit
    interval: DyadicInterval
    threshold: Fraction
    fuel: int = DEFAULT_FUEL


@dataclass(frozen=True)
class MuWitness:
    value: int
    minimal: bool = True


@dataclass(frozen=True)
class Found:
    witness: MuWitness


@dataclass(frozen=True)
class NotFoundBelow:
    fuel: int


# --- the collapse-rule table ------------------------------------------------


@dataclass(frozen=True)
class CollapseRule:
    shape: str
    requires: str  # class tag or structural certificate granting admission
    real_form: str
    rational_form: str
    precondition: str
    justification: str

    def as_dict(self):
        return {
            "shape": self.shape,
            "requires": self.requires,
            "real_form": self.real_form,
            "rational_form": self.rational_form,
            "precondition": self.precondition,
            "justification": self.justification,
        }


COLLAPSE_RULES = (
    CollapseRule(
        "ExistsValueAbove", QUASI_CONTINUOUS,
        "(exists x in I)(f(x) > y)",
        "(exists q in I cap Q)(f(q) > y)",
        "f quasi-continuous on [0,1]",
        "near every point, whole open subintervals carry values close to the "
        "point value, so rational points witness every supremum",
    ),
    CollapseRule(
        "ExistsValueAbove", CERT_SUP,
        "(exists x in I)(f(x) > y)",
        "(exists q in I cap Q)(f(q) > y)",
        "structural certificate: suprema attained on rational points",
        "the function's positive values all sit at rationals",
    ),
    CollapseRule(
        "ExistsValueBelow", USCO,
        "(exists x in I)(f(x) < y)",
        "(exists r in I cap Q)(f(r) < y)",
        "f upper semicontinuous on [0,1]",
        "a value below y spreads to a whole ball by upper semicontinuity, "
        "and every ball contains rationals",
    ),
    CollapseRule(
        "ExistsValueBelow", QUASI_CONTINUOUS,
        "(exists x in I)(f(x) < y)",
        "(exists q in I cap Q)(f(q) < y)",
        "f quasi-continuous on [0,1]",
        "infima collapse exactly as suprema do for quasi-continuous functions",
    ),
    CollapseRule(
        "ExistsValueBelow", CERT_INF,
        "(exists x in I)(f(x) < y)",
        "(exists r in I cap Q)(f(r) < y)",
        "structural certificate: infima approached through rational points",
        "rational values get arbitrarily close to the infimum",
    ),
    CollapseRule(
        "OscBelow", QUASI_CONTINUOUS,
        "(exists N)(forall w,z in B(x,2^-N))(|f(w)-f(z)| <= 2^-m)",
        "(exists N)(forall q,r in B(x,2^-N) cap Q)(|f(q)-f(r)| <= 2^-m)",
        "f quasi-continuous on [0,1]",
        "the equivalence holds with the same ball exponent on both sides",
    ),
    CollapseRule(
        "OscBelow", CERT_OSC,
        "(exists N)(forall w,z in B(x,2^-N))(|f(w)-f(z)| <= 2^-m)",
        "(exists N)(forall q,r in B(x,2^-N) cap Q)(|f(q)-f(r)| <= 2^-m)",
        "structural certificate: ball oscillation decided by rational data",
        "both the supremum and the infimum over any ball are rational-limits",
    ),
    CollapseRule(
        "OscBelow", USCO,
        "(exists N)(forall w,z in B(x,2^-N))(|f(w)-f(z)| <= 2^-m)",
        "(exists N)(sup over carried points and f(x) minus rational inf of "
        "B(x,2^-N) <= 2^-m)",
        "f upper semicontinuous with carried spike structure",
        "ball infima collapse to rationals by upper semicontinuity, and ball "
        "suprema are attained, at points the universe function carries",
    ),
    CollapseRule(
        "ValueBelowOnBall", USCO,
        "(exists N)(forall z in B(x,2^-N))(f(z) >= q)",
        "(exists M)(forall r in B(x,2^-M) cap Q)(f(r) >= q)",
        "f upper semicontinuous on [0,1]",
        "the two sides agree even with the same exponent: a real value below "
        "q would spread onto rationals by upper semicontinuity",
    ),
    CollapseRule(
        "Baire1Above", BAIRE1,
        "(exists x in I)(f(x) > y)",
        "(exists y0 in I cap (Q or carried points), l)(forall n >= m(y0,l))"
        "(f_n(y0) >= y + 2^-l)",
        "f a pointwise limit given with its term sequence and a convergence "
        "modulus m",
        "the inner tail quantifier is bounded by the convergence modulus, "
        "making the formula arithmetical",
    ),
)


def collapse_rules_for(shape: str):
    rules = [r for r in COLLAPSE_RULES if r.shape == shape]
    if not rules:
        raise ValueError("unknown query shape %r" % (shape,))
    return rules


def admitting_rule(shape: str, f: SymbolicFn) -> Optional[CollapseRule]:
    for rule in collapse_rules_for(shape):
        if rule.requires in f.tags or rule.requires in f.certificates:
            return rule
    return None


def require_rule(shape: str, f: SymbolicFn, operation: str) -> CollapseRule:
    rule = admitting_rule(shape, f)
    if rule is None:
        needed = " or ".join(sorted({r.requires for r in collapse_rules_for(shape)}))
        statement = "; ".join("%s needs %s (%s)" % (r.shape, r.requires, r.rational_form)
                              for r in collapse_rules_for(shape))
        raise ClassRefusal(operation, needed, f, statement=statement)
    return rule


# --- probe bases ------------------------------------------------------------


def grid_depth_cap(iv: DyadicInterval) -> int:
    """Deepest grid that stays around 4k points on this interval."""
    w = iv.width
    if w == 0:
        return 0
    extra = 0
    while Fraction(1, 1 << extra) > w and extra < 80:
        extra += 1
    return 12 + extra


def basis_at(f: SymbolicFn, iv: DyadicInterval, depth: int, rationals_only=False):
    return probe_points(f, iv, min(depth, grid_depth_cap(iv)), rationals_only)


class QueryTrace:
    """Optional per-depth log of a search, for debugging and the determinism
    check of the acceptance suite."""

    def __init__(self):
        self.lines: list[dict] = []

    def record(self, shape, depth, basis_size, outcome):
        self.lines.append({"shape": shape, "depth": depth,
                           "basis": basis_size, "outcome": outcome})


# --- exact threshold queries (the workhorses) --------------------------------


def exists_value_above(f, iv, y, fuel=DEFAULT_FUEL, rationals_only=False,
                       operation="exists_value_above", trace=None) -> FueledBool:
    require_rule("ExistsValueAbove", f, operation)
    truth, point = f.witness_above(iv, Fraction(y), rationals_only)
    if trace is not None:
        trace.record("ExistsValueAbove", fuel, 0, truth.value)
    if truth is Truth.UNKNOWN:
        return FueledBool.unknown(fuel)
    return FueledBool(truth, 1)


def exists_value_below(f, iv, y, fuel=DEFAULT_FUEL, rationals_only=False,
                       operation="exists_value_below", trace=None) -> FueledBool:
    require_rule("ExistsValueBelow", f, operation)
    truth, point = f.witness_below(iv, Fraction(y), rationals_only)
    if trace is not None:
        trace.record("ExistsValueBelow", fuel, 0, truth.value)
    if truth is Truth.UNKNOWN:
        return FueledBool.unknown(fuel)
    return FueledBool(truth, 1)


def _ball_clipped(x, exponent: int) -> DyadicInterval:
    from .exact import Q2
    p = Q2.of(x)
    if p.is_rational:
        c = p.as_rational()
    else:
        c = p.approx(exponent + 4)
    r = Fraction(1, 1 << exponent)
    lo = max(Fraction(0), c - r)
    hi = min(Fraction(1), c + r)
    return DyadicInterval(lo, hi)


def ball_oscillation(f: SymbolicFn, x, exponent: int, k: int,
                     rationals_only=False) -> Bracket:
    """Bracket of sup - inf of f over the (clipped) ball around x."""
    iv = _ball_clipped(x, exponent)
    inf_b, sup_b = f.range_on(iv, k + 2, rationals_only)
    return sup_b - inf_b


# --- the least-witness search ------------------------------------------------


def mu_search(query, trace=None):
    """Least-witness search for a collapsed query; Found answers carry the
    minimal index, NotFoundBelow records an exact empty search up to fuel."""
    if isinstance(query, OscBelow):
        return _mu_osc_below(query, trace)
    if isinstance(query, ValueBelowOnBall):
        return _mu_value_below_on_ball(query, trace)
    if isinstance(query, ExistsValueAbove):
        return _mu_exists(query, above=True, trace=trace)
    if isinstance(query, ExistsValueBelow):
        return _mu_exists(query, above=False, trace=trace)
    if isinstance(query, Baire1Above):
        return _mu_baire1_above(query, trace)
    raise ValueError("unknown query shape %r" % (query,))


def _mu_osc_below(q: OscBelow, trace):
    require_rule("OscBelow", q.f, "mu_search/OscBelow")
    bound = Fraction(1, 1 << q.m)
    for n in range(q.fuel + 1):
        osc = ball_oscillation(q.f, q.x, n, q.m + 4)
        if trace is not None:
            trace.record("OscBelow", n, 0, "osc<=%s..%s" % (osc.lo, osc.hi))
        if osc.hi <= bound:
            return Found(MuWitness(n))
        if osc.lo <= bound:
            # bracket straddles the bound; refine once, then give up honestly
            osc = ball_oscillation(q.f, q.x, n, q.m + 12)
            if osc.hi <= bound:
                return Found(MuWitness(n))
            if osc.lo <= bound:
                raise FuelExhausted("ball oscillation bracket straddles 2^-%d at "
                                    "exponent %d" % (q.m, n), fuel=q.fuel)
    return NotFoundBelow(q.fuel)


def _mu_value_below_on_ball(q: ValueBelowOnBall, trace):
    require_rule("ValueBelowOnBall", q.f, "mu_search/ValueBelowOnBall")
    target = Fraction(q.q)
    for m in range(q.fuel + 1):
        iv = _ball_clipped(q.x, m)
        inf_b, _ = q.f.range_on(iv, 8, rationals_only=True)
        if trace is not None:
            trace.record("ValueBelowOnBall", m, 0, "rational inf>=%s" % (inf_b.lo,))
        if inf_b.lo >= target:
            return Found(MuWitness(m))
        if not inf_b.exact and inf_b.hi >= target:
            raise FuelExhausted("rational infimum bracket straddles the target "
                                "at exponent %d" % m, fuel=q.fuel)
    return NotFoundBelow(q.fuel)


def _mu_exists(q, above: bool, trace):
    shape = "ExistsValueAbove" if above else "ExistsValueBelow"
    require_rule(shape, q.f, "mu_search/" + shape)
    y = Fraction(q.threshold)
    witness = (q.f.witness_above if above else q.f.witness_below)(q.interval, y)
    truth, point = witness
    if truth is Truth.NO:
        if trace is not None:
            trace.record(shape, q.fuel, 0, "no")
        return NotFoundBelow(q.fuel)
    if truth is Truth.UNKNOWN:
        raise FuelExhausted("threshold query undecided on this family", fuel=q.fuel)
    # find the least probe depth at which a witness appears
    for d in range(q.fuel + 1):
        pts = basis_at(q.f, q.interval, d)
        if trace is not None:
            trace.record(shape, d, len(pts), "scan")
        for p in pts:
            v = q.f.eval(p)
            if (v > y) if above else (v < y):
                return Found(MuWitness(d))
    raise FuelExhausted("a witness exists but did not appear in the probe "
                        "basis within fuel", fuel=q.fuel)


def _baire1_value_above(f_rep: Baire1Limit, p, y: Fraction, fuel: int):
    """Does the limit exceed y at p?  Exact with a stabilization witness,
    else decided through the convergence modulus when the gap is visible."""
    if f_rep.stabilizer is not None:
        return f_rep.eval(p) > y
    for j in range(2, fuel + 1):
        v = f_rep.eval_limit_approx(p, j)
        gap = Fraction(1, 1 << j)
        if v - gap > y:
            return True
        if v + gap <= y:
            return False
    raise FuelExhausted("limit value indistinguishable from the threshold", fuel=fuel)


def _mu_baire1_above(q: Baire1Above, trace):
    f = q.f_rep
    if not isinstance(f, Baire1Limit):
        raise RepresentationInsufficient("query needs a pointwise-limit representation")
    if f.conv_modulus is None:
        raise RepresentationInsufficient(
            "representation insufficient: no convergence modulus")
    require_rule("Baire1Above", f, "mu_search/Baire1Above")
    y = Fraction(q.threshold)
    shadow = getattr(f, "seed_set", None)
    for d in range(q.fuel + 1):
        pts = basis_at(f, q.interval, d)
        if trace is not None:
            trace.record("Baire1Above", d, len(pts), "scan")
        for p in pts:
            if _baire1_value_above(f, p, y, q.fuel):
                return Found(MuWitness(d))
        # exact refusal of deeper witnesses: remaining carried spikes are below y
        if shadow is not None and Fraction(1, 1 << (d + 1)) <= y:
            return NotFoundBelow(q.fuel)
        if shadow is None and d >= grid_depth_cap(q.interval):
            break
    if y <= 0:
        raise FuelExhausted("non-positive threshold cannot be refuted on a "
                            "limit representation", fuel=q.fuel)
    return NotFoundBelow(q.fuel)
