"""Operations on regulated and bounded-variation functions: one-sided limits,
jump enumeration, total variation of normalised-BV functions, Jordan
decomposition, and regulation moduli.

General BV inputs with removable discontinuities are refused, not
approximated: rational sampling cannot see their variation, and the spike
instances in this package exist precisely to demonstrate that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import ClassRefusal, FuelExhausted
from .exact import Bracket, DyadicInterval, Q2
from .oracle import DEFAULT_FUEL
from .universe import (NORMALISED_BV, REGULATED, PiecewiseRational,
                       SymbolicFn)


def _require_tag(f: SymbolicFn, tag: str, operation: str, statement=None):
    if tag not in f.tags:
        raise ClassRefusal(operation, tag, f, statement=statement)


# ---------------------------------------------------------------------------
# one-sided limits and jumps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OneSidedLimits:
    """Brackets of f(x-) and f(x+); a side is None outside the domain."""

    left: Optional[DyadicInterval]
    right: Optional[DyadicInterval]


def limits_lr(f: SymbolicFn, x, k: int, fuel: int = DEFAULT_FUEL) -> OneSidedLimits:
    _require_tag(f, REGULATED, "limits_lr")
    p = Q2.of(x)
    out = []
    for side in (-1, 1):
        b = f.one_sided_limit(p, side, k + 1)
        out.append(None if b is None else b.to_interval())
    return OneSidedLimits(out[0], out[1])


def jump_enum(f: SymbolicFn, limit: int = 64, fuel: int = DEFAULT_FUEL) -> list[Q2]:
    """Duplicate-free list of the points where the one-sided limits differ,
    drawn from the function's own candidate structure (complete on the
    universe: every jump of a built-in family sits at a carried point)."""
    _require_tag(f, REGULATED, "jump_enum")
    jumps = []
    for c in f.jump_candidates(limit):
        left = f.one_sided_limit(c, -1, 40)
        right = f.one_sided_limit(c, 1, 40)
        if left is None or right is None:
            continue
        gap = right - left
        if gap.lo > 0 or gap.hi < 0:
            jumps.append(c)
        elif not (gap.exact and gap.lo == 0):
            raise FuelExhausted("one-sided limits too close to separate", fuel=fuel)
    return jumps


# ---------------------------------------------------------------------------
# total variation and the Jordan decomposition
# ---------------------------------------------------------------------------


_NBV_REFUSAL = ("total variation collapses to a countable partition search "
                "only without removable discontinuities; the spike families "
                "are bounded-variation counterexamples")


def _variation_exact(f: PiecewiseRational, bound: Q2) -> Q2:
    """Exact total variation of a piecewise function on [0, bound]: monotone
    runs between critical points plus one-sided gaps at every discontinuity.

    Between consecutive critical points the function is one polynomial piece
    and monotone (vertices are critical points), so each cell contributes the
    right-jump at its left end, the run, and the left-jump at its right end.
    """
    pts = [c for c in f.variation_points(DyadicInterval(0, 1)) if c < bound]
    pts.append(bound)
    total = Q2.of(0)
    for u, v in zip(pts, pts[1:]):
        mid = (u + v) / Q2.of(2)
        piece = f.pieces[f._locate(mid)[1]]
        ru, lv = piece(u), piece(v)  # one-sided limits from inside (u, v)
        total = total + abs(f.eval(u) - ru) + abs(lv - ru) + abs(f.eval(v) - lv)
    return total


def total_variation_nbv(f: SymbolicFn, x, k: int,
                        fuel: int = DEFAULT_FUEL) -> DyadicInterval:
    """Width-2^-k interval containing the total variation of f on [0, x]."""
    _require_tag(f, NORMALISED_BV, "total_variation_nbv", statement=_NBV_REFUSAL)
    if not isinstance(f, PiecewiseRational):
        raise ClassRefusal("total_variation_nbv",
                           "a piecewise representation with carried breakpoints",
                           f, statement=_NBV_REFUSAL)
    xq = Q2.of(x)
    if xq < 0 or xq > 1:
        raise ValueError("endpoint outside [0,1]")
    if xq == Q2.of(0):
        return DyadicInterval(0, 0)
    v = _variation_exact(f, xq)
    return Bracket.of_q2(v, k + 1).to_interval()


@dataclass
class JordanPair:
    """Non-decreasing g, h with f = g - h; g is the running total variation."""

    g: Callable
    h: Callable

    def check_point(self, f: SymbolicFn, x) -> bool:
        return self.g(x) - self.h(x) == f.eval(x)


def jordan_nbv(f: SymbolicFn, fuel: int = DEFAULT_FUEL) -> JordanPair:
    _require_tag(f, NORMALISED_BV, "jordan_nbv", statement=_NBV_REFUSAL)
    if not isinstance(f, PiecewiseRational):
        raise ClassRefusal("jordan_nbv",
                           "a piecewise representation with carried breakpoints",
                           f, statement=_NBV_REFUSAL)

    def g(x) -> Q2:
        xq = Q2.of(x)
        return Q2.of(0) if xq == Q2.of(0) else _variation_exact(f, xq)

    def h(x) -> Q2:
        return g(x) - f.eval(x)

    return JordanPair(g, h)


# ---------------------------------------------------------------------------
# regulation moduli
# ---------------------------------------------------------------------------


class RegulationModulus:
    """M(x, k): on (x, x + 2^-(M+1)) values stay within 2^-k of f(x+), and
    symmetrically on the left; the convergence modulus of both one-sided
    limits."""

    def __init__(self, f: SymbolicFn, fuel: int):
        self.f = f
        self.fuel = fuel
        self._memo: dict = {}

    def __call__(self, x, k: int) -> int:
        p = Q2.of(x)
        key = (p.a, p.b, k)
        if key in self._memo:
            return self._memo[key]
        tol = Fraction(1, 1 << k)
        for m in range(self.fuel + 1):
            if self._ok(p, m, tol, k):
                self._memo[key] = m
                return m
        raise FuelExhausted("no regulation exponent found within fuel",
                            fuel=self.fuel)

    def _ok(self, p: Q2, m: int, tol: Fraction, k: int) -> bool:
        r = Fraction(1, 1 << (m + 1))
        for side in (-1, 1):
            lim = self.f.one_sided_limit(p, side, k + 6)
            if lim is None:
                continue
            lo_pt, hi_pt = p.bracket(m + k + 8)
            if side > 0:
                lo, hi = hi_pt, min(Fraction(1), lo_pt + r)
            else:
                lo, hi = max(Fraction(0), hi_pt - r), lo_pt
            if lo >= hi:
                continue
            iv = DyadicInterval(lo, hi)
            inf_b, sup_b = self.f.range_on(iv, k + 6)
            if p.is_rational and iv.contains(p):
                # one-sided window must not include the point itself
                inf_b2, sup_b2 = self._punctured_range(iv, p, k)
                inf_b, sup_b = inf_b2, sup_b2
            if sup_b.hi - lim.lo >= tol or lim.hi - inf_b.lo >= tol:
                return False
        return True

    def _punctured_range(self, iv, p, k):
        eps = Fraction(1, 1 << (k + 24))
        q = p.as_rational()
        parts = []
        if iv.lower < q - eps:
            parts.append(DyadicInterval(iv.lower, q - eps))
        if q + eps < iv.upper:
            parts.append(DyadicInterval(q + eps, iv.upper))
        if not parts:
            parts = [iv]
        infs, sups = [], []
        for part in parts:
            i_b, s_b = self.f.range_on(part, k + 6)
            infs.append(i_b)
            sups.append(s_b)
        inf_b, sup_b = infs[0], sups[0]
        for i_b, s_b in zip(infs[1:], sups[1:]):
            inf_b = inf_b.join_min(i_b)
            sup_b = sup_b.join_max(s_b)
        return inf_b, sup_b


def modulus_regulation(f: SymbolicFn, fuel: int = DEFAULT_FUEL) -> RegulationModulus:
    _require_tag(f, REGULATED, "modulus_regulation")
    return RegulationModulus(f, fuel)
