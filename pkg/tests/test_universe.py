"""Function universe: exact evaluation, constructors, witnessed class tags,
ranges against brute force, serialization."""

import random
from fractions import Fraction as F

import pytest
from abyss import (CoverPsi, DomainError, DyadicInterval, FinitePointSet,
                   Indicator, NotPointwiseEvaluable, Q2, R2Rep, TildePenny,
                   UnsupportedVariant, build_cover_psi, build_penny,
                   build_pennyk, build_tilde, constant, finite_set,
                   fn_difference, fn_sum, linear, osc_exact, osc_selfcheck,
                   pennyk_limit, rational_grid, restrict_tags, sqrt2_family,
                   staircase, thomae, tilde_set)
from abyss.exact import signed_unit_rationals
from abyss.sets import ComplementOfR2Open, band_of, minimal_shift_into_band
from abyss.universe import (BAIRE1, BV, CLIQUISH, NORMALISED_BV,
                            QUASI_CONTINUOUS, REGULATED, SIMPLY_CONTINUOUS,
                            USCO)

from conftest import brute_ball_osc, brute_max, brute_min, probe_basis

A = sqrt2_family()
S2 = Q2.sqrt2_scaled


# ---------------------------------------------------------------------------
# evaluation examples
# ---------------------------------------------------------------------------


def test_thomae_values():
    t = thomae()
    assert t.eval(F(1, 2)) == Q2.of(F(1, 2))
    assert t.eval(F(2, 4)) == Q2.of(F(1, 2))  # reduced form decides the value
    assert t.eval(F(0)) == Q2.of(1)
    assert t.eval(F(1)) == Q2.of(1)
    assert t.eval(F(2, 3)) == Q2.of(F(1, 3))
    assert t.eval(S2(0)) == Q2.of(0)


def test_penny_values():
    f = build_penny(A)
    assert f.eval(F(1, 2)) == Q2.of(0)  # all members are irrational
    assert f.eval(S2(0)) == Q2.of(F(1, 2))
    assert f.eval(S2(1)) == Q2.of(F(1, 4))
    with pytest.raises(DomainError):
        f.eval(F(3, 2))


def test_penny_constructors():
    single = finite_set([S2(0)])
    f = build_penny(single)
    assert f.eval(S2(0)) == Q2.of(F(1, 2))
    assert f.eval(F(1, 3)) == Q2.of(0)
    assert f.tags == frozenset({CLIQUISH, USCO, BV, REGULATED, BAIRE1})
    with pytest.raises(ValueError):
        finite_set([])  # empty seed set
    with pytest.raises(ValueError):
        finite_set([S2(0), S2(0)])  # duplicate breaks injectivity


def test_penny_positive_exactly_on_members():
    f = build_penny(A)
    probes = [A.member(n) for n in range(8)]
    probes += [Q2.of(g) for g in rational_grid(DyadicInterval(0, 1), 4)]
    probes += [Q2(F(1, 3), F(1, 64))]
    for x in probes:
        assert (f.eval(x) > Q2.of(0)) == (A.index_of(x) is not None)


def test_penny_finitely_many_above_threshold():
    """At most k members exceed 2^-k: the values are index-determined."""
    for k in range(1, 10):
        big = [n for n in range(40) if F(1, 1 << (n + 1)) > F(1, 1 << k)]
        assert len(big) <= k
        assert big == list(range(k - 1))


def test_pennyk_truncation():
    f = build_pennyk(A, 1)
    assert f.eval(S2(0)) == Q2.of(F(1, 2))
    assert f.eval(S2(1)) == Q2.of(F(1, 4))
    assert f.eval(S2(2)) == Q2.of(0)  # truncated index


def test_pennyk_pointwise_limit_modulus():
    """The truncations converge with modulus m(x, j) = j."""
    full = build_penny(A)
    probes = [p for _, p in A.members_upto(10)] + \
             [Q2.of(g) for g in rational_grid(DyadicInterval(0, 1), 3)]
    for x in probes:
        want = full.eval(x)
        for j in range(1, 12):
            for n in range(j, j + 4):
                got = build_pennyk(A, n).eval(x)
                assert abs(got - want) < Q2.of(F(1, 1 << j))


def test_baire1_limit_needs_modulus():
    from abyss import Baire1Limit
    rep = Baire1Limit(lambda n: build_pennyk(A, n))
    with pytest.raises(NotPointwiseEvaluable):
        rep.eval(F(1, 2))
    good = pennyk_limit(A)
    assert good.eval(S2(1)) == Q2.of(F(1, 4))
    assert good.eval_limit_approx(S2(1), 6) == F(1, 4)


# ---------------------------------------------------------------------------
# the banded copy and the covering instances
# ---------------------------------------------------------------------------


def test_minimal_shift_matches_plain_scan():
    # independent oracle: scan the fixed enumeration from scratch
    for n in range(6):
        a = A.member(n)
        lo, hi = a - F(1, 1 << n), a - F(1, 1 << (n + 1))
        gen = signed_unit_rationals()
        expected = None
        while expected is None:
            q = next(gen)
            if Q2.of(q) > lo and Q2.of(q) <= hi:
                expected = q
        assert minimal_shift_into_band(a, n) == expected


def test_tilde_of_canonical_is_itself():
    til, f = build_tilde(A)
    for n in range(8):
        assert til.member(n) == A.member(n)
        assert f.eval(A.member(n)) == Q2.of(F(1, 1 << (n + 1)))
    assert f.eval(F(1, 3)) == Q2.of(0)
    assert til.index_of(Q2.of(0)) is None  # 0 is outside the banded copy


def test_tilde_bands_and_nowhere_density():
    rng = random.Random(7)
    for _ in range(6):
        pts = []
        while len(pts) < 5:
            p = Q2(F(rng.randrange(1, 127), 128), F(1, 1 << rng.randrange(3, 30)))
            if p < 1 and all(p != e for e in pts):
                pts.append(p)
        src = finite_set(pts)
        til = tilde_set(src)
        for n in range(5):
            y = til.member(n)
            assert band_of(y, half_open=True) == n  # one point per band
            assert y + minimal_shift_into_band(src.member(n), n) == src.member(n)


def test_tilde_rejects_rational_members():
    with pytest.raises(ValueError):
        tilde_set(finite_set([F(1, 3)]))
    with pytest.raises(ValueError):
        build_tilde(finite_set([Q2(F(1, 4), F(1, 8)), F(1, 2)]))


def test_cover_psi_values():
    psi = build_cover_psi(A, False)
    assert psi.eval(F(3, 4)) == Q2.of(F(1, 8))  # off the copy
    assert psi.eval(S2(0)) == Q2.of(F(1, 32))   # band-0 member: 2^-(0+5)
    assert psi.eval(F(0)) == Q2.of(F(1, 8))
    assert psi.is_positive()


def test_cover_psi_usco_values():
    psi = build_cover_psi(A, True)
    assert psi.eval(F(3, 4)) == Q2.of(F(1, 64))   # band 0 off-copy: 2^-(0+6)
    assert psi.eval(S2(0)) == Q2.of(F(1, 32))     # band-0 member: 2^-(0+5)
    assert psi.eval(F(3, 8)) == Q2.of(F(1, 128))  # band 1 off-copy
    assert psi.eval(F(1, 2)) == Q2.of(F(1, 64))   # boundary takes the larger band
    assert psi.eval(F(0)) == Q2.of(F(1, 64))
    assert psi.eval(F(1)) == Q2.of(F(1, 64))
    assert psi.is_positive()


def test_cover_tags():
    psi = build_cover_psi(A, False)
    assert CLIQUISH in psi.tags and USCO not in psi.tags
    assert QUASI_CONTINUOUS not in psi.tags
    usco = build_cover_psi(A, True)
    assert USCO in usco.tags and QUASI_CONTINUOUS not in usco.tags


def test_cover_psi_usco_is_usco_at_probes():
    """Defining property of upper semicontinuity, checked by brute force."""
    psi = build_cover_psi(A, True)
    probes = [F(1, 2), F(1, 4), F(3, 4), F(0), F(1), S2(0), S2(2), F(5, 8)]
    for x in probes:
        fx = psi.eval(x)
        for k in (2, 4, 6):
            target = fx + Q2.of(F(1, 1 << k))
            ok = False
            for n in range(2, 40):
                p = Q2.of(x)
                c = p.as_rational() if p.is_rational else p.approx(n + 8)
                lo = max(F(0), c - F(1, 1 << n))
                hi = min(F(1), c + F(1, 1 << n))
                basis = probe_basis(psi, DyadicInterval(lo, hi), 6)
                if all(psi.eval(pt) < target for pt in basis):
                    ok = True
                    break
            assert ok, (x, k)


def test_cover_psi_not_usco_witnessed():
    """The plain covering instance fails upper semicontinuity at the copy."""
    psi = build_cover_psi(A, False)
    y0 = S2(0)  # band-0 member, value 2^-5
    fx = psi.eval(y0)
    target = fx + Q2.of(F(1, 64))  # below the base value 1/8
    # every ball around the member keeps base-valued points at 1/8 >= target
    for n in range(2, 20):
        lo = (y0 - F(1, 1 << n)).bracket(40)[0]
        hi = (y0 + F(1, 1 << n)).bracket(40)[1]
        basis = probe_basis(psi, DyadicInterval(max(F(0), lo), min(F(1), hi)), 5)
        assert any(psi.eval(pt) >= target for pt in basis)


# ---------------------------------------------------------------------------
# witnessed class tags
# ---------------------------------------------------------------------------


def _cliquish_witness(f, x, k, big_n=2) -> bool:
    """Somewhere inside the 2^-big_n ball there is an open subinterval whose
    grid oscillation (interior probes only) is below 2^-k."""
    p = Q2.of(x)
    c = p.as_rational() if p.is_rational else p.approx(big_n + 8)
    lo = max(F(0), c - F(1, 1 << big_n))
    hi = min(F(1), c + F(1, 1 << big_n))
    for depth in (k + 2, k + 4):
        grid = rational_grid(DyadicInterval(lo, hi), depth)
        for a, b in zip(grid, grid[1:]):
            vals = [f.eval(pt)
                    for pt in probe_basis(f, DyadicInterval(a, b), depth + 4)
                    if Q2.of(a) < pt < Q2.of(b)]
            if not vals or max(vals) - min(vals) < Q2.of(F(1, 1 << k)):
                return True
    return False


@pytest.mark.parametrize("fn_builder", [
    thomae,
    lambda: build_penny(A),
    lambda: build_cover_psi(A, False),
    lambda: build_cover_psi(A, True),
    lambda: TildePenny(A),
])
def test_cliquish_tag_witnessed(fn_builder):
    f = fn_builder()
    assert CLIQUISH in f.tags
    for x in rational_grid(DyadicInterval(0, 1), 3) + [S2(0)]:
        for k in (2, 4, 6):
            assert _cliquish_witness(f, x, k), (f.kind, x, k)


def test_usco_tag_witnessed_penny_thomae():
    for f in (build_penny(A), thomae()):
        for x in [F(0), F(1, 3), F(1, 2), S2(0), S2(1), F(1)]:
            fx = f.eval(x)
            for k in (2, 5):
                target = fx + Q2.of(F(1, 1 << k))
                ok = False
                p = Q2.of(x)
                for n in range(2, 40):
                    c = p.as_rational() if p.is_rational else p.approx(n + 8)
                    lo = max(F(0), c - F(1, 1 << n))
                    hi = min(F(1), c + F(1, 1 << n))
                    if all(f.eval(pt) < target
                           for pt in probe_basis(f, DyadicInterval(lo, hi), 6)):
                        ok = True
                        break
                assert ok, (f.kind, x, k)


def test_qc_tag_witnessed_on_staircase():
    st = staircase([(F(1, 3), F(1, 2)), (F(2, 3), F(1, 4))])
    assert QUASI_CONTINUOUS in st.tags
    for x in rational_grid(DyadicInterval(0, 1), 3):
        fx = st.eval(x)
        found = False
        p = F(x)
        for side in (1, -1):
            a = p if side > 0 else p - F(1, 64)
            b = p + F(1, 64) if side > 0 else p
            a, b = max(F(0), a), min(F(1), b)
            if a >= b:
                continue
            shrink = (b - a) / 4
            inner = DyadicInterval(a + shrink, b - shrink)
            vals = [st.eval(pt) for pt in probe_basis(st, inner, 5)]
            if all(abs(v - fx) < Q2.of(F(1, 16)) for v in vals):
                found = True
        assert found, x


def test_bv_tag_witnessed_random_partitions():
    rng = random.Random(11)
    f = build_penny(A)
    for _ in range(40):
        pts = sorted(rng.sample(
            [F(i, 256) for i in range(257)], rng.randrange(2, 12)))
        pts = [p for _, p in A.members_upto(rng.randrange(0, 6))] + [Q2.of(p) for p in pts]
        pts = sorted(pts)
        total = sum((abs(f.eval(b) - f.eval(a)) for a, b in zip(pts, pts[1:])),
                    Q2.of(0))
        assert total <= Q2.of(2)  # the spike values sum to one, each jumps twice


def test_normalised_bv_tag_staircase():
    st = staircase([(F(1, 2), F(1, 4))])
    assert NORMALISED_BV in st.tags
    assert st.eval(F(0)) == Q2.of(0)
    lr_val = st.pieces[1](Q2.of(F(1, 2)))
    assert st.eval(F(1, 2)) == lr_val  # right-continuous at the jump
    assert NORMALISED_BV not in build_penny(A).tags  # removable jumps break it


def test_regulated_tag_witnessed():
    f = build_penny(A)
    for x in [F(1, 3), S2(0), F(0)]:
        for side in (-1, 1):
            b = f.one_sided_limit(x, side, 20)
            if b is None:
                assert (Q2.of(x) == 0 and side < 0) or (Q2.of(x) == 1 and side > 0)
                continue
            # window values approach the limit
            p = Q2.of(x)
            c = p.as_rational() if p.is_rational else p.approx(30)
            for m in (6, 10):
                a, bnd = (c, min(F(1), c + F(1, 1 << m))) if side > 0 else \
                    (max(F(0), c - F(1, 1 << m)), c)
                if a >= bnd:
                    continue
                window = DyadicInterval(a, bnd)
                vals = [f.eval(pt) for pt in probe_basis(f, window, 6)
                        if Q2.of(pt) != p and f.a_set.index_of(Q2.of(pt)) is None]
                assert all(abs(v - Q2.of(b.lo)) <= Q2.of(F(1, 1 << (m - 4)) + F(1, 1 << 18))
                           for v in vals)


def test_simply_continuous_tag_tilde():
    _, f = build_tilde(A)
    assert SIMPLY_CONTINUOUS in f.tags
    assert SIMPLY_CONTINUOUS not in thomae().tags  # the classic non-example


def test_restricted_view():
    f = build_penny(A)
    g = restrict_tags(f, {CLIQUISH})
    assert g.tags == frozenset({CLIQUISH})
    assert g.certificates == frozenset()
    assert g.eval(S2(0)) == f.eval(S2(0))
    with pytest.raises(ValueError):
        restrict_tags(f, {QUASI_CONTINUOUS})  # cannot add tags


# ---------------------------------------------------------------------------
# exact ranges against brute force
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("fn_builder", [
    thomae,
    lambda: build_penny(A),
    lambda: build_pennyk(A, 4),
    lambda: TildePenny(A),
    lambda: build_cover_psi(A, False),
    lambda: build_cover_psi(A, True),
    lambda: Indicator(FinitePointSet.of([F(1, 2), S2(2)])),
    lambda: staircase([(F(1, 3), F(1, 2)), (F(2, 3), F(1, 4))]),
    lambda: fn_difference(constant(1), build_penny(A)),
])
def test_range_brackets_brute_force(fn_builder):
    f = fn_builder()
    rng = random.Random(5)
    for _ in range(25):
        a = F(rng.randrange(0, 64), 64)
        b = F(rng.randrange(0, 64), 64)
        lo, hi = min(a, b), max(a, b)
        if lo == hi:
            continue
        iv = DyadicInterval(lo, hi)
        inf_b, sup_b = f.range_on(iv, 12)
        bmax, bmin = brute_max(f, iv), brute_min(f, iv)
        assert Q2.of(sup_b.hi) >= bmax >= Q2.of(inf_b.lo)
        assert Q2.of(inf_b.lo) <= bmin
        assert sup_b.width <= F(1, 1 << 12) and inf_b.width <= F(1, 1 << 12)


def test_cluster_bounds_examples():
    f = build_penny(A)
    li, ls = f.cluster_bounds(S2(0), 20)
    assert li.exact and ls.exact and li.lo == 0 and ls.lo == 0
    t = thomae()
    li, ls = t.cluster_bounds(F(1, 2), 20)
    assert li.lo == ls.lo == 0
    st = staircase([(F(1, 2), 1)])
    li, ls = st.cluster_bounds(F(1, 2), 20)
    assert li.lo == 0 and ls.lo == 1
    psi = build_cover_psi(A, False)
    li, ls = psi.cluster_bounds(F(0), 20)
    assert li.lo == 0 and ls.lo == F(1, 8)


def test_cover_usco_range_near_zero_and_boundaries():
    """The banded values are the trickiest range logic: cross-check against a
    plain evaluation loop on awkward intervals."""
    psi = build_cover_psi(A, True)
    rng = random.Random(13)
    cases = [(F(0), F(1, 1024)), (F(0), F(1, 3)), (F(1, 4), F(1, 4)),
             (F(1, 2), F(1, 2)), (F(1, 4), F(1, 2)), (F(15, 32), F(17, 32))]
    for _ in range(20):
        a = F(rng.randrange(0, 1025), 1024)
        b = F(rng.randrange(0, 1025), 1024)
        cases.append((min(a, b), max(a, b)))
    for lo, hi in cases:
        iv = DyadicInterval(lo, hi)
        inf_b, sup_b = psi.range_on(iv, 14)
        vals = [psi.eval(p) for p in probe_basis(psi, iv, 8)]
        assert Q2.of(sup_b.hi) >= max(vals)
        assert Q2.of(sup_b.lo) <= max(vals) or sup_b.exact
        assert Q2.of(inf_b.lo) <= min(vals)
        # the declared supremum is actually achieved by some probed value
        if sup_b.exact:
            assert any(v == Q2.of(sup_b.lo) for v in vals)


def test_cover_usco_osc_at_band_boundary():
    psi = build_cover_psi(A, True)
    from abyss import osc_point
    for n in (0, 1, 2):
        x = F(1, 1 << (n + 1))
        iv = osc_point(psi, x, 12)
        want = F(1, 1 << (n + 6)) - F(1, 1 << (n + 7))  # gap between the bands
        assert iv.contains(want)
    interior = osc_point(psi, F(3, 4), 12)
    assert interior.contains(F(0))


def test_cover_usco_regulation_modulus():
    from abyss import modulus_regulation
    psi = build_cover_psi(A, True)
    M = modulus_regulation(psi)
    m = M(F(1, 2), 8)
    # the window must stay inside the adjacent bands
    assert F(1, 1 << (m + 1)) <= F(1, 4)


def test_osc_selfcheck():
    assert osc_selfcheck(build_penny(A))
    assert osc_selfcheck(build_penny(finite_set([S2(0)])))
    with pytest.raises(UnsupportedVariant):
        osc_selfcheck(constant(0))


def test_osc_exact_matches_brute_limit():
    f = build_penny(A)
    for x in [S2(0), S2(3), F(1, 3), F(0)]:
        b = osc_exact(f, x, 20)
        # brute: decreasing ball oscillations bound the exact value from above
        for n in (4, 8, 12):
            assert brute_ball_osc(f, x, n, depth=6) >= Q2.of(b.lo) - Q2.of(F(1, 1 << 18))


def test_sum_and_scalar():
    f = fn_sum(linear(1), constant(F(1, 4)))
    assert f.eval(F(1, 2)) == Q2.of(F(3, 4))
    g = fn_difference(constant(1), build_penny(A))
    assert g.eval(S2(0)) == Q2.of(F(1, 2))
    assert g.eval(F(1, 3)) == Q2.of(1)
    assert USCO not in g.tags and "lsco" in {t for t in g.tags}


def test_piecewise_irrational_breakpoint():
    """Breakpoints may be field elements; evaluation and limits stay exact."""
    from abyss import PiecewiseRational, Poly
    from abyss.serialize import fn_from_json, fn_json
    c = S2(0)
    f = PiecewiseRational([Q2.of(0), c, Q2.of(1)],
                          [Poly(0), Poly(1)],
                          [Q2.of(0), Q2.of(1), Q2.of(1)])
    assert f.eval(c) == Q2.of(1)
    assert f.eval(F(1, 2)) == Q2.of(0) and f.eval(F(3, 4)) == Q2.of(1)
    assert USCO in f.tags  # value sits at the larger one-sided limit
    left = f.one_sided_limit(c, -1, 30)
    right = f.one_sided_limit(c, 1, 30)
    assert left.contains(F(0)) and right.contains(F(1))
    assert f.jump_candidates(4) == [c]
    g = fn_from_json(fn_json(f))
    assert g.eval(c) == Q2.of(1) and g.eval(F(1, 2)) == Q2.of(0)
    inf_b, sup_b = f.range_on(DyadicInterval(F(1, 2), F(3, 4)), 12)
    assert inf_b.lo == 0 and sup_b.hi == 1


def test_indicator_variants():
    c = ComplementOfR2Open(R2Rep.from_intervals([(F(-1, 8), F(3, 4))]))
    ind = Indicator(c)
    assert ind.eval(F(7, 8)) == Q2.of(1)
    assert ind.eval(F(1, 2)) == Q2.of(0)
    assert USCO in ind.tags
    fin = Indicator(FinitePointSet.of([F(1, 2)]))
    assert fin.eval(F(1, 2)) == Q2.of(1) and fin.eval(F(1, 4)) == Q2.of(0)
    assert QUASI_CONTINUOUS not in fin.tags
