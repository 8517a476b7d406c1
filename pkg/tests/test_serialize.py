"""JSON schema: exact round-trips, string-coded rationals, canonical dumps."""

import json
from fractions import Fraction as F

import pytest

from abyss import (ComplementOfR2Open, FinitePointSet, Indicator, Q2, R2Rep,
                   TildePenny, build_cover_psi, build_penny, build_pennyk,
                   constant, finite_set, fn_difference, pennyk_limit,
                   restrict_tags, sqrt2_family, staircase, thomae)
from abyss.serialize import (dumps, fn_from_json, fn_json, interval_from_json,
                             interval_json, q2_from_json, q2_json, rat_json,
                             set_from_json, set_json)
from abyss.exact import DyadicInterval

A = sqrt2_family()


def test_rationals_as_strings():
    assert rat_json(F(1, 3)) == "1/3"
    assert rat_json(F(2)) == "2/1"
    assert q2_json(Q2.of(F(-5, 7))) == "-5/7"
    assert q2_json(Q2(F(1, 3), F(1, 16))) == {"a": "1/3", "b": "1/16"}
    p = q2_from_json({"a": "1/3", "b": "1/16"})
    assert p == Q2(F(1, 3), F(1, 16))


def test_interval_roundtrip():
    iv = DyadicInterval(F(1, 3), F(2, 3))
    assert interval_from_json(interval_json(iv)) == iv


def test_set_roundtrip():
    doc = set_json(A)
    assert doc == {"generator": "sqrt2-halving"}
    B = finite_set([Q2(F(1, 4), F(1, 32)), Q2(0, F(1, 8))], surjective=False)
    doc2 = set_json(B)
    C = set_from_json(doc2)
    assert C.size == 2 and C.member(0) == B.member(0) and C.member(1) == B.member(1)


FUNCTIONS = [
    thomae(),
    build_penny(A),
    build_pennyk(A, 5),
    TildePenny(A),
    build_cover_psi(A, False),
    build_cover_psi(A, True),
    Indicator(FinitePointSet.of([F(1, 2)])),
    Indicator(ComplementOfR2Open(R2Rep.from_intervals([(F(1, 4), F(3, 4))]))),
    staircase([(F(1, 3), F(1, 2)), (F(2, 3), F(1, 4))]),
    fn_difference(constant(1), build_penny(A)),
    restrict_tags(build_penny(A), {"cliquish"}),
    pennyk_limit(A),
]


@pytest.mark.parametrize("f", FUNCTIONS, ids=lambda f: f.kind)
def test_fn_roundtrip_exact(f):
    doc = fn_json(f)
    text = json.dumps(doc)
    g = fn_from_json(json.loads(text))
    assert fn_json(g) == doc
    probes = [F(0), F(1, 3), F(1, 2), F(7, 8), F(1), Q2.sqrt2_scaled(0), Q2.sqrt2_scaled(3)]
    for x in probes:
        assert f.eval(x) == g.eval(x)
    assert g.tags == f.tags


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        fn_from_json({"kind": "mystery"})


def test_dumps_canonical():
    payload = {"b": 1, "a": {"y": "2/1", "x": "1/2"}}
    s1 = dumps(payload)
    s2 = dumps({"a": {"x": "1/2", "y": "2/1"}, "b": 1})
    assert s1 == s2
    assert s1.startswith('{"a":') and '"schema":"abyss/1"' in s1
    assert s1.endswith("\n")
