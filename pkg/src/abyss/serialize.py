"""JSON round-tripping for function documents and results.

Rationals always travel as "num/den" strings; points of Q(sqrt2) as
{"a": "...", "b": "..."}.  Function documents are a tagged union keyed by
"kind".  The envelope carries the schema marker "abyss/1".
"""

from __future__ import annotations

import json
from fractions import Fraction

from .exact import DyadicInterval, Q2, format_rational
from .sets import ComplementOfR2Open, CountableSet, FinitePointSet, R2Rep, finite_set, sqrt2_family

SCHEMA = "abyss/1"


def rat_json(q) -> str:
    return format_rational(Fraction(q))


def rat_from_json(s) -> Fraction:
    return Fraction(s)


def q2_json(x):
    p = Q2.of(x)
    if p.is_rational:
        return rat_json(p.a)
    return {"a": rat_json(p.a), "b": rat_json(p.b)}


def q2_from_json(doc) -> Q2:
    if isinstance(doc, str):
        return Q2.of(Fraction(doc))
    return Q2(Fraction(doc["a"]), Fraction(doc["b"]))


def interval_json(iv: DyadicInterval) -> dict:
    return {"lower": rat_json(iv.lower), "upper": rat_json(iv.upper)}


def interval_from_json(doc) -> DyadicInterval:
    return DyadicInterval(Fraction(doc["lower"]), Fraction(doc["upper"]))


def set_json(a_set: CountableSet) -> dict:
    if a_set.name == "sqrt2-halving":
        return {"generator": "sqrt2-halving"}
    if a_set.size is None:
        raise ValueError("only the built-in generator or finite sets serialize")
    return {
        "generator": "finite",
        "points": [q2_json(a_set.member(n)) for n in range(a_set.size)],
        "surjective": a_set.surjective,
    }


def set_from_json(doc) -> CountableSet:
    if doc["generator"] == "sqrt2-halving":
        return sqrt2_family()
    if doc["generator"] == "finite":
        return finite_set([q2_from_json(p) for p in doc["points"]],
                          surjective=doc.get("surjective", False))
    raise ValueError("unknown set generator %r" % (doc.get("generator"),))


def closed_set_json(cs) -> dict:
    if isinstance(cs, FinitePointSet):
        return {"rep": "finite-points", "points": [q2_json(p) for p in cs.points]}
    if isinstance(cs, ComplementOfR2Open):
        return {"rep": "complement-of-r2-open",
                "intervals": [[rat_json(a), rat_json(b)] for a, b in cs.open_rep.intervals]}
    raise ValueError("unknown closed-set representation %r" % (cs,))


def closed_set_from_json(doc):
    if doc["rep"] == "finite-points":
        return FinitePointSet.of([q2_from_json(p) for p in doc["points"]])
    if doc["rep"] == "complement-of-r2-open":
        return ComplementOfR2Open(R2Rep.from_intervals(
            [(Fraction(a), Fraction(b)) for a, b in doc["intervals"]]))
    raise ValueError("unknown closed-set representation %r" % (doc.get("rep"),))


def fn_json(f) -> dict:
    from .universe import Baire1Limit
    if isinstance(f, Baire1Limit):
        if getattr(f, "seed_set", None) is not None:
            return {"kind": "pennyk-limit", "set": set_json(f.seed_set)}
        raise ValueError("only built-in pointwise-limit representations serialize")
    return f.to_jsonable()


def fn_from_json(doc):
    from . import universe as u
    kind = doc["kind"]
    if kind == "thomae":
        return u.thomae()
    if kind == "penny":
        return u.build_penny(set_from_json(doc["set"]))
    if kind == "pennyk":
        return u.build_pennyk(set_from_json(doc["set"]), doc["cutoff"])
    if kind == "tilde-penny":
        return u.TildePenny(set_from_json(doc["set"]))
    if kind == "cover-psi":
        return u.CoverPsi(set_from_json(doc["set"]))
    if kind == "cover-psi-usco":
        return u.CoverPsiUsco(set_from_json(doc["set"]))
    if kind == "indicator":
        return u.Indicator(closed_set_from_json(doc["closed_set"]))
    if kind == "piecewise":
        cuts = [q2_from_json(c) for c in doc["cuts"]]
        pieces = [u.Poly(*(Fraction(c) for c in cs)) for cs in doc["pieces"]]
        vals = [q2_from_json(v) for v in doc["values"]]
        return u.PiecewiseRational(cuts, pieces, vals)
    if kind == "sum":
        return u.Sum(fn_from_json(doc["f"]), fn_from_json(doc["g"]))
    if kind == "scalar-multiple":
        return u.ScalarMultiple(Fraction(doc["c"]), fn_from_json(doc["f"]))
    if kind == "restricted":
        return u.restrict_tags(fn_from_json(doc["f"]), doc["tags"])
    if kind == "pennyk-limit":
        return u.pennyk_limit(set_from_json(doc["set"]))
    raise ValueError("unknown function kind %r" % (kind,))


def envelope(payload: dict) -> dict:
    out = {"schema": SCHEMA}
    out.update(payload)
    return out


def dumps(payload: dict) -> str:
    """Canonical JSON: sorted keys, no whitespace variance, trailing newline."""
    return json.dumps(envelope(payload), sort_keys=True, separators=(",", ":")) + "\n"
