"""Partial-fraction rewriting: the atomic split, exact step verification,
the canonical relation table, and the full reducer."""
import random
from fractions import Fraction

import pytest

from tornheim.pfd import (FORM_M, FORM_N, G2_FORMS, G2_RELATIONS, G2_TARGETS,
                          LinearForm, Relation, TermProduct, TermSum,
                          reduce_to_tornheim, relation_scale, split_pair,
                          trace_to_json, verify_step)

F = Fraction
U, W = LinearForm(1, 1), LinearForm(1, 2)


def tp(coeff, *pairs):
    return TermProduct.make(coeff, list(pairs))


# ---------------------------------------------------------------- forms

def test_linear_form_validation():
    with pytest.raises(ValueError):
        LinearForm(-1, 2)
    with pytest.raises(ValueError):
        LinearForm(0, 0)
    with pytest.raises(ValueError):
        LinearForm(2, 4)        # not primitive
    assert str(LinearForm(1, 0)) == "m"
    assert str(LinearForm(0, 1)) == "n"
    assert str(LinearForm(2, 3)) == "2m+3n"
    assert str(LinearForm(1, 2)) == "m+2n"


def test_relation_table_is_exact():
    # every pair of target forms has a relation eliminating through n
    for (u, w), rel in G2_RELATIONS.items():
        c = relation_scale(u, w, rel)
        assert c > 0
        assert rel.alpha * u.cm + rel.beta * w.cm == c * rel.v.cm
        assert rel.alpha * u.cn + rel.beta * w.cn == c * rel.v.cn
        assert rel.v == FORM_N
    pairs = {frozenset(k) for k in G2_RELATIONS}
    want = {frozenset((a, b)) for i, a in enumerate(G2_TARGETS)
            for b in G2_TARGETS[i + 1:]}
    assert pairs == want


def test_relation_scale_rejects_inexact():
    bad = Relation(F(1), F(1), LinearForm(1, 3))
    with pytest.raises(ValueError):
        relation_scale(U, W, bad)       # (m+n)+(m+2n) is not k(m+3n)
    negative = Relation(F(1), F(-1), FORM_N)
    with pytest.raises(ValueError):
        relation_scale(U, W, negative)  # gives -n, scale must be positive


# ---------------------------------------------------------------- terms

def test_term_product_make_merges_and_sorts():
    t = tp(F(1, 2), (W, 1), (U, 2), (U, 1))
    assert t.exponent(U) == 3
    assert t.weight == 4
    assert t.support == (U, W)
    with pytest.raises(ValueError):
        tp(1, (U, -1))


def test_term_sum_merges_like_terms():
    ts = TermSum.make([tp(1, (U, 1)), tp(2, (U, 1)), tp(-3, (W, 1))])
    assert [(t.coeff, t.support) for t in ts] == [(3, (U,)), (-3, (W,))]
    zero = TermSum.make([tp(1, (U, 1)), tp(-1, (U, 1))])
    assert not tuple(zero)


# ---------------------------------------------------------------- splits

def test_split_pair_by_hand():
    # -(m+n) + (m+2n) = n:  1/(uw) = (1/n)(1/u - 1/w)
    rel = G2_RELATIONS[(U, W)]
    out = split_pair(tp(1, (U, 1), (W, 1)), U, W, rel)
    assert TermSum.make([tp(1, (FORM_N, 1), (U, 1)),
                         tp(-1, (FORM_N, 1), (W, 1))]) == out
    assert verify_step(TermSum.make([tp(1, (U, 1), (W, 1))]), out)


def test_split_pair_requires_both_forms():
    rel = G2_RELATIONS[(U, W)]
    with pytest.raises(ValueError):
        split_pair(tp(1, (U, 2)), U, W, rel)
    with pytest.raises(ValueError):
        split_pair(tp(1, (U, 1), (W, 1)), U, U, rel)


def test_split_preserves_weight_and_drops_pair():
    rel = G2_RELATIONS[(U, W)]
    t = tp(F(3, 7), (FORM_M, 2), (U, 2), (W, 3))
    out = split_pair(t, U, W, rel)
    for piece in out:
        assert piece.weight == t.weight
        assert piece.exponent(U) == 0 or piece.exponent(W) == 0
    assert verify_step(TermSum.make([t]), out)


def test_verify_step_catches_wrong_coefficient():
    rel = G2_RELATIONS[(U, W)]
    t = tp(1, (U, 1), (W, 1))
    out = split_pair(t, U, W, rel)
    bad = TermSum(tuple(p.scaled(2) for p in out))
    assert not verify_step(TermSum.make([t]), bad)
    missing = TermSum.make(list(out)[:1])
    assert not verify_step(TermSum.make([t]), missing)


# --------------------------------------------------------------- reducer

def test_reduce_full_g2_product():
    ts = TermSum.make([tp(1, *[(f, 1) for f in G2_FORMS], (FORM_M, 1))])
    trace = []
    out = reduce_to_tornheim(ts, trace=trace)
    for t in out:
        nonbasis = [f for f in t.support if f not in (FORM_M, FORM_N)]
        assert len(nonbasis) == 1 and nonbasis[0] in G2_TARGETS
        assert t.exponent(FORM_M) >= 1 and t.exponent(FORM_N) >= 1
        assert t.weight == 7
    assert trace                        # something actually happened
    assert verify_step(ts, out)         # end-to-end exact identity


def test_reduce_is_deterministic():
    ts = TermSum.make([tp(1, (FORM_M, 1), (FORM_N, 1), (U, 1), (W, 2),
                          (LinearForm(2, 3), 1))])
    assert reduce_to_tornheim(ts) == reduce_to_tornheim(ts)


def test_reduce_rejects_foreign_forms():
    ts = TermSum.make([tp(1, (FORM_M, 1), (FORM_N, 1), (LinearForm(5, 7), 2))])
    with pytest.raises(ValueError, match="unsupported form system"):
        reduce_to_tornheim(ts)


def test_reduce_missing_relation():
    ts = TermSum.make([tp(1, (FORM_M, 1), (FORM_N, 1), (U, 1), (W, 1))])
    with pytest.raises(ValueError, match="no relation for the pair"):
        reduce_to_tornheim(ts, relations={})


def test_reduce_watchdog_stops_cycling_relations():
    # a consistent but non-decreasing table: each pair eliminates into the
    # third target form, so the set never shrinks
    V3 = LinearForm(1, 3)
    cyclic = {
        (U, W): Relation(F(-1), F(2), V3),          # -(m+n)+2(m+2n) = m+3n
        (U, V3): Relation(F(1), F(1), W),           # (m+n)+(m+3n) = 2(m+2n)
        (W, V3): Relation(F(2), F(-1), U),          # 2(m+2n)-(m+3n) = m+n
    }
    ts = TermSum.make([tp(1, (FORM_M, 1), (FORM_N, 1),
                          (U, 1), (W, 1), (V3, 1))])
    with pytest.raises(RuntimeError, match="step budget"):
        reduce_to_tornheim(ts, relations=cyclic)


def test_trace_json_shape():
    ts = TermSum.make([tp(F(-2, 3), (FORM_M, 1), (FORM_N, 1), (U, 1), (W, 1))])
    trace = []
    reduce_to_tornheim(ts, trace=trace)
    data = trace_to_json(trace)
    assert data
    step = data[0]
    assert set(step) == {"term", "pair", "relation", "produced"}
    assert step["relation"]["v"] == [0, 1]
    assert all(set(t) == {"coeff", "factors"} for t in step["produced"])


def test_random_products_reduce_verified():
    # seeded sample of in-contract products; every traced step re-verified
    # against the exact polynomial identity, plus the end-to-end identity
    rng = random.Random(411)
    for _ in range(60):
        weight = rng.randint(4, 9)
        ntargets = rng.randint(2, min(4, weight - 2))
        forms = [FORM_M, FORM_N] + rng.sample(G2_TARGETS, ntargets)
        exps = [1] * len(forms)
        for _ in range(weight - len(forms)):
            exps[rng.randrange(len(forms))] += 1
        coeff = F(rng.randint(-9, 9) or 1, rng.randint(1, 9))
        t = TermProduct.make(coeff, list(zip(forms, exps)))
        trace = []
        out = reduce_to_tornheim(TermSum.make([t]), trace=trace, verify=False)
        for st in trace:
            assert verify_step(TermSum.make([st.term]), st.produced)
        assert verify_step(TermSum.make([t]), out)
