import itertools
import json
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from intersync import corpus, cutelim, isc
from intersync.core import GConj, LConj, Var, atom, molecule_eq
from intersync.cutelim import CutTrace, measure_dm_lt, measure_leq, measure_lt
from intersync.errors import MeasureIncrease, NoCut, NotACut, NotCanonical, NotClean, StepBudgetExceeded
from intersync.lj import CutMeasureLj as M, pair_less
from intersync.tree import uses_rule
from strategies import seeds

a, b = Var("a"), Var("b")


# measures -------------------------------------------------------------------------

def test_measure_axiom_cut():
    d = isc.cut(isc.ax([a]), isc.ax([a]))
    assert cutelim.measure(d) == (M(1, 2),)
    assert cutelim.measure_via_projection(d) == (M(1, 2),)
    with pytest.raises(NotACut):
        cutelim.measure(isc.ax([a]))


@given(seeds)
def test_measure_matches_projection(seed):
    d = corpus.random_isc(seed, max_nodes=30, local=True)
    for path, node in cutelim.walk(d):
        if node.rule == "cut":
            assert cutelim.measure(d, path) == cutelim.measure_via_projection(d, path)


def test_measure_order_examples():
    assert measure_leq([M(1, 2)], [M(1, 2)]) and not measure_lt([M(1, 2)], [M(1, 2)])
    assert measure_lt([M(1, 2)], [M(1, 3)])
    assert measure_lt([M(1, 3), M(1, 3)], [M(1, 4)])
    assert measure_dm_lt([M(1, 2)], [M(1, 3)])
    assert not measure_dm_lt([M(1, 2)], [M(1, 2)])
    assert measure_dm_lt([M(2, 3), M(2, 4)], [M(3, 4)])


def _brute_dm(m1, m2):
    """M < N iff N = Z + X, M = Z + Y, X non-empty, every y below some x."""
    n2 = list(m2)
    for r in range(1, len(n2) + 1):
        for xs in set(itertools.combinations(sorted(n2), r)):
            z = Counter(n2) - Counter(xs)
            if z - Counter(m1):
                continue
            ys = list((Counter(m1) - z).elements())
            if all(any(pair_less(y, x) for x in xs) for y in ys):
                return True
    return False


def _brute_leq(m1, m2):
    rest1, rest2 = list(m1), list(m2)
    for p in list(rest1):
        if p in rest2:
            rest1.remove(p)
            rest2.remove(p)
    return all(any(p == q or pair_less(p, q) for q in rest2) for p in rest1)


pairs = st.builds(M, st.integers(1, 3), st.integers(0, 4))
msets = st.lists(pairs, max_size=4)


@given(msets, msets)
def test_dm_order_against_brute_force(m1, m2):
    assert measure_dm_lt(m1, m2) == _brute_dm(m1, m2)


@given(msets, msets)
def test_literal_order_against_brute_force(m1, m2):
    assert measure_leq(m1, m2) == _brute_leq(m1, m2)
    assert measure_lt(m1, m2) == (_brute_leq(m1, m2) and Counter(m1) != Counter(m2))


# topmost cut -------------------------------------------------------------------

def test_find_topmost_cut():
    assert cutelim.find_topmost_cut(isc.ax([a])) is None
    d = isc.cut(isc.ax([a]), isc.ax([a]))
    assert cutelim.find_topmost_cut(d) == ()
    nested = isc.cut(isc.ax([a]), isc.w(d, [b]), (0,))
    assert cutelim.find_topmost_cut(nested) == (1, 0)


# single steps ----------------------------------------------------------------------

def test_step_preconditions():
    with pytest.raises(NoCut):
        cutelim.step(isc.ax([a]))
    with pytest.raises(NotClean):
        cutelim.step(isc.cut(isc.p(isc.ax([a, b]), [0]), isc.ax([a])))
    with pytest.raises(NotCanonical):
        cutelim.step(isc.cut(isc.ax([LConj(a, b)]), isc.ax([LConj(a, b)])))


def test_axiom_step():
    d = isc.cut(isc.ax([a]), isc.w(isc.ax([b]), [a]), (1,))
    out, kind = cutelim.step(d)
    assert kind == "axiom" and not uses_rule(out, "cut")
    assert out.conclusion == d.conclusion


def test_gconj_conversion_cascade():
    left = isc.gconj_r(isc.ax([a]), isc.ax([b]))
    right = isc.gconj_l(isc.w(isc.ax([a]), [b]))
    d = isc.cut(left, right, (0,))
    out, kind = cutelim.step(d)
    assert kind == "gconj-conversion"
    assert out.rule == "cut" and out.premises[0] == isc.ax([a])
    inner = out.premises[1]
    assert inner.rule == "cut" and inner.premises[0] == isc.ax([b])
    assert out.conclusion == d.conclusion


def test_arrow_conversion():
    left = isc.arrow_r(isc.ax([a]))
    right = isc.arrow_l(isc.ax([a]), isc.ax([a]))
    out, kind = cutelim.step(isc.cut(left, right))
    assert kind == "arrow-conversion"
    cuts = [n for _, n in cutelim.walk(out) if n.rule == "cut"]
    assert [c.premises[0].conclusion[0].succedent for c in cuts] == [a, a]


def test_symmetric_step_puts_p_over_left_premise():
    si = corpus.symmetric_instance(1, 1, 0, 2, "L")
    out, kind = cutelim.step(si.cut)
    assert kind == "symmetric-lconj"
    assert out.rule == "cut" and out.premises[0].rule == "p"
    assert out.premises[0].premises[0] == si.cut.premises[0].premises[0]


def test_asymmetric_step_on_example():
    d = cutelim.prepare(corpus.example_pi())
    out, kind = cutelim.step(d)
    assert kind == "asymmetric-lconj"
    assert out.rule == "cut"
    left, right = out.premises
    # the ∩L on the second atom is gone and an internal ∩R became P
    assert right == d.premises[1].premises[0]
    assert uses_rule(left, "p") and left.rule == "lconj-r"


def test_commutation_step_copies_left_premise():
    si = corpus.commutation_instance(3, 1, 1, 0)
    out, kind = cutelim.step(si.cut)
    assert kind == "lconj-r-commutation"
    assert out.rule == "lconj-r" and out.premises[0].rule == "cut"
    assert out.premises[0].premises[0].rule == "fus"


# closed forms ------------------------------------------------------------------------

def _others(si):
    sz = si.sizes.get("gi", si.sizes.get("ai"))
    return [M(s, x + y) for s, x, y in zip(sz, si.heights["hi"], si.heights["hpi"])]


def _after(d):
    out, _ = cutelim.step(d)
    out = isc.clean(out)
    path = cutelim.find_topmost_cut(out)
    return cutelim.measure(out, path)


@given(st.integers(2, 6), st.sampled_from([(-1, -1), (0, 0), (1, 1), (2, 1), (1, 2), (3, 1)]),
       st.integers(0, 2), seeds)
def test_commutation_closed_form(h0, ks, pad, seed):
    si = corpus.commutation_instance(h0, ks[0], ks[1], pad, seed=seed)
    H, g0 = si.heights, si.sizes["g0"]
    assert cutelim.measure(si.cut) == tuple(sorted(
        [M(g0, H["h0"] + H["h1"] + H["h2"] + 1)] + _others(si)))
    assert _after(si.cut) == tuple(sorted(
        [M(g0, H["h0"] + H["h1"]), M(g0, H["h0"] + H["h2"])] + _others(si)))


@given(st.sampled_from([(0, 0), (1, 1), (2, 1), (1, 3)]), st.integers(0, 2), st.integers(1, 6),
       st.sampled_from("LR"), seeds)
def test_symmetric_closed_form(ks, pad, h3, side, seed):
    si = corpus.symmetric_instance(ks[0], ks[1], pad, h3, side, seed=seed)
    H, S = si.heights, si.sizes
    assert cutelim.measure(si.cut) == tuple(sorted(
        [M(S["ab"], H["h1"] + H["h2"] + H["h3"] + 2)] + _others(si)))
    kept = (S["alpha"], H["h1"]) if side == "L" else (S["beta"], H["h2"])
    assert _after(si.cut) == tuple(sorted([M(kept[0], kept[1] + H["h3"])] + _others(si)))


@given(st.sampled_from([(0, 0), (1, 1), (2, 1)]), st.sampled_from([(1, 1), (2, 1), (1, 3)]),
       st.integers(0, 2), st.integers(-1, 2), st.sampled_from("LR"), seeds)
def test_asymmetric_measure_drops_the_discarded_branch(ks, kmn, pad_l, pad_r, side, seed):
    # the rewritten thread loses the discarded ∩R premise as well as the ∩R/∩L pair
    si = corpus.asymmetric_instance(*ks, *kmn, pad_l, pad_r, side, others=1, seed=seed)
    H, S = si.heights, si.sizes
    first = M(S["ab"], H["h1"] + H["h2"] + 1 + H["h4"])
    assert cutelim.measure(si.cut) == tuple(sorted(
        [first, M(S["mn"], H["h3"] + H["h5"] + 1)] + _others(si)))
    assert _after(si.cut) == tuple(sorted(
        [first, M(S["mu"], H["h3"] + H["h5"] - 1 - H["t_nu"])] + _others(si)))


# the algorithm ----------------------------------------------------------------------

def test_eliminate_cut_free_is_identity():
    d = isc.arrow_r(isc.ax([a]))
    out, trace = cutelim.eliminate(d)
    assert out == d and len(trace) == 0


def test_eliminate_axiom_cut():
    out, trace = cutelim.eliminate(isc.cut(isc.ax([a]), isc.ax([a])))
    assert out == isc.ax([a]) and [e.kind for e in trace] == ["axiom"]


def test_eliminate_example():
    out, trace = cutelim.eliminate(corpus.example_pi())
    m, n = Var("m"), Var("n")
    from intersync.core import Arrow
    assert not uses_rule(out, "cut")
    assert molecule_eq(isc.check_isc(out), (atom([a, Arrow(a, a)], LConj(a, a)),
                                            atom([m, Arrow(m, LConj(m, n))], m)))
    assert [e.kind for e in trace] == ["asymmetric-lconj", "lconj-r-commutation",
                                       "asymmetric-lconj", "symmetric-lconj", "axiom"]
    assert all(e.dm_decrease for e in trace)


@given(seeds)
def test_eliminate_random(seed):
    d = corpus.random_isc(seed, max_nodes=30, local=True)
    out, trace = cutelim.eliminate(d)
    assert not uses_rule(out, "cut")
    assert isc.check_isc(out) == d.conclusion
    assert isc.is_canonical(out)
    assert cutelim.replay(d, trace) == out


def test_trace_json_round_trip():
    _, trace = cutelim.eliminate(corpus.example_pi())
    text = json.dumps(trace.to_json())
    again = CutTrace.from_json(json.loads(text))
    assert again.to_json() == trace.to_json()
    assert set(trace.to_json()[0]) == {"kind", "path", "measureBefore", "createdMeasures",
                                       "postClean", "dmDecrease", "literalDecrease"}


def test_budget():
    with pytest.raises(StepBudgetExceeded) as e:
        cutelim.eliminate(corpus.example_pi(), max_steps=2)
    assert len(e.value.trace) == 2


def _multicut_violation():
    for seed in range(500):
        d = corpus.random_isc(seed)
        _, trace = cutelim.eliminate(d)
        if trace.violations:
            return d, trace
    raise AssertionError("no violating derivation in the first 500 seeds")


def test_strict_mode_raises_on_multicut_increase():
    d, trace = _multicut_violation()
    bad = trace.violations[0]
    assert bad.kind in ("symmetric-lconj", "asymmetric-lconj")
    with pytest.raises(MeasureIncrease):
        cutelim.eliminate(d, strict=True)
