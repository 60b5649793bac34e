"""Acceptance criteria 1-9.

Each check prints one ``criterion N: PASS|FAIL`` line (also collected into the
pytest terminal summary).  Time limits are part of each criterion.  Run
directly with ``python tests/test_acceptance.py`` for the lines alone.
"""
import json
import os
import random
import sys
import time
from collections import Counter

sys.path.insert(0, os.path.dirname(__file__))

from intersync import corpus, cutelim, isc, isl, it, lj, syntax
from intersync.core import Arrow, LConj, Var, atom, format_molecule, molecule_eq
from intersync.lj import CutMeasureLj as M
from intersync.tree import node_count, subtree, uses_rule, walk

DATA = os.path.join(os.path.dirname(__file__), "data")
RESULTS = {}

N_RANDOM_ISC = 500
N_GENERATED = 1000
EXHAUSTIVE_NODES = 5


def report(n, ok, detail, elapsed, limit):
    ok = ok and elapsed < limit
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s, limit {limit}s) {detail}"
    RESULTS[n] = line
    print(line)
    return ok


def _read(name):
    with open(os.path.join(DATA, name)) as fh:
        return syntax.parse(fh.read())


# shared corpora, built once ---------------------------------------------------------

_cache = {}


def random_isc_corpus():
    if "isc" not in _cache:
        _cache["isc"] = [corpus.random_isc(s, max_nodes=40, max_cuts=3) for s in range(N_RANDOM_ISC)]
    return _cache["isc"]


def exhaustive_corpus():
    if "ex" not in _cache:
        _cache["ex"] = [d for d in corpus.enumerate_isc(max_nodes=EXHAUSTIVE_NODES)
                        if uses_rule(d, "cut")]
    return _cache["ex"]


def random_isl_corpus(gconj=True):
    key = f"isl{gconj}"
    if key not in _cache:
        _cache[key] = [corpus.random_isl(s, gconj=gconj) for s in range(N_RANDOM_ISC)]
    return _cache[key]


# 1 ---------------------------------------------------------------------------------

def criterion_1():
    t = time.perf_counter()
    pi1, pi2, pi_doc = _read("pi1.isc"), _read("pi2.isc"), _read("pi.isc")
    pi = isc.cut(pi1.derivation, pi2.derivation, (0,))
    ok = pi == pi_doc.derivation
    out, trace = cutelim.eliminate(pi)
    a, m, n = Var("a"), Var("m"), Var("n")
    expected = (atom([a, Arrow(a, a)], LConj(a, a)), atom([m, Arrow(m, LConj(m, n))], m))
    ok = ok and not uses_rule(out, "cut") and molecule_eq(isc.check_isc(out), expected)
    return report(1, ok, f"{len(trace)} steps, molecule {format_molecule(out.conclusion)}",
                  time.perf_counter() - t, 1)


# 2 ---------------------------------------------------------------------------------

def _after(d):
    out, kind = cutelim.step(d)
    out = isc.clean(out)
    return kind, cutelim.measure(out, cutelim.find_topmost_cut(out))


def _others(si, key):
    return [M(s, x + y) for s, x, y in zip(si.sizes[key], si.heights["hi"], si.heights["hpi"])]


def criterion_2():
    t = time.perf_counter()
    counts = Counter()
    # commutation: h0 = 1 would make π an axiom, which the axiom step handles first
    for h0 in range(2, 7):
        for ka, kb in [(-1, -1), (0, 0), (1, 1), (2, 1), (1, 2), (3, 1), (1, 4), (5, 5)]:
            for pad in range(3):
                for others in (0, 1, 2):
                    si = corpus.commutation_instance(h0, ka, kb, pad, others, seed=h0 * 7 + pad)
                    H, g0, oth = si.heights, si.sizes["g0"], _others(si, "gi")
                    before = tuple(sorted([M(g0, H["h0"] + H["h1"] + H["h2"] + 1)] + oth))
                    after = tuple(sorted([M(g0, H["h0"] + H["h1"]), M(g0, H["h0"] + H["h2"])] + oth))
                    kind, got = _after(si.cut)
                    good = (kind == "lconj-r-commutation" and cutelim.measure(si.cut) == before
                            and got == after)
                    counts["commutation", good] += 1
    for ka, kb in [(0, 0), (1, 1), (2, 1), (1, 2), (3, 1), (4, 4)]:
        for pad in range(3):
            for h3 in range(1, 7):
                for side in "LR":
                    si = corpus.symmetric_instance(ka, kb, pad, h3, side, others=1, seed=h3 + pad)
                    H, S, oth = si.heights, si.sizes, _others(si, "ai")
                    before = tuple(sorted([M(S["ab"], H["h1"] + H["h2"] + H["h3"] + 2)] + oth))
                    kept = (S["alpha"], H["h1"]) if side == "L" else (S["beta"], H["h2"])
                    after = tuple(sorted([M(kept[0], kept[1] + H["h3"])] + oth))
                    kind, got = _after(si.cut)
                    good = kind == "symmetric-lconj" and cutelim.measure(si.cut) == before and got == after
                    counts["symmetric", good] += 1
    for ka, kb in [(0, 0), (1, 1), (2, 1)]:
        for kmu, knu in [(1, 1), (2, 1), (1, 2), (3, 3)]:
            for pad_l in range(3):
                for pad_r in range(-1, 3):
                    for side in "LR":
                        si = corpus.asymmetric_instance(ka, kb, kmu, knu, pad_l, pad_r, side,
                                                        others=1, seed=pad_r + 3)
                        H, S, oth = si.heights, si.sizes, _others(si, "ai")
                        first = M(S["ab"], H["h1"] + H["h2"] + 1 + H["h4"])
                        h = H["h3"] + H["h5"]
                        before = tuple(sorted([first, M(S["mn"], h + 1)] + oth))
                        after = tuple(sorted([first, M(S["mu"], h - 1)] + oth))
                        kind, got = _after(si.cut)
                        good = kind == "asymmetric-lconj" and cutelim.measure(si.cut) == before and got == after
                        counts["asymmetric", good] += 1
    summary = ", ".join(f"{case} {counts[case, True]}/{counts[case, True] + counts[case, False]}"
                        for case in ("commutation", "symmetric", "asymmetric"))
    ok = not any(counts[case, False] for case in ("commutation", "symmetric", "asymmetric"))
    note = "" if ok else "; asymmetric after-measure is (|mu|, h-1-t_nu), see ledger"
    return report(2, ok, summary + note, time.perf_counter() - t, 10)


# 3 ---------------------------------------------------------------------------------

def criterion_3():
    t = time.perf_counter()
    checked = bad = 0
    seed = 0
    while checked < N_GENERATED:
        d = corpus.random_isc(10 ** 6 + seed, max_nodes=40, local=True)
        seed += 1
        if not uses_rule(d, "fus", "p"):
            continue
        checked += 1
        out = isc.clean(d)
        if (uses_rule(out, "fus", "p") or isc.check_isc(out) != d.conclusion
                or corpus.heights(out) != corpus.heights(d)):
            bad += 1
    return report(3, bad == 0, f"{checked} derivations with P/Fus, {bad} bad",
                  time.perf_counter() - t, 60)


# 4 ---------------------------------------------------------------------------------

def criterion_4():
    t = time.perf_counter()
    rng = random.Random(4)
    ds = [corpus.random_isc(2 * 10 ** 6 + s, max_nodes=40, depth=4) for s in range(N_GENERATED // 2)]
    while len(ds) < N_GENERATED:
        fs = []
        for _ in range(rng.randint(1, 3)):
            f = corpus.random_formula(rng, 4)
            while not isinstance(f, LConj):
                f = LConj(corpus.random_formula(rng, 3), corpus.random_formula(rng, 3))
            fs.append(f)
        ds.append(isc.ax(fs))
    bad = 0
    for d in ds:
        out = isc.canonicalize(d)
        if not isc.is_canonical(out) or not molecule_eq(isc.check_isc(out), d.conclusion):
            bad += 1
    s, tau = Var("s"), Var("t")
    expansion = isc.lconj_r(isc.lconj_l(isc.lconj_l(isc.ax([s, tau]), 0, "L", tau), 1, "R", s), 0)
    example = isc.canonicalize(isc.ax([LConj(s, tau)])) == expansion
    return report(4, bad == 0 and example,
                  f"{len(ds)} derivations, {bad} bad, example expansion {'matches' if example else 'differs'}",
                  time.perf_counter() - t, 60)


# 5 ---------------------------------------------------------------------------------

def _run_checked(d, max_steps=100000):
    """eliminate with the per-step surviving-cut check; returns (output, trace, problems)."""
    problems = Counter()
    work = cutelim.prepare(d)
    trace = cutelim.CutTrace()
    while True:
        path = cutelim.find_topmost_cut(work)
        if path is None:
            break
        if len(trace) >= max_steps:
            problems["budget"] += 1
            break
        survivors = {p: cutelim.measure(work, p) for p, n in walk(work)
                     if n.rule == "cut" and p[:len(path)] != path and path[:len(p)] != p}
        before = cutelim.measure(work, path)
        multi = len(subtree(work, path).args[0]) > 1
        new, kind = cutelim.apply_step(work, path)
        new = isc.clean(new)
        sub = subtree(new, path)
        created = [cutelim.measure(sub, p) for p, n in walk(sub) if n.rule == "cut"]
        if not all(cutelim.measure_dm_lt(m, before) for m in created):
            problems[f"no decrease ({'multicut' if multi else 'single cut'}): {kind}"] += 1
        for p, m in survivors.items():
            if not cutelim.measure_leq(cutelim.measure(new, p), m):
                problems["survivor increased"] += 1
        trace.steps.append(kind)
        work = new
    if uses_rule(work, "cut"):
        problems["cut left"] += 1
    if not molecule_eq(isc.check_isc(work), d.conclusion):
        problems["molecule changed"] += 1
    return work, trace, problems


def criterion_5():
    t = time.perf_counter()
    problems = Counter()
    derivs = exhaustive_corpus() + random_isc_corpus()
    steps = 0
    violating = 0
    for d in derivs:
        _, trace, pr = _run_checked(d)
        steps += len(trace)
        violating += bool(pr)
        problems.update(pr)
    detail = (f"{len(exhaustive_corpus())} exhaustive (<= {EXHAUSTIVE_NODES} nodes) + "
              f"{len(random_isc_corpus())} random, {steps} steps; "
              f"{violating} derivations with problems: {dict(problems) or 'none'}")
    return report(5, not problems, detail, time.perf_counter() - t, 300)


# 6 ---------------------------------------------------------------------------------

def criterion_6():
    t = time.perf_counter()
    singles = [d for d in exhaustive_corpus() + random_isc_corpus() if len(d.conclusion) == 1]
    bad = 0
    for d in singles:
        (q,) = isc.project_to_lj(d)
        via_lj = lj.lj_eliminate(q)
        out, _ = cutelim.eliminate(d)
        (via_isc,) = isc.project_to_lj(out)
        if not (lj.is_cut_free(via_lj) and lj.is_cut_free(via_isc)
                and lj.check_lj(via_lj) == lj.check_lj(via_isc) == lj.check_lj(q)):
            bad += 1
    return report(6, bad == 0 and singles, f"{len(singles)} singleton derivations, {bad} bad",
                  time.perf_counter() - t, 120)


# 7 ---------------------------------------------------------------------------------

def _constructions():
    a, b, c = Var("a"), Var("b"), Var("c")
    ok = {}
    ctxs = [(a, Arrow(a, b))]
    d = isc.isl_to_isc(isl.arrow_e(isl.var_proof(ctxs, 1), isl.var_proof(ctxs, 0)))
    node = d
    while node.rule in ("x", "c"):
        node = node.premises[0]
    ok["->E"] = (node.rule == "cut" and node.premises[1].rule == "arrow-l"
                 and node.premises[1].premises[1].rule == "ax")
    d = isc.isl_to_isc(isl.lconj_e(isl.ax([LConj(a, b)]), 0, "R"))
    ok["^E"] = (d.rule == "cut" and d.premises[1].rule == "lconj-l"
                and d.premises[1].premises[0] == isc.ax([b]))
    d = isc.isc_to_isl(isc.arrow_l(isc.w(isc.ax([a]), [c]), isc.w(isc.ax([a]), [b])))
    ok["->L"] = d.rule == "arrow-e" and d.premises[0].rule == "arrow-i" and d.premises[1].rule == "arrow-e"
    d = isc.isc_to_isl(isc.lconj_l(isc.ax([a]), 0, "L", b))
    ok["^L"] = (d.rule == "arrow-e" and d.premises[0].rule == "arrow-i"
                and d.premises[1].rule == "lconj-e" and d.premises[1].premises[0].rule == "ax")
    d = isc.isc_to_isl(isc.cut(isc.arrow_r(isc.ax([a])), isc.w(isc.ax([b]), [Arrow(a, a)]), (1,)))
    ok["cut"] = d.rule == "arrow-e" and d.premises[0].rule == "arrow-i"
    return ok


def criterion_7():
    t = time.perf_counter()
    bad = 0
    isls = random_isl_corpus()
    for d in isls:
        if isc.check_isc(isc.isl_to_isc(d)) != isl.check_isl(d):
            bad += 1
    iscs = random_isc_corpus() + [corpus.random_cut_free_isc(s, local=True) for s in range(N_RANDOM_ISC)]
    for d in iscs:
        if isl.check_isl(isc.isc_to_isl(d)) != isc.check_isc(d):
            bad += 1
    cons = _constructions()
    missing = [k for k, v in cons.items() if not v]
    return report(7, bad == 0 and not missing,
                  f"{len(isls)} ISL + {len(iscs)} ISC translated, {bad} bad; constructions "
                  f"{'all match' if not missing else 'differ: ' + ','.join(missing)}",
                  time.perf_counter() - t, 120)


# 8 ---------------------------------------------------------------------------------

def criterion_8():
    t = time.perf_counter()
    bad = 0
    ds = random_isl_corpus(gconj=False)
    for d in ds:
        names = [f"v{i}" for i in range(len(d.conclusion[0].context))]
        term, proofs = isl.extract_term(d, names)
        try:
            for p in proofs:
                it.check_it(p)
            if not all(it.alpha_eq(p.judgment.term, term) for p in proofs):
                bad += 1
            elif not molecule_eq(isl.check_isl(isl.embed_typings(proofs)), d.conclusion):
                bad += 1
        except Exception:
            bad += 1
    term, proofs = isl.extract_term(isl.arrow_i(isl.ax([Var("a")])), [])
    ident = str(it.check_it(proofs[0])) == "[|- \\x.x : a->a]"
    return report(8, bad == 0 and ident, f"{len(ds)} derivations, {bad} bad, identity "
                  f"{'exact' if ident else 'differs'}", time.perf_counter() - t, 60)


# 9 ---------------------------------------------------------------------------------

def criterion_9():
    t = time.perf_counter()
    docs = [syntax.document(d, name=f"r{i}") for i, d in enumerate(random_isc_corpus())]
    docs += [syntax.document(d) for d in random_isl_corpus()]
    docs += [syntax.document(isc.project_to_lj(d), system="lj") for d in random_isc_corpus()[:200]]
    for d in random_isl_corpus(gconj=False)[:200]:
        names = [f"v{i}" for i in range(len(d.conclusion[0].context))]
        docs.append(syntax.document(isl.extract_term(d, names)[1], system="it"))
    docs += [_read(f) for f in ("pi.isc", "pi1.isc", "pi2.isc", "normal_form.isl")]
    bad = 0
    for doc in docs:
        text = syntax.serialize(doc)
        again = syntax.parse(text)
        if list(again.payload) != list(doc.payload) or syntax.serialize(again) != text:
            bad += 1
    replay_bad = 0
    for d in random_isc_corpus()[:200] + [corpus.example_pi()]:
        out, trace = cutelim.eliminate(d)
        loaded = cutelim.CutTrace.from_json(json.loads(json.dumps(trace.to_json())))
        a = syntax.serialize(syntax.document(out))
        b = syntax.serialize(syntax.document(cutelim.replay(d, loaded)))
        if a != b:
            replay_bad += 1
    return report(9, bad == 0 and replay_bad == 0,
                  f"{len(docs)} documents round-tripped, {bad} bad; 201 replays, {replay_bad} differ",
                  time.perf_counter() - t, 60)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9]


def test_criterion_1_paper_example():
    assert criterion_1(), RESULTS[1]


def test_criterion_2_closed_forms():
    assert criterion_2(), RESULTS[2]


def test_criterion_3_clean():
    assert criterion_3(), RESULTS[3]


def test_criterion_4_canonicalize():
    assert criterion_4(), RESULTS[4]


def test_criterion_5_termination_and_measure():
    assert criterion_5(), RESULTS[5]


def test_criterion_6_lj_oracle():
    assert criterion_6(), RESULTS[6]


def test_criterion_7_translations():
    assert criterion_7(), RESULTS[7]


def test_criterion_8_decoration():
    assert criterion_8(), RESULTS[8]


def test_criterion_9_serialization():
    assert criterion_9(), RESULTS[9]


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
