import pytest
from hypothesis import given

from intersync import corpus, isl, it
from intersync.core import Arrow, GConj, LConj, Var, atom, molecule_eq
from intersync.errors import (ArityMismatch, ContextMismatchInLConjI, GlobalConjPresent,
                              RuleMismatch, SubjectMismatch, VariableSequenceMismatch)
from intersync.it import alpha_eq, format_term
from intersync.syntax import parse_term
from strategies import seeds

a, b, m, n = Var("a"), Var("b"), Var("m"), Var("n")


def test_check_rules():
    d = isl.arrow_i(isl.ax([a, b]))
    assert isl.check_isl(d) == (atom([], Arrow(a, a)), atom([], Arrow(b, b)))
    with pytest.raises(ContextMismatchInLConjI):
        isl.check_isl(isl.lconj_i(isl.ax([a, b]), 0))
    with pytest.raises(RuleMismatch):
        isl.check_isl(isl.arrow_e(isl.ax([a]), isl.ax([a])))


def test_var_proof():
    ctxs = [(a, b, Arrow(a, b))]
    d = isl.var_proof(ctxs, 1)
    assert isl.check_isl(d) == (atom(ctxs[0], b),)


def test_extract_identity():
    term, proofs = isl.extract_term(isl.arrow_i(isl.ax([a])), [])
    assert format_term(term) == "\\x.x"
    assert str(it.check_it(proofs[0])) == "[|- \\x.x : a->a]"


def test_extract_normal_form_example():
    d = corpus.example_isl_normal_form()
    assert molecule_eq(isl.check_isl(d), (atom([a, Arrow(a, a)], LConj(a, a)),
                                          atom([m, Arrow(m, LConj(m, n))], m)))
    term, proofs = isl.extract_term(d, ["x", "y"])
    assert format_term(term) == "y x"
    assert [str(it.check_it(p)) for p in proofs] == [
        "[x:a, y:a->a |- y x : a^a]",
        "[x:m, y:m->m^n |- y x : m]",
    ]
    assert proofs[0].rule == "inter-i" and proofs[1].rule == "inter-e"


def test_extract_preconditions():
    with pytest.raises(GlobalConjPresent):
        isl.extract_term(isl.ax([GConj(a, b)]), ["x"])
    with pytest.raises(ArityMismatch):
        isl.extract_term(isl.ax([a]), [])
    with pytest.raises(ArityMismatch):
        isl.extract_term(isl.w(isl.ax([a]), [a]), ["x", "x"])


def test_embed_round_trip_on_example():
    d = corpus.example_isl_normal_form()
    _, proofs = isl.extract_term(d, ["x", "y"])
    back = isl.embed_typings(proofs)
    assert molecule_eq(isl.check_isl(back), isl.check_isl(d))


def test_embed_preconditions():
    ctx = (("x", a),)
    one = it.axiom(ctx, "x")
    other = it.arrow_i(it.axiom((("x", a), ("y", b)), "y"), "y")
    with pytest.raises(SubjectMismatch):
        isl.embed_typings([one, other])
    renamed = it.axiom((("z", a),), "z")
    with pytest.raises(SubjectMismatch):
        isl.embed_typings([one, renamed])
    swapped = it.axiom((("y", b), ("x", a)), "x")
    with pytest.raises(VariableSequenceMismatch):
        isl.embed_typings([it.axiom((("x", a), ("y", b)), "x"), swapped])
    with pytest.raises(ArityMismatch):
        isl.embed_typings([])


def test_embed_identity():
    proof = it.arrow_i(it.axiom((("x", a),), "x"), "x")
    d = isl.embed_typings([proof])
    assert isl.check_isl(d) == (atom([], Arrow(a, a)),)


@given(seeds)
def test_extract_then_embed(seed):
    d = corpus.random_isl(seed, gconj=False)
    k = len(d.conclusion[0].context)
    names = [f"v{i}" for i in range(k)]
    term, proofs = isl.extract_term(d, names)
    for p, at in zip(proofs, d.conclusion):
        j = it.check_it(p)
        assert alpha_eq(j.term, term)
        assert j.type == at.succedent
        assert j.context == tuple(zip(names, at.context))
    back = isl.embed_typings(proofs)
    assert molecule_eq(isl.check_isl(back), d.conclusion)


def test_embed_intersection_of_distinct_derivations():
    ctx = (("x", LConj(Arrow(a, b), a)),)
    fun = it.inter_e(it.axiom(ctx, "x"), "L")
    arg = it.inter_e(it.axiom(ctx, "x"), "R")
    body = it.arrow_e(fun, arg)
    proof = it.arrow_i(body, "x")
    d = isl.embed_typings([proof])
    term, proofs = isl.extract_term(d, [])
    assert alpha_eq(term, parse_term("\\x.x x"))
