"""The natural-deduction system ISL and its decoration by IT.

Global rules act pointwise on every atom; ``lconj-i:i`` merges the adjacent
atoms ``i`` and ``i+1`` (same context) and ``lconj-e:i:k`` projects atom ``i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

from . import blocks, it
from .core import Arrow, Atom, GConj, LConj, contains, molecule_wf
from .errors import (ArityMismatch, ContextMismatchInLConjI, EmptyResultAfterP,
                     GlobalConjPresent, IndexOutOfRange, RuleMismatch, SubjectMismatch,
                     VariableSequenceMismatch)
from .tree import Derivation, check, walk


@dataclass(frozen=True)
class IslDerivation(Derivation):
    system = "isl"

    def _infer(self, prem):
        rule, args = self.rule, self.args
        arity = _ARITY.get(rule)
        if arity is None:
            raise RuleMismatch(f"unknown ISL rule {rule!r}")
        if len(prem) != arity:
            raise RuleMismatch(f"{rule} expects {arity} premises, got {len(prem)}")
        if rule == "ax":
            (mol,) = args
            if not molecule_wf(mol):
                raise RuleMismatch("axiom molecule is empty or mixes context cardinalities")
            if any(a.context != (a.succedent,) for a in mol):
                raise RuleMismatch("axiom atoms must have the form [s |- s]")
            return tuple(mol)
        m = prem[0]
        if rule == "p":
            (keep,) = args
            if not keep:
                raise EmptyResultAfterP("p must keep at least one atom")
            if list(keep) != sorted(set(keep)) or keep[-1] >= len(m):
                raise IndexOutOfRange(f"bad kept index set {keep}")
            return tuple(m[i] for i in keep)
        if rule == "w":
            (fs,) = args
            if len(fs) != len(m):
                raise RuleMismatch("w needs one formula per atom")
            return tuple(Atom(a.context + (f,), a.succedent) for a, f in zip(m, fs))
        if rule == "x":
            (j,) = args
            if not 0 <= j < len(m[0].context) - 1:
                raise IndexOutOfRange(f"x:{j} out of range")
            return tuple(Atom(_swap(a.context, j), a.succedent) for a in m)
        if rule == "arrow-i":
            if not m[0].context:
                raise RuleMismatch("arrow-i needs a non-empty context")
            return tuple(Atom(a.context[:-1], Arrow(a.context[-1], a.succedent)) for a in m)
        if rule == "gconj-e":
            (side,) = args
            if not all(isinstance(a.succedent, GConj) for a in m):
                raise RuleMismatch("gconj-e needs & succedents in every atom")
            return tuple(Atom(a.context, _pick(a.succedent, side)) for a in m)
        if rule == "lconj-i":
            (i,) = args
            if not 0 <= i < len(m) - 1:
                raise IndexOutOfRange(f"lconj-i:{i} out of range")
            a, b = m[i], m[i + 1]
            if a.context != b.context:
                raise ContextMismatchInLConjI("merged atoms must share their context")
            return m[:i] + (Atom(a.context, LConj(a.succedent, b.succedent)),) + m[i + 2:]
        if rule == "lconj-e":
            i, side = args
            if not 0 <= i < len(m):
                raise IndexOutOfRange(f"lconj-e:{i} out of range")
            if not isinstance(m[i].succedent, LConj):
                raise RuleMismatch("lconj-e needs an intersection succedent")
            return m[:i] + (Atom(m[i].context, _pick(m[i].succedent, side)),) + m[i + 1:]
        a_mol, b_mol = prem
        if len(a_mol) != len(b_mol) or any(a.context != b.context for a, b in zip(a_mol, b_mol)):
            raise RuleMismatch(f"{rule} premises must have the same atoms' contexts")
        if rule == "arrow-e":
            out = []
            for fa, ar in zip(a_mol, b_mol):
                if fa.succedent != Arrow(ar.succedent, getattr(fa.succedent, "right", None)):
                    raise RuleMismatch("arrow-e function and argument do not match")
                out.append(Atom(fa.context, fa.succedent.right))
            return tuple(out)
        # gconj-i
        return tuple(Atom(a.context, GConj(a.succedent, b.succedent)) for a, b in zip(a_mol, b_mol))


_ARITY = {"ax": 0, "p": 1, "w": 1, "x": 1, "arrow-i": 1, "arrow-e": 2, "gconj-i": 2,
          "gconj-e": 1, "lconj-i": 1, "lconj-e": 1}


def _swap(ctx, j):
    ctx = list(ctx)
    ctx[j], ctx[j + 1] = ctx[j + 1], ctx[j]
    return tuple(ctx)


def _pick(f, side):
    return f.left if side == "L" else f.right


# constructors ---------------------------------------------------------------

def ax(formulas) -> IslDerivation:
    return IslDerivation("ax", (tuple(Atom((f,), f) for f in formulas),))


def p(d, keep) -> IslDerivation:
    return IslDerivation("p", (tuple(keep),), (d,))


def w(d, formulas) -> IslDerivation:
    return IslDerivation("w", (tuple(formulas),), (d,))


def x(d, j) -> IslDerivation:
    return IslDerivation("x", (j,), (d,))


def arrow_i(d) -> IslDerivation:
    return IslDerivation("arrow-i", (), (d,))


def arrow_e(fun, arg) -> IslDerivation:
    return IslDerivation("arrow-e", (), (fun, arg))


def gconj_i(a, b) -> IslDerivation:
    return IslDerivation("gconj-i", (), (a, b))


def gconj_e(d, side) -> IslDerivation:
    return IslDerivation("gconj-e", (side,), (d,))


def lconj_i(d, i) -> IslDerivation:
    return IslDerivation("lconj-i", (i,), (d,))


def lconj_e(d, i, side) -> IslDerivation:
    return IslDerivation("lconj-e", (i, side), (d,))


def check_isl(d: IslDerivation):
    return check(d)


def weaken(d, per_atom: Sequence[Sequence]) -> IslDerivation:
    """Append ``per_atom[i]`` to the context of atom ``i`` (one W per position)."""
    for k in range(len(per_atom[0]) if per_atom else 0):
        d = w(d, [fs[k] for fs in per_atom])
    return d


def var_proof(ctxs, pos) -> IslDerivation:
    """ISL proof of ``[(ctx_i ; ctx_i[pos])]`` from an axiom."""
    n = len(ctxs[0])
    d = ax([ctx[pos] for ctx in ctxs])
    for k in range(n):
        if k != pos:
            d = w(d, [ctx[k] for ctx in ctxs])
    return blocks.permute(d, [t + 1 for t in range(pos)] + [0] + list(range(pos + 1, n)), x)


# decoration by lambda terms ----------------------------------------------------

def extract_term(d: IslDerivation, vars: Sequence[str]):
    """Return ``(M, proofs)`` with one IT proof of ``(Gamma_i)^vars |- M : alpha_i`` per atom."""
    root = check_isl(d)
    for _, node in walk(d):
        for a in node.conclusion:
            if any(contains(f, GConj) for f in a.context + (a.succedent,)):
                raise GlobalConjPresent("derivation mentions the global conjunction &")
    vars = list(vars)
    if len(vars) != len(root[0].context) or len(set(vars)) != len(vars):
        raise ArityMismatch(f"need {len(root[0].context)} distinct variable names, got {vars}")
    proofs = [
        _decorate(d, i, vars, tuple(zip(vars, a.context)), frozenset(vars))
        for i, a in enumerate(root)
    ]
    return proofs[0].judgment.term, proofs


_BINDERS = ("x", "y", "z", "u", "v", "w")


def _fresh(names, taken):
    """First binder name not visible in the current scope."""
    used = set(names) | taken
    for name in _BINDERS:
        if name not in used:
            return name
    k = 1
    while f"x{k}" in used:
        k += 1
    return f"x{k}"


def _decorate(d, a, names, scope, taken) -> it.ItDerivation:
    rule = d.rule
    if rule == "ax":
        return it.axiom(scope, names[0])
    if rule == "w":
        return _decorate(d.premises[0], a, names[:-1], scope, taken)
    if rule == "x":
        return _decorate(d.premises[0], a, list(_swap(names, d.args[0])), scope, taken)
    if rule == "p":
        return _decorate(d.premises[0], d.args[0][a], names, scope, taken)
    if rule == "arrow-i":
        prem = d.premises[0]
        name = _fresh(names, taken)
        sigma = prem.conclusion[a].context[-1]
        body = _decorate(prem, a, names + [name], scope + ((name, sigma),), taken | {name})
        return it.arrow_i(body, name)
    if rule == "arrow-e":
        fun, arg = d.premises
        return it.arrow_e(_decorate(fun, a, names, scope, taken), _decorate(arg, a, names, scope, taken))
    if rule == "lconj-i":
        (i,) = d.args
        prem = d.premises[0]
        if a == i:
            return it.inter_i(_decorate(prem, i, names, scope, taken),
                              _decorate(prem, i + 1, names, scope, taken))
        return _decorate(prem, a + 1 if a > i else a, names, scope, taken)
    if rule == "lconj-e":
        i, side = d.args
        sub = _decorate(d.premises[0], a, names, scope, taken)
        return it.inter_e(sub, side) if a == i else sub
    raise GlobalConjPresent(f"rule {rule} has no IT counterpart")


def embed_typings(ds: Sequence[it.ItDerivation]) -> IslDerivation:
    """Build an ISL derivation of ``[(Gamma_i; alpha_i)]`` from synchronized IT proofs."""
    if not ds:
        raise ArityMismatch("need at least one IT derivation")
    for d in ds:
        it.check_it(d)
    first = ds[0].judgment
    for d in ds[1:]:
        if not it.alpha_eq(d.judgment.term, first.term):
            raise SubjectMismatch("IT proofs type different terms")
        if [x for x, _ in d.judgment.context] != [x for x, _ in first.context]:
            raise VariableSequenceMismatch("IT proofs bind different variable sequences")
    names = [[x for x, _ in d.judgment.context] for d in ds]
    result = _embed(list(ds), names)
    check_isl(result)
    return result


def _embed(proofs: List[it.ItDerivation], names: List[List[str]]) -> IslDerivation:
    for i, pr in enumerate(proofs):
        if pr.rule == "inter-i":
            a, b = pr.premises
            sub = _embed(proofs[:i] + [a, b] + proofs[i + 1:], names[:i] + [names[i], names[i]] + names[i + 1:])
            return lconj_i(sub, i)
        if pr.rule == "inter-e":
            sub = _embed(proofs[:i] + [pr.premises[0]] + proofs[i + 1:], names)
            return lconj_e(sub, i, pr.args[0])
    rules = {pr.rule for pr in proofs}
    if len(rules) != 1:
        raise SubjectMismatch(f"IT proofs are not synchronized: {sorted(rules)}")
    rule = rules.pop()
    if rule == "A":
        positions = {ns.index(pr.judgment.term.name) for pr, ns in zip(proofs, names)}
        if len(positions) != 1:
            raise SubjectMismatch("variables at different context positions")
        envs = [dict(pr.judgment.context) for pr in proofs]
        return var_proof([tuple(env[v] for v in ns) for env, ns in zip(envs, names)],
                         positions.pop())
    if rule == "arrow-e":
        funs = [pr.premises[0] for pr in proofs]
        args = [pr.premises[1] for pr in proofs]
        return arrow_e(_embed(funs, names), _embed(args, names))
    # arrow-i
    bodies = [pr.premises[0] for pr in proofs]
    new_names = [ns + [pr.judgment.term.binder] for pr, ns in zip(proofs, names)]
    return arrow_i(_embed(bodies, new_names))
