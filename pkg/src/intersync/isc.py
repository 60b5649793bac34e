"""The synchronous sequent calculus ISC with multicut.

Atoms are addressed by position.  Global rules act on every atom; the local
rules ``lconj-l:i:k`` and ``lconj-r:i`` touch atom ``i`` only (``lconj-r``
merges atoms ``i`` and ``i+1``).  ``fus:i:k`` inserts a copy of atom ``i`` at
position ``k`` and ``p:{...}`` keeps the listed atoms.

A cut stores the positions of the eliminated occurrences in the right
premise context; the same positions are used in every atom.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import List, Sequence, Tuple

from . import blocks, isl, lj
from .core import (Arrow, Atom, GConj, LConj, collapse, is_canonical_formula, molecule_wf)
from .errors import (BadMulticutCount, ContextMismatchInLConjR, EmptyResultAfterP,
                     IndexOutOfRange, NotPrincipalLocalConj, PreconditionsViolated,
                     RuleMismatch)
from .tree import Derivation, Path, check, replace_at, subtree, uses_rule, walk


@dataclass(frozen=True)
class IscDerivation(Derivation):
    system = "isc"

    def _infer(self, prem):
        rule, args = self.rule, self.args
        arity = _ARITY.get(rule)
        if arity is None:
            raise RuleMismatch(f"unknown ISC rule {rule!r}")
        if len(prem) != arity:
            raise RuleMismatch(f"{rule} expects {arity} premises, got {len(prem)}")
        if rule == "ax":
            (mol,) = args
            if not molecule_wf(mol):
                raise RuleMismatch("axiom molecule is empty or mixes context cardinalities")
            if any(a.context != (a.succedent,) for a in mol):
                raise RuleMismatch("axiom atoms must have the form [s |- s]")
            return tuple(mol)
        if arity == 2:
            return self._infer_binary(*prem)
        m = prem[0]
        n = len(m[0].context)
        if rule == "w":
            (fs,) = args
            if len(fs) != len(m):
                raise RuleMismatch("w needs one formula per atom")
            return tuple(Atom(a.context + (f,), a.succedent) for a, f in zip(m, fs))
        if rule in ("x", "c"):
            (j,) = args
            if not 0 <= j < n - 1:
                raise IndexOutOfRange(f"{rule}:{j} on contexts of length {n}")
            if rule == "x":
                return tuple(Atom(_swap(a.context, j), a.succedent) for a in m)
            if any(a.context[j] != a.context[j + 1] for a in m):
                raise RuleMismatch(f"c:{j} on distinct formulas")
            return tuple(Atom(a.context[:j + 1] + a.context[j + 2:], a.succedent) for a in m)
        if rule == "fus":
            i, k = args
            if not 0 <= i < len(m) or not 0 <= k <= len(m):
                raise IndexOutOfRange(f"fus:{i}:{k} on {len(m)} atoms")
            return m[:k] + (m[i],) + m[k:]
        if rule == "p":
            (keep,) = args
            if not keep:
                raise EmptyResultAfterP("p must keep at least one atom")
            if list(keep) != sorted(set(keep)) or keep[0] < 0 or keep[-1] >= len(m):
                raise IndexOutOfRange(f"bad kept index set {keep}")
            return tuple(m[i] for i in keep)
        if rule == "arrow-r":
            if n == 0:
                raise RuleMismatch("arrow-r needs a non-empty context")
            return tuple(Atom(a.context[:-1], Arrow(a.context[-1], a.succedent)) for a in m)
        if rule == "gconj-l":
            if n < 2:
                raise RuleMismatch("gconj-l needs two context formulas")
            return tuple(Atom(a.context[:-2] + (GConj(a.context[-2], a.context[-1]),), a.succedent)
                         for a in m)
        if rule == "lconj-l":
            i, side, other = args
            if not 0 <= i < len(m):
                raise IndexOutOfRange(f"lconj-l:{i} on {len(m)} atoms")
            if n == 0:
                raise RuleMismatch("lconj-l needs a non-empty context")
            a = m[i]
            last = a.context[-1]
            f = LConj(last, other) if side == "L" else LConj(other, last)
            return m[:i] + (Atom(a.context[:-1] + (f,), a.succedent),) + m[i + 1:]
        # lconj-r
        (i,) = args
        if not 0 <= i < len(m) - 1:
            raise IndexOutOfRange(f"lconj-r:{i} on {len(m)} atoms")
        a, b = m[i], m[i + 1]
        if a.context != b.context:
            raise ContextMismatchInLConjR("merged atoms must share their context")
        return m[:i] + (Atom(a.context, LConj(a.succedent, b.succedent)),) + m[i + 2:]

    def _infer_binary(self, left, right):
        if len(left) != len(right):
            raise RuleMismatch(f"{self.rule} premises have {len(left)} and {len(right)} atoms")
        if self.split is not None and self.split != tuple(len(a.context) for a in left):
            raise RuleMismatch("split annotation disagrees with premises")
        rule = self.rule
        if rule == "cut":
            (S,) = self.args
            q = len(right[0].context)
            if not S or list(S) != sorted(set(S)) or S[0] < 0:
                raise BadMulticutCount("cut positions must be a non-empty increasing sequence")
            if S[-1] >= q:
                raise IndexOutOfRange(f"cut position {S[-1]} beyond context of length {q}")
            out = []
            for l, r in zip(left, right):
                if any(r.context[s] != l.succedent for s in S):
                    raise BadMulticutCount("cut positions do not hold the cut formula in every atom")
                rest = tuple(f for t, f in enumerate(r.context) if t not in S)
                out.append(Atom(l.context + rest, r.succedent))
            return tuple(out)
        if rule == "arrow-l":
            if not right[0].context:
                raise RuleMismatch("arrow-l right premise has an empty context")
            return tuple(Atom(l.context + r.context[:-1] + (Arrow(l.succedent, r.context[-1]),),
                              r.succedent) for l, r in zip(left, right))
        # gconj-r
        return tuple(Atom(l.context + r.context, GConj(l.succedent, r.succedent))
                     for l, r in zip(left, right))

    @cached_property
    def threads(self) -> Tuple[int, ...]:
        """Per-atom height of the LJ projection, not counting structural padding."""
        rule, args = self.rule, self.args
        ts = [p.threads for p in self.premises]
        if rule == "ax":
            return (1,) * len(args[0])
        if len(ts) == 2:
            return tuple(a + b + 1 for a, b in zip(*ts))
        t = ts[0]
        if rule == "fus":
            i, k = args
            return t[:k] + (t[i],) + t[k:]
        if rule == "p":
            return tuple(t[i] for i in args[0])
        if rule == "lconj-l":
            i = args[0]
            return t[:i] + (t[i] + 1,) + t[i + 1:]
        if rule == "lconj-r":
            i = args[0]
            return t[:i] + (t[i] + t[i + 1] + 1,) + t[i + 2:]
        return tuple(h + 1 for h in t)


_ARITY = {"ax": 0, "cut": 2, "w": 1, "x": 1, "c": 1, "fus": 1, "p": 1, "arrow-l": 2,
          "arrow-r": 1, "gconj-l": 1, "gconj-r": 2, "lconj-l": 1, "lconj-r": 1}

LOCAL_RULES = ("fus", "p", "lconj-l", "lconj-r")


def _swap(ctx, j):
    ctx = list(ctx)
    ctx[j], ctx[j + 1] = ctx[j + 1], ctx[j]
    return tuple(ctx)


# constructors ---------------------------------------------------------------

def ax(formulas) -> IscDerivation:
    return IscDerivation("ax", (tuple(Atom((f,), f) for f in formulas),))


def cut(left, right, positions=None) -> IscDerivation:
    if positions is None:
        positions = (len(right.conclusion[0].context) - 1,)
    return IscDerivation("cut", (tuple(positions),), (left, right))


def w(d, formulas) -> IscDerivation:
    return IscDerivation("w", (tuple(formulas),), (d,))


def x(d, j) -> IscDerivation:
    return IscDerivation("x", (j,), (d,))


def c(d, j) -> IscDerivation:
    return IscDerivation("c", (j,), (d,))


def fus(d, i, k=None) -> IscDerivation:
    return IscDerivation("fus", (i, i + 1 if k is None else k), (d,))


def p(d, keep) -> IscDerivation:
    return IscDerivation("p", (tuple(keep),), (d,))


def arrow_l(left, right) -> IscDerivation:
    return IscDerivation("arrow-l", (), (left, right))


def arrow_r(d) -> IscDerivation:
    return IscDerivation("arrow-r", (), (d,))


def gconj_l(d) -> IscDerivation:
    return IscDerivation("gconj-l", (), (d,))


def gconj_r(left, right) -> IscDerivation:
    return IscDerivation("gconj-r", (), (left, right))


def lconj_l(d, i, side, other) -> IscDerivation:
    return IscDerivation("lconj-l", (i, side, other), (d,))


def lconj_r(d, i) -> IscDerivation:
    return IscDerivation("lconj-r", (i,), (d,))


def check_isc(d: IscDerivation):
    return check(d)


def is_clean(d: IscDerivation) -> bool:
    return not uses_rule(d, "fus", "p")


def contexts(d) -> List[tuple]:
    return [a.context for a in d.conclusion]


# clean ------------------------------------------------------------------------

def clean(d: IscDerivation) -> IscDerivation:
    """Remove every P and Fus by pushing them towards the leaves, innermost first."""
    if not uses_rule(d, "fus", "p"):
        return d
    prem = tuple(clean(q) for q in d.premises)
    if d.rule == "fus":
        return push_fus(prem[0], *d.args)
    if d.rule == "p":
        return push_p(prem[0], d.args[0])
    return d.with_premises(prem)


def push_fus(d: IscDerivation, i: int, k: int) -> IscDerivation:
    """Clean derivation of ``d``'s molecule with atom ``i`` copied to position ``k``."""
    rule, args = d.rule, d.args

    def ins(seq):
        seq = tuple(seq)
        return seq[:k] + (seq[i],) + seq[k:]

    if rule == "ax":
        return IscDerivation("ax", (ins(args[0]),))
    if rule == "w":
        return w(push_fus(d.premises[0], i, k), ins(args[0]))
    if rule not in LOCAL_RULES:
        return d.with_premises([push_fus(q, i, k) for q in d.premises])
    prem = d.premises[0]
    if rule == "lconj-l":
        j, side, other = args
        out = lconj_l(push_fus(prem, i, k), j if j < k else j + 1, side, other)
        return lconj_l(out, k, side, other) if j == i else out
    # lconj-r: conclusion atom j is premise atoms j, j+1
    (j,) = args
    pk = k if k <= j else k + 1
    if i != j:
        pi = i if i < j else i + 1
        return lconj_r(push_fus(prem, pi, pk), j + 1 if pk <= j else j)
    # duplicate both components next to each other, then merge both pairs
    a_copied = push_fus(prem, j, pk)
    b_index = j + 1 if j + 1 < pk else j + 2
    both = push_fus(a_copied, b_index, pk + 1)
    if pk <= j:
        return lconj_r(lconj_r(both, j + 2), pk)
    return lconj_r(lconj_r(both, pk), j)


def push_p(d: IscDerivation, keep: Sequence[int]) -> IscDerivation:
    """Clean derivation of the sub-molecule of ``d`` given by ``keep``."""
    keep = tuple(keep)
    if keep == tuple(range(len(d.conclusion))):
        return d
    rule, args = d.rule, d.args
    if rule == "ax":
        return IscDerivation("ax", (tuple(args[0][i] for i in keep),))
    if rule == "w":
        return w(push_p(d.premises[0], keep), [args[0][i] for i in keep])
    if rule not in LOCAL_RULES:
        return d.with_premises([push_p(q, keep) for q in d.premises])
    prem = d.premises[0]
    if rule == "lconj-l":
        j, side, other = args
        sub = push_p(prem, keep)
        return lconj_l(sub, keep.index(j), side, other) if j in keep else sub
    (j,) = args
    pkeep = []
    for a in keep:
        pkeep.extend([a] if a < j else [j, j + 1] if a == j else [a + 1])
    sub = push_p(prem, pkeep)
    return lconj_r(sub, pkeep.index(j)) if j in keep else sub


# canonical derivations ----------------------------------------------------------

def is_canonical(d: IscDerivation) -> bool:
    for _, node in walk(d):
        if node.rule == "ax" and not all(is_canonical_formula(a.succedent) for a in node.args[0]):
            return False
        if node.rule == "w" and not all(is_canonical_formula(f) for f in node.args[0]):
            return False
    return True


def canonical_ax(formulas) -> IscDerivation:
    """Axiom on ``formulas`` built from canonical axioms, ∩L and ∩R."""
    formulas = tuple(formulas)
    for i, f in enumerate(formulas):
        if isinstance(f, LConj):
            base = canonical_ax(formulas[:i] + (f.left, f.right) + formulas[i + 1:])
            d = lconj_l(base, i, "L", f.right)
            d = lconj_l(d, i + 1, "R", f.left)
            return lconj_r(d, i)
    return ax(formulas)


def canonical_w(d: IscDerivation, formulas) -> IscDerivation:
    """Weaken by one formula per atom, introducing only canonical formulas."""
    formulas = tuple(formulas)
    steps = []
    base = []
    for i, f in enumerate(formulas):
        while isinstance(f, LConj):
            steps.append((i, f.right))
            f = f.left
        base.append(f)
    d = w(d, base)
    for i, other in reversed(steps):
        d = lconj_l(d, i, "L", other)
    return d


def canonical_weaken(d: IscDerivation, per_atom: Sequence[Sequence]) -> IscDerivation:
    """Append ``per_atom[i]`` to atom ``i``'s context, one canonical W per position."""
    for t in range(len(per_atom[0]) if per_atom else 0):
        d = canonical_w(d, [fs[t] for fs in per_atom])
    return d


def canonicalize(d: IscDerivation) -> IscDerivation:
    if is_canonical(d):
        return d
    if d.rule == "ax":
        return canonical_ax(a.succedent for a in d.args[0])
    prem = [canonicalize(q) for q in d.premises]
    if d.rule == "w":
        return canonical_w(prem[0], d.args[0])
    return d.with_premises(prem)


# projection to LJ ------------------------------------------------------------------

def project_to_lj(d: IscDerivation) -> List[lj.LjDerivation]:
    """One LJ derivation per atom; P and Fus select and copy threads."""
    rule, args = d.rule, d.args
    if rule == "ax":
        return [lj.ax(collapse(a.succedent)) for a in args[0]]
    ps = [project_to_lj(q) for q in d.premises]
    if rule == "cut":
        return [lj.cut(l, r, args[0]) for l, r in zip(*ps)]
    if rule == "arrow-l":
        return [lj.arrow_l(l, r) for l, r in zip(*ps)]
    if rule == "gconj-r":
        return [lj.conj_r(l, r) for l, r in zip(*ps)]
    t = ps[0]
    if rule == "w":
        return [lj.w(q, collapse(f)) for q, f in zip(t, args[0])]
    if rule == "x":
        return [lj.x(q, args[0]) for q in t]
    if rule == "c":
        return [lj.c(q, args[0]) for q in t]
    if rule == "arrow-r":
        return [lj.arrow_r(q) for q in t]
    if rule == "gconj-l":
        return [lj.conj_l(q) for q in t]
    if rule == "fus":
        i, k = args
        return t[:k] + [t[i]] + t[k:]
    if rule == "p":
        return [t[i] for i in args[0]]
    if rule == "lconj-l":
        i, side, other = args
        q = lj.w(t[i], collapse(other), padding=True)
        if side == "R":
            q = lj.x(q, len(q.conclusion.context) - 2, padding=True)
        return t[:i] + [lj.conj_l(q)] + t[i + 1:]
    # lconj-r
    (i,) = args
    q = lj.conj_r(t[i], t[i + 1])
    g = len(t[i].conclusion.context)
    q = blocks.merge(q, [(s, g + s) for s in range(g)], _pad_x, _pad_c)
    return t[:i] + [q] + t[i + 2:]


def _pad_x(d, j):
    return lj.x(d, j, padding=True)


def _pad_c(d, j):
    return lj.c(d, j, padding=True)


def unpadded_height(d: lj.LjDerivation) -> int:
    return sum(1 for _, n in walk(d) if not n.padding)


def thread_heights(d: IscDerivation) -> Tuple[int, ...]:
    return d.threads


# occurrence tracking -------------------------------------------------------------

OccurrencePath = List[Tuple[Path, int]]


def trace_succedent_origin(d: IscDerivation, atom: int) -> OccurrencePath:
    """Follow atom ``atom``'s succedent down to the ∩R introducing its principal ∩."""
    mol = check_isc(d)
    if not 0 <= atom < len(mol):
        raise IndexOutOfRange(f"no atom {atom}")
    if not isinstance(mol[atom].succedent, LConj):
        raise NotPrincipalLocalConj("succedent is not an intersection")
    if not is_clean(d) or uses_rule(d, "cut") or not is_canonical(d):
        raise PreconditionsViolated("origin tracking needs a clean, canonical, cut-free derivation")
    path: Path = ()
    out: OccurrencePath = []
    node = d
    while True:
        out.append((path, atom))
        rule = node.rule
        if rule == "lconj-r":
            (j,) = node.args
            if atom == j:
                return out
            atom = atom if atom < j else atom + 1
            branch = 0
        elif rule in ("w", "x", "c", "gconj-l", "lconj-l"):
            branch = 0
        elif rule == "arrow-l":
            branch = 1
        else:
            # arrow-r/gconj-r build non-∩ succedents, and a canonical axiom has none
            raise PreconditionsViolated(f"succedent cannot originate at {rule}")
        node = node.premises[branch]
        path = path + (branch,)


# ISL <-> ISC ------------------------------------------------------------------------

def _merge_front(d, g, exchange, contract):
    """Contract the context block ``[g, 2g)`` into ``[0, g)``."""
    return blocks.merge(d, [(t, g + t) for t in range(g)], exchange, contract)


def isl_to_isc(d: isl.IslDerivation) -> IscDerivation:
    isl.check_isl(d)
    return _to_isc(d)


def _to_isc(d) -> IscDerivation:
    rule, args = d.rule, d.args
    if rule == "ax":
        return IscDerivation("ax", args)
    prem = [_to_isc(q) for q in d.premises]
    if rule in ("p", "w", "x"):
        return IscDerivation(rule, args, tuple(prem))
    if rule == "arrow-i":
        return arrow_r(prem[0])
    if rule == "lconj-i":
        return lconj_r(prem[0], args[0])
    mol = d.premises[0].conclusion
    g = len(mol[0].context)
    if rule == "gconj-i":
        return _merge_front(gconj_r(*prem), g, x, c)
    if rule == "arrow-e":
        fun, arg = prem
        betas = [a.succedent.right for a in mol]
        return _merge_front(cut(fun, arrow_l(arg, ax(betas))), g, x, c)
    if rule == "lconj-e":
        i, side = args
        succ = [a.succedent for a in mol]
        conj = succ[i]
        picked = conj.left if side == "L" else conj.right
        other = conj.right if side == "L" else conj.left
        right = lconj_l(ax(succ[:i] + [picked] + succ[i + 1:]), i, side, other)
        return cut(prem[0], right, (0,))
    # gconj-e
    (side,) = args
    succ = [a.succedent for a in mol]
    if side == "L":
        right = w(ax([s.left for s in succ]), [s.right for s in succ])
    else:
        right = x(w(ax([s.right for s in succ]), [s.left for s in succ]), 0)
    return cut(prem[0], gconj_l(right), (0,))


def isc_to_isl(d: IscDerivation) -> isl.IslDerivation:
    check_isc(d)
    return _to_isl(clean(d))


def _extend(d, per_atom_extra, order):
    """(WX) block: weaken by the given formulas, then reorder."""
    return blocks.permute(isl.weaken(d, per_atom_extra), order, isl.x)


def isl_cut(a, b, S) -> isl.IslDerivation:
    """Admissible multicut in ISL built from →I and →E."""
    gammas = contexts(a)
    n = len(gammas[0])
    q = len(b.conclusion[0].context)
    rest = [t for t in range(q) if t not in S]
    d = blocks.move_to_end(b, S, isl.x)
    # prefix Gamma
    d = _extend(d, gammas, list(range(q, q + n)) + list(range(q)))
    for _ in S:
        d = isl.arrow_i(d)
    deltas = [tuple(ctx[t] for t in rest) for ctx in contexts(b)]
    arg = isl.weaken(a, deltas)
    for _ in S:
        d = isl.arrow_e(d, arg)
    return d


def _to_isl(d) -> isl.IslDerivation:
    rule, args = d.rule, d.args
    if rule == "ax":
        return isl.IslDerivation("ax", args)
    prem = [_to_isl(q) for q in d.premises]
    if rule in ("p", "w", "x"):
        return isl.IslDerivation(rule, args, tuple(prem))
    if rule == "arrow-r":
        return isl.arrow_i(prem[0])
    if rule == "lconj-r":
        return isl.lconj_i(prem[0], args[0])
    if rule == "cut":
        return isl_cut(prem[0], prem[1], args[0])
    out = contexts(d)
    if rule == "c":
        (j,) = args
        body = isl.arrow_i(blocks.move_to_end(prem[0], [j + 1], isl.x))
        return isl.arrow_e(body, isl.var_proof(out, j))
    if rule == "gconj-r":
        a, b = prem
        deltas = [ctx for ctx in contexts(b)]
        gammas = contexts(a)
        g, dl = len(gammas[0]), len(deltas[0])
        left = isl.weaken(a, deltas)
        right = _extend(b, gammas, list(range(dl, dl + g)) + list(range(dl)))
        return isl.gconj_i(left, right)
    if rule == "gconj-l":
        body = isl.arrow_i(isl.arrow_i(prem[0]))
        n = len(out[0])
        body = isl.w(body, [ctx[-1] for ctx in out])
        conj = isl.var_proof(out, n - 1)
        body = isl.arrow_e(body, isl.gconj_e(conj, "L"))
        return isl.arrow_e(body, isl.gconj_e(conj, "R"))
    if rule == "arrow-l":
        a, b = prem
        gammas = contexts(a)
        g = len(gammas[0])
        z = out
        zn = len(z[0])
        # (Delta, beta ; gamma) -> (Gamma, Delta, a->b, beta ; gamma)
        bq = len(b.conclusion[0].context)
        extra = [gam + (zz[-1],) for gam, zz in zip(gammas, z)]
        order = (list(range(bq, bq + g)) + list(range(bq - 1)) + [bq + g, bq - 1])
        body = isl.arrow_i(_extend(b, extra, order))
        fun = isl.arrow_e(isl.var_proof(z, zn - 1), isl.weaken(a, [zz[g:] for zz in z]))
        return isl.arrow_e(body, fun)
    if rule == "lconj-l":
        i, side, other = args
        (b,) = prem
        bctx = contexts(b)
        last = [ctx[-1] for ctx in out]
        body = isl.x(isl.w(b, last), len(bctx[0]) - 1)
        body = isl.arrow_i(body)
        arg = isl.lconj_e(isl.var_proof(out, len(out[0]) - 1), i, side)
        return isl.arrow_e(body, arg)
    raise RuleMismatch(f"rule {rule} has no ISL counterpart")
