"""Derivation generators and fixed instances used by tests and demos.

``random_isc`` and ``random_isl`` grow well-formed derivations bottom-up from a
seeded ``random.Random``; ``enumerate_isc`` lists every derivation up to a node
bound over a small parameter alphabet.  The ``*_instance`` builders produce the
three cut shapes whose measures have closed forms, together with the component
heights those forms are stated in.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Sequence, Tuple

from . import isc, isl
from .core import Arrow, GConj, LConj, Var, formula_size
from .tree import node_count, uses_rule, walk

VARS = ("a", "b")


def random_formula(rng, depth=2, vars=VARS, lconj=True, gconj=True):
    if depth <= 0 or rng.random() < 0.45:
        return Var(rng.choice(vars))
    kinds = [Arrow] + [LConj] * lconj + [GConj] * gconj
    k = rng.choice(kinds)
    return k(random_formula(rng, depth - 1, vars, lconj, gconj),
             random_formula(rng, depth - 1, vars, lconj, gconj))


def cut_count(d) -> int:
    return sum(1 for _, n in walk(d) if n.rule == "cut")


# random ISC ------------------------------------------------------------------------

@dataclass
class IscGen:
    """Bottom-up random ISC derivations.

    ``local`` lets the generator insert P and Fus; ``cuts`` bounds the number
    of cuts built into one derivation.
    """

    rng: random.Random
    vars: Sequence[str] = VARS
    depth: int = 2
    local: bool = False
    lconj: bool = True
    gconj: bool = True
    weights: Dict[str, int] = field(default_factory=lambda: {
        "w": 3, "x": 2, "c": 1, "arrow-r": 3, "arrow-l": 2, "gconj-r": 1, "gconj-l": 1,
        "lconj-l": 2, "lconj-r": 2, "fus": 1, "p": 1, "cut": 3})

    def formula(self, depth=None):
        return random_formula(self.rng, self.depth if depth is None else depth, self.vars,
                              self.lconj, self.gconj)

    def small(self):
        return Var(self.rng.choice(self.vars))

    def derivation(self, budget: int, n: int, cuts: int = 0):
        rng = self.rng
        if budget <= 1:
            return isc.ax([self.formula() for _ in range(n)])
        rules = [r for r in self.weights if (self.local or r not in ("fus", "p"))
                 and (self.gconj or not r.startswith("gconj"))
                 and (self.lconj or not r.startswith("lconj"))
                 and (cuts > 0 or r != "cut")]
        rule = rng.choices(rules, [self.weights[r] for r in rules])[0]
        d = self._apply(rule, budget - 1, n, cuts)
        return d if d is not None else isc.w(self.derivation(budget - 1, n, cuts),
                                             [self.small() for _ in range(n)])

    def _split(self, budget):
        k = self.rng.randint(1, max(1, budget - 1))
        return k, max(1, budget - k)

    def _apply(self, rule, budget, n, cuts):
        rng = self.rng
        if rule == "cut":
            b1, b2 = self._split(budget)
            left = self.derivation(b1, n, cuts - 1)
            right = self.using(b2, [a.succedent for a in left.conclusion])
            occ = _occurrences(right, [a.succedent for a in left.conclusion])
            S = sorted(rng.sample(occ, rng.randint(1, min(2, len(occ)))))
            return isc.cut(left, right, S)
        if rule in ("arrow-l", "gconj-r"):
            b1, b2 = self._split(budget)
            c1 = rng.randint(0, cuts)
            first = self.derivation(b1, n, c1)
            second = self.derivation(b2, n, cuts - c1)
            if rule == "arrow-l":
                if not _ctx(second):
                    second = isc.w(second, [self.small() for _ in range(n)])
                return isc.arrow_l(first, second)
            return isc.gconj_r(first, second)
        if rule == "lconj-r":
            return self._lconj_r(budget, n, cuts)
        if rule == "fus":
            if n < 2:
                return None
            d = self.derivation(budget, n - 1, cuts)
            return isc.fus(d, rng.randrange(n - 1), rng.randint(0, n - 1))
        if rule == "p":
            extra = rng.randint(1, 2)
            d = self.derivation(budget, n + extra, cuts)
            return isc.p(d, sorted(rng.sample(range(n + extra), n)))
        d = self.derivation(budget, n, cuts)
        k = len(_ctx(d))
        if rule == "w":
            return isc.w(d, [self.formula(1) for _ in range(n)])
        if rule == "x":
            return isc.x(d, rng.randrange(k - 1)) if k >= 2 else None
        if rule == "c":
            if k == 0:
                return None
            return isc.c(isc.w(d, [a.context[-1] for a in d.conclusion]), k - 1)
        if rule == "arrow-r":
            return isc.arrow_r(d) if k else None
        if rule == "gconj-l":
            return isc.gconj_l(d) if k >= 2 else None
        if rule == "lconj-l":
            if not k:
                return None
            return isc.lconj_l(d, rng.randrange(n), rng.choice("LR"), self.small())
        return None

    def _lconj_r(self, budget, n, cuts):
        """Merge two atoms with equal contexts, pairing them up with ∩L when needed."""
        rng = self.rng
        d = self.derivation(budget, n + 1, cuts)
        mol = d.conclusion
        same = [i for i in range(n) if mol[i].context == mol[i + 1].context]
        if same:
            return isc.lconj_r(d, rng.choice(same))
        i = rng.randrange(n)
        a, b = mol[i], mol[i + 1]
        if a.context and a.context[:-1] == b.context[:-1]:
            d = isc.lconj_l(d, i, "L", b.context[-1])
            d = isc.lconj_l(d, i + 1, "R", a.context[-1])
            return isc.lconj_r(d, i)
        return None

    def using(self, budget, sigmas):
        """A derivation whose contexts hold ``sigmas`` at some common position."""
        rng = self.rng
        n = len(sigmas)
        roll = rng.random()
        if budget <= 1 or roll < 0.2:
            d = isc.ax(sigmas)
        elif roll < 0.4:
            d = isc.w(self.derivation(budget - 1, n), sigmas)
        else:
            d = self._principal(budget, sigmas)
        for _ in range(rng.randint(0, 3)):
            d = self._extend(d, sigmas)
        if not _occurrences(d, sigmas):
            d = isc.w(d, sigmas)
        return d

    def _principal(self, budget, sigmas):
        """A derivation ending in the left rule of the cut formula when possible."""
        rng = self.rng
        n = len(sigmas)
        if all(isinstance(s, Arrow) for s in sigmas):
            b1, b2 = self._split(budget)
            first = isc.ax([s.left for s in sigmas])
            for _ in range(rng.randint(0, 1)):
                first = isc.w(first, [self.small() for _ in range(n)])
            second = _to_last(self.using(b2, [s.right for s in sigmas]),
                              [s.right for s in sigmas])
            return isc.arrow_l(first, second)
        if all(isinstance(s, GConj) for s in sigmas):
            d = _to_last(self.using(budget - 1, [s.left for s in sigmas]),
                         [s.left for s in sigmas])
            return isc.gconj_l(isc.w(d, [s.right for s in sigmas]))
        inter = [i for i, s in enumerate(sigmas) if isinstance(s, LConj)]
        if inter:
            i = rng.choice(inter)
            side = rng.choice("LR")
            s = sigmas[i]
            part = s.left if side == "L" else s.right
            other = s.right if side == "L" else s.left
            inner = list(sigmas)
            inner[i] = part
            d = _to_last(self.using(budget - 1, inner), inner)
            return isc.lconj_l(d, i, side, other)
        return isc.w(self.derivation(budget - 1, n), sigmas)

    def _extend(self, d, sigmas):
        rng = self.rng
        n = len(sigmas)
        k = len(_ctx(d))
        roll = rng.random()
        if roll < 0.3:
            return isc.w(d, [self.small() for _ in range(n)])
        if roll < 0.45:
            return isc.w(d, sigmas)
        if roll < 0.65 and k >= 2:
            return isc.x(d, rng.randrange(k - 1))
        if roll < 0.8 and k >= 2 and len(_occurrences(isc.arrow_r(d), sigmas)):
            return isc.arrow_r(d)
        if roll < 0.9:
            return isc.c(isc.w(d, [a.context[-1] for a in d.conclusion]), k - 1) if k else d
        return d

    def with_cut(self, budget, n, cuts=1):
        """A derivation with at least one cut, at most ``cuts``."""
        while True:
            d = self._apply("cut", budget, n, cuts)
            if cuts_ok(d, cuts):
                return d


def cuts_ok(d, cuts) -> bool:
    return 1 <= cut_count(d) <= cuts


def _ctx(d):
    return d.conclusion[0].context


def _occurrences(d, sigmas) -> List[int]:
    mol = d.conclusion
    return [t for t in range(len(mol[0].context))
            if all(a.context[t] == s for a, s in zip(mol, sigmas))]


def _to_last(d, sigmas):
    occ = _occurrences(d, sigmas)
    k = len(_ctx(d))
    t = occ[-1]
    for j in range(t, k - 1):
        d = isc.x(d, j)
    return d


def random_isc(seed, max_nodes=40, max_cuts=3, local=True, atoms=(1, 3), **kw) -> isc.IscDerivation:
    """A random ISC derivation with between one and ``max_cuts`` cuts."""
    rng = random.Random(seed)
    gen = IscGen(rng, local=local, **kw)
    while True:
        n = rng.randint(*atoms)
        budget = rng.randint(3, max(3, max_nodes // 3))
        d = gen.with_cut(budget, n, rng.randint(1, max_cuts))
        if node_count(d) <= max_nodes:
            return d


def random_cut_free_isc(seed, max_nodes=40, local=False, atoms=(1, 3), **kw):
    rng = random.Random(seed)
    gen = IscGen(rng, local=local, **kw)
    while True:
        d = gen.derivation(rng.randint(1, max(1, max_nodes // 3)), rng.randint(*atoms))
        if node_count(d) <= max_nodes:
            return d


# exhaustive enumeration ------------------------------------------------------------

AX_FORMULAS = (Var("a"), Var("b"), Arrow(Var("a"), Var("b")), LConj(Var("a"), Var("b")))
W_FORMULAS = (Var("a"), Var("b"))


def _unary(d, wf, others, local):
    mol = d.conclusion
    n = len(mol)
    k = len(mol[0].context)
    for fs in itertools.product(wf, repeat=n):
        yield isc.w(d, fs)
    for j in range(k - 1):
        yield isc.x(d, j)
        if all(a.context[j] == a.context[j + 1] for a in mol):
            yield isc.c(d, j)
    if k:
        yield isc.arrow_r(d)
        for i in range(n):
            for side in "LR":
                for o in others:
                    yield isc.lconj_l(d, i, side, o)
    if k >= 2:
        yield isc.gconj_l(d)
    for i in range(n - 1):
        if mol[i].context == mol[i + 1].context:
            yield isc.lconj_r(d, i)
    if local:
        if n < 2:
            yield isc.fus(d, 0, 1)
        if n > 1:
            for i in range(n):
                yield isc.p(d, [t for t in range(n) if t != i])


def _binary(a, b):
    ma, mb = a.conclusion, b.conclusion
    if len(ma) != len(mb):
        return
    if mb[0].context:
        yield isc.arrow_l(a, b)
    yield isc.gconj_r(a, b)
    occ = _occurrences(b, [x.succedent for x in ma])
    for r in range(1, len(occ) + 1):
        for S in itertools.combinations(occ, r):
            yield isc.cut(a, b, S)


def enumerate_isc(max_nodes=4, max_atoms=2, max_ctx=2, ax_formulas=AX_FORMULAS,
                  w_formulas=W_FORMULAS, local=False) -> Iterator[isc.IscDerivation]:
    """Every derivation with at most ``max_nodes`` nodes over the given alphabet.

    Atoms are capped at ``max_atoms`` and contexts at ``max_ctx`` formulas;
    ∩L introduces only formulas from ``w_formulas``.
    """
    levels: Dict[int, List] = {1: []}
    for n in range(1, max_atoms + 1):
        for fs in itertools.product(ax_formulas, repeat=n):
            levels[1].append(isc.ax(fs))

    def fits(d):
        mol = d.conclusion
        return len(mol) <= max_atoms and len(mol[0].context) <= max_ctx

    for size in range(2, max_nodes + 1):
        out = []
        for d in levels[size - 1]:
            out.extend(q for q in _unary(d, w_formulas, w_formulas, local) if fits(q))
        for s1 in range(1, size - 1):
            for a in levels[s1]:
                for b in levels[size - 1 - s1]:
                    out.extend(q for q in _binary(a, b) if fits(q))
        levels[size] = out
    for size in sorted(levels):
        yield from levels[size]


# random ISL -------------------------------------------------------------------------

@dataclass
class IslGen:
    rng: random.Random
    vars: Sequence[str] = VARS
    depth: int = 2
    gconj: bool = True

    def formula(self, depth=None):
        return random_formula(self.rng, self.depth if depth is None else depth, self.vars,
                              True, self.gconj)

    def derivation(self, budget, n):
        rng = self.rng
        if budget <= 1:
            return isl.ax([self.formula() for _ in range(n)])
        rules = ["w", "x", "p", "arrow-i", "arrow-e", "lconj-i", "lconj-e"]
        if self.gconj:
            rules += ["gconj-i", "gconj-e"]
        rule = rng.choice(rules)
        d = self._apply(rule, budget - 1, n)
        return d if d is not None else isl.w(self.derivation(budget - 1, n),
                                             [self.formula(1) for _ in range(n)])

    def _apply(self, rule, budget, n):
        rng = self.rng
        if rule == "p":
            extra = rng.randint(1, 2)
            d = self.derivation(budget, n + extra)
            return isl.p(d, sorted(rng.sample(range(n + extra), n)))
        if rule == "lconj-i":
            d = self.derivation(budget, n)
            ctxs = [a.context for a in d.conclusion]
            if not ctxs[0]:
                return None
            i = rng.randrange(n)
            dup = ctxs[:i + 1] + ctxs[i:]
            pos = rng.randrange(len(ctxs[0]))
            v = isl.var_proof(dup, pos)
            f = v.conclusion[i].succedent
            if isinstance(f, LConj):
                v = isl.lconj_e(isl.lconj_e(v, i, "L"), i + 1, "R")
            return isl.lconj_i(v, i)
        d = self.derivation(budget, n)
        mol = d.conclusion
        ctxs = [a.context for a in mol]
        k = len(ctxs[0])
        if rule == "w":
            return isl.w(d, [self.formula(1) for _ in range(n)])
        if rule == "x":
            return isl.x(d, rng.randrange(k - 1)) if k >= 2 else None
        if rule == "arrow-i":
            return isl.arrow_i(d) if k else None
        if rule == "arrow-e":
            extended = [ctx + (a.succedent,) for ctx, a in zip(ctxs, mol)]
            body = isl.var_proof(extended, rng.randrange(k + 1))
            return isl.arrow_e(isl.arrow_i(body), d)
        if rule == "gconj-i":
            other = isl.var_proof(ctxs, rng.randrange(k)) if k else d
            return isl.gconj_i(d, other) if rng.random() < 0.5 else isl.gconj_i(other, d)
        if rule == "gconj-e":
            if all(isinstance(a.succedent, GConj) for a in mol):
                return isl.gconj_e(d, rng.choice("LR"))
            return None
        # lconj-e
        inter = [i for i, a in enumerate(mol) if isinstance(a.succedent, LConj)]
        return isl.lconj_e(d, rng.choice(inter), rng.choice("LR")) if inter else None


def random_isl(seed, max_nodes=30, gconj=True, atoms=(1, 3)) -> isl.IslDerivation:
    rng = random.Random(seed)
    gen = IslGen(rng, gconj=gconj)
    while True:
        d = gen.derivation(rng.randint(1, max(1, max_nodes // 3)), rng.randint(*atoms))
        if node_count(d) <= max_nodes and (gconj or not _mentions_gconj(d)):
            return d


def _mentions_gconj(d) -> bool:
    from .core import contains
    return any(contains(f, GConj) for _, node in walk(d) for a in node.conclusion
               for f in a.context + (a.succedent,))


# the worked example -----------------------------------------------------------------

def example_pi1():
    a, m, n = Var("a"), Var("m"), Var("n")
    return isc.lconj_r(isc.arrow_l(isc.ax([a, a, m]), isc.ax([a, a, LConj(m, n)])), 0)


def example_pi2():
    a, m, n = Var("a"), Var("m"), Var("n")
    return isc.lconj_l(isc.ax([LConj(a, a), m]), 1, "L", n)


def example_pi():
    return isc.cut(example_pi1(), example_pi2(), (0,))


def example_isl_normal_form():
    """∩I over ∩E over →E, typing ``y x`` in ``x:α, y:α→α`` and ``x:μ, y:μ→(μ∩ν)``."""
    a, m, n = Var("a"), Var("m"), Var("n")
    ctxs = [(a, Arrow(a, a)), (a, Arrow(a, a)), (m, Arrow(m, LConj(m, n)))]
    d = isl.arrow_e(isl.var_proof(ctxs, 1), isl.var_proof(ctxs, 0))
    return isl.lconj_i(isl.lconj_e(d, 2, "L"), 0)


# closed-form schema instances ----------------------------------------------------------

def pair_base(k_a, k_b, u, ys):
    """Axiom formulas and ∩L steps giving two atoms the same one-formula context.

    Atom ``A`` starts from ``u`` and takes ``k_a`` left-side ∩L steps with the
    ``ys``; atom ``B`` starts from one of the ``ys`` and reaches the same
    formula in ``k_b`` steps (``1 <= k_b <= k_a``, or both zero).
    Returns ``(fa, fb, ops)`` with ``ops`` a list of ``(which, side, other)``.
    """
    if k_a == 0:
        return u, u, []
    spine = [u]
    for y in ys[:k_a]:
        spine.append(LConj(spine[-1], y))
    ops = [("A", "L", y) for y in ys[:k_a]]
    start = k_a - k_b
    fb = ys[start]
    ops.append(("B", "R", spine[start]))
    ops.extend(("B", "L", y) for y in ys[start + 1:k_a])
    return u, fb, ops


def _apply_pair(d, i, ops, swap=False):
    for which, side, other in ops:
        atom = i if (which == "A") != swap else i + 1
        d = isc.lconj_l(d, atom, side, other)
    return d


def _pad(d, k, fill):
    for _ in range(k):
        d = isc.w(d, fill)
    return d


def _fill(rng, n, pair=None):
    """Random weakening formulas, equal at ``pair`` and ``pair + 1``."""
    fs = [Var(rng.choice(VARS)) for _ in range(n)]
    if pair is not None:
        fs[pair + 1] = fs[pair]
    return fs


def heights(d) -> Tuple[int, ...]:
    """Per-atom unpadded heights read off the explicit LJ projection."""
    return tuple(isc.unpadded_height(q) for q in isc.project_to_lj(d))


@dataclass
class SchemaInstance:
    cut: isc.IscDerivation
    heights: Dict[str, object]
    sizes: Dict[str, object]


def _pair_heights(k_a, k_b):
    """Orders (k_a, k_b) so that the longer spine goes first."""
    return (k_a, k_b, False) if k_a >= k_b else (k_b, k_a, True)


def _pair(rng, ka, kb, u):
    big, small, swap = _pair_heights(ka, kb)
    if small == 0 and big > 0:
        raise ValueError("a paired atom with a non-empty spine needs at least one step")
    ys = [Var(rng.choice(VARS)) for _ in range(big)]
    fa, fb, ops = pair_base(big, small, u, ys)
    return (fb, fa, ops, True) if swap else (fa, fb, ops, False)


def commutation_instance(h0, ka, kb, pad_r, others=1, seed=0) -> SchemaInstance:
    """cut(π, ∩R(π')) where π ends in →R and the cut formula is not the ∩'s.

    ``h0 >= 2`` is π's thread height; π' pairs atoms 0 and 1 with ``ka``/``kb``
    ∩L steps and ``pad_r`` weakenings before the cut formula is weakened in.
    ``ka = kb = -1`` makes π' a bare axiom on the cut formulas.
    """
    rng = random.Random(seed)
    n = 1 + others
    phis = [Var(rng.choice(VARS)) for _ in range(n)]
    pi = isc.arrow_r(_pad(isc.ax(phis), h0 - 2, [Var(rng.choice(VARS)) for _ in range(n)]))
    gammas = [a.succedent for a in pi.conclusion]
    if ka < 0:
        right = isc.ax([gammas[0]] + gammas)
        S = (0,)
    else:
        u = Var(rng.choice(VARS))
        fa, fb, ops, swap = _pair(rng, ka, kb, u)
        rest = [Var(rng.choice(VARS)) for _ in range(others)]
        right = _apply_pair(isc.ax([fa, fb] + rest), 0, ops, swap)
        right = _pad(right, pad_r, _fill(rng, n + 1, 0))
        right = isc.w(right, [gammas[0]] + gammas)
        S = (len(_ctx(right)) - 1,)
    d = isc.cut(pi, isc.lconj_r(right, 0), S)
    pt, rt = heights(pi), heights(right)
    return SchemaInstance(d, {"h0": pt[0], "h1": rt[0], "h2": rt[1],
                              "hi": pt[1:], "hpi": rt[2:]},
                          {"g0": formula_size(gammas[0]),
                           "gi": [formula_size(g) for g in gammas[1:]]})


def symmetric_instance(ka, kb, pad_l, h3, side="L", others=1, seed=0) -> SchemaInstance:
    """cut(∩R(π), ∩L(π')) on the same atom.

    π pairs atoms 0 and 1 (``ka``/``kb`` ∩L steps, then ``pad_l`` weakenings);
    π' has thread height ``h3`` and holds the kept component last.
    """
    rng = random.Random(seed)
    u = Var(rng.choice(VARS))
    fa, fb, ops, swap = _pair(rng, ka, kb, u)
    rest = [Var(rng.choice(VARS)) for _ in range(others)]
    pi = _apply_pair(isc.ax([fa, fb] + rest), 0, ops, swap)
    pi = _pad(pi, pad_l, _fill(rng, others + 2, 0))
    left = isc.lconj_r(pi, 0)
    succ = [a.succedent for a in left.conclusion]
    alpha, beta = succ[0].left, succ[0].right
    part, other = (alpha, beta) if side == "L" else (beta, alpha)
    cut_parts = [part] + succ[1:]
    if h3 == 1:
        right0 = isc.ax(cut_parts)
    else:
        right0 = _pad(isc.ax([Var(rng.choice(VARS)) for _ in cut_parts]), h3 - 2,
                      [Var(rng.choice(VARS)) for _ in cut_parts])
        right0 = isc.w(right0, cut_parts)
    right = isc.lconj_l(right0, 0, side, other)
    d = isc.cut(left, right, (len(_ctx(right)) - 1,))
    pt, rt = heights(pi), heights(right0)
    return SchemaInstance(d, {"h1": pt[0], "h2": pt[1], "h3": rt[0],
                              "hi": pt[2:], "hpi": rt[1:]},
                          {"ab": formula_size(succ[0]), "alpha": formula_size(alpha),
                           "beta": formula_size(beta), "ai": [formula_size(s) for s in succ[1:]]})


def asymmetric_instance(ka, kb, kmu, knu, pad_l, pad_r, side="L", others=0, seed=0) -> SchemaInstance:
    """cut(∩R(π₀), ∩L(π'₀)) where the ∩L is on an atom whose ∩ comes from deeper.

    Atoms 0/1 of π₀ are paired with ``ka``/``kb`` steps and merged by the root
    ∩R; atoms 2/3 are paired with ``kmu``/``knu`` steps and merged by an inner
    ∩R below ``pad_l`` weakenings, giving the μ∩ν succedent.
    """
    rng = random.Random(seed)
    fa, fb, ops01, sw01 = _pair(rng, ka, kb, Var(rng.choice(VARS)))
    fm, fn, ops23, sw23 = _pair(rng, kmu, knu, Var(rng.choice(VARS)))
    rest = [Var(rng.choice(VARS)) for _ in range(others)]
    base = isc.ax([fa, fb, fm, fn] + rest)
    base = _apply_pair(_apply_pair(base, 0, ops01, sw01), 2, ops23, sw23)
    inner = isc.lconj_r(base, 2)
    pi0 = _pad(inner, pad_l, _fill(rng, others + 3, 0))
    left = isc.lconj_r(pi0, 0)
    succ = [a.succedent for a in left.conclusion]
    ab, mn = succ[0], succ[1]
    kept, other = (mn.left, mn.right) if side == "L" else (mn.right, mn.left)
    cut_parts = [ab.left, kept] + succ[2:]
    if pad_r < 0:
        right0 = isc.ax(cut_parts)
    else:
        right0 = _pad(isc.ax([Var(rng.choice(VARS)) for _ in cut_parts]), pad_r,
                      [Var(rng.choice(VARS)) for _ in cut_parts])
        right0 = isc.w(right0, cut_parts)
    right0 = isc.lconj_l(right0, 0, "L", ab.right)
    right = isc.lconj_l(right0, 1, side, other)
    d = isc.cut(left, right, (len(_ctx(right)) - 1,))
    pt, rt = heights(pi0), heights(right0)
    t_drop = heights(base)[3 if side == "L" else 2]
    return SchemaInstance(d, {"h1": pt[0], "h2": pt[1], "h3": pt[2], "h4": rt[0], "h5": rt[1],
                              "t_nu": t_drop, "hi": pt[3:], "hpi": rt[2:]},
                          {"ab": formula_size(ab), "mn": formula_size(mn),
                           "mu": formula_size(kept), "ai": [formula_size(s) for s in succ[2:]]})
