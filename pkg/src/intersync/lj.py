"""Intuitionistic sequent calculus LJ with multicut, used as a reference oracle.

Cuts name the positions of the eliminated occurrences in the right premise
context, so ``cut`` with positions ``S`` concludes ``Gamma, Delta - S |- beta``.
The elimination below is written independently of the ISC engine.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from . import blocks
from .core import Arrow, Atom, Conj, Formula, formula_size
from .errors import (BadMulticutCount, IndexOutOfRange, NoCut, RuleMismatch,
                     StepBudgetExceeded)
from .tree import Derivation, Path, check, node_count, replace_at, subtree, walk

Sequent = Atom


@dataclass(frozen=True)
class LjDerivation(Derivation):
    # structural padding inserted by ISC projection; ignored by equality
    padding: bool = field(default=False, compare=False, repr=False)

    system = "lj"

    def _infer(self, prem):
        rule, args = self.rule, self.args
        arity = _ARITY.get(rule)
        if arity is None:
            raise RuleMismatch(f"unknown LJ rule {rule!r}")
        if len(prem) != arity:
            raise RuleMismatch(f"{rule} expects {arity} premises, got {len(prem)}")
        if rule == "ax":
            (f,) = args
            return Atom((f,), f)
        if rule == "cut":
            (positions,) = args
            left, right = prem
            _check_positions(positions, len(right.context))
            if any(right.context[p] != left.succedent for p in positions):
                raise BadMulticutCount("cut positions do not hold the cut formula")
            if self.split is not None and self.split != (len(left.context),):
                raise RuleMismatch("split annotation disagrees with premises")
            rest = tuple(f for i, f in enumerate(right.context) if i not in positions)
            return Atom(left.context + rest, right.succedent)
        s = prem[0]
        if rule == "w":
            (f,) = args
            return Atom(s.context + (f,), s.succedent)
        if rule == "x":
            (j,) = args
            if not 0 <= j < len(s.context) - 1:
                raise IndexOutOfRange(f"x:{j} on context of length {len(s.context)}")
            ctx = list(s.context)
            ctx[j], ctx[j + 1] = ctx[j + 1], ctx[j]
            return Atom(tuple(ctx), s.succedent)
        if rule == "c":
            (j,) = args
            if not 0 <= j < len(s.context) - 1:
                raise IndexOutOfRange(f"c:{j} on context of length {len(s.context)}")
            if s.context[j] != s.context[j + 1]:
                raise RuleMismatch(f"c:{j} on distinct formulas")
            return Atom(s.context[: j + 1] + s.context[j + 2:], s.succedent)
        if rule == "arrow-r":
            if not s.context:
                raise RuleMismatch("arrow-r needs a non-empty context")
            return Atom(s.context[:-1], Arrow(s.context[-1], s.succedent))
        if rule == "conj-l":
            if len(s.context) < 2:
                raise RuleMismatch("conj-l needs two context formulas")
            return Atom(s.context[:-2] + (Conj(s.context[-2], s.context[-1]),), s.succedent)
        left, right = prem
        if self.split is not None and self.split != (len(left.context),):
            raise RuleMismatch("split annotation disagrees with premises")
        if rule == "arrow-l":
            if not right.context:
                raise RuleMismatch("arrow-l right premise has an empty context")
            principal = Arrow(left.succedent, right.context[-1])
            return Atom(left.context + right.context[:-1] + (principal,), right.succedent)
        # conj-r
        return Atom(left.context + right.context, Conj(left.succedent, right.succedent))


_ARITY = {"ax": 0, "cut": 2, "w": 1, "x": 1, "c": 1, "arrow-r": 1, "conj-l": 1,
          "arrow-l": 2, "conj-r": 2}


def _check_positions(positions, n):
    if not positions or list(positions) != sorted(set(positions)):
        raise BadMulticutCount("cut positions must be a non-empty increasing sequence")
    if positions[-1] >= n:
        raise IndexOutOfRange(f"cut position {positions[-1]} beyond context of length {n}")


# constructors ---------------------------------------------------------------

def ax(f: Formula, padding=False) -> LjDerivation:
    return LjDerivation("ax", (f,), padding=padding)


def cut(left, right, positions: Optional[Sequence[int]] = None) -> LjDerivation:
    if positions is None:
        positions = (len(right.conclusion.context) - 1,)
    return LjDerivation("cut", (tuple(positions),), (left, right))


def w(d, f, padding=False) -> LjDerivation:
    return LjDerivation("w", (f,), (d,), padding=padding)


def x(d, j, padding=False) -> LjDerivation:
    return LjDerivation("x", (j,), (d,), padding=padding)


def c(d, j, padding=False) -> LjDerivation:
    return LjDerivation("c", (j,), (d,), padding=padding)


def arrow_r(d) -> LjDerivation:
    return LjDerivation("arrow-r", (), (d,))


def conj_l(d) -> LjDerivation:
    return LjDerivation("conj-l", (), (d,))


def arrow_l(left, right) -> LjDerivation:
    return LjDerivation("arrow-l", (), (left, right))


def conj_r(left, right) -> LjDerivation:
    return LjDerivation("conj-r", (), (left, right))


def check_lj(d: LjDerivation) -> Sequent:
    return check(d)


def height(d: LjDerivation) -> int:
    """Number of rule applications in the tree."""
    return node_count(d)


# measures -------------------------------------------------------------------

class CutMeasureLj(NamedTuple):
    s: int
    h: int


def pair_less(p, q) -> bool:
    (s, h), (s2, h2) = p, q
    return (s < s2 and h <= h2) or (s <= s2 and h < h2)


def cut_measure(node: LjDerivation) -> CutMeasureLj:
    left, right = node.premises
    return CutMeasureLj(formula_size(left.conclusion.succedent), height(left) + height(right))


def find_cut(d: LjDerivation, path: Path = ()) -> Optional[Path]:
    """Leftmost cut whose premises are cut-free."""
    for i, p in enumerate(d.premises):
        found = find_cut(p, path + (i,))
        if found is not None:
            return found
    return path if d.rule == "cut" else None


def is_cut_free(d: LjDerivation) -> bool:
    return all(n.rule != "cut" for _, n in walk(d))


# elementary steps ------------------------------------------------------------

def _xs(d, j):
    return x(d, j)


def _cs(d, j):
    return c(d, j)


def _reduce(node: LjDerivation) -> LjDerivation:
    left, right = node.premises
    (S,) = node.args
    gamma = left.conclusion.context
    g = len(gamma)
    delta = right.conclusion.context
    q = len(delta)
    rr = right.rule

    if left.rule == "ax":
        d = blocks.merge(right, [(S[0], s) for s in S[1:]], _xs, _cs)
        return blocks.move_to_front(d, S[0], 1, _xs)
    if rr == "ax":
        return left

    touches = _touches(right, S)
    if not touches:
        return _commute_right(left, right, S, g)
    if left.rule in ("w", "x", "c", "arrow-l", "conj-l"):
        return _commute_left(left, right, S)

    r1 = right.premises[0]
    if rr == "w":
        if len(S) > 1:
            return cut(left, r1, S[:-1])
        d = r1
        for f in gamma:
            d = w(d, f)
        return blocks.move_to_front(d, q - 1, g, _xs)
    if rr == "x":
        (j,) = right.args
        swap = {j: j + 1, j + 1: j}
        return cut(left, r1, sorted(swap.get(s, s) for s in S))
    if rr == "c":
        (j,) = right.args
        moved = {s + 1 if s > j else s for s in S} | {j, j + 1}
        return cut(left, r1, sorted(moved))
    rest = S[:-1]
    if rr == "conj-l":
        a_proof, b_proof = left.premises
        r = cut(left, r1, rest) if rest else r1
        n1 = len(r.conclusion.context)
        d = cut(b_proof, r, (n1 - 1,))
        d = cut(a_proof, d, (len(d.conclusion.context) - 1,))
        if rest:
            d = blocks.merge(d, [(t, g + t) for t in range(g)], _xs, _cs)
        return d
    if rr == "arrow-l":
        (a_proof,) = left.premises
        b_proof, c_proof = right.premises
        d1 = len(b_proof.conclusion.context)
        sb = [s for s in rest if s < d1]
        sc = [s - d1 for s in rest if s >= d1]
        b2 = cut(left, b_proof, sb) if sb else b_proof
        c2 = cut(left, c_proof, sc) if sc else c_proof
        gb = g if sb else 0
        gc = g if sc else 0
        d = cut(b2, a_proof, (g,))
        d = cut(d, c2, (len(c2.conclusion.context) - 1,))
        mid = len(b2.conclusion.context)
        pairs = [(mid + t, t) for t in range(gb)] + [(mid + t, mid + g + t) for t in range(gc)]
        d = blocks.merge(d, pairs, _xs, _cs)
        return blocks.move_to_front(d, len(b2.conclusion.context) - gb, g, _xs)
    raise RuleMismatch(f"no LJ step for cut against {left.rule}/{rr}")


def _touches(right, S) -> bool:
    rr = right.rule
    q = len(right.conclusion.context)
    if rr in ("w", "arrow-l", "conj-l"):
        return q - 1 in S
    if rr == "x":
        (j,) = right.args
        return j in S or j + 1 in S
    if rr == "c":
        return right.args[0] in S
    return False


def _commute_right(left, right, S, g):
    rr = right.rule
    if rr == "w":
        return w(cut(left, right.premises[0], S), right.args[0])
    if rr in ("x", "c"):
        (j,) = right.args
        below = sum(1 for s in S if s < j)
        if rr == "x":
            return x(cut(left, right.premises[0], S), g + j - below)
        shifted = [s + 1 if s > j else s for s in S]
        return c(cut(left, right.premises[0], shifted), g + j - below)
    if rr == "arrow-r":
        return arrow_r(cut(left, right.premises[0], S))
    if rr == "conj-l":
        return conj_l(cut(left, right.premises[0], S))
    # two-premise rules: arrow-l (principal not cut) or conj-r
    first, second = right.premises
    d1 = len(first.conclusion.context)
    s1 = [s for s in S if s < d1]
    s2 = [s - d1 for s in S if s >= d1]
    build = arrow_l if rr == "arrow-l" else conj_r
    if s1 and s2:
        d = build(cut(left, first, s1), cut(left, second, s2))
        off = g + d1 - len(s1)
        return blocks.merge(d, [(t, off + t) for t in range(g)], _xs, _cs)
    if s1:
        return build(cut(left, first, s1), second)
    d = build(first, cut(left, second, s2))
    return blocks.move_to_front(d, d1, g, _xs)


def _commute_left(left, right, S):
    lr = left.rule
    rest = len(right.conclusion.context) - len(S)
    if lr == "w":
        d = w(cut(left.premises[0], right, S), left.args[0])
        n = len(d.conclusion.context)
        return blocks.permute(d, _insert_last_at(n, n - rest - 1), _xs)
    if lr == "x":
        return x(cut(left.premises[0], right, S), left.args[0])
    if lr == "c":
        return c(cut(left.premises[0], right, S), left.args[0])
    if lr == "conj-l":
        d = cut(left.premises[0], right, S)
        n = len(d.conclusion.context)
        k = n - rest
        d = blocks.move_to_end(d, [k - 2, k - 1], _xs)
        d = conj_l(d)
        return blocks.permute(d, _insert_last_at(n - 1, k - 2), _xs)
    # arrow-l: the cut moves into the premise carrying the succedent
    a_proof, b_proof = left.premises
    d = cut(b_proof, right, S)
    n = len(d.conclusion.context)
    tau = len(b_proof.conclusion.context) - 1
    d = blocks.move_to_end(d, [tau], _xs)
    d = arrow_l(a_proof, d)
    n = len(d.conclusion.context)
    return blocks.permute(d, _insert_last_at(n, n - 1 - rest), _xs)


def _insert_last_at(n, pos):
    order = list(range(n - 1))
    order.insert(pos, n - 1)
    return order


def lj_step(d: LjDerivation) -> LjDerivation:
    path = find_cut(d)
    if path is None:
        raise NoCut("derivation is cut-free")
    node = subtree(d, path)
    new = _reduce(node)
    assert new.conclusion == node.conclusion, (node.conclusion, new.conclusion)
    return replace_at(d, path, new)


def lj_eliminate(d: LjDerivation, max_steps: int = 100000) -> LjDerivation:
    check_lj(d)
    for _ in range(max_steps):
        if find_cut(d) is None:
            return d
        d = lj_step(d)
    if find_cut(d) is None:
        return d
    raise StepBudgetExceeded(max_steps)
