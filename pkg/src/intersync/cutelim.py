"""Cut measures, the elementary reduction steps and the elimination loop for ISC.

The measure of a cut is the multiset of per-atom pairs (size of the cut
formula, summed heights of the premises' LJ projections).  Heights ignore the
exchange/contraction/weakening padding that the projection inserts around
local rules, so they count ISC rule applications along each atom's thread.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from . import blocks
from .core import formula_size
from .errors import (MeasureIncrease, NoCut, NotACut, NotCanonical, NotClean, RuleMismatch,
                     StepBudgetExceeded)
from .isc import (IscDerivation, arrow_l, arrow_r, c, canonical_weaken, canonicalize,
                  check_isc, clean, cut, fus, gconj_l, gconj_r, is_canonical, is_clean,
                  lconj_l, lconj_r, p, project_to_lj, trace_succedent_origin,
                  unpadded_height, w, x)
from .lj import CutMeasureLj, pair_less
from .tree import Path, replace_at, subtree, walk

CutMeasureIsc = Tuple[CutMeasureLj, ...]


# measures -------------------------------------------------------------------

def find_topmost_cut(d, path: Path = ()) -> Optional[Path]:
    """Leftmost cut (in preorder) whose premises are cut-free."""
    if "cut" not in d.rule_set:
        return None
    for i, q in enumerate(d.premises):
        found = find_topmost_cut(q, path + (i,))
        if found is not None:
            return found
    return path


def measure(d: IscDerivation, path: Path = ()) -> CutMeasureIsc:
    node = subtree(d, path)
    if node.rule != "cut":
        raise NotACut(f"node at {list(path)} is {node.rule}, not a cut")
    left, right = node.premises
    pairs = [CutMeasureLj(formula_size(a.succedent), hl + hr)
             for a, hl, hr in zip(left.conclusion, left.threads, right.threads)]
    return tuple(sorted(pairs))


def measure_via_projection(d: IscDerivation, path: Path = ()) -> CutMeasureIsc:
    """Same as ``measure`` but read off the explicit LJ projections."""
    node = subtree(d, path)
    if node.rule != "cut":
        raise NotACut(f"node at {list(path)} is {node.rule}, not a cut")
    pairs = []
    for q in project_to_lj(node):
        left, right = q.premises
        pairs.append(CutMeasureLj(formula_size(left.conclusion.succedent),
                                  unpadded_height(left) + unpadded_height(right)))
    return tuple(sorted(pairs))


def _differences(m1, m2):
    c1, c2 = Counter(m1), Counter(m2)
    return list((c1 - c2).elements()), list((c2 - c1).elements())


def _pair_leq(a, b) -> bool:
    return tuple(a) == tuple(b) or pair_less(a, b)


def measure_leq(m1, m2) -> bool:
    """Every element of m1 - m2 is bounded by some element of m2 - m1."""
    d1, d2 = _differences(m1, m2)
    return all(any(_pair_leq(a, b) for b in d2) for a in d1)


def measure_lt(m1, m2) -> bool:
    return measure_leq(m1, m2) and Counter(m1) != Counter(m2)


def measure_dm_lt(m1, m2) -> bool:
    """Dershowitz-Manna multiset extension of ``pair_less``."""
    d1, d2 = _differences(m1, m2)
    if not d1 and not d2:
        return False
    return all(any(pair_less(a, b) for b in d2) for a in d1)


# elementary steps ---------------------------------------------------------------

def _insert_last_at(n, pos):
    order = list(range(n - 1))
    order.insert(pos, n - 1)
    return order


def _ctx_len(d) -> int:
    return len(d.conclusion[0].context)


def _touches(right, S) -> bool:
    rr = right.rule
    q = _ctx_len(right)
    if rr in ("w", "arrow-l", "gconj-l", "lconj-l"):
        return q - 1 in S
    if rr == "x":
        (j,) = right.args
        return j in S or j + 1 in S
    if rr == "c":
        return right.args[0] in S
    return False


def reduce_cut(node: IscDerivation) -> Tuple[IscDerivation, str]:
    """One elementary step on a cut with cut-free premises."""
    left, right = node.premises
    (S,) = node.args
    gammas = [a.context for a in left.conclusion]
    g = len(gammas[0])
    q = _ctx_len(right)
    rr = right.rule

    if left.rule == "ax":
        d = blocks.merge(right, [(S[0], s) for s in S[1:]], x, c)
        return blocks.move_to_front(d, S[0], 1, x), "axiom"
    if rr == "ax":
        return left, "axiom"
    if left.rule in ("w", "x", "c", "arrow-l", "gconj-l", "lconj-l"):
        return _commute_left(left, right, S), "commute-left"
    if not _touches(right, S):
        return _commute_right(left, right, S, g)

    r1 = right.premises[0]
    if rr == "w":
        if len(S) > 1:
            return cut(left, r1, S[:-1]), "weakening"
        d = canonical_weaken(r1, gammas)
        return blocks.move_to_front(d, q - 1, g, x), "weakening"
    if rr == "x":
        (j,) = right.args
        swap = {j: j + 1, j + 1: j}
        return cut(left, r1, sorted(swap.get(s, s) for s in S)), "exchange"
    if rr == "c":
        (j,) = right.args
        moved = {s + 1 if s > j else s for s in S} | {j, j + 1}
        return cut(left, r1, sorted(moved)), "contraction-multicut"
    rest = list(S[:-1])
    if rr == "gconj-l":
        if left.rule != "gconj-r":
            raise RuleMismatch(f"∧ cut against {left.rule}")
        a_proof, b_proof = left.premises
        r = cut(left, r1, rest) if rest else r1
        d = cut(b_proof, r, (_ctx_len(r) - 1,))
        d = cut(a_proof, d, (_ctx_len(d) - 1,))
        if rest:
            d = blocks.merge(d, [(t, g + t) for t in range(g)], x, c)
        return d, "gconj-conversion"
    if rr == "arrow-l":
        if left.rule != "arrow-r":
            raise RuleMismatch(f"→ cut against {left.rule}")
        (a_proof,) = left.premises
        b_proof, c_proof = right.premises
        d1 = _ctx_len(b_proof)
        sb = [s for s in rest if s < d1]
        sc = [s - d1 for s in rest if s >= d1]
        b2 = cut(left, b_proof, sb) if sb else b_proof
        c2 = cut(left, c_proof, sc) if sc else c_proof
        gb = g if sb else 0
        gc = g if sc else 0
        d = cut(b2, a_proof, (g,))
        d = cut(d, c2, (_ctx_len(c2) - 1,))
        mid = _ctx_len(b2)
        pairs = [(mid + t, t) for t in range(gb)] + [(mid + t, mid + g + t) for t in range(gc)]
        d = blocks.merge(d, pairs, x, c)
        return blocks.move_to_front(d, mid - gb, g, x), "arrow-conversion"
    if rr == "lconj-l":
        j, side, _ = right.args
        if left.rule != "lconj-r":
            raise RuleMismatch(f"∩ cut against {left.rule}")
        drop = j + 1 if side == "L" else j
        if left.args[0] == j:
            (l0,) = left.premises
            n = len(l0.conclusion)
            reduced, kind = p(l0, [t for t in range(n) if t != drop]), "symmetric-lconj"
        else:
            reduced, kind = _asymmetric(left, j, side), "asymmetric-lconj"
        if not rest:
            return cut(reduced, r1, S), kind
        d = cut(left, r1, rest)
        d = cut(reduced, d, (_ctx_len(d) - 1,))
        return blocks.merge(d, [(t, g + t) for t in range(g)], x, c), kind
    raise RuleMismatch(f"no step for a cut against {left.rule}/{rr}")


def _asymmetric(left, atom, side):
    """Replace the ∩R introducing atom ``atom``'s succedent by P keeping side ``side``."""
    origin_path, a = trace_succedent_origin(left, atom)[-1]
    origin = subtree(left, origin_path)
    (prem,) = origin.premises
    drop = a + 1 if side == "L" else a
    keep = [t for t in range(len(prem.conclusion)) if t != drop]
    return replace_at(left, origin_path, p(prem, keep))


def _commute_left(left, right, S):
    lr = left.rule
    rest = _ctx_len(right) - len(S)
    if lr == "w":
        d = w(cut(left.premises[0], right, S), left.args[0])
        n = _ctx_len(d)
        return blocks.permute(d, _insert_last_at(n, n - rest - 1), x)
    if lr == "x":
        return x(cut(left.premises[0], right, S), left.args[0])
    if lr == "c":
        return c(cut(left.premises[0], right, S), left.args[0])
    if lr == "gconj-l":
        d = cut(left.premises[0], right, S)
        n = _ctx_len(d)
        k = n - rest
        d = gconj_l(blocks.move_to_end(d, [k - 2, k - 1], x))
        return blocks.permute(d, _insert_last_at(n - 1, k - 2), x)
    if lr == "lconj-l":
        d = cut(left.premises[0], right, S)
        n = _ctx_len(d)
        k = n - rest
        d = lconj_l(blocks.move_to_end(d, [k - 1], x), *left.args)
        return blocks.permute(d, _insert_last_at(n, k - 1), x)
    # arrow-l: the cut moves into the premise carrying the succedent
    a_proof, b_proof = left.premises
    d = cut(b_proof, right, S)
    d = blocks.move_to_end(d, [_ctx_len(b_proof) - 1], x)
    d = arrow_l(a_proof, d)
    n = _ctx_len(d)
    return blocks.permute(d, _insert_last_at(n, n - 1 - rest), x)


def _commute_right(left, right, S, g):
    rr = right.rule
    r1 = right.premises[0]
    if rr == "w":
        return w(cut(left, r1, S), right.args[0]), "commute-right"
    if rr in ("x", "c"):
        (j,) = right.args
        below = sum(1 for s in S if s < j)
        if rr == "x":
            return x(cut(left, r1, S), g + j - below), "commute-right"
        shifted = [s + 1 if s > j else s for s in S]
        return c(cut(left, r1, shifted), g + j - below), "commute-right"
    if rr == "arrow-r":
        return arrow_r(cut(left, r1, S)), "commute-right"
    if rr == "gconj-l":
        return gconj_l(cut(left, r1, S)), "commute-right"
    if rr == "lconj-l":
        return lconj_l(cut(left, r1, S), *right.args), "commute-right"
    if rr == "lconj-r":
        (j,) = right.args
        return lconj_r(cut(fus(left, j, j + 1), r1, S), j), "lconj-r-commutation"
    first, second = right.premises
    d1 = _ctx_len(first)
    s1 = [s for s in S if s < d1]
    s2 = [s - d1 for s in S if s >= d1]
    build = arrow_l if rr == "arrow-l" else gconj_r
    if s1 and s2:
        d = build(cut(left, first, s1), cut(left, second, s2))
        off = g + d1 - len(s1)
        return blocks.merge(d, [(t, off + t) for t in range(g)], x, c), "commute-right"
    if s1:
        return build(cut(left, first, s1), second), "commute-right"
    d = build(first, cut(left, second, s2))
    return blocks.move_to_front(d, d1, g, x), "commute-right"


def apply_step(d: IscDerivation, path: Path) -> Tuple[IscDerivation, str]:
    """Reduce the cut at ``path`` (its premises must be cut-free)."""
    node = subtree(d, path)
    if node.rule != "cut":
        raise NotACut(f"node at {list(path)} is {node.rule}, not a cut")
    new, kind = reduce_cut(node)
    if new.conclusion != node.conclusion:
        raise RuleMismatch(f"{kind} step changed the concluded molecule")
    return replace_at(d, path, new), kind


def step(d: IscDerivation) -> Tuple[IscDerivation, str]:
    check_isc(d)
    if not is_clean(d):
        raise NotClean("step expects a derivation without P/Fus")
    if not is_canonical(d):
        raise NotCanonical("step expects a canonical derivation")
    path = find_topmost_cut(d)
    if path is None:
        raise NoCut("derivation is cut-free")
    return apply_step(d, path)


# the algorithm ------------------------------------------------------------------

@dataclass
class TraceEntry:
    kind: str
    path: Path
    measure_before: CutMeasureIsc
    created_measures: List[CutMeasureIsc]
    post_clean: bool
    dm_decrease: bool
    literal_decrease: bool

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "path": list(self.path),
            "measureBefore": [list(m) for m in self.measure_before],
            "createdMeasures": [[list(m) for m in ms] for ms in self.created_measures],
            "postClean": self.post_clean,
            "dmDecrease": self.dm_decrease,
            "literalDecrease": self.literal_decrease,
        }

    @classmethod
    def from_json(cls, obj) -> "TraceEntry":
        return cls(
            obj["kind"], tuple(obj["path"]),
            tuple(CutMeasureLj(*m) for m in obj["measureBefore"]),
            [tuple(CutMeasureLj(*m) for m in ms) for ms in obj["createdMeasures"]],
            obj["postClean"], obj["dmDecrease"], obj["literalDecrease"],
        )


@dataclass
class CutTrace:
    steps: List[TraceEntry] = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def to_json(self) -> list:
        return [s.to_json() for s in self.steps]

    @classmethod
    def from_json(cls, arr) -> "CutTrace":
        return cls([TraceEntry.from_json(o) for o in arr])

    @property
    def violations(self) -> List[TraceEntry]:
        return [s for s in self.steps if not s.dm_decrease]


def prepare(d: IscDerivation) -> IscDerivation:
    check_isc(d)
    return canonicalize(clean(d))


def eliminate(d: IscDerivation, max_steps: int = 100000, strict: bool = False):
    """Run the algorithm on ``canonicalize(clean(d))``; return ``(result, trace)``.

    Every created cut is compared with the removed one.  A step whose created
    cuts are not all smaller under the multiset order is recorded in the trace
    (``dm_decrease`` false); with ``strict`` it raises ``MeasureIncrease``.
    """
    d = prepare(d)
    trace = CutTrace()
    while True:
        path = find_topmost_cut(d)
        if path is None:
            return d, trace
        if len(trace) >= max_steps:
            raise StepBudgetExceeded(max_steps, trace)
        before = measure(d, path)
        stepped, kind = apply_step(d, path)
        post_clean = not is_clean(stepped)
        d = clean(stepped)
        new_sub = subtree(d, path)
        created = [measure(new_sub, sub) for sub, n in walk(new_sub) if n.rule == "cut"]
        entry = TraceEntry(kind, path, before, created, post_clean,
                           all(measure_dm_lt(m, before) for m in created),
                           all(measure_lt(m, before) for m in created))
        trace.steps.append(entry)
        if strict and not entry.dm_decrease:
            raise MeasureIncrease(f"{kind} step at {list(path)} created a cut that is not smaller",
                                  step=entry)


def replay(d: IscDerivation, trace: CutTrace) -> IscDerivation:
    """Re-apply the recorded steps to the original derivation."""
    d = prepare(d)
    for entry in trace:
        d, kind = apply_step(d, entry.path)
        if kind != entry.kind:
            raise RuleMismatch(f"replay produced a {kind} step where {entry.kind} was recorded")
        d = clean(d)
    return d
