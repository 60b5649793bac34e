"""Exchange/contraction blocks, i.e. the dashed (XC)/(WX) lines of the proofs.

Every helper receives the rule constructors it should use, so the same code
serves ISC, ISL and LJ trees.
"""
from __future__ import annotations

from typing import Callable, Dict, List, Sequence, Tuple


def context_length(d) -> int:
    c = d.conclusion
    a = c[0] if isinstance(c, tuple) else c
    return len(a.context)


def permute(d, order: Sequence[int], exchange: Callable):
    """Reorder contexts so that new position ``t`` holds old position ``order[t]``.

    Implemented as a bubble sort of adjacent exchanges.
    """
    cur = list(range(context_length(d)))
    assert sorted(order) == cur, order
    for t, src in enumerate(order):
        s = cur.index(src)
        while s > t:
            d = exchange(d, s - 1)
            cur[s - 1], cur[s] = cur[s], cur[s - 1]
            s -= 1
    return d


def merge(d, pairs: Sequence[Tuple[int, int]], exchange: Callable, contract: Callable):
    """Remove each ``drop`` position by contracting it into its ``keep`` twin.

    The surviving positions keep their relative order.
    """
    drops: Dict[int, List[int]] = {}
    for keep, drop in pairs:
        drops.setdefault(keep, []).append(drop)
    dropped = {drop for _, drop in pairs}
    order = []
    for pos in range(context_length(d)):
        if pos in dropped:
            continue
        order.append(pos)
        order.extend(drops.get(pos, ()))
    d = permute(d, order, exchange)
    i = 0
    for pos in order:
        if pos in dropped:
            continue
        for _ in drops.get(pos, ()):
            d = contract(d, i)
        i += 1
    return d


def move_to_front(d, start: int, length: int, exchange: Callable):
    """Move the block ``[start, start+length)`` to the front of every context."""
    n = context_length(d)
    block = list(range(start, start + length))
    rest = [i for i in range(n) if i not in block]
    return permute(d, block + rest, exchange)


def move_to_end(d, positions: Sequence[int], exchange: Callable):
    n = context_length(d)
    rest = [i for i in range(n) if i not in positions]
    return permute(d, rest + list(positions), exchange)
