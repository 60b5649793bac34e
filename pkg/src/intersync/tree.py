"""Rule-tagged proof trees common to ISL, ISC and LJ.

A node stores its rule name, the rule's positional parameters and its
premises.  The concluded judgment is inferred from the premises on first
access and cached; an ill-formed node raises a ``KernelError`` then.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterator, Optional, Tuple

from .errors import KernelError

Path = Tuple[int, ...]


@dataclass(frozen=True)
class Derivation:
    rule: str
    args: tuple = ()
    premises: Tuple["Derivation", ...] = ()
    # optional |Gamma_i| annotation on two-premise rules; validated, never compared
    split: Optional[Tuple[int, ...]] = field(default=None, compare=False, repr=False)

    system = "?"

    @cached_property
    def conclusion(self):
        return self._infer(tuple(p.conclusion for p in self.premises))

    def _infer(self, premises):
        raise NotImplementedError

    @cached_property
    def rule_set(self) -> frozenset:
        out = {self.rule}
        for p in self.premises:
            out |= p.rule_set
        return frozenset(out)

    def with_premises(self, premises) -> "Derivation":
        return replace(self, premises=tuple(premises), split=None)

    def __str__(self) -> str:
        from .syntax import format_derivation

        return format_derivation(self)


def check(d: Derivation, path: Path = ()):
    """Infer the root judgment, attributing a failure to the lowest bad node."""
    for i, p in enumerate(d.premises):
        check(p, path + (i,))
    try:
        return d.conclusion
    except KernelError as e:
        if e.path is None:
            e.path = path
        raise


def walk(d: Derivation, path: Path = ()) -> Iterator[Tuple[Path, Derivation]]:
    """Preorder traversal yielding ``(path, node)``."""
    yield path, d
    for i, p in enumerate(d.premises):
        yield from walk(p, path + (i,))


def node_count(d: Derivation) -> int:
    return 1 + sum(node_count(p) for p in d.premises)


def subtree(d: Derivation, path: Path) -> Derivation:
    for i in path:
        d = d.premises[i]
    return d


def replace_at(d: Derivation, path: Path, new: Derivation) -> Derivation:
    if not path:
        return new
    head, rest = path[0], path[1:]
    prem = list(d.premises)
    prem[head] = replace_at(prem[head], rest, new)
    return d.with_premises(prem)


def uses_rule(d: Derivation, *rules: str) -> bool:
    return not d.rule_set.isdisjoint(rules)
