"""Formulas, atoms and molecules shared by every calculus in the package.

Formulas are immutable trees.  ``GConj`` is the global conjunction (written
``&``), ``LConj`` the local one, i.e. intersection (written ``^``).  LJ
formulas reuse ``Var`` and ``Arrow`` and add the single conjunction ``Conj``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence, Tuple, Union


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Arrow:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class GConj:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class LConj:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Conj:
    """The LJ conjunction both ISC conjunctions collapse into."""

    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


Formula = Union[Var, Arrow, GConj, LConj, Conj]
Context = Tuple[Formula, ...]

# binding strength for printing: ^ > & > ->
_PREC = {Arrow: 1, GConj: 2, Conj: 2, LConj: 3}
_SYMBOL = {Arrow: "->", GConj: "&", Conj: "&", LConj: "^"}


def format_formula(f: Formula) -> str:
    if isinstance(f, Var):
        return f.name
    prec = _PREC[type(f)]
    left, right = format_formula(f.left), format_formula(f.right)
    if not isinstance(f.left, Var):
        lp = _PREC[type(f.left)]
        # -> is right-associative, & and ^ left-associative
        if lp < prec or (lp == prec and isinstance(f, Arrow)):
            left = f"({left})"
    if not isinstance(f.right, Var):
        rp = _PREC[type(f.right)]
        if rp < prec or (rp == prec and not isinstance(f, Arrow)):
            right = f"({right})"
    return f"{left}{_SYMBOL[type(f)]}{right}"


def formula_size(f: Formula) -> int:
    """Number of variable and connective occurrences (parentheses not counted)."""
    if isinstance(f, Var):
        return 1
    return 1 + formula_size(f.left) + formula_size(f.right)


def is_canonical_formula(f: Formula) -> bool:
    return not isinstance(f, LConj)


def collapse(f: Formula) -> Formula:
    if isinstance(f, Var):
        return f
    if isinstance(f, Arrow):
        return Arrow(collapse(f.left), collapse(f.right))
    return Conj(collapse(f.left), collapse(f.right))


def contains(f: Formula, kind: type) -> bool:
    if isinstance(f, kind):
        return True
    if isinstance(f, Var):
        return False
    return contains(f.left, kind) or contains(f.right, kind)


@dataclass(frozen=True)
class Atom:
    context: Context
    succedent: Formula

    def __str__(self) -> str:
        ctx = ", ".join(format_formula(f) for f in self.context)
        return f"[{ctx}{' ' if ctx else ''}|- {format_formula(self.succedent)}]"


Molecule = Tuple[Atom, ...]


def atom(context: Sequence[Formula], succedent: Formula) -> Atom:
    return Atom(tuple(context), succedent)


def format_molecule(m: Sequence[Atom]) -> str:
    return "{" + "; ".join(str(a) for a in m) + "}"


def molecule_wf(m: Sequence[Atom]) -> bool:
    return len(m) > 0 and len({len(a.context) for a in m}) == 1


def molecule_eq(m1: Sequence[Atom], m2: Sequence[Atom]) -> bool:
    """Multiset equality of atom sequences."""
    return Counter(m1) == Counter(m2)


def cardinality(m: Sequence[Atom]) -> int:
    return len(m[0].context)
