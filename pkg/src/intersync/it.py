"""Untyped lambda terms and the intersection type assignment system IT.

The application rule is the usual one: from ``M : s -> t`` and ``N : s``
conclude ``M N : t``.  (The printed figure types the argument with ``t``,
which makes the rule unusable for the correspondence with ISL.)
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple, Union

from .core import Arrow, Formula, GConj, LConj, contains, format_formula
from .errors import GlobalConjPresent, KernelError, NonLinearContext, RuleMismatch


@dataclass(frozen=True)
class TVar:
    name: str


@dataclass(frozen=True)
class Abs:
    binder: str
    body: "Term"


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"


Term = Union[TVar, Abs, App]


def format_term(t: Term) -> str:
    if isinstance(t, TVar):
        return t.name
    if isinstance(t, Abs):
        return f"\\{t.binder}.{format_term(t.body)}"
    fun = format_term(t.fun)
    if isinstance(t.fun, Abs):
        fun = f"({fun})"
    arg = format_term(t.arg)
    if not isinstance(t.arg, TVar):
        arg = f"({arg})"
    return f"{fun} {arg}"


def _nameless(t: Term, bound: Tuple[str, ...] = ()):
    if isinstance(t, TVar):
        for depth, name in enumerate(reversed(bound)):
            if name == t.name:
                return ("bound", depth)
        return ("free", t.name)
    if isinstance(t, Abs):
        return ("abs", _nameless(t.body, bound + (t.binder,)))
    return ("app", _nameless(t.fun, bound), _nameless(t.arg, bound))


def alpha_eq(t1: Term, t2: Term) -> bool:
    return _nameless(t1) == _nameless(t2)


TypingContext = Tuple[Tuple[str, Formula], ...]


@dataclass(frozen=True)
class Judgment:
    context: TypingContext
    term: Term
    type: Formula

    def __str__(self) -> str:
        ctx = ", ".join(f"{x}:{format_formula(f)}" for x, f in self.context)
        sep = " " if ctx else ""
        return f"[{ctx}{sep}|- {format_term(self.term)} : {format_formula(self.type)}]"


@dataclass(frozen=True)
class ItDerivation:
    rule: str
    judgment: Judgment
    premises: Tuple["ItDerivation", ...] = ()
    args: tuple = ()

    system = "it"

    @property
    def conclusion(self) -> Judgment:
        return self.judgment


def _env(ctx: TypingContext) -> Dict[str, Formula]:
    env = dict(ctx)
    if len(env) != len(ctx):
        raise NonLinearContext("variable bound twice in typing context")
    return env


def check_it(d: ItDerivation, path=()) -> Judgment:
    """Validate every node; return the root judgment."""
    for i, p in enumerate(d.premises):
        check_it(p, path + (i,))
    try:
        _check_node(d)
    except KernelError as e:
        if e.path is None:
            e.path = path
        raise
    return d.judgment


def _check_node(d: ItDerivation) -> None:
    j = d.judgment
    env = _env(j.context)
    if any(contains(f, GConj) for f in list(env.values()) + [j.type]):
        raise GlobalConjPresent("IT types do not contain &")
    prem = [p.judgment for p in d.premises]
    arity = {"A": 0, "inter-i": 2, "inter-e": 1, "arrow-i": 1, "arrow-e": 2}.get(d.rule)
    if arity is None:
        raise RuleMismatch(f"unknown IT rule {d.rule!r}")
    if len(prem) != arity:
        raise RuleMismatch(f"{d.rule} expects {arity} premises")
    if d.rule == "A":
        if not isinstance(j.term, TVar) or env.get(j.term.name) != j.type:
            raise RuleMismatch("axiom subject is not a variable of that type in the context")
        return
    if d.rule == "arrow-i":
        (p,) = prem
        if not isinstance(j.term, Abs) or not isinstance(j.type, Arrow):
            raise RuleMismatch("arrow-i concludes an abstraction of arrow type")
        x = j.term.binder
        if x in env:
            raise NonLinearContext(f"binder {x} already in the context")
        if _env(p.context) != {**env, x: j.type.left}:
            raise RuleMismatch("arrow-i premise context is not the context extended by the binder")
        if not alpha_eq(p.term, j.term.body) or p.type != j.type.right:
            raise RuleMismatch("arrow-i premise does not type the body")
        return
    for p in prem:
        if _env(p.context) != env:
            raise RuleMismatch(f"{d.rule} premises must share the conclusion context")
    if d.rule == "arrow-e":
        fun, arg = prem
        if not isinstance(j.term, App):
            raise RuleMismatch("arrow-e concludes an application")
        if not (alpha_eq(fun.term, j.term.fun) and alpha_eq(arg.term, j.term.arg)):
            raise RuleMismatch("arrow-e premises type the wrong subterms")
        if fun.type != Arrow(arg.type, j.type):
            raise RuleMismatch("arrow-e function type does not match argument and result")
        return
    if d.rule == "inter-i":
        a, b = prem
        if not (alpha_eq(a.term, j.term) and alpha_eq(b.term, j.term)):
            raise RuleMismatch("inter-i premises must type the same term")
        if j.type != LConj(a.type, b.type):
            raise RuleMismatch("inter-i conclusion is not the intersection of the premises")
        return
    (p,) = prem
    side = d.args[0]
    if not alpha_eq(p.term, j.term) or not isinstance(p.type, LConj):
        raise RuleMismatch("inter-e premise must give the same term an intersection type")
    if (p.type.left if side == "L" else p.type.right) != j.type:
        raise RuleMismatch(f"inter-e:{side} picks the wrong component")


# constructors
def axiom(ctx: TypingContext, name: str) -> ItDerivation:
    return ItDerivation("A", Judgment(tuple(ctx), TVar(name), dict(ctx)[name]))


def inter_i(a: ItDerivation, b: ItDerivation) -> ItDerivation:
    ja, jb = a.judgment, b.judgment
    return ItDerivation("inter-i", Judgment(ja.context, ja.term, LConj(ja.type, jb.type)), (a, b))


def inter_e(d: ItDerivation, side: str) -> ItDerivation:
    j = d.judgment
    t = j.type.left if side == "L" else j.type.right
    return ItDerivation("inter-e", Judgment(j.context, j.term, t), (d,), (side,))


def arrow_i(d: ItDerivation, name: str) -> ItDerivation:
    j = d.judgment
    env = dict(j.context)
    ctx = tuple((x, f) for x, f in j.context if x != name)
    return ItDerivation("arrow-i", Judgment(ctx, Abs(name, j.term), Arrow(env[name], j.type)), (d,))


def arrow_e(fun: ItDerivation, arg: ItDerivation) -> ItDerivation:
    jf, ja = fun.judgment, arg.judgment
    return ItDerivation("arrow-e", Judgment(jf.context, App(jf.term, ja.term), jf.type.right), (fun, arg))
