"""Concrete syntax: formulas, molecules, lambda terms and S-expression proofs.

A document is a few optional ``@name``/``@comment`` lines, a system tag
(``it``, ``isl``, ``isc`` or ``lj``) and the derivation (``it`` and ``lj``
documents may list several)::

    @name identity
    isl
    (arrow-i (ax {[a |- a]}))

Rule parameters live in the head (``x:0``, ``lconj-l:1:R``, ``cut:{0,2}``)
or follow it in braces: a molecule ``{[a |- a]; [b |- b]}``, a formula list
``{a; b->c}`` or a single formula ``{a^b}``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import isc, isl, it, lj
from .core import Arrow, Atom, Conj, GConj, LConj, Var, format_formula, format_molecule
from .errors import KernelError, ProofSyntaxError

SYSTEMS = ("it", "isl", "isc", "lj")

RULES = {
    "isc": ("ax", "cut", "w", "x", "c", "fus", "p", "arrow-l", "arrow-r", "gconj-l", "gconj-r",
            "lconj-l", "lconj-r"),
    "isl": ("ax", "p", "w", "x", "arrow-i", "arrow-e", "gconj-i", "gconj-e", "lconj-i",
            "lconj-e"),
    "lj": ("ax", "cut", "w", "x", "c", "arrow-l", "arrow-r", "conj-l", "conj-r"),
    "it": ("A", "inter-i", "inter-e", "arrow-i", "arrow-e"),
}

# number of head parameters after the rule name
_HEAD_ARGS = {
    "x": "i", "c": "i", "fus": "i|ii", "p": "s", "cut": "m", "lconj-l": "ik", "lconj-r": "i",
    "lconj-i": "i", "lconj-e": "ik", "gconj-e": "k", "inter-e": "k",
}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<turnstile>\|-)
  | (?P<arrow>->)
  | (?P<num>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[()\[\]{},;:.\\&^])
""", re.VERBOSE)

_HEAD = re.compile(r"[A-Za-z][A-Za-z0-9-]*(?::(?:\{[^}]*\}|[A-Za-z0-9]+))*")


@dataclass(frozen=True)
class Tok:
    kind: str
    value: str
    pos: int


@dataclass
class ProofDocument:
    system: str
    payload: List = field(default_factory=list)
    name: Optional[str] = None
    comment: Optional[str] = None

    @property
    def derivation(self):
        return self.payload[0]


class _Parser:
    def __init__(self, text: str, pos: int = 0, system: str = "isc"):
        self.text = text
        self.pos = pos
        self.system = system
        self._peeked: Optional[Tok] = None

    # positions and errors
    def where(self, pos: int) -> Tuple[int, int]:
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, message, pos=None, expected=()):
        line, col = self.where(self.pos if pos is None else pos)
        return ProofSyntaxError(message, line, col, expected)

    # tokens
    def _skip(self):
        while self.pos < len(self.text):
            m = _TOKEN.match(self.text, self.pos)
            if not m or m.lastgroup != "ws":
                return
            self.pos = m.end()

    def peek(self) -> Tok:
        if self._peeked is None:
            self._skip()
            if self.pos >= len(self.text):
                self._peeked = Tok("eof", "", self.pos)
            else:
                m = _TOKEN.match(self.text, self.pos)
                if not m:
                    raise self.error(f"unexpected character {self.text[self.pos]!r}")
                kind = m.lastgroup
                value = m.group()
                self._peeked = Tok(value if kind == "punct" else kind, value, self.pos)
        return self._peeked

    def next(self) -> Tok:
        tok = self.peek()
        self._peeked = None
        if tok.kind != "eof":
            self.pos = tok.pos + len(tok.value)
        return tok

    def at(self, *kinds) -> bool:
        return self.peek().kind in kinds

    def expect(self, kind: str, what: Optional[str] = None) -> Tok:
        tok = self.peek()
        if tok.kind != kind:
            shown = tok.value or "end of input"
            raise self.error(f"unexpected {shown!r}", tok.pos, (what or repr(kind),))
        return self.next()

    def head(self) -> Tuple[str, int]:
        self._skip()
        self._peeked = None
        m = _HEAD.match(self.text, self.pos)
        if not m:
            raise self.error("expected a rule name", expected=("rule name",))
        start = self.pos
        self.pos = m.end()
        return m.group(), start

    # formulas
    def formula(self):
        left = self._conj()
        if self.at("arrow"):
            self.next()
            return Arrow(left, self.formula())
        return left

    def _conj(self):
        left = self._inter()
        while self.at("&"):
            self.next()
            right = self._inter()
            left = Conj(left, right) if self.system == "lj" else GConj(left, right)
        return left

    def _inter(self):
        left = self._prim()
        while self.at("^"):
            if self.system == "lj":
                raise self.error("'^' is not an LJ connective", self.peek().pos, ("'->'", "'&'"))
            self.next()
            left = LConj(left, self._prim())
        return left

    def _prim(self):
        tok = self.peek()
        if tok.kind == "ident":
            self.next()
            return Var(tok.value)
        if tok.kind == "(":
            self.next()
            f = self.formula()
            self.expect(")", "')'")
            return f
        raise self.error(f"unexpected {tok.value or 'end of input'!r}", tok.pos,
                         ("variable", "'('"))

    def atom(self) -> Atom:
        self.expect("[", "'['")
        ctx = []
        if not self.at("turnstile"):
            ctx.append(self.formula())
            while self.at(","):
                self.next()
                ctx.append(self.formula())
        self.expect("turnstile", "'|-'")
        succ = self.formula()
        self.expect("]", "']'")
        return Atom(tuple(ctx), succ)

    def molecule(self):
        self.expect("{", "'{'")
        atoms = [self.atom()]
        while self.at(";"):
            self.next()
            atoms.append(self.atom())
        self.expect("}", "'}'")
        return tuple(atoms)

    def formula_list(self):
        self.expect("{", "'{'")
        fs = [self.formula()]
        while self.at(";"):
            self.next()
            fs.append(self.formula())
        self.expect("}", "'}'")
        return tuple(fs)

    # lambda terms
    def term(self):
        if self.at("\\"):
            self.next()
            name = self.expect("ident", "variable").value
            self.expect(".", "'.'")
            return it.Abs(name, self.term())
        t = self._term_atom()
        while self.at("ident", "(", "\\"):
            if self.at("\\"):
                return it.App(t, self.term())
            t = it.App(t, self._term_atom())
        return t

    def _term_atom(self):
        tok = self.peek()
        if tok.kind == "ident":
            self.next()
            return it.TVar(tok.value)
        if tok.kind == "(":
            self.next()
            t = self.term()
            self.expect(")", "')'")
            return t
        raise self.error(f"unexpected {tok.value or 'end of input'!r}", tok.pos,
                         ("variable", "'('", "'\\'"))

    def judgment(self) -> it.Judgment:
        self.expect("[", "'['")
        ctx = []
        if not self.at("turnstile"):
            while True:
                name = self.expect("ident", "variable").value
                self.expect(":", "':'")
                ctx.append((name, self.formula()))
                if not self.at(","):
                    break
                self.next()
        self.expect("turnstile", "'|-'")
        t = self.term()
        self.expect(":", "':'")
        ty = self.formula()
        self.expect("]", "']'")
        return it.Judgment(tuple(ctx), t, ty)

    # derivations
    def derivation(self):
        self.expect("(", "'('")
        text, start = self.head()
        name, *parts = text.split(":")
        rules = RULES[self.system]
        if name not in rules:
            raise self.error(f"unknown {self.system} rule {name!r}", start, rules)
        hargs = self._head_args(name, parts, start)
        if self.system == "it":
            return self._it_node(name, hargs)
        params = self._params(name)
        split = None
        if self.at("ident") and self.peek().value == "split":
            split = self._split()
        premises = []
        while self.at("("):
            premises.append(self.derivation())
        self.expect(")", "')'")
        return self._build(name, hargs, params, split, tuple(premises), start)

    def _head_args(self, name, parts, start):
        spec = _HEAD_ARGS.get(name, "")
        shapes = spec.split("|") if spec else [""]
        if len(parts) not in {len(s) for s in shapes}:
            want = " or ".join(f"{name}" + "".join(":" + ch for ch in s) for s in shapes)
            raise self.error(f"bad parameters for {name}", start, (want,))
        shape = next(s for s in shapes if len(s) == len(parts))
        out = []
        for kind, part in zip(shape, parts):
            if kind == "i":
                if not part.isdigit():
                    raise self.error(f"expected an index in {name}", start, ("number",))
                out.append(int(part))
            elif kind == "k":
                if part not in ("L", "R"):
                    raise self.error(f"expected a side in {name}", start, ("L", "R"))
                out.append(part)
            elif kind == "s":
                out.append(self._index_set(part, start))
            else:  # m: multiplicity or explicit positions
                if part.isdigit() and int(part) > 0:
                    out.append(int(part))
                else:
                    out.append(self._index_set(part, start))
        return out

    def _index_set(self, part, start):
        m = re.fullmatch(r"\{\s*(\d+(?:\s*,\s*\d+)*)?\s*\}", part)
        if not m:
            raise self.error("malformed index set", start, ("{i,...}",))
        body = m.group(1)
        return tuple(int(s) for s in re.split(r"\s*,\s*", body)) if body else ()

    def _params(self, name):
        system = self.system
        if name == "ax":
            return (self.single_formula(),) if system == "lj" else (self.molecule(),)
        if name == "w":
            return (self.single_formula(),) if system == "lj" else (self.formula_list(),)
        if name == "lconj-l":
            return (self.single_formula(),)
        return ()

    def single_formula(self):
        self.expect("{", "'{'")
        f = self.formula()
        self.expect("}", "'}'")
        return f

    def _split(self):
        self.next()
        self.expect(":", "':'")
        self.expect("(", "'('")
        out = [int(self.expect("num", "number").value)]
        while self.at(","):
            self.next()
            out.append(int(self.expect("num", "number").value))
        self.expect(")", "')'")
        return tuple(out)

    def _build(self, name, hargs, params, split, premises, start):
        system = self.system
        if name == "cut":
            (spec,) = hargs
            if isinstance(spec, int):
                spec = self._last_positions(premises, spec, start)
            args = (spec,)
        elif name == "fus":
            args = (hargs[0], hargs[0] + 1) if len(hargs) == 1 else tuple(hargs)
        else:
            args = tuple(hargs) + tuple(params)
            if name == "lconj-l":
                args = (hargs[0], hargs[1], params[0])
        cls = {"isc": isc.IscDerivation, "isl": isl.IslDerivation, "lj": lj.LjDerivation}[system]
        return cls(name, args, premises, split=split)

    def _last_positions(self, premises, m, start):
        if len(premises) != 2:
            raise self.error("cut:m needs two premises", start, ("cut:{i,...}",))
        try:
            conc = premises[1].conclusion
        except KernelError as e:
            raise self.error(f"cannot resolve cut:{m} against an ill-formed premise ({e.reason})",
                             start, ("cut:{i,...}",))
        q = len(conc[0].context if isinstance(conc, tuple) else conc.context)
        if m > q:
            return tuple(range(q, q + m))  # rejected later by the checker
        return tuple(range(q - m, q))

    def _it_node(self, name, hargs):
        j = self.judgment()
        premises = []
        while self.at("("):
            premises.append(self.derivation())
        self.expect(")", "')'")
        return it.ItDerivation(name, j, tuple(premises), tuple(hargs))


# public parsing entry points ---------------------------------------------------

def _whole(text, system, method):
    p = _Parser(text, system=system)
    out = getattr(p, method)()
    tok = p.peek()
    if tok.kind != "eof":
        raise p.error(f"trailing input {tok.value!r}", tok.pos, ("end of input",))
    return out


def parse_formula(text: str, system: str = "isc"):
    return _whole(text, system, "formula")


def parse_atom(text: str, system: str = "isc") -> Atom:
    return _whole(text, system, "atom")


def parse_molecule(text: str, system: str = "isc"):
    return _whole(text, system, "molecule")


def parse_term(text: str):
    return _whole(text, "it", "term")


def parse_judgment(text: str) -> it.Judgment:
    return _whole(text, "it", "judgment")


def parse_derivation(text: str, system: str):
    return _whole(text, system, "derivation")


def parse(text: str) -> ProofDocument:
    """Parse a whole document."""
    pos = 0
    name = comment = None
    lines = text.split("\n")
    for line in lines:
        stripped = line.strip()
        if stripped.startswith("@"):
            key, _, value = stripped[1:].partition(" ")
            if key == "name":
                name = value.strip()
            elif key == "comment":
                comment = value.strip() if comment is None else comment + "\n" + value.strip()
            else:
                p = _Parser(text, pos)
                raise p.error(f"unknown metadata key @{key}", pos + line.index("@"),
                              ("@name", "@comment"))
            pos += len(line) + 1
        elif stripped == "" or stripped.startswith("#"):
            pos += len(line) + 1
        else:
            break
    p = _Parser(text, min(pos, len(text)))
    tok = p.peek()
    if tok.kind != "ident" or tok.value not in SYSTEMS:
        raise p.error("expected a system tag", tok.pos, SYSTEMS)
    p.next()
    p.system = tok.value
    payload = [p.derivation()]
    while p.at("("):
        payload.append(p.derivation())
    end = p.peek()
    if end.kind != "eof":
        raise p.error(f"trailing input {end.value!r}", end.pos, ("'('", "end of input"))
    if p.system in ("isl", "isc") and len(payload) > 1:
        raise p.error("isl and isc documents hold a single derivation", end.pos)
    return ProofDocument(p.system, payload, name, comment)


# serialization ------------------------------------------------------------------

def format_list(fs) -> str:
    return "{" + "; ".join(format_formula(f) for f in fs) + "}"


def _index_set(xs) -> str:
    return "{" + ",".join(str(i) for i in xs) + "}"


def format_head(d) -> str:
    """Rule name with head parameters and brace parameters (no premises)."""
    rule, args, system = d.rule, d.args, d.system
    if system == "it":
        head = f"inter-e:{args[0]}" if rule == "inter-e" else rule
        return f"{head} {d.judgment}"
    if rule == "ax":
        return f"ax {{{format_formula(args[0])}}}" if system == "lj" else \
            f"ax {format_molecule(args[0])}"
    if rule == "w":
        return f"w {{{format_formula(args[0])}}}" if system == "lj" else f"w {format_list(args[0])}"
    if rule == "cut":
        return _cut_head(d)
    if rule == "fus":
        i, k = args
        return f"fus:{i}" if k == i + 1 else f"fus:{i}:{k}"
    if rule == "p":
        return f"p:{_index_set(args[0])}"
    if rule == "lconj-l":
        i, side, other = args
        return f"lconj-l:{i}:{side} {{{format_formula(other)}}}"
    return ":".join([rule] + [str(a) for a in args])


def _cut_head(d) -> str:
    (S,) = d.args
    try:
        conc = d.premises[1].conclusion
        q = len(conc[0].context if isinstance(conc, tuple) else conc.context)
    except (KernelError, IndexError):
        q = None
    if S and q is not None and tuple(S) == tuple(range(q - len(S), q)):
        return f"cut:{len(S)}"
    return f"cut:{_index_set(S)}"


def _split_of(d):
    if d.system != "isc" or len(d.premises) != 2:
        return None
    try:
        return tuple(len(a.context) for a in d.premises[0].conclusion)
    except KernelError:
        return d.split


def format_derivation(d, indent: int = 0) -> str:
    pad = "  " * indent
    head = format_head(d)
    split = _split_of(d)
    if split is not None:
        head += " split:(" + ",".join(map(str, split)) + ")"
    if not d.premises:
        return f"{pad}({head})"
    inner = "\n".join(format_derivation(q, indent + 1) for q in d.premises)
    return f"{pad}({head}\n{inner})"


def serialize(doc: ProofDocument) -> str:
    lines = []
    if doc.name is not None:
        lines.append(f"@name {doc.name}")
    if doc.comment is not None:
        lines.extend(f"@comment {c}" for c in doc.comment.split("\n"))
    lines.append(doc.system)
    lines.extend(format_derivation(d) for d in doc.payload)
    return "\n".join(lines) + "\n"


def document(derivations, system=None, name=None, comment=None) -> ProofDocument:
    if not isinstance(derivations, (list, tuple)):
        derivations = [derivations]
    return ProofDocument(system or derivations[0].system, list(derivations), name, comment)


def format_conclusion(d) -> str:
    conc = d.conclusion
    if isinstance(conc, tuple):
        return format_molecule(conc)
    return str(conc)


def format_tree(d, indent: int = 0) -> str:
    """Indented ASCII tree, one node per line with its conclusion."""
    try:
        conc = format_conclusion(d)
    except KernelError as e:
        conc = f"<ill-formed: {e.reason}>"
    line = f"{'|  ' * indent}{format_head(d) if d.system != 'it' else d.rule}  ==>  {conc}"
    return "\n".join([line] + [format_tree(q, indent + 1) for q in d.premises])
