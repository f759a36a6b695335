"""Propositional formulas over a signature containing implication.

Formulas are immutable trees of three node kinds: variables, implications,
and opaque connectives written in functional notation (``neg(x)``).  The
concrete syntax treats ``->`` as right-associative with the lowest
precedence::

    formula := imp
    imp     := atom ("->" imp)?
    atom    := IDENT | IDENT "(" formula ("," formula)* ")" | "(" formula ")"
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, Mapping, Optional, Set, Tuple, Union

__all__ = [
    "Var",
    "Imp",
    "Conn",
    "Formula",
    "Substitution",
    "FormulaSyntaxError",
    "parse_formula",
    "format_formula",
    "apply_subst",
    "compose",
    "match_instance",
    "vars_of",
    "var_names",
    "size",
    "depth",
    "imp",
]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not _IDENT.match(self.name):
            raise ValueError(f"invalid variable name {self.name!r}")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, eq=False)
class Imp:
    premise: "Formula"
    conclusion: "Formula"
    # Cached: codes are deep and get hashed, compared and scanned constantly.
    _hash: int = field(default=0, init=False, repr=False)
    _names: Optional[FrozenSet[str]] = field(default=None, init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("->", self.premise, self.conclusion)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Imp) or self._hash != other._hash:
            return False
        return self.premise == other.premise and self.conclusion == other.conclusion

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Conn:
    symbol: str
    args: Tuple["Formula", ...]
    _names: Optional[FrozenSet[str]] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not _IDENT.match(self.symbol):
            raise ValueError(f"invalid connective name {self.symbol!r}")
        if not self.args:
            raise ValueError("connectives take at least one argument")
        object.__setattr__(self, "args", tuple(self.args))

    def __str__(self) -> str:
        return format_formula(self)


Formula = Union[Var, Imp, Conn]
# Keys are variable names; unmapped variables are left fixed.
Substitution = Dict[str, Formula]


def imp(*parts: Formula) -> Formula:
    """Right-nested implication chain: ``imp(a, b, c)`` is ``a -> (b -> c)``."""
    if not parts:
        raise ValueError("imp needs at least one formula")
    result = parts[-1]
    for p in reversed(parts[:-1]):
        result = Imp(p, result)
    return result


# ---------------------------------------------------------------------------
# Parsing and printing
# ---------------------------------------------------------------------------


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(->)|([A-Za-z_][A-Za-z0-9_]*)|([(),]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        tokens.append((m.group(m.lastindex), start))
        pos = m.end()
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.arity: Dict[str, int] = {}

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][1]

    def expect(self, tok: str) -> None:
        if self.peek() != tok:
            found = self.peek() or "end of input"
            raise FormulaSyntaxError(f"expected {tok!r}, found {found!r}", self.text, self.pos())
        self.i += 1

    def formula(self) -> Formula:
        left = self.atom()
        if self.peek() == "->":
            self.i += 1
            return Imp(left, self.formula())
        return left

    def atom(self) -> Formula:
        tok = self.peek()
        if tok == "(":
            self.i += 1
            inner = self.formula()
            self.expect(")")
            return inner
        if tok and _IDENT.match(tok):
            start = self.pos()
            self.i += 1
            if self.peek() != "(":
                return Var(tok)
            self.i += 1
            args = [self.formula()]
            while self.peek() == ",":
                self.i += 1
                args.append(self.formula())
            self.expect(")")
            known = self.arity.setdefault(tok, len(args))
            if known != len(args):
                raise FormulaSyntaxError(
                    f"connective {tok!r} used with arity {len(args)}, earlier {known}",
                    self.text,
                    start,
                )
            return Conn(tok, tuple(args))
        found = tok or "end of input"
        raise FormulaSyntaxError(f"unexpected {found!r}", self.text, self.pos())


def parse_formula(text: str) -> Formula:
    """Parse the concrete syntax into a formula.

    Raises :class:`FormulaSyntaxError` (a ``ValueError``) carrying the
    offending position.
    """
    p = _Parser(text)
    f = p.formula()
    if p.peek() != "":
        raise FormulaSyntaxError(f"trailing input {p.peek()!r}", text, p.pos())
    return f


def format_formula(f: Formula) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Conn):
        return f"{f.symbol}({', '.join(format_formula(a) for a in f.args)})"
    left = format_formula(f.premise)
    if isinstance(f.premise, Imp):
        left = f"({left})"
    return f"{left} -> {format_formula(f.conclusion)}"


# ---------------------------------------------------------------------------
# Substitution and matching
# ---------------------------------------------------------------------------


def apply_subst(s: Mapping[str, Formula], f: Formula) -> Formula:
    """Simultaneous substitution; introduced variables are not rewritten again."""
    if not s:
        return f
    if isinstance(f, Var):
        return s.get(f.name, f)
    if s.keys().isdisjoint(var_names(f)):
        return f
    if isinstance(f, Imp):
        p = apply_subst(s, f.premise)
        c = apply_subst(s, f.conclusion)
        if p is f.premise and c is f.conclusion:
            return f
        return Imp(p, c)
    return Conn(f.symbol, tuple(apply_subst(s, a) for a in f.args))


def compose(s1: Mapping[str, Formula], s2: Mapping[str, Formula]) -> Substitution:
    """Substitution equivalent to applying ``s1`` first and then ``s2``."""
    out = {v: apply_subst(s2, t) for v, t in s1.items()}
    for v, t in s2.items():
        out.setdefault(v, t)
    return {v: t for v, t in out.items() if t != Var(v)}


def match_instance(pattern: Formula, target: Formula) -> Optional[Substitution]:
    """One-sided matching: find ``s`` with ``apply_subst(s, pattern) == target``.

    Variables of ``target`` are treated as constants.
    """
    s: Substitution = {}
    stack = [(pattern, target)]
    while stack:
        p, t = stack.pop()
        if isinstance(p, Var):
            bound = s.get(p.name)
            if bound is None:
                s[p.name] = t
            elif bound != t:
                return None
        elif isinstance(p, Imp):
            if not isinstance(t, Imp):
                return None
            stack.append((p.conclusion, t.conclusion))
            stack.append((p.premise, t.premise))
        else:
            if not isinstance(t, Conn) or t.symbol != p.symbol or len(t.args) != len(p.args):
                return None
            stack.extend(zip(p.args, t.args))
    return s


def _walk(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, Imp):
            stack.append(g.conclusion)
            stack.append(g.premise)
        elif isinstance(g, Conn):
            stack.extend(reversed(g.args))


def var_names(f: Formula) -> FrozenSet[str]:
    """Names of the variables of ``f`` (cached on compound nodes)."""
    if isinstance(f, Var):
        return frozenset((f.name,))
    names = f._names
    if names is None:
        if isinstance(f, Imp):
            names = var_names(f.premise) | var_names(f.conclusion)
        else:
            names = frozenset().union(*(var_names(a) for a in f.args))
        object.__setattr__(f, "_names", names)
    return names


def vars_of(f: Formula) -> Set[Var]:
    return {Var(n) for n in var_names(f)}


def var_order(f: Formula) -> list:
    """Variable names in order of first (left-to-right) occurrence."""
    seen: Dict[str, None] = {}
    for g in _walk(f):
        if isinstance(g, Var):
            seen.setdefault(g.name)
    return list(seen)


def size(f: Formula) -> int:
    return sum(1 for _ in _walk(f))


def depth(f: Formula) -> int:
    if isinstance(f, Var):
        return 0
    if isinstance(f, Imp):
        return 1 + max(depth(f.premise), depth(f.conclusion))
    return 1 + max(depth(a) for a in f.args)
