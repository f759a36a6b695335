"""Calculi (finite labelled axiom lists) and the tag-system reduction calculus."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from itertools import product
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .encode import forward, letter_code, nest, triangle, vee
from .formula import Conn, Formula, Imp, Var, format_formula, parse_formula, vars_of
from .tagsys import TagSystem

__all__ = [
    "Axiom",
    "Calculus",
    "Reduction",
    "GROUPS",
    "REDUCTION_GROUPS",
    "BUILTIN_NAMES",
    "builtin",
    "build_reduction",
    "subsystem",
    "parse_calculus",
    "format_calculus",
    "load_calculus",
    "resolve_calculus",
]

IMPLICATION = "->"
REDUCTION_GROUPS = ("W", "T1", "T2", "H", "R1", "R2")
GROUPS = REDUCTION_GROUPS + ("P0", "builtin")

_LABEL = re.compile(r"[A-Za-z0-9_.]+\Z")


@dataclass(frozen=True)
class Axiom:
    label: str
    formula: Formula
    group: str = "builtin"


@dataclass(frozen=True)
class Reduction:
    """What a reduction calculus was built from; kept alongside its axioms."""

    tag: TagSystem
    omega: str
    p0: "Calculus"
    base: Var
    y: Var
    z: Var
    u: Var


def _connectives(f: Formula, out: Dict[str, int]) -> None:
    if isinstance(f, Imp):
        _connectives(f.premise, out)
        _connectives(f.conclusion, out)
    elif isinstance(f, Conn):
        known = out.setdefault(f.symbol, len(f.args))
        if known != len(f.args):
            raise ValueError(f"connective {f.symbol!r} used with arities {known} and {len(f.args)}")
        for a in f.args:
            _connectives(a, out)


@dataclass(frozen=True)
class Calculus:
    name: str
    axioms: Tuple[Axiom, ...]
    signature: FrozenSet[str] = frozenset({IMPLICATION})
    reduction: Optional[Reduction] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "axioms", tuple(self.axioms))
        if not re.match(r"[A-Za-z0-9_.-]+\Z", self.name):
            raise ValueError(f"calculus name must be a token, got {self.name!r}")
        labels = [a.label for a in self.axioms]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate axiom labels in {self.name}")
        for a in self.axioms:
            if not _LABEL.match(a.label):
                raise ValueError(f"bad axiom label {a.label!r}")
            if a.group not in GROUPS:
                raise ValueError(f"unknown axiom group {a.group!r}")
        arity: Dict[str, int] = {}
        for a in self.axioms:
            _connectives(a.formula, arity)
        sig = frozenset(self.signature) | {IMPLICATION} | set(arity)
        object.__setattr__(self, "signature", sig)

    def __getitem__(self, label: str) -> Formula:
        for a in self.axioms:
            if a.label == label:
                return a.formula
        raise KeyError(label)

    def __contains__(self, label: str) -> bool:
        return any(a.label == label for a in self.axioms)

    def __len__(self) -> int:
        return len(self.axioms)

    def group(self, name: str) -> List[Axiom]:
        return [a for a in self.axioms if a.group == name]

    @property
    def formulas(self) -> List[Formula]:
        return [a.formula for a in self.axioms]

    def variables(self) -> set:
        out = set()
        for a in self.axioms:
            out |= vars_of(a.formula)
        return out


# ---------------------------------------------------------------------------
# Builtin calculi
# ---------------------------------------------------------------------------

_BUILTIN_SOURCES = {
    "int_impl": [
        ("A1", "x -> y -> x"),
        ("A2", "(x -> y -> z) -> (x -> y) -> x -> z"),
    ],
    "cl_impl": [
        ("A1", "x -> y -> x"),
        ("A2", "(x -> y -> z) -> (x -> y) -> x -> z"),
        ("Peirce", "((x -> y) -> x) -> x"),
    ],
    "lukasiewicz_single": [
        ("L", "((x -> y) -> z) -> (z -> x) -> u -> x"),
    ],
    "meredith_single": [
        ("M", "((x -> y) -> z) -> u -> (y -> z -> v) -> y -> v"),
    ],
}
BUILTIN_NAMES = tuple(_BUILTIN_SOURCES)


def builtin(name: str) -> Calculus:
    try:
        source = _BUILTIN_SOURCES[name]
    except KeyError:
        raise ValueError(f"unknown builtin calculus {name!r}; choose from {', '.join(BUILTIN_NAMES)}") from None
    return Calculus(name, tuple(Axiom(label, parse_formula(text)) for label, text in source))


# ---------------------------------------------------------------------------
# The reduction calculus
# ---------------------------------------------------------------------------


def _fresh_vars(avoid: Iterable[Var], count: int) -> List[Var]:
    taken = {v.name for v in avoid}
    out, k = [], 0
    while len(out) < count:
        name = f"v{k}"
        if name not in taken:
            out.append(Var(name))
        k += 1
    return out


def _words(alphabet: Sequence[str], length: int) -> List[str]:
    return ["".join(p) for p in product(alphabet, repeat=length)]


def build_reduction(t: TagSystem, omega: str, p0: Calculus, name: Optional[str] = None) -> Calculus:
    """Axioms W, T1, T2, H, R1, R2 simulating ``t`` on ``omega`` above ``p0``.

    The base variable and the schematic variables ``y, z, u`` are the first
    names ``v0, v1, ...`` that do not occur in ``p0``.
    """
    if not omega:
        raise ValueError("omega must be a nonempty word")
    t.check_word(omega)
    x0, y, z, u = _fresh_vars(p0.variables(), 4)
    alphabet = t.alphabet
    guard = triangle(x0)
    code = {a: letter_code(i, x0) for i, a in enumerate(alphabet, 1)}
    fwd = lambda w: nest(w, alphabet, base=x0)  # noqa: E731
    d = t.deletion

    axioms: List[Axiom] = [Axiom("W", Imp(guard, fwd(omega)), "W")]
    heads = [(a, alpha) for a in alphabet for alpha in _words(alphabet, d - 1)]
    for k, (a, alpha) in enumerate(heads, 1):
        lhs = forward([code[c] for c in a + alpha] + [y])
        rhs = forward([y] + [code[c] for c in t.rules[a]])
        axioms.append(Axiom(f"T1.{k}", Imp(Imp(guard, lhs), Imp(guard, rhs)), "T1"))
    for k, (a, alpha) in enumerate(heads, 1):
        lhs = fwd(a + alpha)
        axioms.append(Axiom(f"T2.{k}", Imp(Imp(guard, lhs), Imp(guard, fwd(t.rules[a]))), "T2"))
    k = 0
    for n in range(1, d):
        for alpha in _words(alphabet, n):
            for ax in p0.axioms:
                k += 1
                axioms.append(Axiom(f"H.{k}", Imp(Imp(guard, fwd(alpha)), ax.formula), "H"))
    for k, a in enumerate(alphabet, 1):
        lhs = vee(vee(y, vee(code[a], z)), u)
        rhs = vee(vee(vee(y, code[a]), z), u)
        axioms.append(Axiom(f"R1.{k}", Imp(Imp(guard, lhs), Imp(guard, rhs)), "R1"))
    for k, a in enumerate(alphabet, 1):
        lhs = vee(vee(y, code[a]), z)
        rhs = vee(y, vee(code[a], z))
        axioms.append(Axiom(f"R2.{k}", Imp(Imp(guard, lhs), Imp(guard, rhs)), "R2"))

    info = Reduction(t, omega, p0, x0, y, z, u)
    return Calculus(name or f"reduction_{omega}_{p0.name}", tuple(axioms), p0.signature, reduction=info)


_NAMED_SUBSYSTEMS = {
    "P_T": {"T1", "T2", "R1", "R2"},
    "P_T_omega": {"W", "T1", "T2", "R1", "R2"},
    "P_T_P0": {"T1", "T2", "R1", "R2", "H"},
}


def subsystem(c: Calculus, groups: Union[str, Iterable[str]]) -> Calculus:
    """Restrict a reduction calculus to some axiom groups.

    ``groups`` is either a set of group names or one of ``P_T``,
    ``P_T_omega``, ``P_T_P0``.
    """
    if isinstance(groups, str):
        if groups not in _NAMED_SUBSYSTEMS:
            raise ValueError(f"unknown subsystem {groups!r}")
        suffix, groups = groups, _NAMED_SUBSYSTEMS[groups]
    else:
        groups = set(groups)
        suffix = "_".join(g for g in REDUCTION_GROUPS if g in groups) or "empty"
    present = {a.group for a in c.axioms}
    missing = set(groups) - present
    if missing:
        raise ValueError(f"groups {sorted(missing)} are absent from {c.name}")
    kept = tuple(a for a in c.axioms if a.group in groups)
    return replace(c, name=f"{c.name}.{suffix}", axioms=kept)


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------


def _group_of(label: str) -> str:
    head = label.split(".", 1)[0]
    return head if head in REDUCTION_GROUPS else "P0"


def format_calculus(c: Calculus) -> str:
    lines = [f"calculus: {c.name}"]
    lines += [f"{a.label}: {format_formula(a.formula)}" for a in c.axioms]
    return "\n".join(lines) + "\n"


def parse_calculus(text: str) -> Calculus:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty calculus file")
    head, _, name = lines[0].partition(":")
    if head.strip() != "calculus" or not name.strip():
        raise ValueError(f"line 1 must be 'calculus: <name>', got {lines[0]!r}")
    name = name.strip()
    axioms = []
    for ln in lines[1:]:
        label, sep, body = ln.partition(":")
        if not sep:
            raise ValueError(f"malformed axiom line {ln!r}")
        label = label.strip()
        group = "builtin" if name in _BUILTIN_SOURCES else _group_of(label)
        axioms.append(Axiom(label, parse_formula(body.strip()), group))
    return Calculus(name, tuple(axioms))


def load_calculus(path: Union[str, Path]) -> Calculus:
    return parse_calculus(Path(path).read_text(encoding="utf-8"))


def resolve_calculus(source: str) -> Calculus:
    """A builtin name or the path of a calculus file."""
    if source in _BUILTIN_SOURCES:
        return builtin(source)
    path = Path(source)
    if path.is_file():
        return load_calculus(path)
    raise ValueError(f"{source!r} is neither a builtin calculus ({', '.join(BUILTIN_NAMES)}) nor a file")
