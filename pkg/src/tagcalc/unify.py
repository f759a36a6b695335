"""Syntactic unification over formulas (Robinson, with occurs check)."""

from __future__ import annotations

from typing import Dict, Iterable, Optional, Set, Tuple

from .formula import Conn, Formula, Imp, Substitution, Var, apply_subst, var_names, var_order

__all__ = ["mgu", "unifiable", "rename_apart", "normalize", "is_variant", "fresh_name"]


def fresh_name(base: str, taken: Set[str]) -> str:
    k = 1
    while f"{base}_{k}" in taken:
        k += 1
    return f"{base}_{k}"


def rename_apart(f: Formula, forbidden: Iterable[Var]) -> Tuple[Formula, Substitution]:
    """Return a variant of ``f`` sharing no variable with ``forbidden``.

    Only clashing variables are renamed, so the renaming is the identity
    when there is nothing to avoid.
    """
    forbidden_names = {v.name for v in forbidden}
    own = var_names(f)
    clashing = sorted(n for n in own if n in forbidden_names)
    if not clashing:
        return f, {}
    taken = forbidden_names | set(own)
    renaming: Substitution = {}
    for name in clashing:
        new = fresh_name(name, taken)
        taken.add(new)
        renaming[name] = Var(new)
    return apply_subst(renaming, f), renaming


def _resolve(t: Formula, bindings: Dict[str, Formula]) -> Formula:
    while isinstance(t, Var) and t.name in bindings:
        t = bindings[t.name]
    return t


def _occurs(name: str, t: Formula, bindings: Dict[str, Formula]) -> bool:
    stack = [t]
    while stack:
        g = _resolve(stack.pop(), bindings)
        if isinstance(g, Var):
            if g.name == name:
                return True
        elif isinstance(g, Imp):
            stack.append(g.premise)
            stack.append(g.conclusion)
        else:
            stack.extend(g.args)
    return False


def _fully_apply(t: Formula, bindings: Dict[str, Formula], cache: Dict[str, Formula]) -> Formula:
    if isinstance(t, Var):
        if t.name not in bindings:
            return t
        if t.name not in cache:
            cache[t.name] = _fully_apply(bindings[t.name], bindings, cache)
        return cache[t.name]
    if isinstance(t, Imp):
        return Imp(_fully_apply(t.premise, bindings, cache), _fully_apply(t.conclusion, bindings, cache))
    return Conn(t.symbol, tuple(_fully_apply(a, bindings, cache) for a in t.args))


def mgu(a: Formula, b: Formula) -> Optional[Substitution]:
    """Most general unifier of ``a`` and ``b``; shared variable names are shared.

    The result is idempotent. Returns ``None`` when no unifier exists.
    """
    bindings: Dict[str, Formula] = {}
    stack = [(a, b)]
    while stack:
        s, t = stack.pop()
        s = _resolve(s, bindings)
        t = _resolve(t, bindings)
        if s is t or s == t:
            continue
        if isinstance(s, Var) or isinstance(t, Var):
            if not isinstance(s, Var):
                s, t = t, s
            if _occurs(s.name, t, bindings):
                return None
            bindings[s.name] = t
        elif isinstance(s, Imp) and isinstance(t, Imp):
            stack.append((s.conclusion, t.conclusion))
            stack.append((s.premise, t.premise))
        elif isinstance(s, Conn) and isinstance(t, Conn):
            if s.symbol != t.symbol or len(s.args) != len(t.args):
                return None
            stack.extend(zip(s.args, t.args))
        else:
            return None
    cache: Dict[str, Formula] = {}
    return {v: _fully_apply(Var(v), bindings, cache) for v in bindings}


def unifiable(a: Formula, b: Formula) -> bool:
    """True iff ``a`` and ``b`` have a common substitution instance."""
    b_apart, _ = rename_apart(b, [Var(n) for n in var_names(a)])
    return mgu(a, b_apart) is not None


def normalize(f: Formula, prefix: str = "x") -> Formula:
    """Canonical variant: variables renamed ``x1, x2, ...`` by first occurrence."""
    names = var_order(f)
    renaming = {n: Var(f"{prefix}{k}") for k, n in enumerate(names, 1)}
    return apply_subst(renaming, f)


def is_variant(a: Formula, b: Formula) -> bool:
    return normalize(a) == normalize(b)
