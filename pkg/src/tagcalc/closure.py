"""Bounded forward closure by condensed detachment, and the shape audit.

The closure works at the level of schemes: a retained formula stands for
all of its substitution instances, and one condensed-detachment step
bundles a substitution into each premise followed by modus ponens.
Schemes that are instances of retained schemes are pruned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import tagsys
from .calculus import Axiom, Calculus, build_reduction
from .encode import CodeType, decode, word_codes
from .formula import Formula, Imp, apply_subst, compose, format_formula, match_instance, size, vars_of
from .proof import MP, Ax, Proof, Sub
from .tagsys import TagSystem
from .unify import mgu, normalize, rename_apart, unifiable

__all__ = [
    "Scheme",
    "SchemeSet",
    "Saturation",
    "cd_step",
    "cd_witness",
    "saturate",
    "HeightResult",
    "search_height",
    "find_height",
    "AuditEntry",
    "AuditReport",
    "audit_shapes",
    "short_codes",
]


def _cd(major: Formula, minor: Formula):
    if not isinstance(major, Imp):
        return None
    minor2, renaming = rename_apart(minor, vars_of(major))
    s = mgu(major.premise, minor2)
    if s is None:
        return None
    return apply_subst(s, major.conclusion), s, renaming


def cd_step(major: Formula, minor: Formula) -> Optional[Formula]:
    """Most general result of modus ponens after instantiating both premises."""
    out = _cd(major, minor)
    return None if out is None else out[0]


def cd_witness(major: Formula, minor: Formula) -> Optional[Proof]:
    """The explicit five-line proof behind one ``cd_step``.

    Works over a two-axiom calculus ``{major, minor}``: both axioms are
    instantiated by the unifier and then detached.
    """
    out = _cd(major, minor)
    if out is None:
        return None
    _, s, renaming = out
    calc = Calculus("cd", (Axiom("major", major), Axiom("minor", minor)))
    # Built directly rather than via ProofBuilder so identity substitutions stay explicit.
    steps = (
        Ax("major"),
        Sub(0, _pairs(s, major)),
        Ax("minor"),
        Sub(2, _pairs(compose(renaming, s), minor)),
        MP(1, 3),
    )
    return Proof(calc, (), steps, 4)


def _pairs(s, f: Formula):
    used = {v.name for v in vars_of(f)}
    return tuple(sorted((k, t) for k, t in s.items() if k in used))


@dataclass(frozen=True)
class Scheme:
    id: int
    formula: Formula
    depth: int
    parents: Optional[Tuple[int, int]] = None  # (major id, minor id)
    label: Optional[str] = None  # axiom label for depth-0 schemes


@dataclass
class SchemeSet:
    """Retained schemes in derivation order.

    ``history`` keeps every scheme ever retained (by id), including ones
    later replaced by a more general scheme, so ``parents`` always resolve.
    """

    schemes: List[Scheme] = field(default_factory=list)
    history: Dict[int, Scheme] = field(default_factory=dict)
    depth: int = 0
    saturated: bool = False
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.schemes)

    def __iter__(self) -> Iterator[Scheme]:
        return iter(self.schemes)

    def at_most(self, depth: int) -> List[Scheme]:
        return [s for s in self.schemes if s.depth <= depth]

    def formulas(self) -> List[Formula]:
        return [s.formula for s in self.schemes]

    def subsumes(self, f: Formula) -> bool:
        return any(match_instance(s.formula, f) is not None for s in self.schemes)


class Saturation:
    """Breadth-first condensed-detachment closure, one depth level per call."""

    def __init__(self, c: Calculus, max_size: int = 10_000):
        if max_size < 1:
            raise ValueError("max_size must be positive")
        self.max_size = max_size
        self.result = SchemeSet()
        self._next_id = 0
        self._new: List[int] = []
        for ax in c.axioms:
            f = normalize(ax.formula)
            if self._admit(f, depth=0, parents=None, label=ax.label):
                self._new.append(self.result.schemes[-1].id)
        if len(self.result) > max_size:
            self.result.truncated = True

    def _admit(self, f: Formula, depth: int, parents, label=None) -> bool:
        res = self.result
        if res.subsumes(f):
            return False
        res.schemes = [s for s in res.schemes if match_instance(f, s.formula) is None]
        scheme = Scheme(self._next_id, f, depth, parents, label)
        self._next_id += 1
        res.schemes.append(scheme)
        res.history[scheme.id] = scheme
        return True

    def expand(self) -> bool:
        """Add the next depth level; returns False when nothing more is done."""
        res = self.result
        if res.saturated or res.truncated:
            return False
        fresh = set(self._new)
        current = list(res.schemes)
        candidates: Dict[Formula, Tuple[int, int]] = {}
        for major in current:
            if not isinstance(major.formula, Imp):
                continue
            for minor in current:
                if major.id not in fresh and minor.id not in fresh:
                    continue
                out = cd_step(major.formula, minor.formula)
                if out is not None:
                    candidates.setdefault(normalize(out), (major.id, minor.id))
        res.depth += 1
        self._new = []
        ordered = sorted(candidates.items(), key=lambda kv: (size(kv[0]), format_formula(kv[0])))
        for f, parents in ordered:
            if self._admit(f, res.depth, parents):
                self._new.append(res.schemes[-1].id)
                if len(res) >= self.max_size:
                    res.truncated = True
                    break
        if not self._new:
            res.saturated = True
        return True


def saturate(c: Calculus, max_depth: int, max_size: int = 10_000) -> SchemeSet:
    """Closure of ``c`` under condensed detachment up to ``max_depth`` levels.

    Stops early at a fixpoint (``saturated``) or once ``max_size`` schemes
    are retained (``truncated``, a partial result).
    """
    if max_depth < 0:
        raise ValueError("max_depth must be nonnegative")
    sat = Saturation(c, max_size)
    while sat.result.depth < max_depth and sat.expand():
        pass
    return sat.result


# ---------------------------------------------------------------------------
# Height of the first short-word code
# ---------------------------------------------------------------------------


def short_codes(t: TagSystem, base) -> List[Tuple[str, CodeType, Formula]]:
    """Codes of every nonempty word shorter than the deletion number."""
    out = []
    for n in range(1, t.deletion):
        for word in _words(t.alphabet, n):
            out += [(word, ct, f) for ct, f in word_codes(word, t.alphabet, base)]
    return out


def _words(alphabet, n):
    if n == 0:
        return [""]
    return [w + a for w in _words(alphabet, n - 1) for a in alphabet]


@dataclass
class HeightResult:
    height: Optional[int]
    word: Optional[str]
    scheme: Optional[Scheme]
    schemes: SchemeSet


def _short_hit(schemes: Sequence[Scheme], codes) -> Optional[Tuple[Scheme, str]]:
    for s in schemes:
        for word, _, code in codes:
            if unifiable(s.formula, code):
                return s, word
    return None


def search_height(full: Calculus, max_depth: int, max_size: int = 10_000) -> HeightResult:
    """Smallest depth at which a scheme shares an instance with a short-word code."""
    if full.reduction is None:
        raise ValueError(f"{full.name} was not produced by build_reduction")
    info = full.reduction
    codes = short_codes(info.tag, info.base)
    sat = Saturation(full, max_size)
    while True:
        res = sat.result
        hit = _short_hit([s for s in res.schemes if s.depth == res.depth], codes)
        if hit is not None:
            return HeightResult(res.depth, hit[1], hit[0], res)
        if res.depth >= max_depth or not sat.expand():
            return HeightResult(None, None, None, res)


def find_height(
    t: TagSystem, omega: str, p0: Calculus, max_depth: int, max_size: int = 10_000
) -> Optional[int]:
    return search_height(build_reduction(t, omega, p0), max_depth, max_size).height


# ---------------------------------------------------------------------------
# Shape audit
# ---------------------------------------------------------------------------

PTP0_GROUPS = ("T1", "T2", "H", "R1", "R2")


@dataclass(frozen=True)
class AuditEntry:
    index: int
    depth: int
    kind: str  # CODE, AXIOM, VIOLATION or INCONCLUSIVE
    formula: Formula
    word: Optional[str] = None
    ctype: Optional[CodeType] = None
    label: Optional[str] = None

    def line(self) -> str:
        head = f"scheme {self.index} depth {self.depth}: {self.kind}"
        if self.kind == "CODE":
            return f"{head} word={self.word} type={self.ctype}"
        if self.kind == "AXIOM":
            return f"{head} {self.label}"
        if self.word is not None:
            return f"{head} word={self.word}"
        return head


@dataclass
class AuditReport:
    entries: List[AuditEntry]
    reachable: frozenset
    reachable_complete: bool
    overlaps: List[int]
    code_axiom_clashes: List[Tuple[str, str]]

    @property
    def violations(self) -> List[AuditEntry]:
        return [e for e in self.entries if e.kind == "VIOLATION"]

    @property
    def inconclusive(self) -> bool:
        return any(e.kind == "INCONCLUSIVE" for e in self.entries)

    @property
    def disjoint(self) -> bool:
        return not self.overlaps and not self.code_axiom_clashes

    @property
    def ok(self) -> bool:
        return not self.violations and self.disjoint and not self.inconclusive

    def decoded_words(self) -> List[str]:
        return sorted({e.word for e in self.entries if e.kind == "CODE"})

    def lines(self) -> List[str]:
        return [e.line() for e in self.entries]


def audit_shapes(
    s: SchemeSet,
    t: TagSystem,
    omega: str,
    full: Calculus,
    fuel: int,
    max_depth: Optional[int] = None,
) -> AuditReport:
    """Classify each scheme as a code of a reachable word or an instance of a P_{T,P0} axiom.

    Reachable words come from running ``t`` on ``omega`` for ``fuel``
    steps; a decoded word outside an incomplete reachable set is reported
    as INCONCLUSIVE rather than as a violation.
    """
    reachable, complete = tagsys.reachable_words(t, omega, fuel)
    axioms = [a for a in full.axioms if a.group in PTP0_GROUPS]
    base = full.reduction.base if full.reduction is not None else None

    clashes = []
    if base is not None:
        for word in sorted(reachable):
            for ct, code in word_codes(word, t.alphabet, base):
                clashes += [(f"{word}:{ct}", a.label) for a in axioms if unifiable(code, a.formula)]

    entries, overlaps = [], []
    for k, sch in enumerate(s.schemes):
        if max_depth is not None and sch.depth > max_depth:
            continue
        f = sch.formula
        code = decode(f, t.alphabet)
        label = next((a.label for a in axioms if match_instance(a.formula, f) is not None), None)
        if code is not None and label is not None:
            overlaps.append(k)
        if code is not None:
            word, ct = code
            if word in reachable:
                entries.append(AuditEntry(k, sch.depth, "CODE", f, word, ct))
            elif label is not None:
                entries.append(AuditEntry(k, sch.depth, "AXIOM", f, label=label))
            elif complete:
                entries.append(AuditEntry(k, sch.depth, "VIOLATION", f, word, ct))
            else:
                entries.append(AuditEntry(k, sch.depth, "INCONCLUSIVE", f, word, ct))
        elif label is not None:
            entries.append(AuditEntry(k, sch.depth, "AXIOM", f, label=label))
        else:
            entries.append(AuditEntry(k, sch.depth, "VIOLATION", f))
    return AuditReport(entries, reachable, complete, overlaps, clashes)
