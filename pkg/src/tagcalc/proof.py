"""Hilbert-style proofs under modus ponens and substitution.

A proof is a flat list of steps referring back to earlier steps by index.
Substitution may only be applied to lines whose ancestry contains no
hypothesis; this keeps derivations from hypotheses sound and makes the
deduction theorem hold.

Besides the kernel (:func:`check`) this module holds generators that
emit the concrete derivations of the tag-system reduction: weakening,
deduction-theorem elaboration, proofs of alphabetic formulas, the
re-bracketing lemmas driven by the R1/R2 axioms, simulation of tag-system
runs, and the final derivation of every ``P0`` axiom from a halting run.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple, Union

from . import tagsys
from .calculus import Calculus, builtin
from .encode import alphabetic_leaves, backward, forward, letter_code, letter_index, triangle, unvee, vee
from .formula import (
    Formula,
    Imp,
    Substitution,
    Var,
    apply_subst,
    format_formula,
    match_instance,
    parse_formula,
    vars_of,
)
from .tagsys import TagTrace

__all__ = [
    "Ax",
    "Hyp",
    "Sub",
    "MP",
    "Proof",
    "Verdict",
    "ProofError",
    "ProofBuilder",
    "check",
    "weaken",
    "deduction_elaborate",
    "identity_proof",
    "vee_left_proof",
    "prove_alphabetic",
    "prove_by_weakening",
    "prove_inclusion",
    "shift_assoc",
    "unshift_assoc",
    "merge_code",
    "simulate_step",
    "simulate_trace",
    "halting_completion",
    "format_proof",
    "parse_proof",
    "proof_calculus_name",
    "load_proof",
]


class ProofError(ValueError):
    pass


@dataclass(frozen=True)
class Ax:
    label: str


@dataclass(frozen=True)
class Hyp:
    index: int


@dataclass(frozen=True)
class Sub:
    ref: int
    subst: Tuple[Tuple[str, Formula], ...]

    @property
    def mapping(self) -> Dict[str, Formula]:
        return dict(self.subst)


@dataclass(frozen=True)
class MP:
    major: int
    minor: int


Step = Union[Ax, Hyp, Sub, MP]


@dataclass(frozen=True)
class Proof:
    calculus: Calculus
    hypotheses: Tuple[Formula, ...]
    steps: Tuple[Step, ...]
    conclusion: int

    @property
    def inferences(self) -> int:
        """Number of rule applications (substitutions and detachments)."""
        return sum(isinstance(s, (Sub, MP)) for s in self.steps)

    @property
    def formula(self) -> Formula:
        verdict = check(self)
        if not verdict:
            raise ProofError(f"invalid proof: {verdict}")
        return verdict.formula

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class Verdict:
    valid: bool
    step: Optional[int] = None
    reason: str = ""
    formula: Optional[Formula] = None

    def __bool__(self) -> bool:
        return self.valid

    def __str__(self) -> str:
        if self.valid:
            return "valid"
        where = "" if self.step is None else f" at step {self.step}"
        return f"invalid{where}: {self.reason}"


def _derive(p: Proof):
    """Formulas and hypothesis dependencies of every line, or a failure verdict."""
    forms: List[Formula] = []
    deps: List[FrozenSet[int]] = []

    def bad(k, reason):
        return None, None, Verdict(False, k, reason)

    labels = {a.label: a.formula for a in p.calculus.axioms}
    for k, st in enumerate(p.steps):
        if isinstance(st, Ax):
            if st.label not in labels:
                return bad(k, f"unknown-axiom {st.label}")
            forms.append(labels[st.label])
            deps.append(frozenset())
        elif isinstance(st, Hyp):
            if not 0 <= st.index < len(p.hypotheses):
                return bad(k, f"unknown-hypothesis {st.index}")
            forms.append(p.hypotheses[st.index])
            deps.append(frozenset({st.index}))
        elif isinstance(st, Sub):
            if not 0 <= st.ref < k:
                return bad(k, "forward-reference")
            if deps[st.ref]:
                return bad(k, "subst-on-hypothesis")
            forms.append(apply_subst(st.mapping, forms[st.ref]))
            deps.append(frozenset())
        elif isinstance(st, MP):
            if not (0 <= st.major < k and 0 <= st.minor < k):
                return bad(k, "forward-reference")
            major = forms[st.major]
            if not isinstance(major, Imp):
                return bad(k, "not-an-implication")
            if major.premise != forms[st.minor]:
                return bad(k, "premise-mismatch")
            forms.append(major.conclusion)
            deps.append(deps[st.major] | deps[st.minor])
        else:
            return bad(k, f"unknown step {st!r}")
    return forms, deps, None


def check(p: Proof) -> Verdict:
    """Kernel: validate every step and return the conclusion's formula."""
    forms, _, failure = _derive(p)
    if failure is not None:
        return failure
    if not 0 <= p.conclusion < len(p.steps):
        return Verdict(False, None, "bad-conclusion")
    return Verdict(True, formula=forms[p.conclusion])


# ---------------------------------------------------------------------------
# Building proofs
# ---------------------------------------------------------------------------


class ProofBuilder:
    """Append-only proof under construction; identical steps are shared."""

    def __init__(self, calculus: Calculus, hypotheses: Sequence[Formula] = ()):
        self.calculus = calculus
        self.hypotheses: List[Formula] = list(hypotheses)
        self.steps: List[Step] = []
        self.formulas: List[Formula] = []
        self.depends: List[bool] = []
        self._memo: Dict[Step, int] = {}
        self._labels = {a.label: a.formula for a in calculus.axioms}

    def _add(self, step: Step, formula: Formula, depends: bool) -> int:
        if step in self._memo:
            return self._memo[step]
        self.steps.append(step)
        self.formulas.append(formula)
        self.depends.append(depends)
        self._memo[step] = len(self.steps) - 1
        return len(self.steps) - 1

    def formula(self, ref: int) -> Formula:
        return self.formulas[ref]

    def axiom(self, label: str) -> int:
        if label not in self._labels:
            raise ProofError(f"{self.calculus.name} has no axiom {label!r}")
        return self._add(Ax(label), self._labels[label], False)

    def hyp(self, index: int) -> int:
        return self._add(Hyp(index), self.hypotheses[index], True)

    def assume(self, f: Formula) -> int:
        if f not in self.hypotheses:
            self.hypotheses.append(f)
        return self.hyp(self.hypotheses.index(f))

    def subst(self, ref: int, s: Mapping[str, Formula]) -> int:
        if self.depends[ref]:
            raise ProofError("substitution into a hypothesis-dependent line")
        present = {v.name for v in vars_of(self.formulas[ref])}
        items = tuple(sorted((v, t) for v, t in s.items() if v in present and t != Var(v)))
        if not items:
            return ref
        return self._add(Sub(ref, items), apply_subst(dict(items), self.formulas[ref]), False)

    def mp(self, major: int, minor: int) -> int:
        f = self.formulas[major]
        if not isinstance(f, Imp) or f.premise != self.formulas[minor]:
            raise ProofError(
                f"modus ponens mismatch: {format_formula(f)} vs {format_formula(self.formulas[minor])}"
            )
        return self._add(MP(major, minor), f.conclusion, self.depends[major] or self.depends[minor])

    def axiom_instance(self, target: Formula, groups: Optional[Sequence[str]] = None) -> Optional[int]:
        """A line proving ``target`` as an instance of some axiom, if one fits."""
        for ax in self.calculus.axioms:
            if groups is not None and ax.group not in groups:
                continue
            s = match_instance(ax.formula, target)
            if s is not None:
                return self.subst(self.axiom(ax.label), s)
        return None

    def splice(self, proof: Proof, hyp_refs: Sequence[int] = ()) -> int:
        """Copy ``proof`` in, mapping its hypotheses to existing lines.

        Axioms are matched by formula so proofs over ``int_impl`` can be
        reused in any calculus with A1/A2 instances.
        """
        own = {a.label: a.formula for a in proof.calculus.axioms}
        refs: List[int] = []
        for st in proof.steps:
            if isinstance(st, Ax):
                r = self.axiom_instance(own[st.label])
                if r is None:
                    raise ProofError(f"{self.calculus.name} cannot supply axiom {st.label}")
            elif isinstance(st, Hyp):
                r = hyp_refs[st.index]
            elif isinstance(st, Sub):
                r = self.subst(refs[st.ref], st.mapping)
            else:
                r = self.mp(refs[st.major], refs[st.minor])
            refs.append(r)
        return refs[proof.conclusion]

    def build(self, conclusion: int) -> Proof:
        return Proof(self.calculus, tuple(self.hypotheses), tuple(self.steps), conclusion)


# ---------------------------------------------------------------------------
# Generic Hilbert-calculus derivations
# ---------------------------------------------------------------------------


def _a1(a: Formula, b: Formula) -> Formula:
    return Imp(a, Imp(b, a))


def _a2(a: Formula, b: Formula, c: Formula) -> Formula:
    return Imp(Imp(a, Imp(b, c)), Imp(Imp(a, b), Imp(a, c)))


def _need(ref: Optional[int], what: str, c: Calculus) -> int:
    if ref is None:
        raise ProofError(f"{c.name} has no axiom yielding {what}")
    return ref


def _weaken_ref(b: ProofBuilder, ref: int, extra: Formula) -> int:
    """From a closed line ``A`` derive ``extra -> A``."""
    a = b.formula(ref)
    inst = _need(b.axiom_instance(_a1(a, extra)), "A1 instances", b.calculus)
    return b.mp(inst, ref)


def _identity_ref(b: ProofBuilder, a: Formula) -> int:
    """``a -> a`` in five rule applications (A2, A1, MP, A1, MP)."""
    aa = Imp(a, a)
    s2 = _need(b.axiom_instance(_a2(a, aa, a)), "A2 instances", b.calculus)
    s1 = _need(b.axiom_instance(_a1(a, aa)), "A1 instances", b.calculus)
    r = b.mp(s2, s1)
    s3 = _need(b.axiom_instance(_a1(a, a)), "A1 instances", b.calculus)
    return b.mp(r, s3)


def weaken(p: Proof, extra: Formula) -> Proof:
    """Turn a closed proof of ``A`` into a proof of ``extra -> A``."""
    if p.hypotheses:
        raise ProofError("weaken expects a hypothesis-free proof")
    verdict = check(p)
    if not verdict:
        raise ProofError(f"weaken got an invalid proof: {verdict}")
    b = ProofBuilder(p.calculus)
    ref = b.splice(p)
    return b.build(_weaken_ref(b, ref, extra))


def _is_axiom_instance(steps: Sequence[Step], k: int) -> bool:
    st = steps[k]
    while isinstance(st, Sub):
        st = steps[st.ref]
    return isinstance(st, Ax)


def deduction_elaborate(p: Proof, discharge: int = -1) -> Proof:
    """Discharge one hypothesis ``A``: a proof of ``B`` becomes one of ``A -> B``.

    Substitution steps are accepted only as axiom instances (applied to
    an axiom, possibly repeatedly); anything else raises ``ProofError``.
    """
    verdict = check(p)
    if not verdict:
        raise ProofError(f"cannot elaborate an invalid proof: {verdict}")
    if not p.hypotheses:
        raise ProofError("proof has no hypothesis to discharge")
    h = discharge % len(p.hypotheses)
    for k, st in enumerate(p.steps):
        if isinstance(st, Sub) and not _is_axiom_instance(p.steps, k):
            raise ProofError(f"step {k}: substitution on a derived line; pre-instantiate axiom schemes")
    forms, deps, _ = _derive(p)
    a = p.hypotheses[h]
    remap = {i: j for j, i in enumerate(i for i in range(len(p.hypotheses)) if i != h)}
    b = ProofBuilder(p.calculus, [f for i, f in enumerate(p.hypotheses) if i != h])

    plain: Dict[int, int] = {}
    implied: Dict[int, int] = {}

    def lifted(k: int) -> int:
        if k not in implied:
            implied[k] = _weaken_ref(b, plain[k], a)
        return implied[k]

    for k, st in enumerate(p.steps):
        if h not in deps[k]:
            if isinstance(st, Ax):
                plain[k] = b.axiom(st.label)
            elif isinstance(st, Hyp):
                plain[k] = b.hyp(remap[st.index])
            elif isinstance(st, Sub):
                plain[k] = b.subst(plain[st.ref], st.mapping)
            else:
                plain[k] = b.mp(plain[st.major], plain[st.minor])
        elif isinstance(st, Hyp):
            implied[k] = _identity_ref(b, a)
        else:
            c, f = forms[st.minor], forms[k]
            s2 = _need(b.axiom_instance(_a2(a, c, f)), "A2 instances", b.calculus)
            r = b.mp(s2, lifted(st.major))
            implied[k] = b.mp(r, lifted(st.minor))
    return b.build(lifted(p.conclusion))


@lru_cache(maxsize=None)
def identity_proof() -> Proof:
    """``x -> x`` over ``int_impl``, by elaborating the one-line proof ``x |- x``."""
    x = Var("x")
    b = ProofBuilder(builtin("int_impl"), [x])
    return deduction_elaborate(b.build(b.hyp(0)))


@lru_cache(maxsize=None)
def vee_left_proof() -> Proof:
    """``x -> ((x -> y) -> y)`` over ``int_impl``, from ``x, x -> y |- y``."""
    x, y = Var("x"), Var("y")
    b = ProofBuilder(builtin("int_impl"), [x, Imp(x, y)])
    p = b.build(b.mp(b.hyp(1), b.hyp(0)))
    return deduction_elaborate(deduction_elaborate(p, discharge=1), discharge=0)


def _alphabetic_ref(b: ProofBuilder, f: Formula) -> int:
    if letter_index(f) is not None:
        tail = _need(b.axiom_instance(f.conclusion), "A1 instances", b.calculus)
        return _weaken_ref(b, tail, f.premise)
    left, right = unvee(f)
    # y -> x v y is an A1 instance
    return _weaken_ref(b, _alphabetic_ref(b, right), Imp(left, right))


def prove_alphabetic(f: Formula, calculus: Optional[Calculus] = None) -> Proof:
    """Closed proof of an alphabetic formula (letter codes closed under ``vee``)."""
    if alphabetic_leaves(f) is None:
        raise ValueError(f"not an alphabetic formula: {format_formula(f)}")
    b = ProofBuilder(calculus or builtin("int_impl"))
    return b.build(_alphabetic_ref(b, f))


class _Weakening:
    """Closed proofs by axiom instances, weakening, and ``x -> x v y``."""

    def __init__(self, b: ProofBuilder):
        self.b = b
        self.memo: Dict[Formula, Optional[int]] = {}
        self._vee_left: Optional[int] = None

    def vee_left(self) -> Optional[int]:
        if self._vee_left is None:
            try:
                self._vee_left = self.b.splice(vee_left_proof())
            except ProofError:
                return None
        return self._vee_left

    def prove(self, f: Formula) -> Optional[int]:
        if f in self.memo:
            return self.memo[f]
        b = self.b
        ref = b.axiom_instance(f)
        if ref is None and isinstance(f, Imp):
            sub = self.prove(f.conclusion)
            inst = None if sub is None else b.axiom_instance(_a1(f.conclusion, f.premise))
            if inst is not None:
                ref = b.mp(inst, sub)
            parts = unvee(f)
            if ref is None and parts is not None:
                left = self.prove(parts[0])
                lemma = None if left is None else self.vee_left()
                if lemma is not None:
                    ref = b.mp(b.subst(lemma, {"x": parts[0], "y": parts[1]}), left)
        self.memo[f] = ref
        return ref


def prove_by_weakening(f: Formula, calculus: Calculus) -> Optional[Proof]:
    """Try to derive ``f`` from ``calculus`` by weakening and ``vee`` introduction.

    Returns ``None`` when this strategy does not apply.
    """
    b = ProofBuilder(calculus)
    ref = _Weakening(b).prove(f)
    return None if ref is None else b.build(ref)


def prove_inclusion(c: Calculus) -> Dict[str, Optional[Proof]]:
    """Derivations witnessing that the reduction calculus lies below ``P0``.

    W, T1, T2, R1 and R2 axioms are derived in ``int_impl``; H axioms in
    ``P0`` itself (``None`` where ``P0`` offers no A1 instances).
    """
    info = _reduction(c)
    int_impl = builtin("int_impl")
    out: Dict[str, Optional[Proof]] = {}
    for ax in c.axioms:
        target = int_impl if ax.group != "H" else info.p0
        out[ax.label] = prove_by_weakening(ax.formula, target)
    return out


# ---------------------------------------------------------------------------
# Simulating the tag system inside the reduction calculus
# ---------------------------------------------------------------------------


class _Codes:
    def __init__(self, c: Calculus):
        info = _reduction(c)
        self.alphabet = info.tag.alphabet
        self.base = info.base
        self.guard = triangle(info.base)
        self.tag = info.tag
        self.omega = info.omega
        self.p0 = info.p0

    def letters(self, word: str) -> List[Formula]:
        if not word:
            raise ValueError("words must be nonempty")
        for ch in word:
            if ch not in self.alphabet:
                raise ValueError(f"letter {ch!r} is not in the alphabet")
        return [letter_code(self.alphabet.index(ch) + 1, self.base) for ch in word]

    def fwd(self, word: str) -> Formula:
        return forward(self.letters(word))

    def bwd(self, word: str) -> Formula:
        return backward(self.letters(word))

    def guarded(self, body: Formula) -> Formula:
        return Imp(self.guard, body)


def _reduction(c: Calculus):
    if c.reduction is None:
        raise ProofError(f"{c.name} was not produced by build_reduction")
    return c.reduction


def _detach(b: ProofBuilder, group: str, ref: int) -> int:
    """Modus ponens with the instance of a ``group`` axiom whose premise fits line ``ref``."""
    target = b.formula(ref)
    for ax in b.calculus.group(group):
        if isinstance(ax.formula, Imp):
            s = match_instance(ax.formula.premise, target)
            if s is not None:
                return b.mp(b.subst(b.axiom(ax.label), s), ref)
    raise ProofError(f"no {group} axiom applies to {format_formula(target)}")


def _shift(b: ProofBuilder, codes: _Codes, ref: int, xi: str, beta: str, zeta: str) -> int:
    # (xi<- v beta->) v zeta->  ==>  (xi beta)<- v zeta->, one R1 step per moved letter
    while len(beta) > 1:
        ref = _detach(b, "R1", ref)
        xi, beta = xi + beta[0], beta[1:]
        assert b.formula(ref) == codes.guarded(vee(vee(codes.bwd(xi), codes.fwd(beta)), codes.fwd(zeta)))
    return ref


def _unshift(b: ProofBuilder, codes: _Codes, ref: int, xi: str, zeta: str) -> int:
    # xi<- v zeta->  ==>  (xi zeta)->, one R2 step per moved letter
    while len(xi) > 1:
        ref = _detach(b, "R2", ref)
        xi, zeta = xi[:-1], xi[-1] + zeta
        assert b.formula(ref) == codes.guarded(vee(codes.bwd(xi), codes.fwd(zeta)))
    return ref


def _merge(b: ProofBuilder, codes: _Codes, ref: int, xi: str, zeta: str) -> int:
    if len(xi) > 1:
        ref = _shift(b, codes, ref, xi[0], xi[1:], zeta)
    return _unshift(b, codes, ref, xi, zeta)


def _nonempty(*words: str) -> None:
    if not all(words):
        raise ValueError("all words must be nonempty")


def shift_assoc(xi: str, beta: str, zeta: str, pT: Calculus) -> Proof:
    """From ``|> -> (xi<- v beta->) v zeta->`` derive ``|> -> (xi beta)<- v zeta->`` with R1."""
    _nonempty(xi, beta, zeta)
    codes = _Codes(pT)
    hyp = codes.guarded(vee(vee(codes.bwd(xi), codes.fwd(beta)), codes.fwd(zeta)))
    b = ProofBuilder(pT, [hyp])
    return b.build(_shift(b, codes, b.hyp(0), xi, beta, zeta))


def unshift_assoc(xi: str, zeta: str, pT: Calculus) -> Proof:
    """From ``|> -> xi<- v zeta->`` derive ``|> -> (xi zeta)->`` with R2."""
    _nonempty(xi, zeta)
    codes = _Codes(pT)
    b = ProofBuilder(pT, [codes.guarded(vee(codes.bwd(xi), codes.fwd(zeta)))])
    return b.build(_unshift(b, codes, b.hyp(0), xi, zeta))


def merge_code(xi: str, zeta: str, pT: Calculus) -> Proof:
    """From ``|> -> xi-> v zeta->`` derive the canonical code ``|> -> (xi zeta)->``."""
    _nonempty(xi, zeta)
    codes = _Codes(pT)
    b = ProofBuilder(pT, [codes.guarded(vee(codes.fwd(xi), codes.fwd(zeta)))])
    return b.build(_merge(b, codes, b.hyp(0), xi, zeta))


def _production(b: ProofBuilder, codes: _Codes, ref: int, xi: str) -> Tuple[int, str]:
    zeta = tagsys.step(codes.tag, xi)
    if zeta is None:
        raise ProofError(f"the tag system does not apply to {xi!r}")
    rest = xi[codes.tag.deletion:]
    if not rest:
        ref = _detach(b, "T2", ref)
    else:
        ref = _detach(b, "T1", ref)
        ref = _merge(b, codes, ref, rest, codes.tag.rules[xi[0]])
    if b.formula(ref) != codes.guarded(codes.fwd(zeta)):
        raise ProofError(f"derivation for {xi!r} did not reach the code of {zeta!r}")
    return ref, zeta


def simulate_step(xi: str, pT: Calculus) -> Proof:
    """One production ``xi |-> zeta`` as a derivation from the hypothesis ``|> -> xi->``."""
    codes = _Codes(pT)
    b = ProofBuilder(pT, [codes.guarded(codes.fwd(xi))])
    ref, _ = _production(b, codes, b.hyp(0), xi)
    return b.build(ref)


def _check_trace(trace: TagTrace, codes: _Codes) -> None:
    if trace.words[0] != codes.omega:
        raise ProofError(f"trace starts at {trace.words[0]!r}, calculus was built for {codes.omega!r}")
    for a, b in zip(trace.words, trace.words[1:]):
        if tagsys.step(codes.tag, a) != b:
            raise ProofError(f"trace step {a!r} -> {b!r} is not a production of the tag system")


def _trace_ref(b: ProofBuilder, codes: _Codes, trace: TagTrace) -> int:
    ref = b.axiom("W")
    for xi in trace.words[:-1]:
        ref, _ = _production(b, codes, ref, xi)
    return ref


def simulate_trace(trace: TagTrace, pTomega: Calculus) -> Proof:
    """Closed proof of the canonical code of the trace's last word."""
    codes = _Codes(pTomega)
    _check_trace(trace, codes)
    b = ProofBuilder(pTomega)
    return b.build(_trace_ref(b, codes, trace))


def halting_completion(trace: TagTrace, full: Calculus) -> List[Proof]:
    """For a halting run, one closed proof per ``P0`` axiom (via the H axioms)."""
    if not trace.halted:
        raise ProofError("the trace does not halt; no completion exists")
    codes = _Codes(full)
    _check_trace(trace, codes)
    proofs = []
    for target in codes.p0.axioms:
        b = ProofBuilder(full)
        ref = _trace_ref(b, codes, trace)
        code = b.formula(ref)
        for ax in full.group("H"):
            if ax.formula.premise == code and ax.formula.conclusion == target.formula:
                proofs.append(b.build(b.mp(b.axiom(ax.label), ref)))
                break
        else:
            raise ProofError(f"no H axiom connects the final word to {target.label}")
    return proofs


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------


def format_proof(p: Proof) -> str:
    lines = [f"proof over {p.calculus.name}"]
    lines += [f"hyp {i}: {format_formula(h)}" for i, h in enumerate(p.hypotheses)]
    for k, st in enumerate(p.steps):
        if isinstance(st, Ax):
            body = f"AX {st.label}"
        elif isinstance(st, Hyp):
            body = f"HYP {st.index}"
        elif isinstance(st, Sub):
            pairs = "; ".join(f"{v}:={format_formula(t)}" for v, t in st.subst)
            body = f"SUB {st.ref} {{{pairs}}}"
        else:
            body = f"MP {st.major} {st.minor}"
        lines.append(f"{k}: {body}")
    lines.append(f"qed {p.conclusion}")
    return "\n".join(lines) + "\n"


def proof_calculus_name(text: str) -> str:
    for ln in text.splitlines():
        if ln.strip():
            head = ln.strip()
            if not head.startswith("proof over "):
                raise ValueError(f"line 1 must be 'proof over <calculus>', got {head!r}")
            return head[len("proof over "):].strip()
    raise ValueError("empty proof file")


def _parse_subst(text: str, where: str) -> Substitution:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(f"{where}: substitution must be written {{x:=A; ...}}")
    out: Substitution = {}
    for part in text[1:-1].split(";"):
        if not part.strip():
            continue
        v, sep, t = part.partition(":=")
        if not sep:
            raise ValueError(f"{where}: malformed binding {part.strip()!r}")
        out[Var(v.strip()).name] = parse_formula(t.strip())
    return out


def parse_proof(text: str, calculus: Calculus) -> Proof:
    name = proof_calculus_name(text)
    if name != calculus.name:
        raise ValueError(f"proof is over {name!r} but calculus {calculus.name!r} was supplied")
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()][1:]
    hyps: List[Formula] = []
    steps: List[Step] = []
    conclusion = None
    for ln in lines:
        where = f"line {ln!r}"
        if conclusion is not None:
            raise ValueError("'qed' must be the last line")
        if ln.startswith("hyp "):
            idx, _, body = ln[4:].partition(":")
            if int(idx) != len(hyps):
                raise ValueError(f"{where}: hypotheses must be numbered 0, 1, ...")
            hyps.append(parse_formula(body.strip()))
        elif ln.startswith("qed "):
            conclusion = int(ln[4:])
        else:
            idx, sep, body = ln.partition(":")
            if not sep or not idx.strip().isdigit() or int(idx) != len(steps):
                raise ValueError(f"{where}: steps must be numbered 0, 1, ...")
            kind, _, args = body.strip().partition(" ")
            try:
                if kind == "AX":
                    steps.append(Ax(args.strip()))
                elif kind == "HYP":
                    steps.append(Hyp(int(args)))
                elif kind == "MP":
                    major, minor = args.split()
                    steps.append(MP(int(major), int(minor)))
                elif kind == "SUB":
                    ref, _, mapping = args.strip().partition(" ")
                    s = _parse_subst(mapping, where)
                    steps.append(Sub(int(ref), tuple(sorted(s.items()))))
                else:
                    raise ValueError(f"{where}: unknown step kind {kind!r}")
            except (TypeError, ValueError) as exc:
                raise ValueError(f"{where}: {exc}") from None
    if conclusion is None:
        raise ValueError("missing 'qed <k>' line")
    return Proof(calculus, tuple(hyps), tuple(steps), conclusion)


def load_proof(path: Union[str, Path], calculus: Calculus) -> Proof:
    return parse_proof(Path(path).read_text(encoding="utf-8"), calculus)
