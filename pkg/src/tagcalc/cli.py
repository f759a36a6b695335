"""Command-line driver.

Exit status: 0 on success or a valid check, 1 on usage errors and
malformed input, 2 when a check fails.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import closure, tagsys
from .calculus import BUILTIN_NAMES, Calculus, build_reduction, format_calculus, load_calculus, resolve_calculus
from .encode import X0, word_codes
from .formula import FormulaSyntaxError, format_formula, parse_formula, vars_of
from .proof import (
    ProofError,
    check,
    format_proof,
    halting_completion,
    parse_proof,
    proof_calculus_name,
    prove_inclusion,
    simulate_trace,
)
from .unify import mgu, rename_apart

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


def _out(text: str = "") -> None:
    print(text)


def _reduction(args) -> Calculus:
    t = tagsys.load_tag_system(args.tagfile)
    p0 = resolve_calculus(args.p0)
    name = f"{Path(args.tagfile).stem}_{args.word}_{p0.name}"
    return build_reduction(t, args.word, p0, name=_token(name))


def _token(name: str) -> str:
    return "".join(ch if ch.isalnum() or ch in "_.-" else "_" for ch in name)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_tag_run(args) -> int:
    t = tagsys.load_tag_system(args.file)
    trace = tagsys.run(t, args.word, args.fuel)
    for w in trace.words:
        _out(w if w else "(empty)")
    _out("HALTED" if trace.halted else "FUEL EXHAUSTED")
    return EXIT_OK


def cmd_encode(args) -> int:
    if args.tag:
        alphabet = tagsys.load_tag_system(args.tag).alphabet
    elif args.alphabet:
        alphabet = tuple(args.alphabet)
    else:
        alphabet = tuple(sorted(set(args.word)))
    for ct, f in word_codes(args.word, alphabet, X0):
        _out(f"type {ct}: {format_formula(f)}")
    return EXIT_OK


def cmd_build(args) -> int:
    c = _reduction(args)
    text = format_calculus(c)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        _out(f"wrote {args.output} ({len(c)} axioms)")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_prove(args) -> int:
    c = _reduction(args)
    info = c.reduction
    trace = tagsys.run(info.tag, info.omega, args.fuel)
    if not trace.halted:
        _out(f"does not halt within {args.fuel} steps; no proofs written")
        return EXIT_FAILED
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / f"{c.name}.calc").write_text(format_calculus(c), encoding="utf-8")
    proofs = [("trace", simulate_trace(trace, c))]
    proofs += zip((a.label for a in info.p0.axioms), halting_completion(trace, c))
    status = EXIT_OK
    for label, p in proofs:
        path = out / f"{label.lower()}.proof"
        path.write_text(format_proof(p), encoding="utf-8")
        verdict = check(p)
        status = status if verdict else EXIT_FAILED
        _out(f"{path}: {verdict} ({len(p)} steps) {format_formula(p.formula) if verdict else ''}".rstrip())
    return status


def _calculus_for_proof(path: Path, text: str, explicit: Optional[str]) -> Calculus:
    if explicit:
        return resolve_calculus(explicit)
    name = proof_calculus_name(text)
    if name in BUILTIN_NAMES:
        return resolve_calculus(name)
    sibling = path.parent / f"{name}.calc"
    if sibling.is_file():
        return load_calculus(sibling)
    raise UsageError(f"cannot find calculus {name!r}; pass --calculus or place {sibling.name} next to the proof")


def cmd_check(args) -> int:
    path = Path(args.prooffile)
    text = path.read_text(encoding="utf-8")
    p = parse_proof(text, _calculus_for_proof(path, text, args.calculus))
    verdict = check(p)
    _out(str(verdict))
    return EXIT_OK if verdict else EXIT_FAILED


def cmd_unify(args) -> int:
    a, b = parse_formula(args.f1), parse_formula(args.f2)
    if args.apart:
        b, _ = rename_apart(b, vars_of(a))
    s = mgu(a, b)
    if s is None:
        _out("not unifiable")
    else:
        _out("unifiable")
        for v in sorted(s):
            _out(f"  {v} := {format_formula(s[v])}")
    return EXIT_OK


def cmd_saturate(args) -> int:
    c = resolve_calculus(args.calcfile)
    res = closure.saturate(c, args.depth, args.size)
    for k, s in enumerate(res.schemes):
        _out(f"scheme {k} depth {s.depth}: {format_formula(s.formula)}")
    state = "saturated" if res.saturated else "truncated" if res.truncated else "depth bound"
    _out(f"{len(res)} schemes, depth {res.depth}, {state}")
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    c = _reduction(args)
    info = c.reduction
    t, omega, p0 = info.tag, info.omega, info.p0
    failed = False

    fresh = {info.base, info.y, info.z, info.u}
    clash = fresh & p0.variables()
    _out(f"freshness: {'ok' if not clash else 'VIOLATED ' + str(sorted(v.name for v in clash))}")
    failed |= bool(clash)
    inclusion = prove_inclusion(c)
    proven = [l for l, p in inclusion.items() if p is not None and check(p)]
    core = [a.label for a in c.axioms if a.group != "H"]
    core_ok = all(l in proven for l in core)
    h_count = sum(1 for a in c.axioms if a.group == "H")
    h_proven = sum(1 for a in c.axioms if a.group == "H" and a.label in proven)
    _out(f"inclusion: {sum(l in proven for l in core)}/{len(core)} W/T/R axioms derived in int_impl; "
         f"{h_proven}/{h_count} H axioms derived in {p0.name}")
    failed |= not core_ok

    trace = tagsys.run(t, omega, args.fuel)
    if trace.halted:
        proofs = halting_completion(trace, c)
        good = sum(1 for p in proofs if check(p))
        _out(f"HALTS after {trace.steps} steps at {trace.final!r}; {good}/{len(proofs)} axiom proofs valid")
        failed |= good != len(proofs)
    else:
        _out(f"NO HALT within fuel {args.fuel}")

    found = closure.search_height(c, args.depth, args.size)
    if found.height is None:
        state = "saturated" if found.schemes.saturated else "truncated" if found.schemes.truncated else "bounded"
        _out(f"no short-word code to depth {found.schemes.depth} ({len(found.schemes)} schemes, {state})")
        audit_depth = found.schemes.depth
    else:
        reachable, _ = tagsys.reachable_words(t, omega, args.fuel)
        ok = found.word in reachable
        _out(f"height {found.height}: decoded word {found.word} {'reachable' if ok else 'NOT REACHABLE'}")
        failed |= not ok
        if trace.halted and found.word != trace.final:
            _out(f"  mismatch: trace ends at {trace.final!r}")
            failed = True
        audit_depth = found.height
    report = closure.audit_shapes(found.schemes, t, omega, c, args.fuel, max_depth=audit_depth)
    _out(f"audit to depth {audit_depth}: {len(report.entries)} schemes, {len(report.violations)} violations, "
         f"{'disjoint' if report.disjoint else 'NOT DISJOINT'}{', inconclusive' if report.inconclusive else ''}")
    if args.verbose:
        for line in report.lines():
            _out("  " + line)
    failed |= bool(report.violations) or not report.disjoint
    return EXIT_FAILED if failed else EXIT_OK


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tagcalc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    tag = sub.add_parser("tag", help="tag-system utilities")
    tag_sub = tag.add_subparsers(dest="tag_command", required=True)
    run = tag_sub.add_parser("run", help="run a tag system on a word")
    run.add_argument("file")
    run.add_argument("word")
    run.add_argument("--fuel", type=int, default=1000)
    run.set_defaults(func=cmd_tag_run)

    enc = sub.add_parser("encode", help="print every code of a word")
    enc.add_argument("word")
    enc.add_argument("--alphabet", help="alphabet letters in order, e.g. 'ab'")
    enc.add_argument("--tag", help="take the alphabet from a tag-system file")
    enc.set_defaults(func=cmd_encode)

    def reduction_args(p):
        p.add_argument("tagfile")
        p.add_argument("word")
        p.add_argument("--p0", default="cl_impl", help=f"builtin ({', '.join(BUILTIN_NAMES)}) or calculus file")

    build = sub.add_parser("build", help="write the reduction calculus")
    reduction_args(build)
    build.add_argument("-o", "--output")
    build.set_defaults(func=cmd_build)

    prove = sub.add_parser("prove", help="derive every P0 axiom from a halting run")
    reduction_args(prove)
    prove.add_argument("--out", default="out")
    prove.add_argument("--fuel", type=int, default=1000)
    prove.set_defaults(func=cmd_prove)

    chk = sub.add_parser("check", help="check a proof file")
    chk.add_argument("prooffile")
    chk.add_argument("--calculus", help="builtin name or calculus file (default: from the proof header)")
    chk.set_defaults(func=cmd_check)

    uni = sub.add_parser("unify", help="most general unifier of two formulas")
    uni.add_argument("f1")
    uni.add_argument("f2")
    uni.add_argument("--apart", action="store_true", help="rename the second formula apart first")
    uni.set_defaults(func=cmd_unify)

    sat = sub.add_parser("saturate", help="condensed-detachment closure of a calculus")
    sat.add_argument("calcfile", help="builtin name or calculus file")
    sat.add_argument("--depth", type=int, default=2)
    sat.add_argument("--size", type=int, default=10_000)
    sat.set_defaults(func=cmd_saturate)

    rt = sub.add_parser("roundtrip", help="both directions of the reduction on one instance")
    reduction_args(rt)
    rt.add_argument("--fuel", type=int, default=1000)
    rt.add_argument("--depth", type=int, default=10)
    rt.add_argument("--size", type=int, default=10_000)
    rt.add_argument("-v", "--verbose", action="store_true", help="print the per-scheme audit")
    rt.set_defaults(func=cmd_roundtrip)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, FormulaSyntaxError, ProofError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
