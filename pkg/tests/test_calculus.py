from collections import Counter

import pytest

from tagcalc.calculus import (
    BUILTIN_NAMES,
    Axiom,
    Calculus,
    build_reduction,
    builtin,
    format_calculus,
    load_calculus,
    parse_calculus,
    resolve_calculus,
    subsystem,
)
from tagcalc.encode import letter_code, nest, triangle, vee
from tagcalc.formula import Imp, parse_formula, vars_of
from tagcalc.proof import check, prove_inclusion
from tagcalc.tagsys import TagSystem

P = parse_formula


def test_builtins():
    assert set(BUILTIN_NAMES) == {"int_impl", "cl_impl", "lukasiewicz_single", "meredith_single"}
    assert builtin("int_impl")["A2"] == P("(x -> (y -> z)) -> ((x -> y) -> (x -> z))")
    assert len(builtin("cl_impl")) == 3
    assert builtin("cl_impl")["Peirce"] == P("((x -> y) -> x) -> x")
    assert builtin("meredith_single")["M"] == P("((x -> y) -> z) -> (u -> ((y -> (z -> v)) -> (y -> v)))")
    with pytest.raises(ValueError):
        builtin("nope")


def test_calculus_validation():
    f = P("x -> x")
    with pytest.raises(ValueError):
        Calculus("c", (Axiom("A", f), Axiom("A", f)))
    with pytest.raises(ValueError):
        Calculus("c", (Axiom("bad label", f),))
    with pytest.raises(ValueError):
        Calculus("c", (Axiom("A", f, "nogroup"),))
    with pytest.raises(ValueError):
        Calculus("c", (Axiom("A", P("neg(x) -> neg(x, y)")),))
    c = Calculus("c", (Axiom("A", f),))
    assert "A" in c and "B" not in c and "->" in c.signature


def expected_counts(m, d, p0):
    # T1/T2 range over a letter and a word of length d-1; H over short words times P0.
    heads = m * m ** (d - 1)
    return {"W": 1, "T1": heads, "T2": heads, "H": sum(m**k for k in range(1, d)) * p0, "R1": m, "R2": m}


@pytest.mark.parametrize("m, d, p0", [(2, 2, "cl_impl"), (3, 2, "int_impl"), (2, 3, "cl_impl"), (1, 4, "meredith_single")])
def test_axiom_counts(m, d, p0):
    alphabet = "abc"[:m]
    t = TagSystem(alphabet, {a: alphabet for a in alphabet}, d)
    c = build_reduction(t, alphabet[0] * d, builtin(p0))
    want = expected_counts(m, d, len(builtin(p0)))
    assert Counter(a.group for a in c.axioms) == want
    assert len(c) == sum(want.values())


def test_19_axioms(T1):
    c = build_reduction(T1, "aaa", builtin("cl_impl"))
    counts = Counter(a.group for a in c.axioms)
    assert [counts[g] for g in ("W", "T1", "T2", "H", "R1", "R2")] == [1, 4, 4, 6, 2, 2]
    assert len(c) == 19


def test_axiom_shapes(T1):
    c = build_reduction(T1, "a", builtin("cl_impl"))
    info = c.reduction
    x0, y, z = info.base, info.y, info.z
    g = triangle(x0)
    a1 = letter_code(1, x0)
    assert c["W"] == Imp(g, a1)
    assert c.group("R2")[0].formula == Imp(Imp(g, vee(vee(y, a1), z)), Imp(g, vee(y, vee(a1, z))))
    # T1.1 is letter a followed by a: aa y -> y ab
    a2 = letter_code(2, x0)
    assert c["T1.1"] == Imp(Imp(g, vee(a1, vee(a1, y))), Imp(g, vee(y, vee(a1, a2))))
    assert c["T2.1"] == Imp(Imp(g, vee(a1, a1)), Imp(g, vee(a1, a2)))
    assert [a.formula.conclusion for a in c.group("H")[:3]] == builtin("cl_impl").formulas
    assert c.group("H")[0].formula.premise == Imp(g, nest("a", "ab", base=x0))


def test_freshness():
    t = TagSystem("ab", {"a": "ab", "b": "b"}, 2)
    p0 = Calculus("p", (Axiom("X", P("v0 -> v1 -> v3 -> x0 -> v0")),))
    c = build_reduction(t, "ab", p0)
    info = c.reduction
    fresh = {info.base, info.y, info.z, info.u}
    assert len(fresh) == 4 and not fresh & p0.variables()
    for a in c.axioms:
        if a.group != "H":
            assert vars_of(a.formula) <= fresh
    assert vars_of(triangle(info.base)) == {info.base}


def test_subsystems(T1):
    c = build_reduction(T1, "aaa", builtin("cl_impl"))
    groups = lambda s: {a.group for a in s.axioms}  # noqa: E731
    assert groups(subsystem(c, "P_T")) == {"T1", "T2", "R1", "R2"}
    assert groups(subsystem(c, "P_T_omega")) == {"W", "T1", "T2", "R1", "R2"}
    assert groups(subsystem(c, "P_T_P0")) == {"T1", "T2", "R1", "R2", "H"}
    assert groups(subsystem(c, {"W", "H"})) == {"W", "H"}
    sub = subsystem(c, "P_T")
    assert sub.reduction == c.reduction
    with pytest.raises(ValueError):
        subsystem(sub, {"W"})
    with pytest.raises(ValueError):
        subsystem(c, "P_X")
    parts = [subsystem(c, {g}) for g in ("W", "T1", "T2", "H", "R1", "R2")]
    assert sorted(a.label for s in parts for a in s.axioms) == sorted(a.label for a in c.axioms)


def test_file_round_trip(T1, tmp_path):
    c = build_reduction(T1, "aaa", builtin("cl_impl"), name="t1_aaa")
    text = format_calculus(c)
    assert text.splitlines()[0] == "calculus: t1_aaa"
    back = parse_calculus(text)
    assert [(a.label, a.formula, a.group) for a in back.axioms] == [(a.label, a.formula, a.group) for a in c.axioms]
    path = tmp_path / "c.calc"
    path.write_text(text)
    assert resolve_calculus(str(path)).formulas == c.formulas
    assert load_calculus(path).name == "t1_aaa"
    assert parse_calculus(format_calculus(builtin("cl_impl"))).group("builtin")
    with pytest.raises(ValueError):
        parse_calculus("A1: x -> x\n")
    with pytest.raises(ValueError):
        resolve_calculus(str(tmp_path / "missing.calc"))


@pytest.mark.parametrize("p0", ["int_impl", "cl_impl"])
def test_inclusion_proofs(T1, p0):
    c = build_reduction(T1, "aaa", builtin(p0))
    proofs = prove_inclusion(c)
    assert set(proofs) == {a.label for a in c.axioms}
    for label, p in proofs.items():
        assert p is not None, label
        assert check(p), label
        assert p.formula == c[label]
        assert p.calculus.name == (p0 if c.group("H") and label.startswith("H") else "int_impl")
