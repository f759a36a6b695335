import itertools
import random

from hypothesis import given, settings

from conftest import formulas, random_formula
from tagcalc.encode import letter_code, triangle
from tagcalc.formula import Conn, Imp, Var, apply_subst, match_instance, parse_formula, vars_of
from tagcalc.unify import fresh_name, is_variant, mgu, normalize, rename_apart, unifiable

P = parse_formula
x, y = Var("x"), Var("y")


def test_rename_apart_examples():
    f, r = rename_apart(P("x -> x"), {x})
    assert r == {"x": Var("x_1")}
    assert f == P("x_1 -> x_1")
    g = P("x -> y")
    assert rename_apart(g, set()) == (g, {})
    t, r = rename_apart(triangle(), {Var("x0")})
    assert is_variant(t, triangle()) and not (vars_of(t) & {Var("x0")})


def test_fresh_name_skips_taken():
    assert fresh_name("x", {"x", "x_1"}) == "x_2"


def test_mgu_examples():
    assert mgu(x, x) == {}
    assert mgu(P("x -> x"), P("(y -> z) -> z")) is None
    s = mgu(P("x -> y -> x"), P("u -> v -> u"))
    assert s is not None and all(isinstance(t, Var) for t in s.values())
    assert mgu(x, P("x -> y")) is None  # occurs check
    assert mgu(Conn("f", (x,)), Conn("g", (x,))) is None
    assert mgu(Conn("f", (x,)), Imp(x, x)) is None


def test_unifiable_examples():
    assert not unifiable(letter_code(1), letter_code(2))
    assert not unifiable(triangle(), Imp(triangle(), x))
    assert unifiable(P("x -> y"), P("u -> v"))
    assert not unifiable(triangle(), P("x -> x"))
    # renaming apart: x and x -> x unify once the variables are separated
    assert mgu(x, P("x -> x")) is None and unifiable(x, P("x -> x"))


@settings(max_examples=300)
@given(formulas(8), formulas(8))
def test_mgu_sound_and_idempotent(a, b):
    s = mgu(a, b)
    if s is not None:
        assert apply_subst(s, a) == apply_subst(s, b)
        for t in s.values():
            assert apply_subst(s, t) == t
        assert mgu(b, a) is not None
    else:
        assert mgu(b, a) is None


def _small_terms(depth):
    terms = [x, y]
    for _ in range(depth):
        terms = terms + [Imp(a, b) for a in terms for b in terms]
        terms = list(dict.fromkeys(terms))
    return terms


def _enum(depth):
    if depth == 0:
        return [x, y]
    sub = _enum(depth - 1)
    return list(dict.fromkeys([x, y] + [Imp(a, b) for a in sub for b in sub]))


def test_mgu_most_general_bruteforce():
    # Oracle: every ground-ish unifier from a finite pool is an instance of the mgu.
    pool = _small_terms(1)
    sigmas = [{"x": a, "y": b} for a in pool for b in pool]
    forms = _enum(2)
    rng = random.Random(3)
    pairs = [(rng.choice(forms), rng.choice(forms)) for _ in range(400)]
    for a, b in pairs:
        s = mgu(a, b)
        found = [sg for sg in sigmas if apply_subst(sg, a) == apply_subst(sg, b)]
        if s is None:
            assert not found
            continue
        general = Conn("t", (apply_subst(s, x), apply_subst(s, y)))
        for sg in found:
            special = Conn("t", (sg["x"], sg["y"]))
            assert match_instance(general, special) is not None


def test_normalize_and_variant():
    f = P("(b -> a) -> b")
    assert normalize(f) == P("(x1 -> x2) -> x1")
    assert is_variant(f, P("(q -> p) -> q"))
    assert not is_variant(f, P("(q -> q) -> q"))


@given(formulas(10))
def test_normalize_idempotent_variant(f):
    n = normalize(f)
    assert normalize(n) == n
    assert is_variant(f, n)


def test_alphabetic_pairwise_not_unifiable():
    from tagcalc.encode import alphabetic_formulas

    forms = alphabetic_formulas("ab", 4)
    assert len(forms) == 102
    bad = [(a, b) for a, b in itertools.combinations(forms, 2) if unifiable(a, b)]
    assert bad == []


def test_guard_never_unifies_with_guarded_shapes():
    rng = random.Random(11)
    t = triangle()
    for _ in range(300):
        a, b, c = (random_formula(rng, 8, names=["x0", "x", "y"]) for _ in range(3))
        assert not unifiable(t, Imp(t, a))
        assert not unifiable(t, Imp(Imp(t, b), c))
