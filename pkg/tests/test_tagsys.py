import pytest
from hypothesis import given, strategies as st

from tagcalc.tagsys import (
    TagSystem,
    format_tag_system,
    load_tag_system,
    parse_tag_system,
    reachable_words,
    run,
    step,
)


def oracle_step(rules, d, w):
    # Independent string rewrite used to cross-check the simulator.
    if len(w) < d:
        return None
    return w[d:] + rules[w[0]]


def test_step_examples(T1, T2):
    assert step(T1, "aaa") == "aab"
    assert step(T1, "b") is None
    assert step(T2, "aa") == "aa"


def test_run_examples(T1, T2):
    tr = run(T1, "aaa", 100)
    assert tr.words == ("aaa", "aab", "bab", "bb", "b")
    assert tr.halted and not tr.fuel_exhausted and tr.steps == 4 and tr.final == "b"
    tr = run(T2, "aa", 10)
    assert list(tr.words) == ["aa"] * 11
    assert tr.fuel_exhausted and not tr.halted
    tr = run(T1, "a", 5)
    assert list(tr.words) == ["a"] and tr.halted and tr.steps == 0


def test_run_matches_oracle(T1):
    w, words = "aaa", ["aaa"]
    while (w := oracle_step(T1.rules, 2, w)) is not None:
        words.append(w)
    assert list(run(T1, "aaa", 100).words) == words


collatz = TagSystem("abc", {"a": "bc", "b": "a", "c": "aaa"}, 2)


@given(st.text("abc", min_size=1, max_size=8), st.integers(0, 40))
def test_trace_validity_and_length_law(w, fuel):
    tr = run(collatz, w, fuel)
    assert tr.words[0] == w
    assert tr.steps <= fuel
    for a, b in zip(tr.words, tr.words[1:]):
        assert b == oracle_step(collatz.rules, 2, a)
        assert len(b) == len(a) - 2 + len(collatz.rules[a[0]])
    assert tr.halted == (len(tr.final) < 2)
    assert tr.halted != tr.fuel_exhausted


def test_reachable(T1, T2):
    words, complete = reachable_words(T1, "aaa", 100)
    assert words == {"aaa", "aab", "bab", "bb", "b"} and complete
    words, complete = reachable_words(T2, "aa", 100)
    assert words == {"aa"} and complete  # cycle detected


def test_validation():
    with pytest.raises(ValueError):
        TagSystem("ab", {"a": "ab"}, 2)
    with pytest.raises(ValueError):
        TagSystem("ab", {"a": "ac", "b": "b"}, 2)
    with pytest.raises(ValueError):
        TagSystem("ab", {"a": "", "b": "b"}, 2)
    with pytest.raises(ValueError):
        TagSystem("ab", {"a": "a", "b": "b"}, 0)
    with pytest.raises(ValueError):
        TagSystem("aa", {"a": "a"}, 1)
    t = TagSystem("ab", {"a": "ab", "b": "b"}, 2)
    with pytest.raises(ValueError):
        step(t, "ax")
    assert t.index("b") == 2


def test_file_round_trip(tmp_path):
    text = "# T1\ndeletion: 2\n\na -> ab\nb -> b\n"
    t = parse_tag_system(text)
    assert t.deletion == 2 and t.rules == {"a": "ab", "b": "b"}
    assert parse_tag_system(format_tag_system(t)) == t
    path = tmp_path / "t.tag"
    path.write_text(format_tag_system(collatz))
    assert load_tag_system(path) == collatz
    with pytest.raises(ValueError):
        parse_tag_system("a -> ab\n")
