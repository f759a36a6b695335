"""Post tag systems: single productions, fuel-bounded runs, halting."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, Mapping, Optional, Sequence, Tuple, Union

__all__ = [
    "TagSystem",
    "TagTrace",
    "step",
    "run",
    "reachable_words",
    "parse_tag_system",
    "format_tag_system",
    "load_tag_system",
]


@dataclass(frozen=True)
class TagSystem:
    """Alphabet ``a_1 .. a_m`` (single characters), productions, deletion number."""

    alphabet: Tuple[str, ...]
    productions: Tuple[Tuple[str, str], ...]
    deletion: int

    def __init__(self, alphabet: Sequence[str], productions: Mapping[str, str], deletion: int):
        alphabet = tuple(alphabet)
        if not alphabet:
            raise ValueError("alphabet must be nonempty")
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("alphabet letters must be distinct")
        for a in alphabet:
            if len(a) != 1 or a.isspace():
                raise ValueError(f"letters are single non-space characters, got {a!r}")
        if isinstance(deletion, bool) or not isinstance(deletion, int) or deletion < 1:
            raise ValueError(f"deletion number must be a positive integer, got {deletion!r}")
        if set(productions) != set(alphabet):
            raise ValueError("exactly one production per alphabet letter is required")
        for a, w in productions.items():
            if not w:
                raise ValueError(f"production for {a!r} is empty")
            bad = set(w) - set(alphabet)
            if bad:
                raise ValueError(f"production for {a!r} uses letters outside the alphabet: {sorted(bad)}")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "productions", tuple((a, productions[a]) for a in alphabet))
        object.__setattr__(self, "deletion", deletion)

    @property
    def rules(self) -> Dict[str, str]:
        return dict(self.productions)

    def index(self, letter: str) -> int:
        """1-based position of ``letter`` in the alphabet."""
        return self.alphabet.index(letter) + 1

    def check_word(self, word: str) -> None:
        bad = set(word) - set(self.alphabet)
        if bad:
            raise ValueError(f"word {word!r} has letters outside the alphabet: {sorted(bad)}")


@dataclass(frozen=True)
class TagTrace:
    words: Tuple[str, ...]
    halted: bool
    fuel_exhausted: bool

    @property
    def final(self) -> str:
        return self.words[-1]

    @property
    def steps(self) -> int:
        return len(self.words) - 1


def step(t: TagSystem, w: str) -> Optional[str]:
    """One production, or ``None`` when ``|w| < d``."""
    t.check_word(w)
    if len(w) < t.deletion:
        return None
    return w[t.deletion:] + t.rules[w[0]]


def run(t: TagSystem, w: str, fuel: int) -> TagTrace:
    """Apply at most ``fuel`` productions, recording every word."""
    if fuel < 0:
        raise ValueError("fuel must be nonnegative")
    words = [w]
    t.check_word(w)
    for _ in range(fuel):
        nxt = step(t, words[-1])
        if nxt is None:
            break
        words.append(nxt)
    halted = len(words[-1]) < t.deletion
    return TagTrace(tuple(words), halted=halted, fuel_exhausted=not halted)


def reachable_words(t: TagSystem, w: str, fuel: int) -> Tuple[FrozenSet[str], bool]:
    """Words ``v`` with ``w ==>_T v`` found within ``fuel`` productions.

    The second component is True when the set is known to be complete:
    the run halted or entered a cycle.
    """
    seen = {w}
    cur = w
    t.check_word(w)
    for _ in range(fuel):
        nxt = step(t, cur)
        if nxt is None:
            return frozenset(seen), True
        if nxt in seen:
            return frozenset(seen), True
        seen.add(nxt)
        cur = nxt
    return frozenset(seen), len(cur) < t.deletion


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------


def parse_tag_system(text: str) -> TagSystem:
    """Parse ``deletion: <d>`` followed by ``<letter> -> <word>`` lines."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty tag-system file")
    head, _, value = lines[0].partition(":")
    if head.strip() != "deletion" or not value.strip():
        raise ValueError(f"line 1 must be 'deletion: <d>', got {lines[0]!r}")
    try:
        d = int(value.strip())
    except ValueError:
        raise ValueError(f"bad deletion number {value.strip()!r}") from None
    alphabet = []
    productions = {}
    for ln in lines[1:]:
        letter, arrow, word = ln.partition("->")
        letter, word = letter.strip(), word.strip()
        if not arrow or not letter or not word:
            raise ValueError(f"malformed production line {ln!r}")
        if letter in productions:
            raise ValueError(f"duplicate production for {letter!r}")
        alphabet.append(letter)
        productions[letter] = word
    return TagSystem(alphabet, productions, d)


def format_tag_system(t: TagSystem) -> str:
    out = [f"deletion: {t.deletion}"]
    out += [f"{a} -> {w}" for a, w in t.productions]
    return "\n".join(out) + "\n"


def load_tag_system(path: Union[str, Path]) -> TagSystem:
    return parse_tag_system(Path(path).read_text(encoding="utf-8"))
