"""Implicational encodings of letters and words.

Every code is built from a single base variable (``x0`` by default):

* letter ``a_i``:   ``P_i -> (x0 -> (x0 -> x0))`` with ``P_1 = x0 -> x0`` and
  ``P_{k+1} = P_k -> x0``;
* ``vee(A, B)``:    ``(A -> B) -> B``;
* the guard:        ``((x0 -> x0) -> x0) -> x0``;
* a word code:      guard ``->`` body, where the body is one of four
  bracketings of the word's letter codes under ``vee`` (types 0 to 3).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import List, Optional, Sequence, Tuple

from .formula import Formula, Imp, Var

__all__ = [
    "X0",
    "FORWARD",
    "BACKWARD",
    "CodeType",
    "letter_code",
    "vee",
    "unvee",
    "triangle",
    "forward",
    "backward",
    "nest",
    "code_of",
    "word_codes",
    "decode",
    "letter_index",
    "alphabetic_leaves",
    "alphabetic_formulas",
    "guard_base",
]

X0 = Var("x0")
FORWARD = "forward"
BACKWARD = "backward"


@dataclass(frozen=True)
class CodeType:
    """Which of the four code shapes, plus the lengths of the word pieces."""

    tag: int
    splits: Tuple[int, ...] = ()

    def __post_init__(self):
        want = {0: 0, 1: 2, 2: 3, 3: 2}
        if self.tag not in want or len(self.splits) != want[self.tag]:
            raise ValueError(f"bad code type {self.tag} with splits {self.splits}")
        mins = {0: (), 1: (2, 1), 2: (2, 2, 1), 3: (3, 1)}[self.tag]
        if any(n < m for n, m in zip(self.splits, mins)):
            raise ValueError(f"type {self.tag} split {self.splits} violates minimum lengths {mins}")

    def __str__(self) -> str:
        if not self.splits:
            return str(self.tag)
        return f"{self.tag}({','.join(map(str, self.splits))})"


TYPE0 = CodeType(0)


def letter_code(i: int, base: Formula = X0) -> Formula:
    if i < 1:
        raise ValueError(f"letter index must be >= 1, got {i}")
    tower = Imp(base, base)
    for _ in range(i - 1):
        tower = Imp(tower, base)
    return Imp(tower, Imp(base, Imp(base, base)))


def vee(a: Formula, b: Formula) -> Formula:
    return Imp(Imp(a, b), b)


def unvee(f: Formula) -> Optional[Tuple[Formula, Formula]]:
    """Split ``(A -> B) -> B`` into ``(A, B)``; ``None`` for any other shape."""
    if isinstance(f, Imp) and isinstance(f.premise, Imp) and f.premise.conclusion == f.conclusion:
        return f.premise.premise, f.conclusion
    return None


def triangle(base: Formula = X0) -> Formula:
    return Imp(Imp(Imp(base, base), base), base)


def guard_base(f: Formula) -> Optional[Formula]:
    """If ``f`` is a guard built from some formula ``b``, return ``b``."""
    if not isinstance(f, Imp):
        return None
    b = f.conclusion
    return b if f == triangle(b) else None


def forward(leaves: Sequence[Formula]) -> Formula:
    """Right-nested ``vee``: ``l1 v (l2 v (... v ln))``."""
    if not leaves:
        raise ValueError("cannot nest an empty sequence")
    result = leaves[-1]
    for leaf in reversed(leaves[:-1]):
        result = vee(leaf, result)
    return result


def backward(leaves: Sequence[Formula]) -> Formula:
    """Left-nested ``vee``: ``((l1 v l2) v ...) v ln``."""
    if not leaves:
        raise ValueError("cannot nest an empty sequence")
    result = leaves[0]
    for leaf in leaves[1:]:
        result = vee(result, leaf)
    return result


def _letters(word: str, alphabet: Sequence[str], base: Formula) -> List[Formula]:
    if not word:
        raise ValueError("words to encode must be nonempty")
    out = []
    for ch in word:
        if ch not in alphabet:
            raise ValueError(f"letter {ch!r} is not in the alphabet {list(alphabet)}")
        out.append(letter_code(list(alphabet).index(ch) + 1, base))
    return out


def nest(word: str, alphabet: Sequence[str], direction: str = FORWARD, base: Formula = X0) -> Formula:
    leaves = _letters(word, alphabet, base)
    if direction == FORWARD:
        return forward(leaves)
    if direction == BACKWARD:
        return backward(leaves)
    raise ValueError(f"direction must be {FORWARD!r} or {BACKWARD!r}")


def code_of(word: str, ctype: CodeType, alphabet: Sequence[str], base: Formula = X0) -> Formula:
    """The code of ``word`` with the given shape and split."""
    if sum(ctype.splits) not in (0, len(word)):
        raise ValueError(f"split {ctype.splits} does not cover a word of length {len(word)}")
    fwd = lambda w: nest(w, alphabet, FORWARD, base)  # noqa: E731
    bwd = lambda w: nest(w, alphabet, BACKWARD, base)  # noqa: E731
    if ctype.tag == 0:
        body = fwd(word)
    elif ctype.tag == 1:
        k = ctype.splits[0]
        body = vee(fwd(word[:k]), fwd(word[k:]))
    elif ctype.tag == 2:
        k, l = ctype.splits[0], ctype.splits[0] + ctype.splits[1]
        body = vee(vee(bwd(word[:k]), fwd(word[k:l])), fwd(word[l:]))
    else:
        k = ctype.splits[0]
        body = vee(bwd(word[:k]), fwd(word[k:]))
    return Imp(triangle(base), body)


def _code_types(n: int) -> List[CodeType]:
    types = [TYPE0]
    types += [CodeType(1, (k, n - k)) for k in range(2, n)]
    types += [CodeType(2, (k, l, n - k - l)) for k in range(2, n) for l in range(2, n - k)]
    types += [CodeType(3, (k, n - k)) for k in range(3, n)]
    return types


def word_codes(word: str, alphabet: Sequence[str], base: Formula = X0) -> List[Tuple[CodeType, Formula]]:
    """All codes of a nonempty word, canonical (type 0) first."""
    _letters(word, alphabet, base)
    return [(ct, code_of(word, ct, alphabet, base)) for ct in _code_types(len(word))]


# ---------------------------------------------------------------------------
# Recognition
# ---------------------------------------------------------------------------


def letter_index(f: Formula, base: Optional[Formula] = None) -> Optional[int]:
    """Index ``i`` when ``f`` is the code of ``a_i`` over ``base`` (inferred if None)."""
    if not isinstance(f, Imp):
        return None
    tail = f.conclusion
    if not (isinstance(tail, Imp) and isinstance(tail.conclusion, Imp)):
        return None
    b = tail.premise
    if base is not None and b != base:
        return None
    if tail.conclusion.premise != b or tail.conclusion.conclusion != b:
        return None
    tower, i = f.premise, 1
    while isinstance(tower, Imp) and tower.conclusion == b and tower.premise != b:
        tower, i = tower.premise, i + 1
    if isinstance(tower, Imp) and tower.premise == b and tower.conclusion == b:
        return i
    return None


def _tree(f: Formula, base: Formula):
    """Parse an alphabetic formula into a nested tuple tree of letter indices."""
    i = letter_index(f, base)
    if i is not None:
        return i
    parts = unvee(f)
    if parts is None:
        return None
    left = _tree(parts[0], base)
    if left is None:
        return None
    right = _tree(parts[1], base)
    if right is None:
        return None
    return (left, right)


def _flatten(tree) -> List[int]:
    if isinstance(tree, int):
        return [tree]
    return _flatten(tree[0]) + _flatten(tree[1])


def _is_forward(tree) -> bool:
    while isinstance(tree, tuple):
        if not isinstance(tree[0], int):
            return False
        tree = tree[1]
    return True


def _is_backward(tree) -> bool:
    while isinstance(tree, tuple):
        if not isinstance(tree[1], int):
            return False
        tree = tree[0]
    return True


def _leaf_base(f: Formula) -> Optional[Formula]:
    """Base of the leftmost letter code in an alphabetic formula."""
    while letter_index(f) is None:
        parts = unvee(f)
        if parts is None:
            return None
        f = parts[0]
    return f.conclusion.premise


def alphabetic_leaves(f: Formula, base: Optional[Formula] = None) -> Optional[List[int]]:
    """Letter indices, left to right, if ``f`` is an alphabetic formula."""
    if base is None:
        base = _leaf_base(f)
        if base is None:
            return None
    tree = _tree(f, base)
    return None if tree is None else _flatten(tree)


def _classify(tree) -> Optional[CodeType]:
    n = len(_flatten(tree))
    if _is_forward(tree):
        return TYPE0
    left, right = tree
    if not _is_forward(right):
        return None
    k = len(_flatten(left))
    if _is_forward(left) and k >= 2:
        return CodeType(1, (k, n - k))
    if _is_backward(left) and k >= 3:
        return CodeType(3, (k, n - k))
    if isinstance(left, tuple):
        l1, l2 = left
        k1, k2 = len(_flatten(l1)), len(_flatten(l2))
        if _is_backward(l1) and k1 >= 2 and _is_forward(l2) and k2 >= 2:
            return CodeType(2, (k1, k2, n - k))
    return None


def decode(f: Formula, alphabet: Sequence[str], base: Optional[Formula] = None) -> Optional[Tuple[str, CodeType]]:
    """Invert :func:`word_codes`.

    When ``base`` is None it is read off the guard, so substitution
    instances of codes (base replaced by any formula) decode too.
    """
    if not isinstance(f, Imp):
        return None
    b = guard_base(f.premise)
    if b is None or (base is not None and b != base):
        return None
    tree = _tree(f.conclusion, b)
    if tree is None:
        return None
    ctype = _classify(tree)
    if ctype is None:
        return None
    leaves = _flatten(tree)
    if any(i > len(alphabet) for i in leaves):
        return None
    return "".join(alphabet[i - 1] for i in leaves), ctype


def alphabetic_formulas(alphabet: Sequence[str], max_leaves: int, base: Formula = X0) -> List[Formula]:
    """Every alphabetic formula with at most ``max_leaves`` letter-code leaves."""
    if max_leaves < 1:
        raise ValueError("max_leaves must be positive")
    letters = [letter_code(i, base) for i in range(1, len(alphabet) + 1)]
    by_leaves = {1: letters}
    for n in range(2, max_leaves + 1):
        by_leaves[n] = [
            vee(a, b)
            for k in range(1, n)
            for a, b in product(by_leaves[k], by_leaves[n - k])
        ]
    return [f for n in range(1, max_leaves + 1) for f in by_leaves[n]]
