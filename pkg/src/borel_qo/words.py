"""Words over named alphabets: free reduction, cyclic operations, overlaps.

Letters are tokens rather than a fixed enum, so the same :class:`Word` type
serves ``{a, b}``, ``{x, y}``, ``{a, b, c, d}``, the vertex alphabets
``v0, v1, ...`` and the indexed generators ``x[abba]``.

Text syntax: a lowercase token is a positive letter, the same token with an
uppercase head is its inverse (``x`` / ``X``, ``v3`` / ``V3``,
``x[ab]`` / ``X[ab]``), and ``-`` is the empty word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, NamedTuple, Sequence

__all__ = [
    "AlphabetError",
    "DegenerateInputError",
    "Letter",
    "Word",
    "CyclicWord",
    "EMPTY",
    "free_reduce",
    "is_freely_reduced",
    "is_cyclically_reduced",
    "cyclic_reduce",
    "rotations",
    "invert",
    "concat",
    "max_common_prefix",
    "primitive_root",
    "least_rotation_index",
    "longest_common_substring",
]


class AlphabetError(ValueError):
    """A letter is not allowed in the alphabet it was used with."""


class DegenerateInputError(ValueError):
    """The operation is undefined on this (usually empty) input."""


_BASE_RE = re.compile(r"[a-z]\d*(?:\[[a-z0-9]+\])?")
_TOKEN_RE = re.compile(r"([a-zA-Z])(\d*(?:\[[a-z0-9]+\])?)")


class Letter(NamedTuple):
    base: str
    sign: int = 1

    def inverse(self) -> Letter:
        return _letter(self.base, -self.sign)

    def __str__(self) -> str:
        if self.sign > 0:
            return self.base
        return self.base[0].upper() + self.base[1:]


_LETTERS: dict[tuple[str, int], Letter] = {}


def _letter(base: str, sign: int) -> Letter:
    key = (base, sign)
    letter = _LETTERS.get(key)
    if letter is None:
        if not _BASE_RE.fullmatch(base):
            raise AlphabetError(f"invalid letter token {base!r}")
        if sign not in (1, -1):
            raise AlphabetError(f"sign must be +1 or -1, got {sign}")
        letter = _LETTERS[key] = Letter(base, sign)
    return letter


@dataclass(frozen=True, order=True, slots=True)
class Word:
    """An immutable finite sequence of letters.

    ``monoid=True`` marks a word over a monoid alphabet; such words never
    carry inverse letters. The flag does not take part in equality.
    Multiplication with ``*`` is plain juxtaposition; use
    :func:`free_reduce` to compute in the free group.
    """

    letters: tuple[Letter, ...] = ()
    monoid: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        if self.monoid and any(l.sign < 0 for l in self.letters):
            raise AlphabetError(f"inverse letter in monoid word {self}")

    @classmethod
    def parse(cls, text: str, monoid: bool = False) -> Word:
        if text in ("-", ""):
            return cls((), monoid)
        letters = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                raise AlphabetError(f"cannot parse word {text!r} at position {pos}")
            head, tail = m.groups()
            sign = 1 if head.islower() else -1
            letters.append(_letter(head.lower() + tail, sign))
            pos = m.end()
        return cls(tuple(letters), monoid)

    @classmethod
    def of(cls, *tokens: str, monoid: bool = False) -> Word:
        """Build a word from token strings, each in text syntax."""
        return cls(tuple(l for t in tokens for l in cls.parse(t).letters), monoid)

    def __str__(self) -> str:
        if not self.letters:
            return "-"
        return "".join(str(l) for l in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Word(self.letters[index], self.monoid)
        return self.letters[index]

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters, self.monoid and other.monoid)

    def __pow__(self, n: int) -> Word:
        if n < 0:
            return invert(self) ** -n
        return Word(self.letters * n, self.monoid)

    def bases(self) -> set[str]:
        return {l.base for l in self.letters}


EMPTY = Word()


def invert(w: Word) -> Word:
    if w.monoid:
        raise AlphabetError("cannot invert a word over a monoid alphabet")
    return Word(tuple(l.inverse() for l in reversed(w.letters)))


def concat(w1: Word, w2: Word) -> Word:
    return w1 * w2


def _check_signs(w: Word) -> None:
    if w.monoid and any(l.sign < 0 for l in w.letters):
        raise AlphabetError(f"inverse letter in monoid word {w}")


def free_reduce(w: Word) -> Word:
    """Cancel adjacent inverse pairs until none remain."""
    _check_signs(w)
    stack: list[Letter] = []
    for letter in w.letters:
        if stack and stack[-1].base == letter.base and stack[-1].sign == -letter.sign:
            stack.pop()
        else:
            stack.append(letter)
    if len(stack) == len(w.letters):
        return w
    return Word(tuple(stack), w.monoid)


def is_freely_reduced(w: Word) -> bool:
    ls = w.letters
    return all(not (a.base == b.base and a.sign == -b.sign) for a, b in zip(ls, ls[1:]))


def is_cyclically_reduced(w: Word) -> bool:
    if not is_freely_reduced(w):
        return False
    if len(w) < 2:
        return True
    first, last = w.letters[0], w.letters[-1]
    return not (first.base == last.base and first.sign == -last.sign)


def least_rotation_index(seq: Sequence) -> int:
    """Start index of the lexicographically least rotation (Booth)."""
    n = len(seq)
    if n == 0:
        return 0
    s = list(seq) * 2
    fail = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j]
        i = fail[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if sj != s[k + i + 1]:
            # i == -1 here
            if sj < s[k]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return k % n


@dataclass(frozen=True, slots=True)
class CyclicWord:
    """A conjugacy class of cyclically reduced words.

    The representative is the least rotation, so two cyclic words are equal
    exactly when their representatives are.
    """

    representative: Word

    @classmethod
    def of(cls, w: Word) -> CyclicWord:
        return cyclic_reduce(w)[1]

    def __len__(self) -> int:
        return len(self.representative)

    def __str__(self) -> str:
        return f"({self.representative})"


def cyclic_reduce(w: Word) -> tuple[Word, CyclicWord]:
    """Split ``w`` as ``conjugator * core * conjugator^-1``.

    ``core`` is returned as a :class:`CyclicWord`; its representative is the
    least rotation, and the conjugator absorbs the rotation so the identity
    holds in the free group for that exact representative.
    """
    w = free_reduce(w)
    ls = w.letters
    n = len(ls)
    i = 0
    while 2 * i + 1 < n and ls[i].base == ls[n - 1 - i].base and ls[i].sign == -ls[n - 1 - i].sign:
        i += 1
    core = ls[i : n - i]
    k = least_rotation_index(core)
    rep = Word(core[k:] + core[:k], w.monoid)
    conjugator = free_reduce(Word(ls[:i] + core[:k]))
    return conjugator, CyclicWord(rep)


def rotations(w: Word) -> set[Word]:
    n = len(w)
    if n == 0:
        return {w}
    return {Word(w.letters[k:] + w.letters[:k], w.monoid) for k in range(n)}


def max_common_prefix(w1: Sequence, w2: Sequence) -> int:
    """Length of the longest common initial segment."""
    if isinstance(w1, Word):
        w1 = w1.letters
    if isinstance(w2, Word):
        w2 = w2.letters
    n = min(len(w1), len(w2))
    i = 0
    while i < n and w1[i] == w2[i]:
        i += 1
    return i


def _period(seq: Sequence) -> int:
    n = len(seq)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and seq[i] != seq[k]:
            k = fail[k - 1]
        if seq[i] == seq[k]:
            k += 1
        fail[i] = k
    return n - fail[-1]


def primitive_root(w: Word) -> tuple[Word, int]:
    """Return ``(root, n)`` with ``w = root**n`` and ``n`` maximal."""
    if not w:
        raise DegenerateInputError("the empty word has no primitive root")
    n = len(w)
    p = _period(w.letters)
    if n % p:
        return w, 1
    return w[:p], n // p


def longest_common_substring(s: Sequence[Hashable], t: Sequence[Hashable]) -> tuple[int, int, int]:
    """Longest common contiguous block of two sequences.

    Returns ``(length, start_in_s, start_in_t)``; linear time via a suffix
    automaton of ``s``.
    """
    if isinstance(s, Word):
        s = s.letters
    if isinstance(t, Word):
        t = t.letters
    if not s or not t:
        return 0, 0, 0
    # suffix automaton of s; endpos tracked by first occurrence
    trans: list[dict] = [{}]
    link = [-1]
    length = [0]
    first_end = [-1]
    last = 0
    for idx, c in enumerate(s):
        cur = len(trans)
        trans.append({})
        length.append(length[last] + 1)
        link.append(-1)
        first_end.append(idx)
        p = last
        while p != -1 and c not in trans[p]:
            trans[p][c] = cur
            p = link[p]
        if p == -1:
            link[cur] = 0
        else:
            q = trans[p][c]
            if length[p] + 1 == length[q]:
                link[cur] = q
            else:
                clone = len(trans)
                trans.append(dict(trans[q]))
                length.append(length[p] + 1)
                link.append(link[q])
                first_end.append(first_end[q])
                while p != -1 and trans[p].get(c) == q:
                    trans[p][c] = clone
                    p = link[p]
                link[q] = clone
                link[cur] = clone
        last = cur

    best, best_s, best_t = 0, 0, 0
    state, cur_len = 0, 0
    for j, c in enumerate(t):
        while state and c not in trans[state]:
            state = link[state]
            cur_len = length[state]
        if c in trans[state]:
            state = trans[state][c]
            cur_len += 1
        else:
            state, cur_len = 0, 0
        if cur_len > best:
            best = cur_len
            best_s = first_end[state] - cur_len + 1
            best_t = j - cur_len + 1
    return best, best_s, best_t


def words_over(letters: Iterable[Letter], max_len: int, reduced: bool = True) -> Iterator[Word]:
    """All words of length <= max_len in shortlex order (freely reduced ones if asked)."""
    letters = sorted(letters)
    layer = [EMPTY]
    yield EMPTY
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for l in letters:
                if reduced and w.letters and w.letters[-1].base == l.base and w.letters[-1].sign == -l.sign:
                    continue
                nxt.append(Word(w.letters + (l,)))
        yield from nxt
        layer = nxt
