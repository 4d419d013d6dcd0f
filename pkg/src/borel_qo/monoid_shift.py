"""Word constructions on the free monoids ``M_2 = <a, b>`` and ``M_omega``.

Elements of ``M_2`` are plain strings over ``"ab"``; elements of ``M_omega``
are tuples of generator indices (``(3, 1)`` is ``x3 x1``).  :class:`Word`
values are accepted wherever an ``M_2`` word is expected.

``M_omega`` sits inside ``M_2`` through ``x_n -> a b^n``.  Every ``h`` in
``M_2`` splits uniquely as ``h' g`` with ``g`` the longest suffix in that
image, and ``L(h) = |h'|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Union

from .words import DegenerateInputError, Word

__all__ = [
    "M2Like",
    "as_m2",
    "m2_word",
    "momega_word",
    "parse_momega",
    "format_momega",
    "embed_momega",
    "decode_momega",
    "canonical_split",
    "L_len",
    "FiniteSupportBitmap",
    "star_eval",
    "shift_act_eval",
    "shift_bitmap",
    "suffix_qo_leq",
    "prefix_qo_leq",
    "bar_map",
    "bar_set",
]

M2Like = Union[str, Word]


def as_m2(w: M2Like) -> str:
    if isinstance(w, Word):
        text = "".join(str(l) for l in w.letters)
    else:
        text = "" if w == "-" else w
    if any(c not in "ab" for c in text):
        raise ValueError(f"not a positive word over {{a, b}}: {w!r}")
    return text


def m2_word(h: str) -> Word:
    return Word.parse(h, monoid=True)


def momega_word(g: Iterable[int]) -> Word:
    return Word.parse("".join(f"x{i}" for i in g), monoid=True)


def parse_momega(text: str) -> tuple[int, ...]:
    w = Word.parse(text, monoid=True)
    out = []
    for l in w.letters:
        if not (l.base.startswith("x") and l.base[1:].isdigit() and int(l.base[1:]) >= 1):
            raise ValueError(f"not an M_omega generator: {l}")
        out.append(int(l.base[1:]))
    return tuple(out)


def format_momega(g: Iterable[int]) -> str:
    return "".join(f"x{i}" for i in g) or "-"


def embed_momega(g: Iterable[int]) -> str:
    out = []
    for i in g:
        if i < 1:
            raise ValueError(f"M_omega generator indices start at 1, got {i}")
        out.append("a" + "b" * i)
    return "".join(out)


def decode_momega(h: M2Like) -> tuple[int, ...] | None:
    """Preimage under the embedding, or None when ``h`` is not in the image."""
    h = as_m2(h)
    g, i = [], 0
    while i < len(h):
        if h[i] != "a":
            return None
        j = i + 1
        while j < len(h) and h[j] == "b":
            j += 1
        if j == i + 1:
            return None
        g.append(j - i - 1)
        i = j
    return tuple(g)


def _split_point(h: str) -> int:
    # peel maximal a b^n blocks off the right end
    i = len(h)
    while i > 0 and h[i - 1] == "b":
        j = i
        while j > 0 and h[j - 1] == "b":
            j -= 1
        if j == 0 or h[j - 1] != "a":
            break
        i = j - 1
    return i


def canonical_split(h: M2Like) -> tuple[str, str]:
    """``(h', g)`` with ``h = h' g`` and ``g`` the longest suffix in the embedding image."""
    h = as_m2(h)
    i = _split_point(h)
    return h[:i], h[i:]


def L_len(h: M2Like) -> int:
    return _split_point(as_m2(h))


@dataclass(frozen=True)
class FiniteSupportBitmap:
    """A point of ``2^{M_omega}`` with finite support."""

    support: frozenset[tuple[int, ...]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "support", frozenset(tuple(s) for s in self.support))

    def __call__(self, s: Iterable[int]) -> int:
        return 1 if tuple(s) in self.support else 0


def star_eval(p: Callable[[tuple[int, ...]], int], h: M2Like) -> int:
    """Value of ``p*`` at ``h``; ``p*`` itself has infinite support and is never built."""
    h = as_m2(h)
    cut = _split_point(h)
    if cut == 0:
        return p(decode_momega(h))
    return 1 if cut == 1 else 0


def shift_act_eval(g, q: Callable, h):
    """``(g . q)(h) = q(h g)`` for the right-shift action on ``2^M``.

    ``g`` and ``h`` must come from the same monoid: strings for ``M_2``,
    index tuples for ``M_omega``.
    """
    if isinstance(g, Word) or isinstance(h, Word):
        g, h = as_m2(g), as_m2(h)
    return q(h + g)


def shift_bitmap(g: Iterable[int], p: FiniteSupportBitmap) -> FiniteSupportBitmap:
    """``g . p`` as a bitmap: its support is ``{s : s g in supp p}``."""
    g = tuple(g)
    k = len(g)
    return FiniteSupportBitmap(
        frozenset(s[: len(s) - k] for s in p.support if len(s) >= k and s[len(s) - k :] == g)
    )


def _suffixes(words: Iterable[str]) -> list[str]:
    out = {w[i:] for w in words for i in range(len(w) + 1)}
    return sorted(out, key=lambda s: (len(s), s))


def _prefixes(words: Iterable[str]) -> list[str]:
    out = {w[:i] for w in words for i in range(len(w) + 1)}
    return sorted(out, key=lambda s: (len(s), s))


def _m2_set(A: Iterable[M2Like]) -> frozenset[str]:
    return frozenset(as_m2(a) for a in A)


def suffix_qo_leq(A: Iterable[M2Like], B: Iterable[M2Like]) -> str | None:
    """Some ``m`` with ``A m = B ∩ M_2 m``, shortest first; None if there is none.

    Any witness puts ``a m`` in ``B``, so suffixes of elements of ``B`` are
    the only candidates.
    """
    A, B = _m2_set(A), _m2_set(B)
    if not A:
        raise DegenerateInputError("suffix_qo_leq needs a nonempty left set")
    for m in _suffixes(B):
        if {a + m for a in A} == {b for b in B if b.endswith(m)}:
            return m
    return None


def prefix_qo_leq(A: Iterable[M2Like], B: Iterable[M2Like]) -> str | None:
    """Some ``m`` with ``m A = B ∩ m M_2``, shortest first; None if there is none."""
    A, B = _m2_set(A), _m2_set(B)
    if not A:
        raise DegenerateInputError("prefix_qo_leq needs a nonempty left set")
    for m in _prefixes(B):
        if {m + a for a in A} == {b for b in B if b.startswith(m)}:
            return m
    return None


def _blocks(w: str) -> list[tuple[int, int]]:
    # w = a^{n0} b^{m0} ... a^{nk} b^{mk}
    out = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == "a":
            j += 1
        k = j
        while k < len(w) and w[k] == "b":
            k += 1
        out.append((j - i, k - j))
        i = k
    return out


def bar_map(w: M2Like) -> str:
    """``a^{n0} b^{m0} ... a^{nk} b^{mk}  ->  b^{mk} a^{nk} ... b^{m0} a^{n0}``."""
    w = as_m2(w)
    return "".join("b" * m + "a" * n for n, m in reversed(_blocks(w)))


def bar_set(A: Iterable[M2Like]) -> frozenset[str]:
    return frozenset(bar_map(a) for a in A)
