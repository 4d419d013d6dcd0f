"""Translate-intersection quasi-orders on free groups and the maps into them.

``A <=_t B`` holds when ``A = g_1 B ∩ ... ∩ g_n B`` for some group elements.
On finite sets this is decided exactly by :func:`translate_qo_leq`.

The tree map ``G = F ∘ S`` lands in the free group ``F_inf`` on letters
``a, b, c, d`` and one extra generator ``x[w]`` for every nonempty string
``w`` over ``abcd``.  All elements it produces are positive words, so their
products never cancel.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .qo_core import PreconditionError
from .trees import FiniteTree, subtree
from .words import (
    EMPTY,
    DegenerateInputError,
    Letter,
    Word,
    _letter,
    free_reduce,
    invert,
)

__all__ = [
    "F_BOUND",
    "xw",
    "translate_set",
    "translate_qo_leq",
    "t_edges",
    "outline_S",
    "f_map",
    "F_union",
    "G_map",
    "phi_project",
    "itsahom_sides",
    "itsahom_verify",
    "generator_index",
    "generator_at",
    "embed_finf_to_f2",
    "f2_image_preimage",
    "in_f2_image",
    "FreeProductWord",
    "fp_normalize",
    "fp_multiply",
    "K_map",
    "K_member",
    "K_member_structural",
    "bounded_fp_words",
    "conjugate_products",
    "ConjResult",
    "conj_qo_leq_K",
    "random_reduced_word",
]

F_BOUND = 5
TREE_LETTERS = "abcd"


def xw(w: str) -> Word:
    """The single-letter word ``x[w]``."""
    if not w or any(ch not in TREE_LETTERS for ch in w):
        raise ValueError(f"x[w] needs a nonempty string over abcd, got {w!r}")
    return Word((_letter(f"x[{w}]", 1),))


def _word_of(s: str) -> Word:
    return Word.parse(s) if s else EMPTY


def _as_words(S: Iterable) -> frozenset[Word]:
    return frozenset(free_reduce(s if isinstance(s, Word) else Word.parse(s)) for s in S)


def translate_set(g: Word, B: Iterable[Word]) -> frozenset[Word]:
    return frozenset(free_reduce(g * b) for b in B)


def translate_qo_leq(A: Iterable, B: Iterable) -> list[Word] | None:
    """Translates ``g_i`` with ``A = ∩ g_i B``, or None.

    Every usable ``g`` has ``a0 ∈ gB`` for a fixed ``a0 ∈ A``, so
    ``g = a0 b^-1`` for some ``b``.  Among those, keep the ones with
    ``A ⊆ gB``; ``A`` is an intersection of translates exactly when it is
    the intersection of all kept ones.
    """
    A, B = _as_words(A), _as_words(B)
    if not A or not B:
        raise DegenerateInputError("translate_qo_leq needs nonempty sets")
    a0 = min(A, key=lambda w: (len(w), w))
    kept = []
    for b in B:
        g = free_reduce(a0 * invert(b))
        if A <= translate_set(g, B):
            kept.append(g)
    if not kept:
        return None
    inter = frozenset.intersection(*(translate_set(g, B) for g in kept))
    if inter != A:
        return None
    return sorted(set(kept), key=lambda w: (len(w), w))


def t_edges(T: FiniteTree) -> tuple[frozenset[str], frozenset[str]]:
    ta = frozenset(w for w in T.nodes if w + "a" not in T.nodes)
    tb = frozenset(w for w in T.nodes if w + "b" not in T.nodes)
    return ta, tb


def outline_S(T: FiniteTree) -> FiniteTree:
    if set(T.alphabet) - set("ab"):
        raise ValueError("outline_S takes trees over {a, b}")
    ta, tb = t_edges(T)
    return FiniteTree(T.nodes | {w + "c" for w in ta} | {w + "d" for w in tb}, TREE_LETTERS)


@lru_cache(maxsize=None)
def _f(w: str) -> frozenset[Word]:
    if not w:
        return frozenset({EMPTY})
    out = {xw(w) * _word_of(w)}
    if len(w) == 1:
        out.add(_word_of(w))
        return frozenset(out)
    for k in range(1, len(w)):
        left, right = _f(w[:k]), _f(w[k:])
        # positive words: concatenation is already freely reduced
        out.update(s * t for s in left for t in right)
    return frozenset(out)


def f_map(w: str, bound: int = F_BOUND) -> frozenset[Word]:
    if any(ch not in TREE_LETTERS for ch in w):
        raise ValueError(f"f_map takes strings over abcd, got {w!r}")
    if len(w) > bound:
        raise PreconditionError(f"|w| = {len(w)} exceeds the f_map bound {bound}")
    return _f(w)


def F_union(T: FiniteTree, bound: int = F_BOUND) -> frozenset[Word]:
    return frozenset().union(*(f_map(w, bound) for w in T.nodes))


def G_map(T: FiniteTree, bound: int = F_BOUND) -> frozenset[Word]:
    return F_union(outline_S(T), bound)


def phi_project(g: Word) -> str:
    """Keep only the tree letters of the reduced form (inverses upper-cased)."""
    return "".join(str(l) for l in free_reduce(g).letters if l.base in TREE_LETTERS)


def itsahom_sides(T: FiniteTree, w: str) -> tuple[frozenset[Word], frozenset[Word]]:
    """``(G(T) ∩ x_w^-1 G(T), w G(T_w))`` as finite sets."""
    if not w or w not in T.nodes or set(w) - set("ab"):
        raise PreconditionError(f"need a nonempty node over ab, got {w!r}")
    GT = G_map(T)
    x_inv = invert(xw(w))
    left = frozenset(free_reduce(x_inv * h) for h in GT) & GT
    Tw = subtree(T, w)
    right = translate_set(_word_of(w), G_map(Tw))
    return left, right


def itsahom_verify(T: FiniteTree, w: str) -> bool:
    left, right = itsahom_sides(T, w)
    if left != right:
        return False
    # second form: w^-1 G(T) ∩ (x_w w)^-1 G(T) = G(T_w)
    GT = G_map(T)
    wd = _word_of(w)
    lhs = translate_set(invert(wd), GT) & translate_set(invert(xw(w) * wd), GT)
    return lhs == G_map(subtree(T, w))


# ---- F_inf into F_2 ------------------------------------------------------


def generator_index(letter: Letter | str) -> int:
    """Position of a generator in the order a, b, c, d, x[a], x[b], ..., x[aa], ..."""
    base = letter.base if isinstance(letter, Letter) else letter
    if base in TREE_LETTERS and len(base) == 1:
        return TREE_LETTERS.index(base) + 1
    if not (base.startswith("x[") and base.endswith("]")):
        raise ValueError(f"not an F_inf generator: {base!r}")
    w = base[2:-1]
    if not w or set(w) - set(TREE_LETTERS):
        raise ValueError(f"not an F_inf generator: {base!r}")
    k = len(w)
    before = sum(4**j for j in range(1, k))
    rank = 0
    for ch in w:
        rank = 4 * rank + TREE_LETTERS.index(ch)
    return 4 + before + rank + 1


def generator_at(i: int) -> Letter:
    if i < 1:
        raise ValueError("generator indices start at 1")
    if i <= 4:
        return _letter(TREE_LETTERS[i - 1], 1)
    r = i - 5
    k = 1
    while r >= 4**k:
        r -= 4**k
        k += 1
    digits = []
    for _ in range(k):
        digits.append(TREE_LETTERS[r % 4])
        r //= 4
    return _letter(f"x[{''.join(reversed(digits))}]", 1)


_A = _letter("a", 1)
_B = _letter("b", 1)


def embed_finf_to_f2(g: Word) -> Word:
    """``g_i -> a^i b a^-i``; the image lies in ``<a, b>`` with text letters a, b."""
    out: list[Letter] = []
    for l in g.letters:
        i = generator_index(l)
        out += [_A] * i + [_B if l.sign > 0 else _B.inverse()] + [_A.inverse()] * i
    return free_reduce(Word(tuple(out)))


def f2_image_preimage(w: Word) -> Word | None:
    """Inverse of :func:`embed_finf_to_f2` on its image, None off the image.

    A reduced word is in the image iff every ``b`` syllable sits at a
    positive ``a``-level and the level returns to zero at the end; the
    level of a ``b`` syllable names its generator.
    """
    w = free_reduce(w)
    level = 0
    out: list[Letter] = []
    for l in w.letters:
        if l.base == "a":
            level += l.sign
        elif l.base == "b":
            if level < 1:
                return None
            gen = generator_at(level)
            out.append(gen if l.sign > 0 else gen.inverse())
        else:
            return None
    if level != 0:
        return None
    return free_reduce(Word(tuple(out)))


def in_f2_image(w: Word) -> bool:
    return f2_image_preimage(w) is not None


# ---- free products G * <h> ----------------------------------------------


def _reduce_h(k: int, order: int | None) -> int:
    return k % order if order else k


@dataclass(frozen=True)
class FreeProductWord:
    """``u_1 h^m_1 u_2 ... u_t h^m_t u_{t+1}`` in normal form.

    ``gs`` holds the ``t + 1`` free-group syllables (only the first and last
    may be empty), ``hs`` the ``t`` nonzero exponents of ``h``, reduced into
    ``1 .. order-1`` when ``h`` has finite order.
    """

    gs: tuple[Word, ...]
    hs: tuple[int, ...]
    order: int | None = None

    @classmethod
    def g(cls, w: Word, order: int | None = None) -> FreeProductWord:
        return fp_normalize((w,), (), order)

    @classmethod
    def h(cls, k: int = 1, order: int | None = None) -> FreeProductWord:
        return fp_normalize((EMPTY, EMPTY), (k,), order)

    def __mul__(self, other: FreeProductWord) -> FreeProductWord:
        return fp_multiply(self, other)

    def inverse(self) -> FreeProductWord:
        return fp_normalize(
            tuple(invert(u) for u in reversed(self.gs)),
            tuple(-k for k in reversed(self.hs)),
            self.order,
        )

    def conjugate(self, g: Word) -> FreeProductWord:
        """``g w g^-1``."""
        return fp_multiply(fp_multiply(FreeProductWord.g(g, self.order), self), FreeProductWord.g(invert(g), self.order))

    def is_identity(self) -> bool:
        return not self.hs and not self.gs[0]

    def h_count(self) -> int:
        return len(self.hs)

    def syllable_count(self) -> int:
        return len(self.hs) + sum(1 for u in self.gs if u)

    def to_json(self) -> list:
        pairs = [[str(u), k] for u, k in zip(self.gs, self.hs)]
        pairs.append([str(self.gs[-1]), 0])
        return pairs

    @classmethod
    def from_json(cls, data: Sequence, order: int | None = None) -> FreeProductWord:
        gs = [Word.parse(u) for u, _ in data]
        hs = [int(k) for _, k in data]
        if hs and hs[-1] == 0:
            hs.pop()
        else:
            gs.append(EMPTY)
        return fp_normalize(tuple(gs), tuple(hs), order)

    def __str__(self) -> str:
        parts = []
        for u, k in zip(self.gs, self.hs):
            if u:
                parts.append(str(u))
            parts.append(f"h^{k}")
        if self.gs[-1]:
            parts.append(str(self.gs[-1]))
        return "·".join(parts) or "-"


def fp_normalize(gs: Sequence[Word], hs: Sequence[int], order: int | None = None) -> FreeProductWord:
    """Normal form of ``gs[0] h^hs[0] gs[1] ... gs[-1]`` (``len(gs) = len(hs) + 1``)."""
    if len(gs) != len(hs) + 1:
        raise ValueError("need one more g-syllable than h-syllables")
    res_g: list[Word] = [free_reduce(gs[0])]
    res_h: list[int] = []
    for k, u in zip(hs, gs[1:]):
        k = _reduce_h(k, order)
        if k:
            if res_h and not res_g[-1]:
                # trivial syllable between two h-powers: merge them
                res_g.pop()
                k = _reduce_h(res_h.pop() + k, order)
            if k:
                res_h.append(k)
                res_g.append(EMPTY)
        res_g[-1] = free_reduce(res_g[-1] * u)
    return FreeProductWord(tuple(res_g), tuple(res_h), order)


def fp_multiply(w1: FreeProductWord, w2: FreeProductWord) -> FreeProductWord:
    if w1.order != w2.order:
        raise ValueError("free-product words over different h orders")
    gs = w1.gs[:-1] + (w1.gs[-1] * w2.gs[0],) + w2.gs[1:]
    return fp_normalize(gs, w1.hs + w2.hs, w1.order)


def K_map(A: Iterable, order: int | None = None) -> list[FreeProductWord]:
    """Generators ``x h x^-1`` for ``x`` in ``A``."""
    A = sorted(_as_words(A), key=lambda w: (len(w), w))
    if not A:
        raise DegenerateInputError("K_map needs a nonempty set")
    return [fp_normalize((x, invert(x)), (1,), order) for x in A]


def K_member(w: FreeProductWord, A: Iterable, bound: int) -> bool:
    """Membership of ``w`` in ``K(A)`` by enumerating products of generators.

    A product ``x_1 h^k_1 x_1^-1 ... x_m h^k_m x_m^-1`` with neighbouring
    ``x`` distinct is already in normal form, with free-group syllables
    ``x_1, x_1^-1 x_2, ..., x_m^-1`` and exponents ``k_i``; equal neighbours
    merge into a shorter product.  So the enumeration runs over sequences
    ``x_1 .. x_m`` with ``m = h_count(w) <= bound`` and takes the exponents
    from ``w``: every exponent choice yields the same skeleton.
    """
    t = w.h_count()
    if t > bound:
        raise PreconditionError(f"bound {bound} is below the h-syllable count {t} of the word")
    A = sorted(_as_words(A), key=lambda x: (len(x), x))
    if t == 0:
        return w.is_identity()
    for xs in itertools.product(A, repeat=t):
        if any(xs[i] == xs[i + 1] for i in range(t - 1)):
            continue
        skeleton = (xs[0],) + tuple(free_reduce(invert(xs[i]) * xs[i + 1]) for i in range(t - 1)) + (invert(xs[-1]),)
        if skeleton == w.gs:
            return True
    return False


def K_member_structural(w: FreeProductWord, A: Iterable) -> bool:
    """Membership via prefix products: ``u_1 ... u_j ∈ A`` for ``j <= t`` and the full product is trivial."""
    A = _as_words(A)
    prefix = EMPTY
    for u in w.gs[:-1]:
        prefix = free_reduce(prefix * u)
        if prefix not in A:
            return False
    return not free_reduce(prefix * w.gs[-1])


def bounded_fp_words(
    pool: Iterable[Word],
    order: int | None,
    max_syllables: int = 6,
    exponents: Sequence[int] = (1, -1, 2),
) -> list[FreeProductWord]:
    """All normal-form words with at most ``max_syllables`` syllables.

    Free-group syllables come from ``pool`` (nontrivial elements), exponents
    from ``exponents``; results are deduplicated.
    """
    pool = sorted({free_reduce(p) for p in pool if free_reduce(p)}, key=lambda w: (len(w), w))
    exps = sorted({_reduce_h(k, order) for k in exponents} - {0})
    opt = [EMPTY, *pool]
    seen: set[tuple] = set()
    out: list[FreeProductWord] = []
    for t in range(0, max_syllables + 1):
        for first in opt:
            for last in (opt if t else [EMPTY]):
                base = (1 if first else 0) + (1 if last else 0) + t
                inner = t - 1 if t else 0
                if base + inner > max_syllables:
                    continue
                for mids in itertools.product(pool, repeat=inner):
                    for ks in itertools.product(exps, repeat=t):
                        gs = (first, *mids, last) if t else (first,)
                        w = FreeProductWord(gs, tuple(ks), order)
                        key = (w.gs, w.hs)
                        if key not in seen:
                            seen.add(key)
                            out.append(w)
    return out


@dataclass(frozen=True)
class ConjResult:
    witness: list[Word] | None
    separating: FreeProductWord | None
    checked: int

    def __bool__(self) -> bool:
        return self.witness is not None


def conjugate_products(
    E: Iterable,
    order: int | None,
    max_syllables: int = 6,
    exponents: Sequence[int] = (1, -1),
) -> list[FreeProductWord]:
    """Normal forms of products ``x_1 h^k_1 x_1^-1 ... x_m h^k_m x_m^-1`` over ``x_i ∈ E``.

    Neighbouring ``x`` are distinct; only words with at most
    ``max_syllables`` syllables are kept.  These are the informative test
    words for subgroups of ``K(E)``.
    """
    E = sorted(_as_words(E), key=lambda w: (len(w), w))
    exps = sorted({_reduce_h(k, order) for k in exponents} - {0})
    out: dict[tuple, FreeProductWord] = {}
    ident = FreeProductWord((EMPTY,), (), order)
    out[(ident.gs, ident.hs)] = ident
    frontier = [(ident, None)]
    while frontier:
        nxt = []
        for w, last in frontier:
            for x in E:
                if x == last:
                    continue
                for k in exps:
                    v = fp_multiply(w, fp_normalize((x, invert(x)), (k,), order))
                    if v.syllable_count() > max_syllables:
                        continue
                    key = (v.gs, v.hs)
                    if key not in out:
                        out[key] = v
                        nxt.append((v, x))
        frontier = nxt
    return list(out.values())


def conj_qo_leq_K(A: Iterable, B: Iterable, order: int | None = None, max_syllables: int = 6) -> ConjResult:
    """Transport ``translate_qo_leq`` to ``K(A) <=_c K(B)`` and check it on bounded words.

    On success the translates are checked against ``K(A) = ∩ g K(B) g^-1``
    on every test word.  On failure a test word separating ``K(A)`` from the
    intersection over the candidate translates is reported.  Test words are
    products of conjugates ``x h^±1 x^-1`` with ``x`` in ``A`` or some
    ``gB``, with at most ``max_syllables`` syllables.
    """
    A, B = _as_words(A), _as_words(B)
    if not A or not B:
        raise DegenerateInputError("conj_qo_leq_K needs nonempty sets")
    witness = translate_qo_leq(A, B)
    if witness is not None:
        family = witness
    else:
        a0 = min(A, key=lambda w: (len(w), w))
        cands = [free_reduce(a0 * invert(b)) for b in B]
        family = [g for g in cands if A <= translate_set(g, B)] or cands
    E = set(A) | {free_reduce(g * b) for g in family for b in B}
    words = conjugate_products(E, order, max_syllables)
    for w in words:
        in_a = K_member_structural(w, A)
        in_all = all(K_member_structural(w.conjugate(invert(g)), B) for g in family)
        if in_a != in_all:
            if witness is not None:
                raise AssertionError(f"translate witness fails on K-images at {w}")
            return ConjResult(None, w, len(words))
    if witness is None:
        raise AssertionError("no separating word found for a negative instance")
    return ConjResult(witness, None, len(words))


def random_reduced_word(rng: random.Random, letters: str = "ab", max_len: int = 3) -> Word:
    n = rng.randint(0, max_len)
    out: list[Letter] = []
    while len(out) < n:
        l = _letter(rng.choice(letters), rng.choice((1, -1)))
        if out and out[-1] == l.inverse():
            continue
        out.append(l)
    return Word(tuple(out))
