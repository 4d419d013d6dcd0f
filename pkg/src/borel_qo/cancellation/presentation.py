"""Presentations, symmetrized relator sets and the C'(lambda) check.

Relators can be long (tens of thousands of letters), so the string
algorithms run on an encoding of each word as a Python ``str`` with one
character per signed letter; :class:`Codec` owns that encoding.

A symmetrized set is stored by relator class: each class is one relator
``r = v^n`` up to rotation, with ``v`` primitive.  Its elements are the
``|v|`` distinct rotations of ``r``; inverse relators are classes of their
own.  Pieces are then computed class by class instead of over the
materialized closure.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from ..words import (
    AlphabetError,
    DegenerateInputError,
    Word,
    _letter,
    least_rotation_index,
    longest_common_substring,
)

__all__ = [
    "Codec",
    "Presentation",
    "RelatorClass",
    "SymmetrizedSet",
    "PieceCertificate",
    "symmetrize",
    "symmetrize_strings",
    "max_piece",
    "max_piece_bruteforce",
    "pair_piece",
    "check_cprime",
    "certify",
    "parse_lambda",
    "format_lambda",
    "object_hash",
]


class Codec:
    """One character per signed generator.

    Single lowercase generators keep their own letter (inverse upper-cased),
    so ``"xyXY"`` reads as text.  Other generator names map to consecutive
    code points, inverse next to positive.
    """

    def __init__(self, generators: Sequence[str]):
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise AlphabetError("duplicate generator names")
        self.text = all(len(g) == 1 and g.islower() for g in self.generators)
        self._enc: dict = {}
        self._dec: dict[str, object] = {}
        for i, g in enumerate(self.generators):
            pos, neg = _letter(g, 1), _letter(g, -1)
            cp, cn = (g, g.upper()) if self.text else (chr(256 + 2 * i), chr(257 + 2 * i))
            self._enc[pos], self._enc[neg] = cp, cn
            self._dec[cp], self._dec[cn] = pos, neg
        self.inverse_char = {cp: str(self._enc[self._dec[cp].inverse()]) for cp in self._dec}
        # generator order, positive before inverse
        self._rank_table = str.maketrans(
            {self._enc[l]: chr(32 + 2 * i + (l.sign < 0)) for i, g in enumerate(self.generators) for l in (_letter(g, 1), _letter(g, -1))}
        )
        self._inv_table = str.maketrans(self.inverse_char)

    def encode(self, w: Word) -> str:
        try:
            return "".join(self._enc[l] for l in w.letters)
        except KeyError as e:
            raise AlphabetError(f"letter {e.args[0]} is not a generator of {self.generators}") from None

    def decode(self, s: str) -> Word:
        return Word(tuple(self._dec[c] for c in s))

    def key(self, s: str) -> str:
        """Sort key ordering letters as generators, positive first."""
        return s.translate(self._rank_table)

    def invert(self, s: str) -> str:
        return s[::-1].translate(self._inv_table)

    def reduce(self, s: str) -> str:
        inv = self.inverse_char
        stack: list[str] = []
        for c in s:
            if stack and stack[-1] == inv[c]:
                stack.pop()
            else:
                stack.append(c)
        return "".join(stack)

    def cyclic_core(self, s: str) -> str:
        s = self.reduce(s)
        inv = self.inverse_char
        i, j = 0, len(s)
        while j - i >= 2 and s[i] == inv[s[j - 1]]:
            i += 1
            j -= 1
        return s[i:j]


def object_hash(obj) -> str:
    data = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(data.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        codec = Codec(self.generators)
        for r in self.relators:
            s = codec.encode(r)
            if not s:
                raise DegenerateInputError("empty relator")
            if codec.reduce(s) != s:
                raise ValueError(f"relator {r} is not freely reduced")

    @property
    def codec(self) -> Codec:
        return _codec(self.generators)

    def encoded_relators(self) -> list[str]:
        codec = self.codec
        return [codec.encode(r) for r in self.relators]

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "relators": [str(r) for r in self.relators],
            "metadata": self.metadata,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Presentation:
        return cls(
            tuple(data["generators"]),
            tuple(Word.parse(r) for r in data["relators"]),
            dict(data.get("metadata", {})),
        )


@lru_cache(maxsize=64)
def _codec(generators: tuple[str, ...]) -> Codec:
    return Codec(generators)


@dataclass(frozen=True)
class RelatorClass:
    """Relator ``root^n`` written as its least rotation."""

    rel: str
    root: str
    n: int

    @property
    def p(self) -> int:
        return len(self.root)

    def rotation(self, phase: int) -> str:
        phase %= self.p
        return self.rel[phase:] + self.rel[:phase]


def _least_rotation(s: str) -> str:
    k = least_rotation_index(s)
    return s[k:] + s[:k]


def _primitive(s: str) -> tuple[str, int]:
    n = len(s)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and s[i] != s[k]:
            k = fail[k - 1]
        if s[i] == s[k]:
            k += 1
        fail[i] = k
    p = n - fail[-1]
    if n % p:
        return s, 1
    return s[:p], n // p


def _make_class(s: str) -> RelatorClass:
    rel = _least_rotation(s)
    root, n = _primitive(rel)
    return RelatorClass(rel, root, n)


@dataclass
class SymmetrizedSet:
    codec: Codec
    classes: list[RelatorClass]
    certified: Fraction | None = None
    _rot_index: dict | None = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return sum(c.p for c in self.classes)

    def element_strings(self) -> Iterator[str]:
        for c in self.classes:
            for k in range(c.p):
                yield c.rotation(k)

    def elements(self) -> set[Word]:
        return {self.codec.decode(s) for s in self.element_strings()}

    def contains_string(self, s: str) -> bool:
        for c in self.classes:
            if len(s) == len(c.rel) and s in c.rel + c.rel:
                return True
        return False

    def __contains__(self, w: Word) -> bool:
        return self.contains_string(self.codec.encode(w))

    def relator_words(self) -> list[Word]:
        return [self.codec.decode(c.rel) for c in self.classes]

    def rotation_index(self) -> dict[int, dict[str, list[tuple[int, int]]]]:
        """For each root length ``p``: rotation of a root -> [(class index, phase)]."""
        if self._rot_index is None:
            idx: dict[int, dict[str, list[tuple[int, int]]]] = {}
            for ci, c in enumerate(self.classes):
                table = idx.setdefault(c.p, {})
                for k in range(c.p):
                    table.setdefault(c.root[k:] + c.root[:k], []).append((ci, k))
            self._rot_index = idx
        return self._rot_index


def symmetrize_strings(codec: Codec, relators: Iterable[str]) -> SymmetrizedSet:
    classes: dict[str, RelatorClass] = {}
    for s in relators:
        core = codec.cyclic_core(s)
        if not core:
            raise DegenerateInputError("relator is trivial after reduction")
        for t in (core, codec.invert(core)):
            c = _make_class(t)
            classes.setdefault(c.rel, c)
    return SymmetrizedSet(codec, [classes[k] for k in sorted(classes, key=codec.key)])


def symmetrize(R: Presentation | Iterable[Word], generators: Sequence[str] | None = None) -> SymmetrizedSet:
    """Cyclically reduce, close under rotation and inversion, dedup.

    Accepts a presentation or a list of words (generators default to the
    letters used, in sorted order).
    """
    if isinstance(R, Presentation):
        codec, rels = R.codec, R.encoded_relators()
    else:
        R = list(R)
        if any(not r for r in R):
            raise DegenerateInputError("empty relator")
        if generators is None:
            generators = sorted({b for r in R for b in r.bases()})
        codec = _codec(tuple(generators))
        rels = [codec.encode(r) for r in R]
    return symmetrize_strings(codec, rels)


# ---- pieces ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _self_overlap(root: str) -> tuple[int, int, int]:
    """Longest common prefix of two distinct rotations of ``root^n`` (any n).

    Returns ``(length, phase_1, phase_2)``.  For a shift ``d`` the two
    rotations agree exactly along runs of ``root[k] == root[k + d]``, read
    cyclically; a primitive root always has a mismatch, so runs are shorter
    than ``|root|``.
    """
    p = len(root)
    best = (0, 0, 1 % max(p, 1))
    for d in range(1, p):
        eq = [root[k] == root[(k + d) % p] for k in range(p)]
        if all(eq):
            continue
        # start just after a mismatch so runs do not wrap
        start = eq.index(False) + 1
        run = 0
        for t in range(p):
            k = (start + t) % p
            if eq[k]:
                run += 1
                if run > best[0]:
                    best = (run, (k - run + 1) % p, (k - run + 1 + d) % p)
            else:
                run = 0
    return best


def _window(root: str, length: int) -> str:
    reps = -(-length // len(root))
    return (root * reps)[:length]


@lru_cache(maxsize=None)
def _root_overlap(root1: str, root2: str) -> tuple[int, int, int]:
    """Longest common block of the periodic words ``root1^inf`` and ``root2^inf``.

    Only meaningful for non-conjugate primitive roots: then (Fine and Wilf)
    a common block is shorter than ``|root1| + |root2|``, so windows that
    cover every phase plus that length suffice.  Returns
    ``(length, phase_1, phase_2)``.
    """
    if not set(root1) & set(root2):
        return 0, 0, 0
    span = len(root1) + len(root2)
    w1 = _window(root1, len(root1) + span)
    w2 = _window(root2, len(root2) + span)
    n, i, j = longest_common_substring(w1, w2)
    return n, i % len(root1), j % len(root2)


@dataclass(frozen=True)
class PieceCertificate:
    """Largest piece found; ``ratio`` is piece length over the shorter relator."""

    length: int
    ratio: Fraction
    witness: tuple[str, str] | None
    classes: tuple[int, int] | None

    def words(self, codec: Codec) -> tuple[Word, Word] | None:
        if self.witness is None:
            return None
        return codec.decode(self.witness[0]), codec.decode(self.witness[1])


def pair_piece(c1: RelatorClass, c2: RelatorClass) -> tuple[int, int, int]:
    """Largest piece between elements of two classes: ``(length, phase_1, phase_2)``."""
    if c1.rel == c2.rel:
        return _self_overlap(c1.root)
    cap = min(len(c1.rel), len(c2.rel))
    if c1.root == c2.root:
        # powers of the same root with different exponents
        return cap, 0, 0
    n, i, j = _root_overlap(c1.root, c2.root)
    return min(n, cap), i, j


def _pair_job(args) -> tuple[int, int, int, int, int]:
    a, b, c1, c2 = args
    n, i, j = pair_piece(c1, c2)
    return a, b, n, i, j


def _all_pairs(R: SymmetrizedSet, jobs: int = 1) -> list[tuple[int, int, int, int, int]]:
    cls = R.classes
    tasks = [(a, b, cls[a], cls[b]) for a in range(len(cls)) for b in range(a, len(cls))]
    if jobs > 1 and len(tasks) > 64:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_pair_job, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    return [_pair_job(t) for t in tasks]


def _certificate(R: SymmetrizedSet, results, key) -> PieceCertificate:
    best = None
    for a, b, n, i, j in results:
        if a == b and R.classes[a].p == 1:
            continue  # a single element: nothing to pair with
        c1, c2 = R.classes[a], R.classes[b]
        ratio = Fraction(n, min(len(c1.rel), len(c2.rel)))
        w = (c1.rotation(i), c2.rotation(j))
        wk = (R.codec.key(w[0]), R.codec.key(w[1]))
        cand = (key(n, ratio), wk, (a, b), n, ratio, w)
        if best is None or cand[0] > best[0] or (cand[0] == best[0] and cand[1] < best[1]):
            best = cand
    if best is None:
        return PieceCertificate(0, Fraction(0), None, None)
    return PieceCertificate(best[3], best[4], best[5], best[2])


def max_piece(R: SymmetrizedSet, jobs: int = 1) -> PieceCertificate:
    """Longest common prefix of two distinct elements, with the two elements."""
    return _certificate(R, _all_pairs(R, jobs), lambda n, ratio: n)


def max_piece_bruteforce(R: SymmetrizedSet) -> int:
    """Same length as :func:`max_piece`, by sorting the materialized closure.

    The longest common prefix over a set of distinct strings is attained by
    two neighbours in sorted order.
    """
    elems = sorted(set(R.element_strings()))
    best = 0
    for s, t in zip(elems, elems[1:]):
        k = 0
        m = min(len(s), len(t))
        while k < m and s[k] == t[k]:
            k += 1
        best = max(best, k)
    return best


def parse_lambda(text: str | Fraction) -> Fraction:
    lam = Fraction(text)
    if not 0 < lam <= 1:
        raise ValueError(f"lambda must lie in (0, 1], got {text}")
    return lam


def format_lambda(lam: Fraction) -> str:
    return f"{lam.numerator}/{lam.denominator}"


def check_cprime(R: SymmetrizedSet, lam: Fraction | str, jobs: int = 1) -> tuple[bool, PieceCertificate]:
    """``C'(lam)``: each piece is shorter than ``lam`` times every relator containing it.

    The certificate is the pair with the largest piece-to-length ratio
    (ties broken by the lexicographically least pair of elements).
    """
    lam = parse_lambda(lam)
    cert = _certificate(R, _all_pairs(R, jobs), lambda n, ratio: ratio)
    return cert.ratio < lam, cert


def certify(R: SymmetrizedSet, lam: Fraction | str = Fraction(1, 6), jobs: int = 1) -> PieceCertificate:
    """Run :func:`check_cprime` and record ``lam`` on ``R`` when it holds."""
    ok, cert = check_cprime(R, lam, jobs)
    if ok:
        lam = parse_lambda(lam)
        if R.certified is None or lam < R.certified:
            R.certified = lam
    return cert
