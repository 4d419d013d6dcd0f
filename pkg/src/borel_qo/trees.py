"""Trees as prefix-closed string sets, and the encodings ``t`` and ``C``.

A :class:`FiniteTree` is a nonempty prefix-closed set of strings over a digit
alphabet.  The tree ``T_A`` built from a set ``A`` of binary strings (the
complete binary tree plus a leaf ``w2`` for each ``w`` in ``A``) is infinite,
so it is kept symbolic as a :class:`MarkedBinaryTree` holding only ``A``;
:func:`mbt_truncate` gives finite views of it.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

__all__ = [
    "TreeError",
    "FiniteTree",
    "MarkedBinaryTree",
    "shortlex",
    "prefix_closure",
    "subtree",
    "truncate",
    "tree_leq",
    "tree_leq_bounded",
    "encode_t",
    "mbt_subtree",
    "mbt_leq",
    "mbt_truncate",
    "code_c",
    "encode_C",
    "decode_c_preimage",
    "c_stage_depth",
    "c_stage_leq",
    "m2_to_binary",
    "binary_to_m2",
    "enumerate_trees",
    "random_tree",
]


class TreeError(ValueError):
    """Malformed tree input (missing prefix, bad symbol, empty node set)."""


def shortlex(strings: Iterable[str]) -> list[str]:
    return sorted(strings, key=lambda s: (len(s), s))


def prefix_closure(strings: Iterable[str]) -> frozenset[str]:
    return frozenset(s[:i] for s in strings for i in range(len(s) + 1))


@dataclass(frozen=True)
class FiniteTree:
    nodes: frozenset[str]
    alphabet: str = "01"

    def __post_init__(self) -> None:
        nodes = frozenset(self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if not nodes:
            raise TreeError("a tree must contain the empty string")
        for s in shortlex(nodes):
            bad = [ch for ch in s if ch not in self.alphabet]
            if bad:
                raise TreeError(f"node {s!r} uses symbol {bad[0]!r} outside alphabet {self.alphabet!r}")
            if s and s[:-1] not in nodes:
                missing = s[:-1]
                # report the shortest missing prefix
                while missing and missing[:-1] not in nodes:
                    missing = missing[:-1]
                raise TreeError(f"not prefix-closed: node {s!r} is present but its prefix {missing or '-'!r} is missing")

    @classmethod
    def of(cls, *nodes: str, alphabet: str = "01") -> FiniteTree:
        return cls(frozenset("" if n == "-" else n for n in nodes), alphabet)

    def __contains__(self, s: str) -> bool:
        return s in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[str]:
        return iter(shortlex(self.nodes))

    def depth(self) -> int:
        return max(len(s) for s in self.nodes)

    def to_json(self) -> list[str]:
        return [s or "-" for s in shortlex(self.nodes)]

    @classmethod
    def from_json(cls, data: Iterable[str], alphabet: str = "01") -> FiniteTree:
        return cls(frozenset("" if s == "-" else str(s) for s in data), alphabet)


@dataclass(frozen=True)
class MarkedBinaryTree:
    """The complete binary tree plus one leaf ``m + "2"`` per mark ``m``."""

    marks: frozenset[str]

    def __post_init__(self) -> None:
        marks = frozenset(self.marks)
        for m in marks:
            if any(ch not in "01" for ch in m):
                raise TreeError(f"mark {m!r} is not a binary string")
        object.__setattr__(self, "marks", marks)

    def contains(self, s: str) -> bool:
        """Membership of a ternary string in the (infinite) symbolic tree."""
        if "2" not in s:
            return all(ch in "01" for ch in s)
        return s.index("2") == len(s) - 1 and s[:-1] in self.marks

    def to_json(self) -> dict:
        return {"marks": [m or "-" for m in shortlex(self.marks)]}

    @classmethod
    def from_json(cls, data: Mapping) -> MarkedBinaryTree:
        return cls(frozenset("" if m == "-" else str(m) for m in data["marks"]))


def subtree(T: FiniteTree, u: str) -> FiniteTree | None:
    """``{v : u v in T}``, or None when ``u`` is not a node."""
    if u not in T.nodes:
        return None
    k = len(u)
    return FiniteTree(frozenset(s[k:] for s in T.nodes if s.startswith(u)), T.alphabet)


def truncate(T: FiniteTree, depth: int) -> FiniteTree:
    return FiniteTree(frozenset(s for s in T.nodes if len(s) <= depth), T.alphabet)


def tree_leq(T: FiniteTree, T2: FiniteTree) -> str | None:
    """Some ``u`` with ``T = T2_u``, shortest first.

    ``T`` contains the empty string, so ``u`` must be a node of ``T2``.
    """
    for u in shortlex(T2.nodes):
        if subtree(T2, u).nodes == T.nodes:
            return u
    return None


def tree_leq_bounded(T: FiniteTree, T2: FiniteTree, depth: int, max_shift: int) -> str | None:
    """``tree_leq`` restricted to depth-``depth`` views and shifts ``|u| <= max_shift``.

    For comparing finite windows of infinite trees; ``T2`` should be known
    at least to depth ``depth + max_shift``.
    """
    target = frozenset(s for s in T.nodes if len(s) <= depth)
    for u in shortlex(T2.nodes):
        if len(u) > max_shift:
            break
        k = len(u)
        view = frozenset(s[k:] for s in T2.nodes if s.startswith(u) and len(s) - k <= depth)
        if view == target:
            return u
    return None


def m2_to_binary(w: str) -> str:
    """``a -> 0``, ``b -> 1``."""
    return w.translate(str.maketrans("ab", "01"))


def binary_to_m2(s: str) -> str:
    return s.translate(str.maketrans("01", "ab"))


def encode_t(A: Iterable[str]) -> MarkedBinaryTree:
    """``A`` as binary strings (``a``/``b`` words are converted)."""
    marks = frozenset(m2_to_binary("" if a == "-" else a) for a in A)
    if not marks:
        raise TreeError("encode_t needs a nonempty set")
    return MarkedBinaryTree(marks)


def mbt_subtree(M: MarkedBinaryTree, u: str) -> MarkedBinaryTree:
    k = len(u)
    return MarkedBinaryTree(frozenset(m[k:] for m in M.marks if m.startswith(u)))


def mbt_truncate(M: MarkedBinaryTree, d: int) -> FiniteTree:
    nodes = {"".join(p) for k in range(d + 1) for p in itertools.product("01", repeat=k)}
    nodes.update(m + "2" for m in M.marks if len(m) + 1 <= d)
    return FiniteTree(frozenset(nodes), "012")


def mbt_leq(M: MarkedBinaryTree, M2: MarkedBinaryTree) -> str | None:
    """Some binary ``u`` with ``marks(M) = {v : u v in marks(M2)}``, shortest first.

    Only binary shifts need checking: a shift through a ``2`` leaf leaves at
    most one node, while the trees here are infinite.  The returned shift is
    also checked on a finite window that contains every mark of both sides.
    """
    if not M.marks or not M2.marks:
        raise TreeError("mbt_leq needs nonempty mark sets")
    for u in shortlex(prefix_closure(M2.marks)):
        if mbt_subtree(M2, u).marks == M.marks:
            d = max(len(m) for m in M2.marks) + 1
            shifted = subtree(mbt_truncate(M2, d + len(u)), u)
            assert truncate(shifted, d).nodes == mbt_truncate(M, d).nodes
            return u
    return None


_C = {"0": "00", "1": "01", "2": "10"}
_C_INV = {v: k for k, v in _C.items()}


def code_c(s: str) -> str:
    return "".join(_C[ch] for ch in s)


def encode_C(T: FiniteTree) -> FiniteTree:
    if T.alphabet != "012":
        T = FiniteTree(T.nodes, "012")
    return FiniteTree(prefix_closure(code_c(s) for s in T.nodes), "01")


def decode_c_preimage(w: str) -> str | None:
    if len(w) % 2:
        return None
    out = []
    for i in range(0, len(w), 2):
        ch = _C_INV.get(w[i : i + 2])
        if ch is None:
            return None
        out.append(ch)
    return "".join(out)


def c_stage_depth(max_len: int) -> int:
    """Binary window depth for comparing C-images of mark trees with marks of length <= max_len."""
    return 2 * (max_len + 1) + 2


def c_stage_leq(M: MarkedBinaryTree, M2: MarkedBinaryTree) -> str | None:
    """Tree comparison of ``C(t(A))`` and ``C(t(B))`` on finite windows.

    Both sides are truncated, pushed through ``C`` and compared with
    :func:`tree_leq_bounded`.  Shifts go up to twice the longest mark plus
    two, which covers every code-aligned candidate and the odd-length ones
    next to them; the window depth leaves room for the words ``00`` and
    ``100`` that rule out misaligned shifts.
    """
    L = max(len(m) for m in M.marks | M2.marks)
    depth = c_stage_depth(L)
    max_shift = 2 * L + 2
    left = encode_C(mbt_truncate(M, (depth + 1) // 2))
    right = encode_C(mbt_truncate(M2, (depth + max_shift + 1) // 2))
    return tree_leq_bounded(left, right, depth, max_shift)


def enumerate_trees(alphabet: str, max_depth: int, max_nodes: int | None = None) -> Iterator[FiniteTree]:
    """Every tree over ``alphabet`` of depth <= ``max_depth`` (and <= ``max_nodes`` nodes)."""

    def grow(depth: int) -> list[frozenset[str]]:
        # all subtrees rooted at "" with depth <= depth
        if depth == 0:
            return [frozenset({""})]
        below = grow(depth - 1)
        out = []
        for choice in itertools.product([None, *below], repeat=len(alphabet)):
            nodes = {""}
            for ch, sub in zip(alphabet, choice):
                if sub is not None:
                    nodes.update(ch + s for s in sub)
            if max_nodes is None or len(nodes) <= max_nodes:
                out.append(frozenset(nodes))
        return out

    for nodes in sorted(grow(max_depth), key=lambda n: (len(n), shortlex(n))):
        yield FiniteTree(nodes, alphabet)


def random_tree(rng: random.Random, alphabet: str = "01", max_depth: int = 3, p: float = 0.6) -> FiniteTree:
    """Grow each child independently with probability ``p``."""
    nodes = {""}
    frontier = [""]
    while frontier:
        s = frontier.pop()
        if len(s) >= max_depth:
            continue
        for ch in alphabet:
            if rng.random() < p:
                nodes.add(s + ch)
                frontier.append(s + ch)
    return FiniteTree(frozenset(nodes), alphabet)
