"""Presentations built from graphs and from binary trees, and their decoders.

Graph groups: generators ``v0 .. v{n-1}``, relators ``v_i^7`` and
``(v_i v_j)^11`` for an edge, ``(v_i v_j)^13`` for a non-edge (``i < j``).

Tree groups: generators ``x, y``; for every binary ``w`` with ``|w| <= d``,
``f_w(x)^59, f_w(y)^61`` when ``w`` is in the tree, ``f_w(x)^67, f_w(y)^71``
otherwise.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..trees import FiniteTree, TreeError, shortlex
from ..words import Word
from .dehn import dehn_is_identity
from .presentation import (
    Presentation,
    SymmetrizedSet,
    certify,
    format_lambda,
    object_hash,
    parse_lambda,
    symmetrize,
)
from .substitution import XY, image_string, index_strings, subst_string

__all__ = [
    "VERTEX_ORDER",
    "EDGE_ORDER",
    "NON_EDGE_ORDER",
    "IN_TREE_ORDERS",
    "OUT_OF_TREE_ORDERS",
    "MAX_TREE_DEPTH",
    "MalformedPresentationError",
    "Graph",
    "random_graph",
    "build_graph_group",
    "decode_graph",
    "build_tree_group",
    "decode_tree",
    "tree_relator_strings",
    "MappingCheck",
    "verify_relator_mapping",
    "verify_graph_hom",
    "surjectivity_probe",
    "certified_set",
    "record_certificate",
]

VERTEX_ORDER = 7
EDGE_ORDER = 11
NON_EDGE_ORDER = 13
IN_TREE_ORDERS = (59, 61)
OUT_OF_TREE_ORDERS = (67, 71)
MAX_TREE_DEPTH = 3


class MalformedPresentationError(ValueError):
    """A presentation does not have the shape its decoder expects."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on ``0 .. n-1``; edges stored as ``(i, j)`` with ``i < j``."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        norm = set()
        for i, j in self.edges:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge {(i, j)} out of range")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def to_json(self) -> dict:
        return {"vertices": self.n, "edges": [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_json(cls, data: Mapping) -> Graph:
        return cls(int(data["vertices"]), frozenset(tuple(e) for e in data["edges"]))

    @classmethod
    def all_graphs(cls, n: int) -> list[Graph]:
        pairs = list(itertools.combinations(range(n), 2))
        return [
            cls(n, frozenset(p for p, b in zip(pairs, bits) if b))
            for bits in itertools.product((0, 1), repeat=len(pairs))
        ]


def random_graph(rng: random.Random, max_vertices: int = 5, p: float = 0.5) -> Graph:
    n = rng.randint(1, max_vertices)
    return Graph(n, frozenset(e for e in itertools.combinations(range(n), 2) if rng.random() < p))


def _vertex(i: int) -> str:
    return f"v{i}"


def build_graph_group(G: Graph) -> Presentation:
    gens = tuple(_vertex(i) for i in range(G.n))
    rels = [Word.parse(_vertex(i) * VERTEX_ORDER) for i in range(G.n)]
    for i, j in itertools.combinations(range(G.n), 2):
        e = EDGE_ORDER if G.adjacent(i, j) else NON_EDGE_ORDER
        rels.append(Word.parse((_vertex(i) + _vertex(j)) * e))
    meta = {"kind": "graph-group", "vertices": G.n, "hash": object_hash(G.to_json()), "cprime": None}
    return Presentation(gens, tuple(rels), meta)


def _vertex_index(base: str, n: int) -> int:
    if not (base.startswith("v") and base[1:].isdigit()):
        raise MalformedPresentationError(f"generator {base!r} is not a vertex name")
    i = int(base[1:])
    if i >= n:
        raise MalformedPresentationError(f"vertex {base!r} out of range")
    return i


def decode_graph(P: Presentation) -> Graph:
    n = len(P.generators)
    for k, g in enumerate(P.generators):
        if g != _vertex(k):
            raise MalformedPresentationError(f"generator {k} should be {_vertex(k)!r}, got {g!r}")
    vertices: set[int] = set()
    pairs: dict[tuple[int, int], int] = {}
    for r in P.relators:
        if any(l.sign < 0 for l in r.letters):
            raise MalformedPresentationError(f"relator {r} has inverse letters")
        bases = [l.base for l in r.letters]
        if len(set(bases)) == 1 and len(bases) == VERTEX_ORDER:
            vertices.add(_vertex_index(bases[0], n))
            continue
        a, b = bases[0], bases[1] if len(bases) > 1 else None
        if b is None or len(bases) % 2 or bases != [a, b] * (len(bases) // 2):
            raise MalformedPresentationError(f"relator {r} is neither v^7 nor (v_i v_j)^e")
        i, j = _vertex_index(a, n), _vertex_index(b, n)
        e = len(bases) // 2
        if i >= j or e not in (EDGE_ORDER, NON_EDGE_ORDER):
            raise MalformedPresentationError(f"relator {r}: bad pair order or exponent {e}")
        if (i, j) in pairs:
            raise MalformedPresentationError(f"pair {(i, j)} appears twice")
        pairs[(i, j)] = e
    if vertices != set(range(n)) or set(pairs) != set(itertools.combinations(range(n), 2)):
        raise MalformedPresentationError("missing vertex or pair relators")
    return Graph(n, frozenset(p for p, e in pairs.items() if e == EDGE_ORDER))


def _node_set(T: FiniteTree | Iterable[str]) -> frozenset[str]:
    nodes = T.nodes if isinstance(T, FiniteTree) else frozenset("" if s == "-" else s for s in T)
    for s in nodes:
        if any(c not in "01" for c in s):
            raise TreeError(f"node {s!r} is not a binary string")
        if s and s[:-1] not in nodes:
            raise TreeError(f"not prefix-closed: prefix {s[:-1] or '-'!r} of {s!r} is missing")
    return nodes


def tree_relator_strings(nodes: frozenset[str], d: int) -> list[str]:
    """Relators of the depth-``d`` tree group as strings over ``x y``."""
    out = []
    for w in index_strings(d):
        ex, ey = IN_TREE_ORDERS if w in nodes else OUT_OF_TREE_ORDERS
        out.append(image_string(w, "x") * ex)
        out.append(image_string(w, "y") * ey)
    return out


def build_tree_group(T: FiniteTree | Iterable[str], d: int) -> Presentation:
    """Depth-``d`` truncation of the tree group of ``T``.

    ``T`` may also be a bare prefix-closed node set, including the empty set
    (every exponent is then 67 or 71).
    """
    if not 0 <= d <= MAX_TREE_DEPTH:
        raise ValueError(f"tree-group depth must be in 0..{MAX_TREE_DEPTH}, got {d}")
    nodes = _node_set(T)
    rels = tuple(Word.parse(s) for s in tree_relator_strings(nodes, d))
    kept = [s or "-" for s in shortlex(n for n in nodes if len(n) <= d)]
    meta = {"kind": "tree-group", "depth": d, "hash": object_hash(kept), "nodes": kept, "cprime": None}
    return Presentation(XY, rels, meta)


def _xy_string(w: Word) -> str:
    return "".join(l.base if l.sign > 0 else l.base.upper() for l in w.letters)


def decode_tree(P: Presentation) -> FiniteTree | None:
    """Nodes read off the exponents; None when the node set is empty."""
    if tuple(P.generators) != XY:
        raise MalformedPresentationError("tree groups are generated by x, y")
    found: dict[str, dict[str, int]] = {}
    for r in P.relators:
        s = _xy_string(r)
        if any(c not in "xy" for c in s):
            raise MalformedPresentationError(f"relator {r} has inverse letters")
        hit = None
        for e in IN_TREE_ORDERS + OUT_OF_TREE_ORDERS:
            if len(s) % e:
                continue
            block = len(s) // e
            k = 0
            while 6**k < block:
                k += 1
            if 6**k != block or s != s[:block] * e:
                continue
            for w in index_strings(k)[2**k - 1 :]:
                for a in "xy":
                    if image_string(w, a) == s[:block]:
                        hit = (w, a, e)
            if hit:
                break
        if hit is None:
            raise MalformedPresentationError(f"relator {r} is not a power of some f_w(x) or f_w(y)")
        w, a, e = hit
        found.setdefault(w, {})[a] = e
    nodes = set()
    for w, exps in found.items():
        if set(exps) != {"x", "y"}:
            raise MalformedPresentationError(f"index {w or '-'}: needs one x and one y relator")
        pair = (exps["x"], exps["y"])
        if pair == IN_TREE_ORDERS:
            nodes.add(w)
        elif pair != OUT_OF_TREE_ORDERS:
            raise MalformedPresentationError(f"index {w or '-'}: exponent pair {pair}")
    if not nodes:
        return None
    try:
        return FiniteTree(frozenset(nodes))
    except TreeError as e:
        raise MalformedPresentationError(str(e)) from None


@dataclass(frozen=True)
class MappingCheck:
    """Outcome of a dual-path check; ``violation`` names the first failing index or vertex pair."""

    ok: bool
    combinatorial: bool
    relator_image: bool
    violation: object = None

    def __bool__(self) -> bool:
        return self.ok


def verify_relator_mapping(
    T: FiniteTree | Iterable[str], T2: FiniteTree | Iterable[str], w: str, d: int
) -> MappingCheck:
    """``v in T <=> w v in T2`` for ``|v| <= d - |w|``, checked directly and through ``f_w``.

    The second path maps every relator of the depth ``d - |w|`` group of
    ``T`` by ``f_w`` and looks the image up among the depth-``d`` relators
    of ``T2``.
    """
    if len(w) > d:
        raise ValueError("index longer than the depth bound")
    A, B = _node_set(T), _node_set(T2)
    k = d - len(w)
    violation = next((v for v in index_strings(k) if (v in A) != (w + v in B)), None)
    target = set(tree_relator_strings(B, d))
    image_violation = None
    indices = [v for v in index_strings(k) for _ in "xy"]
    for v, rel in zip(indices, tree_relator_strings(A, k)):
        if subst_string(w, rel) not in target:
            image_violation = v
            break
    comb_ok, image_ok = violation is None, image_violation is None
    if violation is None:
        violation = image_violation
    return MappingCheck(comb_ok and image_ok, comb_ok, image_ok, violation)


def verify_graph_hom(S: Graph, T: Graph, f: Sequence[int] | Mapping[int, int]) -> MappingCheck:
    """``f`` injective with ``i ~ j <=> f(i) ~ f(j)``, directly and by relator images.

    Each relator of the group of ``S`` is renamed along ``f`` and must be a
    relator of the group of ``T`` up to rotation.
    """
    fm = [f[i] for i in range(S.n)]
    if any(not 0 <= t < T.n for t in fm):
        raise ValueError("vertex map leaves the target graph")
    violation = None
    if len(set(fm)) != S.n:
        seen: dict[int, int] = {}
        for i, t in enumerate(fm):
            if t in seen:
                violation = (seen[t], i)
                break
            seen[t] = i
    else:
        for i, j in itertools.combinations(range(S.n), 2):
            if S.adjacent(i, j) != T.adjacent(fm[i], fm[j]):
                violation = (i, j)
                break
    comb_ok = violation is None
    PS, PT = build_graph_group(S), build_graph_group(T)
    RT = symmetrize(PT)
    image_ok = True
    for r in PS.relators:
        image = Word.parse("".join(_vertex(fm[int(l.base[1:])]) for l in r.letters))
        if not RT.contains_string(RT.codec.encode(image)):
            image_ok = False
            break
    return MappingCheck(comb_ok and image_ok, comb_ok, image_ok, violation)


def certified_set(P: Presentation, lam: Fraction | str | None = None) -> SymmetrizedSet:
    """Symmetrized set carrying ``P``'s certificate.

    With ``lam`` the condition is checked now; otherwise the ``cprime``
    entry recorded in the metadata is trusted.
    """
    R = symmetrize(P)
    if lam is not None:
        certify(R, lam)
    elif P.metadata.get("cprime"):
        R.certified = parse_lambda(P.metadata["cprime"])
    return R


def _reduced_words(letters: str, max_len: int):
    inv = {"x": "X", "X": "x", "y": "Y", "Y": "y"}
    layer = [""]
    yield ""
    for _ in range(max_len):
        layer = [s + c for s in layer for c in letters if not s or inv[s[-1]] != c]
        yield from layer


def surjectivity_probe(w: str, R: SymmetrizedSet | Presentation, bound: int) -> Word | None:
    """Shortest ``alpha`` (shortlex, ``|alpha| <= bound``) with ``f_w(alpha) = x`` in the group."""
    if isinstance(R, Presentation):
        R = certified_set(R)
    for alpha in _reduced_words("xyXY", bound):
        word = Word.parse((subst_string(w, alpha) + "X"))
        if dehn_is_identity(word, R):
            return Word.parse(alpha or "-")
    return None


def record_certificate(P: Presentation, lam: Fraction) -> Presentation:
    meta = dict(P.metadata)
    meta["cprime"] = format_lambda(lam)
    return Presentation(P.generators, P.relators, meta)
