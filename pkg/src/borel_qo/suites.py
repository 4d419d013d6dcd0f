"""Named property suites with seeded instance generation.

A suite is a list of instances (plain tuples, so they pickle) plus a check
function returning None on success or a small dict describing the failure.
Exhaustive instances come first, ordered by size, so the first failure
reported is a smallest one.  ``corrupt=True`` swaps in a deliberately wrong
oracle; every suite must then fail, which tests the harness itself.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable

from . import monoid_shift as ms
from . import qo_core as qo
from . import subset_qo as sq
from . import trees as tr
from .cancellation import builders as cb
from .cancellation.substitution import image_string, index_strings, subst_string
from .words import Word, free_reduce, invert

__all__ = ["SuiteResult", "SUITES", "run_suite", "suite_names"]

_INV = {"x": "X", "X": "x", "y": "Y", "Y": "y"}


@dataclass
class SuiteResult:
    name: str
    passed: bool
    instances: int
    exhaustive: int
    randomized: int
    seed: int
    counterexample: dict | None = None
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "instances": self.instances,
            "exhaustive": self.exhaustive,
            "randomized": self.randomized,
            "seed": self.seed,
            "counterexample": self.counterexample,
            "notes": self.notes,
        }


@dataclass(frozen=True)
class _Suite:
    instances: Callable[[random.Random, float], tuple[list, list]]
    check: Callable


def _rng(name: str, seed: int) -> random.Random:
    return random.Random(f"{name}:{seed}")


def _scaled(n: int, size: float) -> int:
    return max(1, int(round(n * size)))


# ---- words over x, y -------------------------------------------------------


def _reduced(max_len: int, min_len: int = 0) -> list[str]:
    out, layer = [], [""]
    for k in range(max_len + 1):
        if k >= min_len:
            out.extend(layer)
        layer = [s + c for s in layer for c in "xyXY" if not s or _INV[s[-1]] != c]
    return out


def _cyclically_reduced(s: str) -> bool:
    return not s or _INV[s[0]] != s[-1]


def _random_cr(rng: random.Random, min_len: int, max_len: int) -> str:
    while True:
        n = rng.randint(min_len, max_len)
        s = ""
        while len(s) < n:
            c = rng.choice("xyXY")
            if not s or _INV[s[-1]] != c:
                s += c
        if _cyclically_reduced(s):
            return s


def _is_rotation(a: str, b: str) -> bool:
    return len(a) == len(b) and a in b + b


def _cyclic_contains(big: str, small: str) -> bool:
    """Some rotation of ``small`` is a subword of some rotation of ``big``."""
    if len(small) > len(big) or not small:
        return bool(not small)
    doubled = big + big
    return any(small[k:] + small[:k] in doubled for k in range(len(small)))


# ---- lineup --------------------------------------------------------------


def _lineup_instances(rng: random.Random, size: float):
    exhaustive = [("letters", u, a, b, c) for u in index_strings(3) for a, b, c in itertools.product("xyXY", repeat=3)]
    randomized = []
    for _ in range(_scaled(500, size)):
        u = rng.choice(index_strings(3))
        beta = _reduced_random(rng, 1, 6)
        if rng.random() < 0.5:
            i = rng.randrange(len(beta))
            alpha = beta[i : rng.randint(i + 1, len(beta))]
        else:
            alpha = _reduced_random(rng, 1, 3)
        randomized.append(("words", u, alpha, beta))
    return exhaustive, randomized


def _reduced_random(rng: random.Random, lo: int, hi: int) -> str:
    n = rng.randint(lo, hi)
    s = ""
    while len(s) < n:
        c = rng.choice("xyXY")
        if not s or _INV[s[-1]] != c:
            s += c
    return s


def _lineup_check(inst, corrupt: bool = False):
    if inst[0] == "letters":
        _, u, a, b, c = inst
        fa, fb = image_string(u, a), image_string(u, b)
        s = fb + image_string(u, c)
        allowed = {0} if corrupt else {0, len(fb)}
        k = s.find(fa)
        while k >= 0:
            if k not in allowed:
                return {"position": k}
            k = s.find(fa, k + 1)
        return None
    _, u, alpha, beta = inst
    if subst_string(u, alpha) in subst_string(u, beta) and alpha not in beta:
        return {"reason": "image is a subword but the preimage is not"}
    return None


# ---- functioncyclic ------------------------------------------------------


def _functioncyclic_instances(rng: random.Random, size: float):
    out = []
    for _ in range(_scaled(500, size)):
        w = rng.choice(index_strings(2))
        alpha = _random_cr(rng, 1, 5)
        if rng.random() < 0.5:
            k = rng.randrange(len(alpha))
            beta = alpha[k:] + alpha[:k]
        else:
            beta = _random_cr(rng, 1, 5)
        out.append((w, alpha, beta))
    return [], out


def _functioncyclic_check(inst, corrupt: bool = False):
    w, alpha, beta = inst
    if _is_rotation(subst_string(w, alpha), subst_string(w, beta)):
        ok = alpha == beta if corrupt else _is_rotation(alpha, beta)
        if not ok:
            return {"reason": "images are rotations but the words are not"}
    return None


# ---- cyclesubword --------------------------------------------------------


def _cyclesubword_instances(rng: random.Random, size: float):
    words = [s for s in _reduced(2, 1) if _cyclically_reduced(s)]
    idx = index_strings(2)
    exhaustive = [(w, v, a, b) for w in idx for v in idx for a in words for b in words]
    exhaustive.sort(key=lambda t: (len(t[0]) + len(t[1]) + len(t[2]) + len(t[3]), t))
    randomized = []
    for _ in range(_scaled(500, size)):
        w, v = rng.choice(idx), rng.choice(idx)
        if rng.random() < 0.5 and len(v) <= len(w) and w.startswith(v):
            # plant a containment: beta is a rotation of a piece of f_{w'}(alpha)
            alpha = _random_cr(rng, 1, 3)
            img = subst_string(w[len(v) :], alpha)
            k = rng.randrange(len(img))
            rot = img[k:] + img[:k]
            beta = rot[: rng.randint(1, min(4, len(rot)))]
            if not _cyclically_reduced(beta):
                beta = beta[:1]
        else:
            alpha, beta = _random_cr(rng, 1, 4), _random_cr(rng, 1, 4)
        randomized.append((w, v, alpha, beta))
    return exhaustive, randomized


def _cyclesubword_check(inst, corrupt: bool = False):
    w, v, alpha, beta = inst
    if not _cyclic_contains(subst_string(w, alpha), subst_string(v, beta)):
        return None
    if corrupt:
        if not v.startswith(w):
            return {"reason": "corrupt oracle: expected v to extend w"}
        return None
    if not (w.startswith(v) or v.startswith(w)):
        return {"reason": "neither index extends the other"}
    if w.startswith(v) and not _cyclic_contains(subst_string(w[len(v) :], alpha), beta):
        return {"reason": "f_{w'}(alpha) does not contain beta cyclically"}
    if v.startswith(w) and not _cyclic_contains(alpha, subst_string(v[len(w) :], beta)):
        return {"reason": "alpha does not contain f_{v'}(beta) cyclically"}
    return None


# ---- composed -------------------------------------------------------------


def _composed_instances(rng: random.Random, size: float):
    idx = index_strings(2)
    exps = [e for e in range(-6, 7) if e]
    out = []
    for t, u, v in itertools.product(idx, repeat=3):
        for k, l, m in itertools.product(exps, repeat=3):
            if 6 ** len(t) * abs(k) == 6 ** len(u) * abs(l) + 6 ** len(v) * abs(m):
                out.append((t, u, v, k, l, m))
    return out, _composed_random(rng, _scaled(500, size), idx)


def _composed_random(rng: random.Random, n: int, idx: list[str], max_exp: int = 24):
    # larger exponents than the exhaustive part; about a third are planted solutions
    out = []
    while len(out) < n:
        if rng.random() < 0.35:
            u = rng.choice(idx)
            k = rng.choice((1, -1))
            out.append((u + "0", u, u, k, 5 * k, k))
            continue
        t, u, v = rng.choice(idx), rng.choice(idx), rng.choice(idx)
        l = rng.choice([e for e in range(-max_exp, max_exp + 1) if e])
        m = rng.choice([e for e in range(-max_exp, max_exp + 1) if e])
        total = 6 ** len(u) * abs(l) + 6 ** len(v) * abs(m)
        if total % 6 ** len(t) or total // 6 ** len(t) > max_exp:
            continue
        k = total // 6 ** len(t) * rng.choice((1, -1))
        out.append((t, u, v, k, l, m))
    return out


def _power(letter: str, e: int) -> str:
    return (letter if e > 0 else letter.upper()) * abs(e)


def _composed_check(inst, corrupt: bool = False):
    t, u, v, k, l, m = inst
    big = subst_string(t, _power("x", k))
    P = subst_string(u, _power("x", l))
    Q = subst_string(v, _power("y", m))
    found = False
    for r in range(len(big)):
        rot = big[r:] + big[:r]
        if _is_rotation(rot[: len(P)], P) and _is_rotation(rot[len(P) :], Q):
            found = True
            break
    five = 4 if corrupt else 5
    expected = u == v and t == u + "0" and k == m and abs(k) == 1 and l == five * k
    if found != expected:
        return {"found": found, "expected": expected}
    return None


# ---- itsahom ----------------------------------------------------------------


def _itsahom_instances(rng: random.Random, size: float):
    out = []
    for T in tr.enumerate_trees("ab", 3, 6):
        for w in tr.shortlex(T.nodes):
            if 1 <= len(w) <= 2:
                out.append((tuple(T.to_json()), w))
    return out, []


def _itsahom_check(inst, corrupt: bool = False):
    nodes, w = inst
    T = tr.FiniteTree.from_json(nodes, "ab")
    if corrupt:
        left, _ = sq.itsahom_sides(T, w)
        if left != sq.G_map(tr.subtree(T, w)):
            return {"reason": "corrupt oracle: dropped the translate by w"}
        return None
    left, right = sq.itsahom_sides(T, w)
    if left != right:
        return {"only_left": sorted(map(str, left - right)), "only_right": sorted(map(str, right - left))}
    if not sq.itsahom_verify(T, w):
        return {"reason": "second form fails"}
    return None


# ---- outline ---------------------------------------------------------------


def _outline_instances(rng: random.Random, size: float):
    out = []
    for _ in range(_scaled(1000, size)):
        T2 = tr.random_tree(rng, "ab", 3, 0.6)
        mode = rng.random()
        if mode < 0.3:
            T = T2
        elif mode < 0.7:
            leaves = [s for s in T2.nodes if s and not any(s + c in T2.nodes for c in "ab")]
            T = T2 if not leaves else tr.FiniteTree(T2.nodes - {rng.choice(sorted(leaves))}, "ab")
        else:
            T = tr.random_tree(rng, "ab", 3, 0.6)
        out.append((tuple(T.to_json()), tuple(T2.to_json())))
    return [], out


def _outline_check(inst, corrupt: bool = False):
    T = tr.FiniteTree.from_json(inst[0], "ab")
    T2 = tr.FiniteTree.from_json(inst[1], "ab")
    S = (lambda X: X) if corrupt else sq.outline_S
    if S(T).nodes <= S(T2).nodes and T.nodes != T2.nodes:
        return {"reason": "outline inclusion without equality"}
    return None


# ---- star ------------------------------------------------------------------

_M2_WORDS = ["".join(p) for k in range(9) for p in itertools.product("ab", repeat=k)]


def _star_instances(rng: random.Random, size: float):
    gs = [g for k in range(4) for g in itertools.product((1, 2, 3), repeat=k)]
    out = [("fixed",)]
    for i in range(_scaled(100, size)):
        support = set()
        for _ in range(rng.randint(1, 4)):
            support.add(tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 3))))
        sup = tuple(sorted(support))
        out.extend(("equivariance", sup, g) for g in gs)
    return [], out


def _star_check(inst, corrupt: bool = False):
    if inst[0] == "fixed":
        p = ms.FiniteSupportBitmap(frozenset())
        return None if ms.star_eval(p, "b") == 1 else {"reason": "p*(b) != 1"}
    _, sup, g = inst
    p = ms.FiniteSupportBitmap(frozenset(sup))
    gp = ms.shift_bitmap(g, p)
    eg = ms.embed_momega(g)
    for h in _M2_WORDS:
        lhs = ms.star_eval(gp, h)
        rhs = ms.star_eval(p, (eg + h) if corrupt else (h + eg))
        if lhs != rhs:
            return {"h": h or "-", "lhs": lhs, "rhs": rhs}
    return None


# ---- fm ----------------------------------------------------------------------


def _fm_instances(rng: random.Random, size: float):
    exhaustive = [("exhaustive", Q.size, tuple(sorted(Q.pairs))) for n in range(1, 4) for Q in qo.enumerate_quasi_orders(n)]
    randomized = []
    for _ in range(_scaled(200, size)):
        Q = qo.random_quasi_order(5, rng, rng.choice((0.1, 0.2, 0.3, 0.5)))
        randomized.append(("random", 5, tuple(sorted(Q.pairs))))
    return exhaustive, randomized


def _fm_check(inst, corrupt: bool = False):
    _, n, pairs = inst
    Q = qo.FiniteRelation(n, frozenset(pairs))
    A = qo.fm_decompose(Q)
    if corrupt:
        A = qo.FiniteMonoidAction(n, A.generators[:-1])
    R = qo.orbit_qo(A)
    if R != Q:
        return {"missing": sorted(Q.pairs - R.pairs), "extra": sorted(R.pairs - Q.pairs)}
    return None


# ---- encoding-chain --------------------------------------------------------

_BIN3 = [s for s in tr.shortlex("".join(p) for k in range(4) for p in itertools.product("01", repeat=k))]


def _encoding_instances(rng: random.Random, size: float):
    out = []
    for _ in range(_scaled(500, size)):
        A = rng.sample(_BIN3, rng.randint(1, 4))
        mode = rng.random()
        if mode < 0.4:
            # plant a prefix witness m: B ∩ m{0,1}* = mA
            m = rng.choice([s for s in _BIN3 if len(s) <= 3 - max(len(a) for a in A)])
            B = {m + a for a in A}
            extra = [s for s in _BIN3 if not s.startswith(m)]
            B.update(rng.sample(extra, min(len(extra), rng.randint(0, 4 - len(B)))) if len(B) < 4 else [])
            B = sorted(B)
        else:
            B = rng.sample(_BIN3, rng.randint(1, 4))
        out.append((tuple(tr.shortlex(A)), tuple(tr.shortlex(B))))
    return [], out


def encoding_chain_verdicts(A, B, corrupt: bool = False) -> dict[str, bool]:
    """The four comparisons of ``A`` and ``B`` along the encoding chain."""
    Aab = [tr.binary_to_m2(a) for a in A]
    Bab = [tr.binary_to_m2(b) for b in B]
    if corrupt:
        suffix = ms.suffix_qo_leq(Aab, Bab) is not None
    else:
        suffix = ms.suffix_qo_leq(ms.bar_set(Aab), ms.bar_set(Bab)) is not None
    prefix = ms.prefix_qo_leq(Aab, Bab) is not None
    tA, tB = tr.encode_t(A), tr.encode_t(B)
    mbt = tr.mbt_leq(tA, tB) is not None
    cstage = tr.c_stage_leq(tA, tB) is not None
    return {"suffix": suffix, "prefix": prefix, "mbt": mbt, "c_stage": cstage}


def _encoding_check(inst, corrupt: bool = False):
    v = encoding_chain_verdicts(*inst, corrupt=corrupt)
    if len(set(v.values())) != 1:
        return v
    return None


# ---- kmap ------------------------------------------------------------------


def _random_ab(rng: random.Random, max_len: int) -> str:
    return str(sq.random_reduced_word(rng, "ab", max_len))


def _kmap_instances(rng: random.Random, size: float):
    out = []
    for order in (7, None):
        for _ in range(_scaled(20, size)):
            A = sorted({_random_ab(rng, 2) for _ in range(rng.randint(1, 3))})
            pool = A + [_random_ab(rng, 2) for _ in range(3)]
            B = sorted(set(rng.sample(pool, rng.randint(1, 3))))
            g = _random_ab(rng, 2)
            out.append((tuple(A), tuple(B), g, order))
    return [], out


def kmap_test_words(A, B, g: Word, order):
    gA = {free_reduce(g * a) for a in A}
    family = set(A) | set(B) | gA
    words = {(w.gs, w.hs): w for w in sq.conjugate_products(family, order, 6)}
    pool = [Word.parse(s) for s in ("a", "b", "A", "B")]
    for w in sq.bounded_fp_words(pool, order, 4, (1, -1)):
        words.setdefault((w.gs, w.hs), w)
    return list(words.values()), gA


def _kmap_check(inst, corrupt: bool = False):
    A = frozenset(Word.parse(s) for s in inst[0])
    B = frozenset(Word.parse(s) for s in inst[1])
    g, order = Word.parse(inst[2]), inst[3]
    words, gA = kmap_test_words(A, B, g, order)
    AB = A & B
    for w in words:
        in_a, in_b = sq.K_member_structural(w, A), sq.K_member_structural(w, B)
        in_ab = sq.K_member_structural(w, AB) if AB else w.is_identity()
        if in_a != sq.K_member(w, A, 6) or in_b != sq.K_member(w, B, 6):
            return {"word": str(w), "reason": "membership oracles disagree"}
        if (in_a and in_b) != in_ab:
            return {"word": str(w), "reason": "K(A) ∩ K(B) != K(A ∩ B)"}
        conj = w.conjugate(g) if corrupt else w.conjugate(invert(g))
        lhs = sq.K_member_structural(w, gA)
        if lhs != sq.K_member_structural(conj, A) or lhs != sq.K_member(w, gA, 6):
            return {"word": str(w), "reason": "K(gA) != g K(A) g^-1"}
    return None


# ---- relmap ----------------------------------------------------------------


def _toggle(rng: random.Random, nodes: frozenset[str], depth: int) -> frozenset[str]:
    """Flip one membership while keeping the set prefix-closed."""
    leaves = [s for s in nodes if not any(s + c in nodes for c in "01")]
    addable = [s + c for s in nodes for c in "01" if s + c not in nodes and len(s) < depth]
    if not nodes:
        return frozenset({""})
    if addable and (not leaves or rng.random() < 0.5):
        return nodes | {rng.choice(sorted(addable))}
    return nodes - {rng.choice(sorted(leaves))}


def _relmap_instances(rng: random.Random, size: float):
    out = []
    n_tree = _scaled(100, size)
    neg_every = max(1, n_tree // 10)
    for i in range(n_tree):
        T2 = tr.random_tree(rng, "01", 3, 0.6)
        d = rng.randint(1, 3)
        w = rng.choice([s for s in index_strings(min(2, d))])
        k = d - len(w)
        T = frozenset(s[len(w) :] for s in T2.nodes if s.startswith(w) and len(s) - len(w) <= k)
        negative = i % neg_every == 0
        if negative:
            T = _toggle(rng, T, k)
        out.append(("tree", tuple(tr.shortlex(T)), tuple(tr.shortlex(T2.nodes)), w, d, not negative))
    for i in range(n_tree):
        Tg = cb.random_graph(rng, 5)
        k = rng.randint(1, Tg.n)
        image = sorted(rng.sample(range(Tg.n), k))
        rng.shuffle(image)
        S = cb.Graph(k, frozenset((a, b) for a, b in itertools.combinations(range(k), 2) if Tg.adjacent(image[a], image[b])))
        negative = i % neg_every == 0
        if negative:
            if k >= 2 and rng.random() < 0.5:
                image[1] = image[0]
            elif k >= 2:
                a, b = sorted(rng.sample(range(k), 2))
                S = cb.Graph(k, S.edges ^ {(a, b)})
            else:
                # one-vertex source: collapse needs two vertices, so grow the source
                S = cb.Graph(2, frozenset())
                image = [image[0], image[0]]
        out.append(("graph", S.to_json(), Tg.to_json(), tuple(image), not negative))
    return [], out


def _relmap_check(inst, corrupt: bool = False):
    if inst[0] == "tree":
        _, T, T2, w, d, expected = inst
        if corrupt:
            res = cb.verify_relator_mapping(T, T2, "", d - len(w))
        else:
            res = cb.verify_relator_mapping(T, T2, w, d)
    else:
        _, S, Tg, image, expected = inst
        S, Tg = cb.Graph.from_json(S), cb.Graph.from_json(Tg)
        res = cb.verify_graph_hom(S, Tg, list(image))
        if corrupt:
            res = cb.MappingCheck(res.ok, res.combinatorial, not res.relator_image, res.violation)
    if res.combinatorial != res.relator_image or res.ok != expected:
        return {"combinatorial": res.combinatorial, "relator_image": res.relator_image, "expected": expected,
                "violation": res.violation}
    return None


# ---- roundtrip ---------------------------------------------------------------


def _roundtrip_instances(rng: random.Random, size: float):
    out = []
    for _ in range(_scaled(100, size)):
        T = tr.random_tree(rng, "01", 3, 0.6)
        out.append(("tree", tuple(T.to_json()), rng.randint(0, 3)))
    for _ in range(_scaled(100, size)):
        out.append(("graph", cb.random_graph(rng, 5).to_json()))
    return [], out


def _roundtrip_check(inst, corrupt: bool = False):
    if inst[0] == "tree":
        T = tr.FiniteTree.from_json(inst[1])
        d = inst[2]
        got = cb.decode_tree(cb.build_tree_group(T, d))
        want = T if corrupt else tr.truncate(T, d)
        if got != want:
            return {"got": got.to_json() if got else None, "want": want.to_json()}
        return None
    G = cb.Graph.from_json(inst[1])
    got = cb.decode_graph(cb.build_graph_group(G))
    if corrupt:
        got = cb.Graph(got.n, frozenset(itertools.combinations(range(got.n), 2)) - got.edges)
    if got != G:
        return {"got": got.to_json(), "want": G.to_json()}
    return None


# ---- surjprobe -----------------------------------------------------------------


def _surjprobe_instances(rng: random.Random, size: float):
    trees = [tuple(T.to_json()) for T in tr.enumerate_trees("01", 2)]
    out = [(nodes, w) for nodes in trees for w in ("", "0", "1")]
    return out, []


def _surjprobe_check(inst, corrupt: bool = False):
    nodes, w = inst
    P = cb.build_tree_group(tr.FiniteTree.from_json(nodes), 2)
    R = cb.certified_set(P, "1/6")
    got = cb.surjectivity_probe(w, R, 4)
    want = None if (w or corrupt) else Word.parse("x")
    if got != want:
        return {"got": str(got) if got is not None else None, "want": str(want) if want is not None else None}
    return None


SUITES: dict[str, _Suite] = {
    "lineup": _Suite(_lineup_instances, _lineup_check),
    "functioncyclic": _Suite(_functioncyclic_instances, _functioncyclic_check),
    "cyclesubword": _Suite(_cyclesubword_instances, _cyclesubword_check),
    "composed": _Suite(_composed_instances, _composed_check),
    "itsahom": _Suite(_itsahom_instances, _itsahom_check),
    "outline": _Suite(_outline_instances, _outline_check),
    "star": _Suite(_star_instances, _star_check),
    "fm": _Suite(_fm_instances, _fm_check),
    "encoding-chain": _Suite(_encoding_instances, _encoding_check),
    "kmap": _Suite(_kmap_instances, _kmap_check),
    "relmap": _Suite(_relmap_instances, _relmap_check),
    "roundtrip": _Suite(_roundtrip_instances, _roundtrip_check),
    "surjprobe": _Suite(_surjprobe_instances, _surjprobe_check),
}


def suite_names() -> list[str]:
    return list(SUITES)


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def run_suite(name: str, size: float = 1.0, seed: int = 0, jobs: int = 1, corrupt: bool = False) -> SuiteResult:
    """Run a suite; the reported counterexample is the failing instance with the lowest index."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    suite = SUITES[name]
    exhaustive, randomized = suite.instances(_rng(name, seed), size)
    instances = exhaustive + randomized
    check = partial(suite.check, corrupt=corrupt)
    failure = None
    if jobs > 1 and len(instances) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunk = max(1, len(instances) // (8 * jobs))
            for i, res in enumerate(pool.map(check, instances, chunksize=chunk)):
                if res is not None:
                    failure = (i, res)
                    break
    else:
        for i, inst in enumerate(instances):
            res = check(inst)
            if res is not None:
                failure = (i, res)
                break
    counterexample = None
    if failure is not None:
        i, res = failure
        counterexample = {"index": i, "instance": _jsonable(instances[i]), "detail": _jsonable(res)}
    return SuiteResult(name, failure is None, len(instances), len(exhaustive), len(randomized), seed, counterexample)
