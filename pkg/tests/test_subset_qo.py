import itertools
import random

import pytest

from borel_qo.qo_core import PreconditionError
from borel_qo.subset_qo import (
    FreeProductWord,
    G_map,
    K_map,
    K_member,
    K_member_structural,
    bounded_fp_words,
    conj_qo_leq_K,
    conjugate_products,
    embed_finf_to_f2,
    f2_image_preimage,
    f_map,
    fp_multiply,
    fp_normalize,
    generator_at,
    generator_index,
    in_f2_image,
    itsahom_sides,
    itsahom_verify,
    outline_S,
    phi_project,
    random_reduced_word,
    t_edges,
    translate_qo_leq,
    translate_set,
    xw,
)
from borel_qo.trees import FiniteTree, enumerate_trees, random_tree
from borel_qo.words import EMPTY, DegenerateInputError, Word, free_reduce, invert

W = Word.parse


def ab_tree(*nodes):
    return FiniteTree.of(*nodes, alphabet="ab")


def strings(alphabet, max_len):
    return ["".join(p) for n in range(max_len + 1) for p in itertools.product(alphabet, repeat=n)]


def brute_translate(A, B, max_len=3):
    # independent search: intersect all translates g B with A ⊆ gB, g over a ball
    A = frozenset(A)
    inter = None
    for g in (free_reduce(W(s or "-")) for s in strings("abAB", max_len)):
        tB = translate_set(g, B)
        if A <= tB:
            inter = tB if inter is None else inter & tB
    return inter == A


def test_translate_examples():
    A = {W("a"), W("ab")}
    assert translate_qo_leq(A, A) == [EMPTY]
    assert translate_qo_leq({EMPTY}, {EMPTY, W("a")}) == [EMPTY, W("A")]
    assert translate_qo_leq({W("a")}, {EMPTY}) == [W("a")]
    assert translate_qo_leq({EMPTY, W("a")}, {EMPTY, W("b")}) is None
    with pytest.raises(DegenerateInputError):
        translate_qo_leq(set(), {EMPTY})


def test_translate_against_ball_search():
    rng = random.Random(1)
    for _ in range(150):
        A = {random_reduced_word(rng, max_len=1) for _ in range(rng.randint(1, 2))}
        B = {random_reduced_word(rng, max_len=1) for _ in range(rng.randint(1, 3))}
        assert (translate_qo_leq(A, B) is not None) == brute_translate(A, B)


def test_translate_transitive_on_outcomes():
    rng = random.Random(2)
    sets = [frozenset(random_reduced_word(rng, max_len=2) for _ in range(rng.randint(1, 3))) for _ in range(25)]
    for A, B, C in itertools.product(sets[:12], repeat=3):
        g1, g2 = translate_qo_leq(A, B), translate_qo_leq(B, C)
        if g1 is not None and g2 is not None:
            composed = [free_reduce(g * h) for g in g1 for h in g2]
            assert frozenset.intersection(*(translate_set(g, C) for g in composed)) == A
            assert translate_qo_leq(A, C) is not None


def test_t_edges_examples():
    assert t_edges(ab_tree("-")) == ({""}, {""})
    assert t_edges(ab_tree("-", "a")) == ({"a"}, {"", "a"})
    assert t_edges(ab_tree("-", "a", "aa")) == ({"aa"}, {"", "a", "aa"})


def test_outline_examples():
    assert outline_S(ab_tree("-")).nodes == {"", "c", "d"}
    assert outline_S(ab_tree("-", "a")).nodes == {"", "a", "ac", "d", "ad"}


def test_outline_inclusion_forces_equality():
    rng = random.Random(3)
    trees = list(enumerate_trees("ab", 2))
    for _ in range(1000):
        T1 = rng.choice(trees) if rng.random() < 0.5 else random_tree(rng, "ab", 3)
        T2 = T1 if rng.random() < 0.2 else random_tree(rng, "ab", 3)
        if outline_S(T1).nodes <= outline_S(T2).nodes:
            assert T1 == T2


def test_f_map_examples():
    a = W("a")
    assert f_map("a") == {a, xw("a") * a}
    assert f_map("") == {EMPTY}
    expected = {
        W("ab"),
        W("a") * xw("b") * W("b"),
        xw("a") * W("ab"),
        xw("a") * W("a") * xw("b") * W("b"),
        xw("ab") * W("ab"),
    }
    assert f_map("ab") == expected
    with pytest.raises(PreconditionError):
        f_map("aaaaaa")


def test_f_map_sizes():
    # a(n) = 1 + sum over proper splits; deduplicated sizes only depend on length
    sizes = [len(f_map("a" * n)) for n in range(6)]
    assert sizes == [1, 2, 5, 13, 34, 89]


def test_G_of_root():
    assert G_map(ab_tree("-")) == {EMPTY, W("c"), xw("c") * W("c"), W("d"), xw("d") * W("d")}


def test_phi_constant_and_f_disjoint():
    seen = set()
    total = 0
    for w in strings("abcd", 4):
        fw = f_map(w)
        assert all(phi_project(g) == w for g in fw)
        assert _word(w) in fw
        total += len(fw)
        seen |= fw
    assert len(seen) == total


def _word(w):
    return W(w) if w else EMPTY


def test_w_in_f_w_length_five():
    for w in strings("ab", 5):
        assert _word(w) in f_map(w)


def test_phi_examples():
    assert phi_project(xw("a") * W("a") * xw("b") * W("b")) == "ab"
    assert phi_project(EMPTY) == ""


def test_f_prefix_structure():
    for u in strings("abcd", 4):
        for g in f_map(u):
            if not g or not g.letters[0].base.startswith("x["):
                continue
            w = g.letters[0].base[2:-1]
            assert u.startswith(w)
            head = xw(w) * _word(w)
            assert g.letters[: len(head)] == head.letters
            rest = Word(g.letters[len(head) :])
            assert rest in f_map(u[len(w) :])


def test_G_contains_identity():
    for T in enumerate_trees("ab", 2):
        assert EMPTY in G_map(T)


def test_itsahom_examples():
    T = ab_tree("-", "a")
    left, right = itsahom_sides(T, "a")
    assert left == right == translate_set(W("a"), G_map(ab_tree("-")))
    assert itsahom_verify(T, "a")
    with pytest.raises(PreconditionError):
        itsahom_sides(T, "")
    GT = G_map(T)
    assert GT & GT == GT


def test_itsahom_small_trees():
    for T in enumerate_trees("ab", 2):
        for w in T.nodes:
            if 1 <= len(w) <= 2:
                assert itsahom_verify(T, w)


def test_generator_enumeration():
    assert [str(generator_at(i)) for i in range(1, 6)] == ["a", "b", "c", "d", "x[a]"]
    for i in range(1, 200):
        assert generator_index(generator_at(i)) == i


def test_embed_examples():
    assert embed_finf_to_f2(W("a")) == W("abA")
    w = W("aabAA") * W("abA")
    assert in_f2_image(free_reduce(w))
    assert f2_image_preimage(free_reduce(w)) == W("ba")
    assert not in_f2_image(W("ab"))


def test_embed_round_trip_random():
    rng = random.Random(4)
    letters = "abcd"
    for _ in range(200):
        g = random_reduced_word(rng, letters, 4)
        if rng.random() < 0.5:
            g = free_reduce(g * xw(rng.choice(letters)))
        assert f2_image_preimage(embed_finf_to_f2(g)) == g


def test_translate_transported_through_embedding():
    rng = random.Random(5)
    for _ in range(100):
        A = {random_reduced_word(rng, "abcd", 2) for _ in range(rng.randint(1, 2))}
        B = {random_reduced_word(rng, "abcd", 2) for _ in range(rng.randint(1, 3))}
        direct = translate_qo_leq(A, B) is not None
        moved = translate_qo_leq({embed_finf_to_f2(a) for a in A}, {embed_finf_to_f2(b) for b in B}) is not None
        assert direct == moved


def test_K_map_examples():
    h = FreeProductWord.h()
    assert K_map({EMPTY}) == [h]
    assert K_map({W("a")}) == [h.conjugate(W("a"))]
    g = W("ab")
    A = [EMPTY, W("b"), W("Ba")]
    shifted = K_map([free_reduce(g * a) for a in A])
    assert sorted(map(str, shifted)) == sorted(str(k.conjugate(g)) for k in K_map(A))
    with pytest.raises(DegenerateInputError):
        K_map([])


def test_fp_examples():
    a = W("a")
    ah = fp_normalize((a, EMPTY), (1,))
    back = fp_normalize((EMPTY, invert(a)), (-1,))
    assert fp_multiply(ah, back).is_identity()
    assert FreeProductWord.h(5, order=5).is_identity()
    assert FreeProductWord.h(7, order=5) == FreeProductWord.h(2, order=5)
    w = fp_normalize((a, W("b"), EMPTY), (2, -1), 7)
    assert FreeProductWord.from_json(w.to_json(), 7) == w


def random_fp(rng, order):
    t = rng.randint(0, 3)
    gs = [random_reduced_word(rng, max_len=2) for _ in range(t + 1)]
    hs = [rng.choice([1, -1, 2, 3]) for _ in range(t)]
    return fp_normalize(gs, hs, order)


def test_fp_associative_random():
    rng = random.Random(6)
    for i in range(500):
        order = rng.choice([None, 3, 7])
        x, y, z = (random_fp(rng, order) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert (x * x.inverse()).is_identity()


def test_K_member_examples():
    x, g = W("ab"), W("b")
    h = FreeProductWord.h()
    assert K_member(h.conjugate(x), {x}, 1)
    assert K_member(h * h.conjugate(g), {EMPTY, g}, 2)
    assert not K_member(h.conjugate(g), {EMPTY}, 1)
    with pytest.raises(PreconditionError):
        K_member(h * h.conjugate(g), {EMPTY, g}, 1)


def test_K_member_oracles_agree():
    rng = random.Random(7)
    for _ in range(30):
        order = rng.choice([None, 5])
        A = {random_reduced_word(rng, max_len=2) for _ in range(rng.randint(1, 3))}
        pool = A | {random_reduced_word(rng, max_len=2) for _ in range(2)}
        for w in conjugate_products(pool, order, 5):
            assert K_member(w, A, w.h_count()) == K_member_structural(w, A)


def test_K_intersection_identity():
    rng = random.Random(8)
    for _ in range(20):
        A = {random_reduced_word(rng, max_len=1) for _ in range(rng.randint(1, 3))}
        B = {random_reduced_word(rng, max_len=1) for _ in range(rng.randint(1, 3))}
        E = A | B
        pool = {free_reduce(invert(x) * y) for x in E for y in E} | E | {invert(x) for x in E}
        words = bounded_fp_words(pool, None, 5, (1, -1))
        hits = 0
        for w in words:
            both = K_member(w, A, 6) and K_member(w, B, 6)
            meet = K_member(w, A & B, 6) if A & B else w.is_identity()
            assert both == meet
            hits += both
        assert hits >= 1


def test_conj_examples():
    A = {W("a"), W("b")}
    assert conj_qo_leq_K(A, A).witness == [EMPTY]
    assert conj_qo_leq_K({EMPTY}, {EMPTY, W("a")}).witness == [EMPTY, W("A")]
    neg = conj_qo_leq_K({EMPTY, W("a")}, {EMPTY, W("b")})
    assert neg.witness is None and neg.separating is not None
    with pytest.raises(DegenerateInputError):
        conj_qo_leq_K(set(), A)
