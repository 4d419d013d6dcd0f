import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from borel_qo.monoid_shift import (
    FiniteSupportBitmap,
    L_len,
    bar_map,
    bar_set,
    canonical_split,
    decode_momega,
    embed_momega,
    format_momega,
    parse_momega,
    prefix_qo_leq,
    shift_act_eval,
    shift_bitmap,
    star_eval,
    suffix_qo_leq,
)
from borel_qo.words import DegenerateInputError

m2 = st.text(alphabet="ab", max_size=10)
momega = st.lists(st.integers(1, 4), max_size=4).map(tuple)


def in_image(s):
    # regex-free oracle: s is a concatenation of blocks a b^n, n >= 1
    if not s:
        return True
    if s[0] != "a":
        return False
    parts = s[1:].split("a")
    return all(p and set(p) == {"b"} for p in parts)


def split_oracle(h):
    for i in range(len(h) + 1):
        if in_image(h[i:]):
            return h[:i], h[i:]


def test_embed_examples():
    assert embed_momega((3,)) == "abbb"
    assert embed_momega(()) == ""
    assert embed_momega((1, 2)) == "ababb"
    with pytest.raises(ValueError):
        embed_momega((0,))


def test_momega_text_round_trip():
    assert parse_momega("x1x12") == (1, 12)
    assert format_momega((1, 12)) == "x1x12"
    assert format_momega(()) == "-"


@given(momega)
def test_embed_decode_round_trip(g):
    assert decode_momega(embed_momega(g)) == g


def test_embed_injective_small():
    seen = {}
    for n in range(4):
        for g in itertools.product(range(1, 4), repeat=n):
            h = embed_momega(g)
            assert h not in seen
            seen[h] = g


def test_canonical_split_examples():
    assert canonical_split("abb") == ("", "abb")
    assert canonical_split("b") == ("b", "")
    assert canonical_split("babb") == ("b", "abb")
    assert L_len("abbb") == 0
    assert L_len("b") == 1
    assert L_len("bb") == 2


@given(m2)
def test_canonical_split_matches_oracle(h):
    assert canonical_split(h) == split_oracle(h)


def test_L_invariant_under_right_multiplication():
    rng = random.Random(1)
    for _ in range(200):
        h = "".join(rng.choice("ab") for _ in range(rng.randint(0, 8)))
        g = tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 3)))
        assert L_len(h + embed_momega(g)) == L_len(h)


def test_star_eval_examples():
    p = FiniteSupportBitmap({(1,)})
    assert star_eval(p, "ab") == 1
    assert star_eval(p, "b") == 1
    assert star_eval(p, "bb") == 0
    assert star_eval(p, "abb") == 0


def test_shift_act_examples():
    q = FiniteSupportBitmap({(1,)})
    assert shift_act_eval((), q, (1,)) == q((1,))
    assert shift_act_eval((2,), q, ()) == 0
    assert shift_act_eval("b", lambda h: int(h == "ab"), "a") == 1


def test_star_equivariance_random():
    rng = random.Random(2)
    all_h = ["".join(t) for n in range(9) for t in itertools.product("ab", repeat=n)]
    for _ in range(20):
        p = FiniteSupportBitmap(
            {tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 3))) for _ in range(rng.randint(1, 4))}
        )
        g = tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 3)))
        gp = shift_bitmap(g, p)
        for h in all_h:
            left = star_eval(gp, h)
            right = shift_act_eval(embed_momega(g), lambda x: star_eval(p, x), h)
            assert left == right


def test_shift_bitmap_matches_pointwise():
    p = FiniteSupportBitmap({(1, 2), (2,), (3, 1, 2)})
    gp = shift_bitmap((2,), p)
    for n in range(3):
        for s in itertools.product(range(1, 4), repeat=n):
            assert gp(s) == shift_act_eval((2,), p, s)


def brute_suffix(A, B, max_len=6):
    # search every word up to max_len, not just suffixes of B
    for n in range(max_len + 1):
        for t in itertools.product("ab", repeat=n):
            m = "".join(t)
            if {a + m for a in A} == {b for b in B if b.endswith(m)}:
                return True
    return False


def test_suffix_prefix_examples():
    assert suffix_qo_leq({"ab", "b"}, {"ab", "b"}) == ""
    assert prefix_qo_leq({"ab", "b"}, {"ab", "b"}) == ""
    assert suffix_qo_leq({""}, {"a"}) == "a"
    assert prefix_qo_leq({""}, {"a"}) == "a"
    assert suffix_qo_leq({"a"}, {"b"}) is None
    with pytest.raises(DegenerateInputError):
        suffix_qo_leq(set(), {"a"})
    with pytest.raises(DegenerateInputError):
        prefix_qo_leq(set(), {"a"})


def random_set(rng, max_len=3, max_size=3):
    return {"".join(rng.choice("ab") for _ in range(rng.randint(0, max_len))) for _ in range(rng.randint(1, max_size))}


def test_suffix_witness_complete_and_sound():
    rng = random.Random(3)
    for _ in range(300):
        A, B = random_set(rng, 2), random_set(rng)
        m = suffix_qo_leq(A, B)
        assert (m is not None) == brute_suffix(A, B)
        if m is not None:
            assert {a + m for a in A} == {b for b in B if b.endswith(m)}


def test_bar_examples():
    assert bar_map("") == ""
    assert bar_map("aabbba") == "abbbaa"


@given(m2)
def test_bar_involution(w):
    assert bar_map(bar_map(w)) == w


def test_bar_involution_random():
    rng = random.Random(4)
    for _ in range(500):
        w = "".join(rng.choice("ab") for _ in range(rng.randint(0, 12)))
        assert bar_map(bar_map(w)) == w


def test_bar_transports_suffix_to_prefix():
    rng = random.Random(5)
    for _ in range(500):
        A, B = random_set(rng), random_set(rng)
        m = suffix_qo_leq(A, B)
        m2_ = prefix_qo_leq(bar_set(A), bar_set(B))
        assert (m is None) == (m2_ is None)
        if m is not None:
            bm = bar_map(m)
            assert {bm + a for a in bar_set(A)} == {b for b in bar_set(B) if b.startswith(bm)}
