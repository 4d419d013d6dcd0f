import itertools
import random

import pytest

from borel_qo.qo_core import (
    FiniteMonoidAction,
    FiniteRelation,
    PreconditionError,
    act,
    disjoint_union,
    enumerate_quasi_orders,
    fm_decompose,
    full_relation,
    identity_relation,
    is_antisymmetric,
    is_equivalence,
    is_quasi_order,
    meet_with_order,
    orbit_qo,
    random_equivalence,
    random_linear_order,
    random_quasi_order,
    shift_embed,
    symmetrize_EQ,
    verify_reduction,
)


def rel(n, pairs):
    return FiniteRelation(n, frozenset(pairs))


def reflexive(n, pairs):
    return rel(n, set(pairs) | {(i, i) for i in range(n)})


def brute_count_quasi_orders(n):
    # independent of the library: raw bitmask enumeration
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    count = 0
    for mask in range(1 << len(off)):
        s = {p for k, p in enumerate(off) if mask >> k & 1} | {(i, i) for i in range(n)}
        if all((a, d) in s for a, b in s for c, d in s if b == c):
            count += 1
    return count


def test_is_quasi_order_examples():
    assert is_quasi_order(identity_relation(4))
    assert not is_quasi_order(rel(2, {(0, 1)}))
    assert not is_quasi_order(reflexive(3, {(0, 1), (1, 2)}))
    assert is_quasi_order(reflexive(3, {(0, 1), (1, 2), (0, 2)}))


def test_relation_range_checked():
    with pytest.raises(ValueError):
        rel(2, {(0, 2)})


def test_json_round_trip():
    R = reflexive(3, {(0, 1)})
    assert FiniteRelation.from_json(R.to_json()) == R
    A = FiniteMonoidAction(3, ((0, 0, 1),))
    assert FiniteMonoidAction.from_json(A.to_json()) == A


def test_symmetrize_examples():
    lin = reflexive(2, {(0, 1)})
    assert symmetrize_EQ(lin) == identity_relation(2)
    assert symmetrize_EQ(full_relation(3)) == full_relation(3)
    with pytest.raises(PreconditionError):
        symmetrize_EQ(rel(2, {(0, 1)}))


def test_symmetrize_random_against_transpose():
    rng = random.Random(1)
    for _ in range(100):
        Q = random_quasi_order(5, rng)
        expected = {(i, j) for i, j in Q.pairs if (j, i) in Q.pairs}
        E = symmetrize_EQ(Q)
        assert E.pairs == expected
        assert is_equivalence(E)


def test_fm_decompose_examples():
    assert fm_decompose(identity_relation(3)).generators == ((0, 1, 2),)
    chain = reflexive(2, {(0, 1)})
    A = fm_decompose(chain)
    # predecessors of 1 are [0, 1]; of 0 are [0]
    assert set(A.generators) == {(0, 1), (0, 0)}
    with pytest.raises(PreconditionError):
        fm_decompose(rel(2, {(0, 1)}))


def test_quasi_orders_on_three_points_round_trip():
    qos = list(enumerate_quasi_orders(3))
    assert len(qos) == brute_count_quasi_orders(3) == 29
    for Q in qos:
        assert orbit_qo(fm_decompose(Q)) == Q


def test_fm_round_trip_random():
    rng = random.Random(2)
    for _ in range(200):
        Q = random_quasi_order(5, rng, density=rng.random() * 0.5)
        back = orbit_qo(fm_decompose(Q))
        assert back == Q
        assert verify_reduction(list(range(5)), Q, back)


def test_orbit_qo_examples():
    assert orbit_qo(FiniteMonoidAction(3, ())) == identity_relation(3)
    assert orbit_qo(FiniteMonoidAction(2, ((0, 0),))).pairs == {(0, 0), (1, 1), (0, 1)}


def test_orbit_qo_is_quasi_order_random():
    rng = random.Random(3)
    for _ in range(50):
        gens = tuple(tuple(rng.randrange(4) for _ in range(4)) for _ in range(rng.randint(0, 3)))
        assert is_quasi_order(orbit_qo(FiniteMonoidAction(4, gens)))


def test_action_rejects_bad_tables():
    with pytest.raises(ValueError):
        FiniteMonoidAction(2, ((0, 2),))
    with pytest.raises(ValueError):
        FiniteMonoidAction(2, ((0,),))


def test_shift_embed():
    A = FiniteMonoidAction(3, ((1, 2, 0), (0, 0, 0)))
    assert shift_embed(A, 2, ()) == [0, 0, 1]
    for x, y in itertools.combinations(range(3), 2):
        assert shift_embed(A, x, ()) != shift_embed(A, y, ())
    with pytest.raises(IndexError):
        shift_embed(A, 0, (7,))


def test_shift_embed_equivariant_random():
    rng = random.Random(4)
    for _ in range(20):
        gens = tuple(tuple(rng.randrange(4) for _ in range(4)) for _ in range(2))
        A = FiniteMonoidAction(4, gens)
        k = len(A.generators)
        for x in range(4):
            for t in range(k):
                tx = A.generators[t][x]
                for n in range(5):
                    for s in itertools.product(range(k), repeat=n):
                        # s.t acts by t first
                        assert shift_embed(A, tx, s) == shift_embed(A, x, s + (t,))


def test_act_order():
    A = FiniteMonoidAction(3, ((1, 2, 0), (0, 0, 0)))
    # generators[0] is the inserted identity
    assert act(A, (1, 2), 0) == A.generators[1][A.generators[2][0]]


def test_meet_with_order_examples():
    lin = reflexive(2, {(0, 1)})
    assert meet_with_order(identity_relation(2), lin) == identity_relation(2)
    assert meet_with_order(full_relation(2), lin).pairs == {(0, 0), (1, 1), (0, 1)}
    with pytest.raises(PreconditionError):
        meet_with_order(lin, lin)
    with pytest.raises(PreconditionError):
        meet_with_order(full_relation(2), full_relation(2))


def test_meet_with_order_symmetrizes_to_diagonal():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(2, 7)
        E = random_equivalence(n, rng, min_class=2)
        L = random_linear_order(n, rng)
        M = meet_with_order(E, L)
        assert is_quasi_order(M) and is_antisymmetric(M)
        assert symmetrize_EQ(M) == identity_relation(n)


def test_disjoint_union():
    R = disjoint_union(reflexive(2, {(0, 1)}), full_relation(2))
    assert R.size == 4
    assert is_quasi_order(R)
    assert not any(i < 2 <= j or j < 2 <= i for i, j in R.pairs)


def test_verify_reduction_examples():
    Q = reflexive(2, {(0, 1)})
    assert verify_reduction(lambda x: x, Q, Q)
    bad = verify_reduction(lambda x: 0, Q, identity_relation(1))
    assert not bad.ok
    assert bad.counterexample == (1, 0)
