"""Finite quasi-orders, monoid actions realizing them, and reduction checks.

Points of a relation of size ``n`` are ``0 .. n-1``; a pair ``(i, j)`` means
``i`` is below ``j``.  A monoid action is given by generator function tables,
and the quasi-order it induces relates ``x`` below ``y`` when some composite
of generators sends ``y`` to ``x``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Sequence

__all__ = [
    "PreconditionError",
    "FiniteRelation",
    "FiniteMonoidAction",
    "ReductionCheck",
    "identity_relation",
    "full_relation",
    "is_reflexive",
    "is_transitive",
    "is_quasi_order",
    "is_equivalence",
    "is_antisymmetric",
    "is_linear_order",
    "transpose",
    "symmetrize_EQ",
    "fm_decompose",
    "monoid_closure",
    "orbit_qo",
    "act",
    "shift_embed",
    "meet_with_order",
    "disjoint_union",
    "verify_reduction",
    "enumerate_quasi_orders",
    "random_quasi_order",
    "random_equivalence",
    "random_linear_order",
]


class PreconditionError(ValueError):
    """An input does not satisfy the operation's precondition."""


@dataclass(frozen=True)
class FiniteRelation:
    size: int
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", frozenset((int(i), int(j)) for i, j in self.pairs))
        for i, j in self.pairs:
            if not (0 <= i < self.size and 0 <= j < self.size):
                raise ValueError(f"pair {(i, j)} out of range for size {self.size}")

    def __contains__(self, pair: tuple[int, int]) -> bool:
        return pair in self.pairs

    def holds(self, i: int, j: int) -> bool:
        return (i, j) in self.pairs

    def to_json(self) -> dict:
        return {"size": self.size, "pairs": [list(p) for p in sorted(self.pairs)]}

    @classmethod
    def from_json(cls, data: Mapping) -> FiniteRelation:
        return cls(int(data["size"]), frozenset(tuple(p) for p in data["pairs"]))


@dataclass(frozen=True)
class FiniteMonoidAction:
    """Generator tables of a monoid acting on ``0 .. size-1``.

    Table ``t`` sends point ``y`` to ``t[y]``.  The identity table is always
    included (added at construction if missing).
    """

    size: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        tables = []
        ident = tuple(range(self.size))
        for t in self.generators:
            t = tuple(int(v) for v in t)
            if len(t) != self.size or any(not 0 <= v < self.size for v in t):
                raise ValueError(f"bad generator table {t} for size {self.size}")
            tables.append(t)
        if ident not in tables:
            tables.insert(0, ident)
        object.__setattr__(self, "generators", tuple(tables))

    def to_json(self) -> dict:
        return {"size": self.size, "generators": [list(t) for t in self.generators]}

    @classmethod
    def from_json(cls, data: Mapping) -> FiniteMonoidAction:
        return cls(int(data["size"]), tuple(tuple(t) for t in data["generators"]))


def identity_relation(n: int) -> FiniteRelation:
    return FiniteRelation(n, frozenset((i, i) for i in range(n)))


def full_relation(n: int) -> FiniteRelation:
    return FiniteRelation(n, frozenset(itertools.product(range(n), repeat=2)))


def is_reflexive(R: FiniteRelation) -> bool:
    return all((i, i) in R.pairs for i in range(R.size))


def is_transitive(R: FiniteRelation) -> bool:
    succ: dict[int, set[int]] = {}
    for i, j in R.pairs:
        succ.setdefault(i, set()).add(j)
    for i, j in R.pairs:
        if not succ.get(j, set()) <= succ[i]:
            return False
    return True


def is_quasi_order(R: FiniteRelation) -> bool:
    return is_reflexive(R) and is_transitive(R)


def is_antisymmetric(R: FiniteRelation) -> bool:
    return all(i == j or (j, i) not in R.pairs for i, j in R.pairs)


def is_equivalence(R: FiniteRelation) -> bool:
    return is_quasi_order(R) and all((j, i) in R.pairs for i, j in R.pairs)


def is_linear_order(R: FiniteRelation) -> bool:
    if not (is_quasi_order(R) and is_antisymmetric(R)):
        return False
    return all((i, j) in R.pairs or (j, i) in R.pairs for i, j in itertools.combinations(range(R.size), 2))


def transpose(R: FiniteRelation) -> FiniteRelation:
    return FiniteRelation(R.size, frozenset((j, i) for i, j in R.pairs))


def symmetrize_EQ(Q: FiniteRelation) -> FiniteRelation:
    """The equivalence relation ``Q ∩ Q^-1`` of a quasi-order."""
    if not is_quasi_order(Q):
        raise PreconditionError("symmetrize_EQ needs a quasi-order")
    return FiniteRelation(Q.size, frozenset(p for p in Q.pairs if (p[1], p[0]) in Q.pairs))


def fm_decompose(Q: FiniteRelation) -> FiniteMonoidAction:
    """Generators whose monoid induces ``Q``.

    Generator ``k`` sends ``y`` to its ``k``-th predecessor (ascending index)
    when there is one and fixes ``y`` otherwise.  Duplicate tables are dropped.
    """
    if not is_quasi_order(Q):
        raise PreconditionError("fm_decompose needs a quasi-order")
    n = Q.size
    preds = [sorted(x for x in range(n) if (x, y) in Q.pairs) for y in range(n)]
    width = max((len(p) for p in preds), default=0)
    tables: list[tuple[int, ...]] = [tuple(range(n))]
    for k in range(width):
        t = tuple(preds[y][k] if k < len(preds[y]) else y for y in range(n))
        if t not in tables:
            tables.append(t)
    return FiniteMonoidAction(n, tuple(tables))


def _compose(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
    # (f . g)(y) = f(g(y))
    return tuple(f[v] for v in g)


def monoid_closure(A: FiniteMonoidAction) -> set[tuple[int, ...]]:
    """All composites of generator tables (worklist, dedup by table)."""
    seen = set(A.generators)
    work = list(A.generators)
    while work:
        m = work.pop()
        for g in A.generators:
            c = _compose(g, m)
            if c not in seen:
                seen.add(c)
                work.append(c)
    return seen


def orbit_qo(A: FiniteMonoidAction) -> FiniteRelation:
    monoid = monoid_closure(A)
    return FiniteRelation(A.size, frozenset((m[y], y) for m in monoid for y in range(A.size)))


def act(A: FiniteMonoidAction, s: Sequence[int], x: int) -> int:
    """``s . x`` for a word ``s`` of generator indices; the last letter acts first."""
    for k in reversed(s):
        if not 0 <= k < len(A.generators):
            raise IndexError(f"generator index {k} out of range")
        x = A.generators[k][x]
    return x


def shift_embed(A: FiniteMonoidAction, x: int, s: Sequence[int]) -> list[int]:
    """Indicator vector of ``s . x`` (singletons as the separating family)."""
    target = act(A, s, x)
    return [1 if i == target else 0 for i in range(A.size)]


def meet_with_order(E: FiniteRelation, order: FiniteRelation) -> FiniteRelation:
    if E.size != order.size:
        raise PreconditionError("relations live on different point sets")
    if not is_equivalence(E):
        raise PreconditionError("first argument must be an equivalence relation")
    if not is_linear_order(order):
        raise PreconditionError("second argument must be a linear order")
    return FiniteRelation(E.size, E.pairs & order.pairs)


def disjoint_union(R1: FiniteRelation, R2: FiniteRelation) -> FiniteRelation:
    """Place ``R2`` on points ``R1.size ..``; no pairs cross the blocks."""
    shift = R1.size
    return FiniteRelation(
        R1.size + R2.size,
        R1.pairs | frozenset((i + shift, j + shift) for i, j in R2.pairs),
    )


@dataclass(frozen=True)
class ReductionCheck:
    ok: bool
    counterexample: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_reduction(
    f: Callable[[int], int] | Sequence[int] | Mapping[int, int],
    Q: FiniteRelation,
    Q2: FiniteRelation,
) -> ReductionCheck:
    """Check ``x Q y <=> f(x) Q2 f(y)`` over all pairs; report the first failure."""
    fx = f if callable(f) else (lambda x, _f=f: _f[x])
    image = [fx(x) for x in range(Q.size)]
    for x, y in itertools.product(range(Q.size), repeat=2):
        if ((x, y) in Q.pairs) != ((image[x], image[y]) in Q2.pairs):
            return ReductionCheck(False, (x, y))
    return ReductionCheck(True)


def enumerate_quasi_orders(n: int) -> Iterator[FiniteRelation]:
    """Every quasi-order on ``n`` labeled points (filtering reflexive relations)."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    diag = frozenset((i, i) for i in range(n))
    for bits in itertools.product((0, 1), repeat=len(off)):
        R = FiniteRelation(n, diag | frozenset(p for p, b in zip(off, bits) if b))
        if is_transitive(R):
            yield R


def _closure(n: int, pairs: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    reach = [[i == j for j in range(n)] for i in range(n)]
    for i, j in pairs:
        reach[i][j] = True
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                row_k = reach[k]
                row_i = reach[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return frozenset((i, j) for i in range(n) for j in range(n) if reach[i][j])


def random_quasi_order(n: int, rng: random.Random, density: float = 0.3) -> FiniteRelation:
    seeds = [(i, j) for i in range(n) for j in range(n) if i != j and rng.random() < density]
    return FiniteRelation(n, _closure(n, seeds))


def random_equivalence(n: int, rng: random.Random, min_class: int = 1) -> FiniteRelation:
    """Random equivalence on ``n`` points whose classes all have >= ``min_class`` points."""
    if n < min_class:
        raise PreconditionError("too few points for the requested class size")
    points = list(range(n))
    rng.shuffle(points)
    classes: list[list[int]] = []
    rest = points
    while rest:
        if len(rest) < 2 * min_class:
            size = len(rest)
        else:
            size = rng.randint(min_class, len(rest) - min_class)
        classes.append(rest[:size])
        rest = rest[size:]
    return FiniteRelation(n, frozenset((i, j) for c in classes for i in c for j in c))


def random_linear_order(n: int, rng: random.Random) -> FiniteRelation:
    perm = list(range(n))
    rng.shuffle(perm)
    rank = {p: r for r, p in enumerate(perm)}
    return FiniteRelation(n, frozenset((i, j) for i in range(n) for j in range(n) if rank[i] <= rank[j]))
