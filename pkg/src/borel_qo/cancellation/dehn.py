"""Dehn's algorithm over a symmetrized set, and what it yields: orders and torsion.

A step looks for the leftmost position where some element ``r`` of the
symmetrized set has a prefix ``s`` longer than ``|r|/2``; it takes the
longest such ``s`` there (ties: first relator class in sorted order),
replaces ``s`` by the inverse of the rest of ``r`` and freely reduces.

For a class ``v^n`` with ``n >= 2`` any qualifying ``s`` is longer than
``|v|``, so it starts with a rotation of ``v`` and then continues with
period ``|v|``; a dictionary of root rotations finds those starts.  Classes
with ``n = 1`` are scanned directly.
"""

from __future__ import annotations

from fractions import Fraction

from ..qo_core import PreconditionError
from ..words import Word
from .presentation import SymmetrizedSet

__all__ = [
    "UncertifiedError",
    "dehn_step",
    "dehn_trace",
    "dehn_reduce",
    "dehn_is_identity",
    "word_order_bounded",
    "torsion_classify",
]

SOUND_LAMBDA = Fraction(1, 6)


class UncertifiedError(PreconditionError):
    """Dehn's algorithm was asked to decide triviality without a C'(1/6) certificate."""


def _plan(R: SymmetrizedSet):
    plan = getattr(R, "_dehn_plan", None)
    if plan is None:
        index = R.rotation_index()
        periodic = sorted({c.p for c in R.classes if c.n > 1})
        singles = [(ci, c) for ci, c in enumerate(R.classes) if c.n == 1]
        plan = R._dehn_plan = (index, periodic, singles)
    return plan


def _step(s: str, R: SymmetrizedSet) -> str | None:
    index, periodic, singles = _plan(R)
    classes = R.classes
    n = len(s)
    for i in range(n):
        best = None  # (length, class index, phase)
        for p in periodic:
            if i + p > n:
                break
            hits = index[p].get(s[i : i + p])
            if not hits:
                continue
            j = i + p
            while j < n and s[j] == s[j - p]:
                j += 1
            run = j - i
            for ci, phase in hits:
                c = classes[ci]
                if c.n == 1:
                    continue
                length = min(run, len(c.rel))
                if 2 * length > len(c.rel):
                    cand = (length, -ci, phase)
                    if best is None or cand > best:
                        best = cand
        for ci, c in singles:
            m = len(c.rel)
            doubled = c.rel + c.rel
            for length in range(min(m, n - i), m // 2, -1):
                if best is not None and (length, -ci) < best[:2]:
                    break
                q = doubled.find(s[i : i + length])
                if q >= 0:
                    cand = (length, -ci, q % m)
                    if best is None or cand > best:
                        best = cand
                    break
        if best is not None:
            length, nci, phase = best
            r = classes[-nci].rotation(phase) if classes[-nci].n == 1 else _periodic_rotation(classes[-nci], phase)
            rest = r[length:]
            return R.codec.reduce(s[:i] + R.codec.invert(rest) + s[i + length :])
    return None


def _periodic_rotation(c, phase: int) -> str:
    v = c.root[phase:] + c.root[:phase]
    return v * c.n


def dehn_step(w: Word, R: SymmetrizedSet) -> Word | None:
    """One replacement, or None when ``w`` holds no more than half of any relator."""
    out = _step(R.codec.reduce(R.codec.encode(w)), R)
    return None if out is None else R.codec.decode(out)


def dehn_reduce(w: Word, R: SymmetrizedSet) -> Word:
    """Iterate :func:`dehn_step` to its fixpoint (no certificate needed)."""
    s = R.codec.reduce(R.codec.encode(w))
    while True:
        t = _step(s, R)
        if t is None:
            return R.codec.decode(s)
        s = t


def dehn_trace(w: Word, R: SymmetrizedSet) -> list[Word]:
    s = R.codec.reduce(R.codec.encode(w))
    out = [R.codec.decode(s)]
    while (s := _step(s, R)) is not None:
        out.append(R.codec.decode(s))
    return out


def _require_certified(R: SymmetrizedSet) -> None:
    if R.certified is None or R.certified > SOUND_LAMBDA:
        raise UncertifiedError(
            "relator set is not certified C'(1/6); run check_cprime/certify first"
        )


def _is_identity_str(s: str, R: SymmetrizedSet) -> bool:
    s = R.codec.reduce(s)
    while s:
        t = _step(s, R)
        if t is None:
            return False
        s = t
    return True


def dehn_is_identity(w: Word, R: SymmetrizedSet) -> bool:
    """Triviality of ``w`` in the group; requires a C'(1/6) certificate on ``R``."""
    _require_certified(R)
    return _is_identity_str(R.codec.encode(w), R)


def word_order_bounded(w: Word, R: SymmetrizedSet, max_order: int) -> int | None:
    """Least ``n <= max_order`` with ``w^n`` trivial, decided by Dehn's algorithm."""
    _require_certified(R)
    s = R.codec.encode(w)
    for n in range(1, max_order + 1):
        if _is_identity_str(s * n, R):
            return n
    return None


def torsion_classify(w: Word, R: SymmetrizedSet) -> tuple[Word, Word, int] | None:
    """``(v, v^n, n)`` for the first relator class whose root ``v`` has ``w`` as a rotation of a power.

    ``w`` is cyclically reduced first.  None means no relator root matches.
    """
    s = R.codec.cyclic_core(R.codec.encode(w))
    if not s:
        return None
    for c in R.classes:
        p = c.p
        if len(s) % p:
            continue
        k = (c.root + c.root).find(s[:p])
        if k < 0 or k >= p:
            continue
        if s == s[:p] * (len(s) // p):
            return R.codec.decode(c.root), R.codec.decode(c.rel), c.n
    return None
