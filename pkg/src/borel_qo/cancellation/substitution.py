"""The substitutions ``f_0``, ``f_1`` on ``F(x, y)`` and their composites ``f_w``.

``f_w = f_{w[0]} o f_{w[1]} o ...``, so the last index acts first.  Images are
kept as strings over ``x y X Y`` (upper case = inverse).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..words import Word

__all__ = [
    "SubstitutionMap",
    "F0",
    "F1",
    "XY",
    "image_string",
    "subst_apply",
    "subst_string",
    "block_parse",
    "block_parse_string",
    "index_strings",
]

XY = ("x", "y")
_INV = str.maketrans("xyXY", "XYxy")


def _inv(s: str) -> str:
    return s[::-1].translate(_INV)


@dataclass(frozen=True)
class SubstitutionMap:
    """Images of ``x`` and ``y``; inverses map to formal inverses."""

    x: str
    y: str

    def __post_init__(self) -> None:
        for s in (self.x, self.y):
            if not s or any(c not in "xyXY" for c in s):
                raise ValueError(f"image {s!r} is not a nonempty word over x, y")

    @classmethod
    def of(cls, x: Word | str, y: Word | str) -> SubstitutionMap:
        return cls(_to_str(x), _to_str(y))

    def table(self) -> dict[str, str]:
        return {"x": self.x, "y": self.y, "X": _inv(self.x), "Y": _inv(self.y)}


F0 = SubstitutionMap("xxxxxy", "yyyyyx")
F1 = SubstitutionMap("xxyxyx", "yyxyxy")
_BASE = {"0": F0, "1": F1}


def _to_str(w: Word | str) -> str:
    if isinstance(w, str):
        return "" if w == "-" else w
    out = []
    for l in w.letters:
        if l.base not in XY:
            raise ValueError(f"letter {l} is not x or y")
        out.append(l.base if l.sign > 0 else l.base.upper())
    return "".join(out)


@lru_cache(maxsize=None)
def _table(w: str) -> dict[str, str]:
    if not w:
        return {c: c for c in "xyXY"}
    if any(c not in "01" for c in w):
        raise ValueError(f"index string {w!r} is not binary")
    outer = _BASE[w[0]].table()
    inner = _table(w[1:])
    return {c: "".join(outer[d] for d in inner[c]) for c in "xyXY"}


def image_string(w: str, letter: str) -> str:
    """``f_w(letter)`` for ``letter`` in ``x y X Y``."""
    return _table(w)[letter]


def subst_string(m: SubstitutionMap | str, s: str) -> str:
    table = m.table() if isinstance(m, SubstitutionMap) else _table(m)
    return "".join(table[c] for c in s)


def subst_apply(m: SubstitutionMap | str, word: Word | str) -> Word:
    """Homomorphic image of ``word``; ``m`` is a map or an index string ``w``."""
    return Word.parse(subst_string(m, _to_str(word)) or "-")


def block_parse_string(s: str, u: str) -> str | None:
    table = _table(u)
    by_first = {table[c][0]: (table[c], c) for c in "xyXY"}
    out = []
    i = 0
    while i < len(s):
        hit = by_first.get(s[i])
        if hit is None or not s.startswith(hit[0], i):
            return None
        out.append(hit[1])
        i += len(hit[0])
    return "".join(out)


def block_parse(word: Word | str, u: str) -> Word | None:
    """Split into ``f_u``-blocks, each chosen by its first letter; the preimage or None."""
    out = block_parse_string(_to_str(word), u)
    return None if out is None else Word.parse(out or "-")


def index_strings(max_len: int) -> list[str]:
    """All binary strings of length <= max_len, shortlex."""
    out = [""]
    layer = [""]
    for _ in range(max_len):
        layer = [s + c for s in layer for c in "01"]
        out.extend(layer)
    return out
