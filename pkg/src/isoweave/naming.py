"""Catalogue names ``order-index-seq`` and canonical forms of designs."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .isometry import Point, SignedIsometry
from .pattern import PeriodicPattern, primitive_word, strand_word, strands, transform


class NamingRefused(ValueError):
    pass


@dataclass(frozen=True, order=True)
class DesignName:
    order: int
    index: int
    seq: int = 1
    falls_apart: bool = False

    def __str__(self):
        return f"{self.order}-{self.index}-{self.seq}" + ("*" if self.falls_apart else "")

    @classmethod
    def parse(cls, text: str) -> DesignName:
        text = text.strip()
        star = text.endswith("*")
        parts = text.rstrip("*").split("-")
        if len(parts) != 3:
            raise ValueError(f"not a design name: {text!r}")
        order, index, seq = (int(x) for x in parts)
        return cls(order, index, seq, star)

    @property
    def stem(self) -> str:
        """Name without the sequence number, e.g. ``12-69*``."""
        return f"{self.order}-{self.index}" + ("*" if self.falls_apart else "")


def word_value(word) -> int:
    """Binary value of a word, first letter most significant."""
    v = 0
    for b in word:
        v = 2 * v + b
    return v


def word_variants(word) -> set[tuple[int, ...]]:
    """All rotations of a word, its reversal and their complements."""
    out = set()
    n = len(word)
    for w in (tuple(word), tuple(reversed(word))):
        for c in (w, tuple(1 - b for b in w)):
            for k in range(n):
                out.add(c[k:] + c[:k])
    return out


def minimal_index(word) -> int:
    return min(word_value(w) for w in word_variants(word))


def is_palindromic(word) -> bool:
    """Equal to its own reversal up to rotation."""
    n = len(word)
    rev = tuple(reversed(word))
    w = tuple(word)
    return any(rev[k:] + rev[:k] == w for k in range(n))


def index_word(index: int, order: int) -> tuple[int, ...]:
    return tuple(int(c) for c in format(index, f"0{order}b"))


def binary_index(p: PeriodicPattern) -> tuple[int, int]:
    """``(order, index)`` of an isonemal design.

    Raises NamingRefused unless every strand carries the same word up to
    rotation, reversal and complementation.
    """
    q = p.primitive()
    words = {primitive_word(strand_word(q, s)) for s in strands(q)}
    lengths = {len(w) for w in words}
    if len(lengths) != 1:
        raise NamingRefused("strands have different periods: design is not isonemal")
    indices = {minimal_index(w) for w in words}
    if len(indices) != 1:
        raise NamingRefused("strands carry different sequences: design is not isonemal")
    return lengths.pop(), indices.pop()


SIGNED_POINTS = tuple(SignedIsometry(pt, (0, 0), tau) for pt in Point for tau in (False, True))


@lru_cache(maxsize=64)
def _shift_index(h: int, w: int) -> np.ndarray:
    """Row ``k`` lists the flat indices of the grid translated by shift ``k``."""
    j, i = np.mgrid[0:h, 0:w]
    v, u = np.mgrid[0:h, 0:w]
    rows = (j[None, :, :] + v.reshape(-1, 1, 1)) % h
    cols = (i[None, :, :] + u.reshape(-1, 1, 1)) % w
    return (rows * w + cols).reshape(h * w, h * w)


def _min_rotation_bytes(cells: np.ndarray) -> bytes:
    h, w = cells.shape
    shifted = cells.ravel()[_shift_index(h, w)]
    packed = np.packbits(shifted, axis=1)
    order = np.lexsort(packed.T[::-1])
    return shifted[order[0]].tobytes()


def canonical_key(p: PeriodicPattern) -> tuple[int, int, bytes]:
    """Least serialization over translations, the 16 signed point parts and complement.

    Two designs have the same key exactly when one is the image of the other
    under some signed isometry (which includes viewing from behind).
    """
    q = p.primitive()
    best = None
    for g in SIGNED_POINTS:
        r = transform(q, g).primitive()
        key = (r.height, r.width, _min_rotation_bytes(r.cells))
        if best is None or key < best:
            best = key
    return best


def canonical_pattern(p: PeriodicPattern) -> PeriodicPattern:
    h, w, raw = canonical_key(p)
    return PeriodicPattern(np.frombuffer(raw, dtype=bool).reshape(h, w))


def canonical_name(
    p: PeriodicPattern,
    falls_apart: bool,
    bucket=None,
    aliases=None,
) -> DesignName:
    """Catalogue name of an isonemal design.

    ``seq`` is the 1-based rank of the design's canonical key among the keys of
    ``bucket`` (designs sharing order, index and asterisk).  Without a bucket,
    the bundled alias table is consulted; failing that ``seq`` is 1.
    """
    order, index = binary_index(p)
    seq = 1
    if bucket is not None:
        keys = sorted({canonical_key(b) for b in bucket} | {canonical_key(p)})
        seq = keys.index(canonical_key(p)) + 1
    else:
        if aliases is None:
            from .registry import known_names

            aliases = known_names()
        hit = aliases.get(canonical_key(p))
        if hit is not None and hit.order == order and hit.index == index:
            seq = hit.seq
    return DesignName(order, index, seq, falls_apart)
