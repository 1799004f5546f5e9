"""Doubly periodic two-colour cell grids.

A pattern is stored as one (not necessarily primitive) period rectangle.  The
numpy array is indexed ``[j, i]`` with ``j`` the row (weft) counted upward and
``i`` the column (warp) counted rightward; ``True`` means Dark.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import gcd

import numpy as np

from .isometry import SignedIsometry, cell_maps


class ParseError(ValueError):
    pass


class Colour(Enum):
    Dark = 1
    Pale = 0

    def complement(self) -> Colour:
        return Colour.Pale if self is Colour.Dark else Colour.Dark

    @property
    def char(self) -> str:
        return "#" if self is Colour.Dark else "-"


class Role(Enum):
    Pattern = "pattern"
    Design = "design"


class StrandKind(Enum):
    Warp = "warp"
    Weft = "weft"


@dataclass(frozen=True)
class StrandRef:
    kind: StrandKind
    index: int

    def __str__(self):
        return f"{self.kind.value[0]}{self.index}"


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True, eq=False)
class PeriodicPattern:
    """A two-colour grid extended to the whole plane by periodicity.

    Equality is equality of the infinite pictures, so a pattern equals any
    tiling of itself.
    """

    cells: np.ndarray
    role: Role = Role.Design
    _key: bytes = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        cells = np.array(self.cells, dtype=bool)
        if cells.ndim != 2 or 0 in cells.shape:
            raise ValueError("a pattern needs a non-empty two-dimensional grid")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "_key", cells.tobytes())

    @classmethod
    def from_rows(cls, rows: list[str], role: Role = Role.Design) -> PeriodicPattern:
        """Build from picture rows, top row first (as in the text format)."""
        return parse_pattern("\n".join(rows), role)

    @classmethod
    def uniform(cls, colour: Colour, width: int = 1, height: int = 1) -> PeriodicPattern:
        return cls(np.full((height, width), colour is Colour.Dark))

    @property
    def width(self) -> int:
        return self.cells.shape[1]

    @property
    def height(self) -> int:
        return self.cells.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.width, self.height

    def cell(self, i: int, j: int) -> Colour:
        return Colour.Dark if self.cells[j % self.height, i % self.width] else Colour.Pale

    def as_role(self, role: Role) -> PeriodicPattern:
        return PeriodicPattern(self.cells, role)

    def tile(self, width: int, height: int) -> np.ndarray:
        """Cells of the ``width`` x ``height`` rectangle at the origin."""
        if width % self.width or height % self.height:
            j, i = np.mgrid[0:height, 0:width]
            return self.cells[j % self.height, i % self.width]
        return np.tile(self.cells, (height // self.height, width // self.width))

    def rows(self) -> list[str]:
        """Picture rows, top row (``j = height - 1``) first."""
        return [
            "".join("#" if c else "-" for c in self.cells[j])
            for j in range(self.height - 1, -1, -1)
        ]

    def serialize(self, comments: list[str] | None = None) -> str:
        head = [f"; {c}" if c else ";" for c in comments or []]
        return "\n".join(head + self.rows()) + "\n"

    def primitive(self) -> PeriodicPattern:
        """The same picture on its smallest period rectangle."""
        w = _least_period(self.cells, axis=1)
        h = _least_period(self.cells, axis=0)
        if (w, h) == self.shape:
            return self
        return PeriodicPattern(self.cells[:h, :w], self.role)

    def shifted(self, u: int, v: int) -> PeriodicPattern:
        """The picture moved ``u`` cells right and ``v`` cells up."""
        return PeriodicPattern(np.roll(self.cells, (v, u), axis=(0, 1)), self.role)

    def dark_fraction(self) -> float:
        return float(self.cells.mean())

    def __eq__(self, other):
        if not isinstance(other, PeriodicPattern):
            return NotImplemented
        w = _lcm(self.width, other.width)
        h = _lcm(self.height, other.height)
        return bool(np.array_equal(self.tile(w, h), other.tile(w, h)))

    def __hash__(self):
        return hash(self.primitive()._key)

    def __repr__(self):
        return f"PeriodicPattern({self.width}x{self.height}, {'/'.join(self.rows())})"


def _least_period(cells: np.ndarray, axis: int) -> int:
    n = cells.shape[axis]
    for d in range(1, n + 1):
        if n % d == 0 and np.array_equal(np.roll(cells, d, axis=axis), cells):
            return d
    return n


def parse_pattern(text: str | bytes, role: Role = Role.Design) -> PeriodicPattern:
    """Read the weave-pattern v1 text format.

    Lines starting with ``;`` are comments.  Remaining non-blank lines are the
    picture rows over ``#`` (Dark) and ``-`` (Pale), top row first.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    rows: list[tuple[int, str]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.rstrip("\r")
        if line.startswith(";"):
            continue
        stripped = line.strip()
        if not stripped:
            if rows:
                break
            continue
        for col, ch in enumerate(stripped, start=1):
            if ch not in "#-":
                raise ParseError(f"line {lineno}, column {col}: unexpected character {ch!r}")
        rows.append((lineno, stripped))
    if not rows:
        raise ParseError("no pattern rows found")
    width = len(rows[0][1])
    for lineno, row in rows:
        if len(row) != width:
            raise ParseError(
                f"line {lineno}, column {min(len(row), width) + 1}: ragged row "
                f"(length {len(row)}, expected {width})"
            )
    grid = np.array([[ch == "#" for ch in row] for _, row in reversed(rows)], dtype=bool)
    return PeriodicPattern(grid, role)


def complement(p: PeriodicPattern) -> PeriodicPattern:
    return PeriodicPattern(~p.cells, p.role)


def transform(p: PeriodicPattern, g: SignedIsometry) -> PeriodicPattern:
    """Image of ``p`` under ``g``, complemented when ``g`` acts on colours.

    The result satisfies ``q(g c) = p(c)`` (possibly complemented) for every
    cell ``c``.
    """
    g.validate()
    w, h = (p.height, p.width) if g.swaps else (p.width, p.height)
    ix, iy = cell_maps(g.inverse(), w, h)
    out = p.cells[iy % p.height, ix % p.width]
    if g.colour_action:
        out = ~out
    return PeriodicPattern(out, p.role)


def geometric_image(p: PeriodicPattern, g: SignedIsometry) -> PeriodicPattern:
    """Image of ``p`` under the plane part of ``g`` only (no colour change)."""
    q = transform(p, g)
    return complement(q) if g.colour_action else q


def strand_word(p: PeriodicPattern, s: StrandRef) -> tuple[int, ...]:
    """Raw colour word along a strand over one stored period; 1 = Pale.

    Warps read bottom to top, wefts left to right.
    """
    if s.kind is StrandKind.Warp:
        line = p.cells[:, s.index % p.width]
    else:
        line = p.cells[s.index % p.height, :]
    return tuple(int(not c) for c in line)


def primitive_word(word: tuple[int, ...]) -> tuple[int, ...]:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[d:] + word[:d] == word:
            return word[:d]
    return word


def strand_sequence(p: PeriodicPattern, s: StrandRef) -> tuple[int, ...]:
    """Strand colour word reduced to its primitive cyclic period."""
    return primitive_word(strand_word(p, s))


def strands(p: PeriodicPattern) -> list[StrandRef]:
    return [StrandRef(StrandKind.Warp, i) for i in range(p.width)] + [
        StrandRef(StrandKind.Weft, j) for j in range(p.height)
    ]


@dataclass(frozen=True)
class OrderResult:
    order: int
    uniform: bool

    def __int__(self):
        return self.order


def order_info(p: PeriodicPattern) -> OrderResult:
    """Common strand period, with a flag telling whether all strands agree."""
    periods = {len(strand_sequence(p, s)) for s in strands(p)}
    order = 1
    for d in periods:
        order = _lcm(order, d)
    return OrderResult(order, len(periods) == 1)


def order_of(p: PeriodicPattern) -> int:
    return order_info(p).order
