"""Signed grid isometries in doubled-integer coordinates.

Cells are the unit squares ``[i, i+1] x [j, j+1]``.  Every point that matters
(cell centres, corners, side midpoints, axis intercepts) lies in ``1/2 Z^2``,
so all geometry here is stored multiplied by two.  The centre of cell
``(i, j)`` is ``(2i + 1, 2j + 1)``.

An isometry ``X -> A X + t`` maps cells to cells exactly when both components
of ``t`` are even.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np


class InvalidIsometry(ValueError):
    pass


class Point(Enum):
    """The eight point operations of the square grid."""

    Id = 0
    R90 = 1
    R180 = 2
    R270 = 3
    MirX = 4  # x -> -x, vertical mirror line
    MirY = 5  # y -> -y, horizontal mirror line
    MirDiagUp = 6  # (x, y) -> (y, x), axis of slope +1
    MirDiagDown = 7  # (x, y) -> (-y, -x), axis of slope -1

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return _MATRICES[self.value]

    @property
    def swaps(self) -> bool:
        """True when warps are carried onto wefts."""
        return self in _SWAPPING

    @property
    def is_rotation(self) -> bool:
        return self in (Point.R90, Point.R180, Point.R270)

    @property
    def is_reflection(self) -> bool:
        return self.value >= 4

    @property
    def is_diagonal(self) -> bool:
        return self in (Point.MirDiagUp, Point.MirDiagDown)


_MATRICES = (
    ((1, 0), (0, 1)),
    ((0, -1), (1, 0)),
    ((-1, 0), (0, -1)),
    ((0, 1), (-1, 0)),
    ((-1, 0), (0, 1)),
    ((1, 0), (0, -1)),
    ((0, 1), (1, 0)),
    ((0, -1), (-1, 0)),
)
_SWAPPING = frozenset({Point.R90, Point.R270, Point.MirDiagUp, Point.MirDiagDown})
_BY_MATRIX = {m: Point(k) for k, m in enumerate(_MATRICES)}


def _matmul(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def compose_points(a: Point, b: Point) -> Point:
    """Point part of ``a`` after ``b``."""
    return _BY_MATRIX[_matmul(a.matrix, b.matrix)]


def apply_matrix(m, x: int, y: int) -> tuple[int, int]:
    return m[0][0] * x + m[0][1] * y, m[1][0] * x + m[1][1] * y


@dataclass(frozen=True)
class SignedIsometry:
    """A plane isometry of the cell grid, optionally combined with side reversal.

    ``translation`` is in doubled coordinates.  ``tau`` marks reflection in the
    plane of the fabric (turning it over).
    """

    point: Point
    translation: tuple[int, int] = (0, 0)
    tau: bool = False

    def __post_init__(self):
        tx, ty = self.translation
        object.__setattr__(self, "translation", (int(tx), int(ty)))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (self.point.value, int(self.tau), self.translation)

    @property
    def swaps(self) -> bool:
        return self.point.swaps

    @property
    def colour_action(self) -> bool:
        """True when a design's colours are complemented by this operation."""
        return self.point.swaps != self.tau

    @property
    def is_translation(self) -> bool:
        return self.point is Point.Id

    def validate(self) -> SignedIsometry:
        tx, ty = self.translation
        if tx % 2 or ty % 2:
            raise InvalidIsometry(
                f"translation {self.translation} does not carry cells onto cells"
            )
        return self

    def apply(self, x: int, y: int) -> tuple[int, int]:
        """Image of the doubled-coordinate point ``(x, y)``."""
        ax, ay = apply_matrix(self.point.matrix, x, y)
        return ax + self.translation[0], ay + self.translation[1]

    def apply_cell(self, i: int, j: int) -> tuple[int, int]:
        x, y = self.apply(2 * i + 1, 2 * j + 1)
        return (x - 1) // 2, (y - 1) // 2

    def compose(self, other: SignedIsometry) -> SignedIsometry:
        """``self`` after ``other``."""
        tx, ty = self.apply(*other.translation)
        return SignedIsometry(
            compose_points(self.point, other.point), (tx, ty), self.tau != other.tau
        )

    __matmul__ = compose

    def inverse(self) -> SignedIsometry:
        m = self.point.matrix
        inv = ((m[0][0], m[1][0]), (m[0][1], m[1][1]))
        tx, ty = apply_matrix(inv, *self.translation)
        return SignedIsometry(_BY_MATRIX[inv], (-tx, -ty), self.tau)

    def reduced(self, period: tuple[int, int]) -> SignedIsometry:
        """Translation reduced modulo a doubled rectangular period."""
        px, py = period
        tx, ty = self.translation
        return SignedIsometry(self.point, (tx % px, ty % py), self.tau)

    def __str__(self):
        flag = " tau" if self.tau else ""
        return f"{self.point.name} {self.translation}{flag}"


IDENTITY = SignedIsometry(Point.Id)


def translation(u: int, v: int, tau: bool = False) -> SignedIsometry:
    """Translation by ``(u, v)`` cells."""
    return SignedIsometry(Point.Id, (2 * u, 2 * v), tau)


def about(point: Point, centre: tuple[int, int], tau: bool = False) -> SignedIsometry:
    """The isometry with point part ``point`` fixing the doubled point ``centre``."""
    ax, ay = apply_matrix(point.matrix, *centre)
    return SignedIsometry(point, (centre[0] - ax, centre[1] - ay), tau).validate()


def cell_maps(g: SignedIsometry, width: int, height: int) -> tuple[np.ndarray, np.ndarray]:
    """Column and row indices (unreduced) of the image of every cell.

    Arrays have shape ``(height, width)`` and are indexed ``[j, i]``.
    """
    j, i = np.mgrid[0:height, 0:width]
    m = g.point.matrix
    x = 2 * i + 1
    y = 2 * j + 1
    nx = m[0][0] * x + m[0][1] * y + g.translation[0]
    ny = m[1][0] * x + m[1][1] * y + g.translation[1]
    return (nx - 1) // 2, (ny - 1) // 2
