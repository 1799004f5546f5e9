"""Two-dimensional integer lattices (doubled coordinates)."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


@dataclass(frozen=True)
class Lattice:
    """Full-rank lattice in Hermite normal form: rows ``(p, q)`` and ``(0, r)``.

    ``p > 0``, ``r > 0`` and ``0 <= q < r``.
    """

    p: int
    q: int
    r: int

    @classmethod
    def generated_by(cls, vectors) -> Lattice:
        a = b = c = 0  # current rows (a, b), (0, c)
        for x, y in vectors:
            if x == 0 and y == 0:
                continue
            # merge (x, y) into the first row by Euclid on the first column
            if x == 0:
                c = gcd(c, y)
                continue
            if a == 0:
                a, b = x, y
            else:
                g, s, t = _ext_gcd(a, x)
                na, nb = g, s * b + t * y
                # the eliminated combination has zero first coordinate
                ya = (x // g) * b - (a // g) * y
                a, b = na, nb
                c = gcd(c, ya)
            if a < 0:
                a, b = -a, -b
        if a == 0 or c == 0:
            raise ValueError("vectors do not span a full-rank lattice")
        return cls(a, b % c, c)

    @property
    def basis(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.p, self.q), (0, self.r)

    @property
    def area(self) -> int:
        return self.p * self.r

    def __contains__(self, v) -> bool:
        x, y = v
        if x % self.p:
            return False
        k = x // self.p
        return (y - k * self.q) % self.r == 0

    def canonical(self, v: tuple[int, int]) -> tuple[int, int]:
        """Unique representative of ``v`` modulo the lattice."""
        x, y = v
        xr = x % self.p
        k = (x - xr) // self.p
        return xr, (y - k * self.q) % self.r

    def axis_period(self, direction: tuple[int, int]) -> int:
        """Least ``m > 0`` with ``m * direction`` in the lattice."""
        dx, dy = direction
        m = 1
        while (m * dx, m * dy) not in self:
            m += 1
        return m

    def shift_modulus(self, form: tuple[int, int]) -> int:
        """gcd of the linear form ``ax + by`` over the lattice."""
        a, b = form
        (p, q), (_, r) = self.basis
        return gcd(a * p + b * q, b * r)

    def reduced_basis(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Lagrange-Gauss reduced basis ``(u, v)`` with ``|u| <= |v|``."""
        u, v = self.basis
        dot = lambda a, b: a[0] * b[0] + a[1] * b[1]  # noqa: E731
        if dot(u, u) > dot(v, v):
            u, v = v, u
        while True:
            m = round(dot(u, v) / dot(u, u))
            v = (v[0] - m * u[0], v[1] - m * u[1])
            if dot(v, v) >= dot(u, u):
                break
            u, v = v, u
        return u, v

    def vectors_in(self, width: int, height: int) -> list[tuple[int, int]]:
        """Lattice points in ``[0, width) x [0, height)`` (for sublattices of that box)."""
        out = []
        for k in range(0, width, self.p) if self.p else ():
            x = k
            y0 = (k // self.p) * self.q
            for y in range(y0 % self.r, height, self.r):
                out.append((x, y))
        return out
