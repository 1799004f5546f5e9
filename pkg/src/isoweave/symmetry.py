"""Symmetry groups of designs: enumeration, inventory, crystal types.

Groups are finite quotients: every element is kept modulo the rectangular
lattice of the primitive period rectangle of the design.  The lattice of
side-preserving translations is stored separately (it can be rhombic).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

import numpy as np

from .isometry import IDENTITY, Point, SignedIsometry, cell_maps
from .lattice import Lattice
from .pattern import PeriodicPattern, StrandKind, StrandRef, transform


class Kind(Enum):
    Mirror = "mirror"
    GlideReflection = "glide-reflection"
    HalfTurn = "half-turn"
    QuarterTurn = "quarter-turn"


class Direction(Enum):
    DiagUp = "diag-up"
    DiagDown = "diag-down"
    Horizontal = "horizontal"
    Vertical = "vertical"
    None_ = "none"


class PositionClass(Enum):
    MirrorPosition = "mirror-position"
    SidePosition = "side-position"
    CellCentre = "cell-centre"
    CellCorner = "cell-corner"
    SideMidpoint = "side-midpoint"


# point part -> (direction, linear form giving the intercept, form giving the glide)
_AXES = {
    Point.MirDiagUp: (Direction.DiagUp, (1, -1), (1, 1)),
    Point.MirDiagDown: (Direction.DiagDown, (1, 1), (1, -1)),
    Point.MirX: (Direction.Vertical, (1, 0), (0, 1)),
    Point.MirY: (Direction.Horizontal, (0, 1), (1, 0)),
}
_AXIS_STEP = {
    Direction.DiagUp: (2, 2),
    Direction.DiagDown: (2, -2),
    Direction.Vertical: (0, 2),
    Direction.Horizontal: (2, 0),
}


@dataclass(frozen=True)
class AxisOrCentre:
    """One axis or rotation centre, up to the translations of the group.

    ``position`` is the doubled intercept of an axis (``x - y`` for DiagUp,
    ``x + y`` for DiagDown, ``x`` for Vertical, ``y`` for Horizontal) or the
    doubled centre point.  ``glide`` is measured in half-deltas for diagonal
    axes and in half-cells for axis-parallel ones.
    """

    kind: Kind
    tau: bool
    direction: Direction
    position: int | tuple[int, int]
    glide: int | None
    position_class: PositionClass

    @property
    def is_axis(self) -> bool:
        return self.kind in (Kind.Mirror, Kind.GlideReflection)

    @property
    def glide_in_delta(self) -> float | None:
        return None if self.glide is None else self.glide / 2

    @property
    def glide_parity(self) -> str | None:
        """'odd', 'even' or 'fractional' multiple of delta (diagonal glides)."""
        if self.kind is not Kind.GlideReflection or self.glide is None:
            return None
        if self.glide % 2:
            return "fractional"
        return "odd" if (self.glide // 2) % 2 else "even"

    def describe(self) -> str:
        flag = " with tau" if self.tau else ""
        if self.is_axis:
            where = f"{self.direction.value} axis at {self.position / 2:g}"
            extra = f", glide {self.glide / 2:g}" if self.kind is Kind.GlideReflection else ""
            return f"{self.kind.value}{flag}: {where}{extra} ({self.position_class.value})"
        x, y = self.position
        return f"{self.kind.value}{flag} centre ({x / 2:g}, {y / 2:g}) ({self.position_class.value})"


def _site(c: tuple[int, int]) -> PositionClass:
    x, y = c
    if x % 2 and y % 2:
        return PositionClass.CellCentre
    if not x % 2 and not y % 2:
        return PositionClass.CellCorner
    return PositionClass.SideMidpoint


def rotation_centre(g: SignedIsometry) -> tuple[int, int]:
    tx, ty = g.translation
    if g.point is Point.R180:
        return tx // 2, ty // 2
    if g.point is Point.R90:
        return (tx - ty) // 2, (tx + ty) // 2
    if g.point is Point.R270:
        return (tx + ty) // 2, (ty - tx) // 2
    raise ValueError(f"{g.point} is not a rotation")


def axis_data(g: SignedIsometry) -> tuple[Direction, int, int]:
    """Direction, doubled intercept and raw glide of a reflection-type element."""
    direction, form, gform = _AXES[g.point]
    tx, ty = g.translation
    if g.point.is_diagonal:
        return direction, (form[0] * tx + form[1] * ty) // 2, (gform[0] * tx + gform[1] * ty) // 2
    return direction, (form[0] * tx + form[1] * ty) // 2, gform[0] * tx + gform[1] * ty


class CrystalType(Enum):
    p1 = "p1"
    p2 = "p2"
    pg = "pg"
    pm = "pm"
    cm = "cm"
    pgg = "pgg"
    pmg = "pmg"
    pmm = "pmm"
    cmm = "cmm"
    p4 = "p4"
    other = "other"


@dataclass(frozen=True, eq=False)
class SymmetryGroup:
    """Symmetry group modulo the rectangle lattice ``period`` (in cells).

    ``elements`` holds every element with translation reduced modulo
    ``(2 * width, 2 * height)``.
    """

    period: tuple[int, int]
    elements: tuple[SignedIsometry, ...]
    _index: dict = field(init=False, repr=False)

    def __post_init__(self):
        els = tuple(sorted({self.reduce(g) for g in self.elements}, key=SignedIsometry.sort_key))
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "_index", {g: k for k, g in enumerate(els)})

    # -- basic structure --------------------------------------------------
    @property
    def doubled_period(self) -> tuple[int, int]:
        return 2 * self.period[0], 2 * self.period[1]

    def reduce(self, g: SignedIsometry) -> SignedIsometry:
        return g.reduced(self.doubled_period)

    def __contains__(self, g: SignedIsometry) -> bool:
        return self.reduce(g) in self._index

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, SymmetryGroup)
            and self.period == other.period
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.period, self.elements))

    def compose(self, a: SignedIsometry, b: SignedIsometry) -> SignedIsometry:
        return self.reduce(a.compose(b))

    def subgroup(self, keep) -> SymmetryGroup:
        return SymmetryGroup(self.period, tuple(g for g in self.elements if keep(g)))

    def translations(self, tau: bool | None = None) -> list[SignedIsometry]:
        return [g for g in self.elements if g.is_translation and (tau is None or g.tau == tau)]

    @cached_property
    def lattice(self) -> Lattice:
        """Side-preserving translations (doubled coordinates)."""
        vecs = [g.translation for g in self.translations(tau=False)]
        return Lattice.generated_by(vecs + [(self.doubled_period[0], 0), (0, self.doubled_period[1])])

    @cached_property
    def projected_lattice(self) -> Lattice:
        """All translations, side-reversing ones included."""
        vecs = [g.translation for g in self.translations()]
        return Lattice.generated_by(vecs + [(self.doubled_period[0], 0), (0, self.doubled_period[1])])

    @property
    def has_sr_translations(self) -> bool:
        return bool(self.translations(tau=True))

    @property
    def has_tau(self) -> bool:
        return any(g.tau for g in self.elements)

    @cached_property
    def coset_reps(self) -> tuple[SignedIsometry, ...]:
        """One element per coset of the side-preserving translations, identity coset omitted."""
        reps = set()
        for g in self.elements:
            if g.is_translation and not g.tau:
                continue
            reps.add(SignedIsometry(g.point, self.lattice.canonical(g.translation), g.tau))
        return tuple(sorted(reps, key=SignedIsometry.sort_key))

    # -- derived geometry -------------------------------------------------
    @cached_property
    def inventory(self) -> tuple[AxisOrCentre, ...]:
        items = set()
        for g in self.elements:
            item = self._describe(g)
            if item is not None:
                items.add(item)
        return tuple(sorted(items, key=_inventory_key))

    def _describe(self, g: SignedIsometry) -> AxisOrCentre | None:
        if g.is_translation:
            return None
        if g.point.is_rotation:
            c = self.projected_lattice.canonical(rotation_centre(g))
            kind = Kind.HalfTurn if g.point is Point.R180 else Kind.QuarterTurn
            return AxisOrCentre(kind, g.tau, Direction.None_, c, None, _site(c))
        direction, k, glide = axis_data(g)
        _, form, _ = _AXES[g.point]
        k %= self.projected_lattice.shift_modulus(form)
        step = self.lattice.axis_period(_AXIS_STEP[direction])
        unit = 2 * step  # along-axis lattice step in glide units
        glide %= unit
        glide = min(glide, unit - glide)
        cls = PositionClass.MirrorPosition if k % 2 == 0 else PositionClass.SidePosition
        kind = Kind.Mirror if glide == 0 else Kind.GlideReflection
        return AxisOrCentre(kind, g.tau, direction, k, glide, cls)

    @cached_property
    def projected_axes(self) -> dict[tuple[Direction, int], bool]:
        """Axis lines of the plane projection, mapped to whether each is a mirror."""
        lines: dict[tuple[Direction, int], bool] = {}
        proj = self.projected_lattice
        for g in self.elements:
            if not g.point.is_reflection:
                continue
            direction, k, glide = axis_data(g)
            _, form, _ = _AXES[g.point]
            k %= proj.shift_modulus(form)
            unit = 2 * proj.axis_period(_AXIS_STEP[direction])
            mirror = glide % unit == 0
            lines[(direction, k)] = lines.get((direction, k), False) or mirror
        return lines

    @property
    def crystal_type(self) -> CrystalType:
        return crystal_type(self)

    # -- strand action ----------------------------------------------------
    def strand_image(self, g: SignedIsometry, s: StrandRef) -> StrandRef:
        return strand_image(g, s, self.period)

    @cached_property
    def is_transitive(self) -> bool:
        return len(strand_orbits(self)) == 1


def _inventory_key(a: AxisOrCentre):
    pos = a.position if isinstance(a.position, tuple) else (a.position, 0)
    return (a.kind.value, a.direction.value, int(a.tau), pos, a.glide or 0)


def strand_image(g: SignedIsometry, s: StrandRef, period: tuple[int, int]) -> StrandRef:
    """Image of a strand; indices reduced modulo ``period``."""
    w, h = period
    if s.kind is StrandKind.Warp:
        x0, y0 = g.apply(2 * s.index + 1, 1)
        x1, _ = g.apply(2 * s.index + 1, 3)
        if x0 == x1:
            return StrandRef(StrandKind.Warp, ((x0 - 1) // 2) % w)
        return StrandRef(StrandKind.Weft, ((y0 - 1) // 2) % h)
    x0, y0 = g.apply(1, 2 * s.index + 1)
    _, y1 = g.apply(3, 2 * s.index + 1)
    if y0 == y1:
        return StrandRef(StrandKind.Weft, ((y0 - 1) // 2) % h)
    return StrandRef(StrandKind.Warp, ((x0 - 1) // 2) % w)


def strand_orbits(group: SymmetryGroup) -> list[list[StrandRef]]:
    w, h = group.period
    nodes = [StrandRef(StrandKind.Warp, i) for i in range(w)] + [
        StrandRef(StrandKind.Weft, j) for j in range(h)
    ]
    parent = {s: s for s in nodes}

    def find(s):
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    for g in group.elements:
        for s in nodes:
            a, b = find(s), find(group.strand_image(g, s))
            if a != b:
                parent[a] = b
    orbits: dict = {}
    for s in nodes:
        orbits.setdefault(find(s), []).append(s)
    return sorted(orbits.values(), key=lambda o: (o[0].kind.value != "warp", o[0].index))


def symmetry_elements(p: PeriodicPattern) -> list[SignedIsometry]:
    """Every signed isometry preserving the design ``p`` (must be primitive).

    Scans the 8 point parts, both tau values and every translation in the
    period rectangle at once.
    """
    cells = p.cells
    h, w = cells.shape
    found = []
    jj = np.arange(h)[:, None, None, None]
    ii = np.arange(w)[None, :, None, None]
    for point in Point:
        if point.swaps and w != h:
            continue
        ix, iy = cell_maps(SignedIsometry(point), w, h)
        gathered = cells[(iy[None, None] + jj) % h, (ix[None, None] + ii) % w]
        same = (gathered == cells).all(axis=(2, 3))
        opposite = (gathered != cells).all(axis=(2, 3))
        for tau in (False, True):
            ok = opposite if point.swaps != tau else same
            for v, u in zip(*np.nonzero(ok)):
                found.append(SignedIsometry(point, (2 * int(u), 2 * int(v)), tau))
    return found


def symmetry_group(p: PeriodicPattern) -> SymmetryGroup:
    """The full symmetry group G1 of a design."""
    q = p.primitive()
    return SymmetryGroup(q.shape, tuple(symmetry_elements(q)))


def is_symmetry(p: PeriodicPattern, g: SignedIsometry) -> bool:
    return transform(p, g) == p


def side_preserving_subgroup(group: SymmetryGroup) -> SymmetryGroup:
    """H1: the elements without side reversal."""
    return group.subgroup(lambda g: not g.tau)


class H1Relation(Enum):
    Equal = "equal"
    ProperSubgroup = "proper-subgroup"
    SameTypeOnly = "same-type-only"
    Different = "different"


def h1_relation(group: SymmetryGroup) -> H1Relation:
    h1 = side_preserving_subgroup(group)
    if len(h1) == len(group):
        return H1Relation.Equal
    if crystal_type(h1) is crystal_type(group):
        if h1.lattice == group.projected_lattice:
            return H1Relation.SameTypeOnly
        return H1Relation.ProperSubgroup
    return H1Relation.Different


def crystal_type(group: SymmetryGroup) -> CrystalType:
    """Plane crystallographic type of the projection (tau ignored)."""
    points = {g.point for g in group.elements}
    quarter = bool(points & {Point.R90, Point.R270})
    lines = group.projected_axes
    directions = {d for d, _ in lines}
    if quarter:
        return CrystalType.other if directions else CrystalType.p4
    if not directions:
        return CrystalType.p2 if Point.R180 in points else CrystalType.p1
    perpendicular = ({Direction.DiagUp, Direction.DiagDown}, {Direction.Horizontal, Direction.Vertical})
    if len(directions) > 2 or (len(directions) == 2 and directions not in perpendicular):
        return CrystalType.other
    mirror_dirs = {d for (d, _), m in lines.items() if m}
    glide_dirs = {d for (d, _), m in lines.items() if not m}
    if len(directions) == 1:
        if not mirror_dirs:
            return CrystalType.pg
        return CrystalType.cm if glide_dirs else CrystalType.pm
    if not mirror_dirs:
        return CrystalType.pgg
    if len(mirror_dirs) == 1:
        return CrystalType.pmg
    return CrystalType.cmm if glide_dirs else CrystalType.pmm


def is_isonemal(p: PeriodicPattern) -> bool:
    return symmetry_group(p).is_transitive


@dataclass(frozen=True)
class LatticeUnit:
    shape: str  # rectangular, rhombic, square or oblique
    sides: tuple[tuple[int, int], tuple[int, int]]  # doubled vectors
    dimensions: str
    area: float  # in cells
    length: float | None = None  # rhomb diagonals, in the unit named by ``unit``
    width: float | None = None
    unit: str = "cell"
    alternates: tuple[str, ...] = ()

    def __str__(self):
        return f"{self.shape} {self.dimensions}"


def _vec_len(v) -> tuple[float, str]:
    """Length of a doubled vector in delta if diagonal, else in cells."""
    x, y = v
    if abs(x) == abs(y):
        return abs(x) / 2, "delta"
    if x == 0 or y == 0:
        return (abs(x) + abs(y)) / 2, "cell"
    return ((x * x + y * y) ** 0.5) / 2, "cell"


def _fmt(v) -> str:
    value, unit = _vec_len(v)
    sym = "δ" if unit == "delta" else ""
    return f"{value:g}{sym}"


def lattice_unit(lattice: Lattice, group: SymmetryGroup | None = None) -> LatticeUnit:
    u, v = lattice.reduced_basis()
    dot = u[0] * v[0] + u[1] * v[1]
    uu = u[0] ** 2 + u[1] ** 2
    vv = v[0] ** 2 + v[1] ** 2
    area = lattice.area / 4
    alternates: tuple[str, ...] = ()
    if group is not None and crystal_type(group) is CrystalType.p4:
        centres = sorted(
            {a.describe() for a in group.inventory if a.kind is Kind.QuarterTurn}
        )
        alternates = tuple(f"corners at {c}" for c in centres)
    if dot == 0:
        a, b = sorted([u, v], key=lambda w: _vec_len(w)[0])
        shape = "square" if uu == vv else "rectangular"
        return LatticeUnit(shape, (a, b), f"{_fmt(a)}x{_fmt(b)}", area, alternates=alternates)
    if uu == vv or 2 * abs(dot) == uu:
        if uu == vv:
            s1, s2 = u, v
        else:
            s1 = v
            s2 = (v[0] - u[0], v[1] - u[1]) if dot > 0 else (v[0] + u[0], v[1] + u[1])
        d1 = (s1[0] + s2[0], s1[1] + s2[1])
        d2 = (s1[0] - s2[0], s1[1] - s2[1])
        (l1, unit1), (l2, _) = _vec_len(d1), _vec_len(d2)
        length, width = max(l1, l2), min(l1, l2)
        sym = "δ" if unit1 == "delta" else ""
        return LatticeUnit(
            "rhombic",
            (s1, s2),
            f"rhomb {length:g}{sym} long, {width:g}{sym} wide",
            area,
            length,
            width,
            unit1,
            alternates,
        )
    return LatticeUnit("oblique", (u, v), f"{_fmt(u)} by {_fmt(v)}", area, alternates=alternates)


def lattice_units(group: SymmetryGroup) -> dict[str, LatticeUnit]:
    """Primitive lattice units of G1 (all translations) and of H1."""
    return {
        "G1": lattice_unit(group.projected_lattice, group),
        "H1": lattice_unit(group.lattice, side_preserving_subgroup(group)),
    }


def group_report(group: SymmetryGroup) -> list[str]:
    """One line per coset representative, in stable order."""
    lines = []
    for g in group.coset_reps:
        item = group._describe(g)
        desc = item.describe() if item else ("side-reversing translation" if g.tau else "translation")
        flag = "tau" if g.tau else "-"
        lines.append(f"{g.point.name:<12} t={g.translation} {flag:<3} {desc}")
    return lines


def closure(generators, period: tuple[int, int]) -> SymmetryGroup:
    """Group generated by ``generators`` modulo the rectangle ``period``."""
    px, py = 2 * period[0], 2 * period[1]
    gens = [g.reduced((px, py)) for g in generators]
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = g.compose(a).reduced((px, py))
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return SymmetryGroup(period, tuple(seen))
