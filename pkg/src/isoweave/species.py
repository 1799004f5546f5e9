"""Species signatures: a calibrated partial labelling of isonemal symmetry groups."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .isometry import Point
from .pattern import PeriodicPattern, order_info
from .symmetry import (
    CrystalType,
    Direction,
    H1Relation,
    SymmetryGroup,
    h1_relation,
    side_preserving_subgroup,
    symmetry_group,
)
from .topology import FallApartMode, fall_apart_mode


class SpeciesClass(Enum):
    ParallelAxes = "parallel-axes"
    PerpendicularAxes = "perpendicular-axes"
    QuarterTurn = "quarter-turn"
    Exceptional = "exceptional"
    Unclassified = "unclassified"


_GENERA = {
    "3": {"II"},
    "6": {"II"},
    "9": {"II"},
    "15": {"IV"},
    "19": {"IV"},
    "23": {"II", "IV"},
    "31": {"II", "IV"},
}


@dataclass(frozen=True)
class SpeciesSignature:
    cls: SpeciesClass
    g1_type: CrystalType
    h1_type: CrystalType
    h1_relation: H1Relation
    has_mirrors: bool
    mirror_directions: frozenset[Direction]
    has_sr_translations: bool
    glide_parities: tuple[str, ...]
    ab_params: tuple[int, int] | None
    roth_label: str | None
    reason: str | None
    genus_tags: frozenset[str]

    @property
    def base_species(self) -> str | None:
        """Label without its subscript, e.g. ``"15"`` for ``"15_o"``."""
        return None if self.roth_label is None else self.roth_label.split("_")[0]


def _diagonal_axes(group: SymmetryGroup):
    return [a for a in group.inventory if a.is_axis and a.direction in (Direction.DiagUp, Direction.DiagDown)]


def _rect_sides(lattice) -> tuple[int, int]:
    """Sides in delta along the two diagonals (meaningful for diagonal rectangles)."""
    return lattice.axis_period((2, 2)), lattice.axis_period((2, -2))


def _ab_params(cls: SpeciesClass, group: SymmetryGroup, order: int) -> tuple[int, int] | None:
    """Species parameters read off the lattice units.

    The G1 side running in the direction of the side-reversing translations
    is half the corresponding H1 side.  For parallel axes that halved side is
    ``a`` and ``order = 2ab``; for perpendicular axes it is ``b`` and
    ``order = 4ab``.  Without side-reversing translations the perpendicular
    parameters are the halved H1 sides in increasing order.
    """
    g1 = _rect_sides(group.projected_lattice)
    h1 = _rect_sides(side_preserving_subgroup(group).lattice)
    halved = [k for k in (0, 1) if g1[k] * 2 == h1[k] and g1[1 - k] == h1[1 - k]]
    if cls is SpeciesClass.ParallelAxes:
        if len(halved) == 1:
            a = g1[halved[0]]
        elif g1 == h1 and group.projected_lattice.area * 2 == side_preserving_subgroup(group).lattice.area:
            # centred G1: its conventional rectangle is H1
            up = any(x.direction is Direction.DiagUp for x in _diagonal_axes(group))
            a = h1[0] if up else h1[1]
        else:
            return None
        b, rem = divmod(order, 2 * a)
        return None if rem else (a, b)
    if cls is SpeciesClass.PerpendicularAxes:
        if len(halved) == 1:
            b = g1[halved[0]]
            a, rem = divmod(order, 4 * b)
            return None if rem else (a, b)
        if h1 != g1 or h1[0] % 2 or h1[1] % 2:
            return None
        a, b = sorted((h1[0] // 2, h1[1] // 2))
        return (a, b) if 4 * a * b == order else None
    return None


def _classify(group: SymmetryGroup, order: int):
    axes = _diagonal_axes(group)
    directions = frozenset(a.direction for a in axes)
    mirrors = frozenset(d for (d, _), m in group.projected_axes.items() if m and d in directions)
    quarter = any(g.point in (Point.R90, Point.R270) for g in group.elements)
    if not group.is_transitive:
        cls = SpeciesClass.Unclassified
    elif order < 5:
        cls = SpeciesClass.Exceptional
    elif quarter:
        cls = SpeciesClass.QuarterTurn
    elif len(directions) == 1:
        cls = SpeciesClass.ParallelAxes
    elif len(directions) == 2:
        cls = SpeciesClass.PerpendicularAxes
    else:
        cls = SpeciesClass.Unclassified
    return cls, axes, mirrors


def group_species(group: SymmetryGroup, order: int) -> tuple[str | None, tuple[int, int] | None]:
    """Label and parameters of a group acting on a thinly falling-apart design.

    Used for groups not (yet) attached to a design, so the thin fall-apart
    structure is assumed rather than checked.  Exceptional orders are labelled
    as if they were not.
    """
    cls, _, mirrors = _classify(group, max(order, 5))
    if cls in (SpeciesClass.Unclassified, SpeciesClass.QuarterTurn):
        return None, None
    label, _ = _group_label(group, cls, order, bool(mirrors))
    return label, _ab_params(cls, group, order)


def species_signature(p: PeriodicPattern, group: SymmetryGroup | None = None) -> SpeciesSignature:
    group = group or symmetry_group(p)
    h1 = side_preserving_subgroup(group)
    info = order_info(p)
    cls, axes, mirrors = _classify(group, info.order)
    parities = tuple(sorted({a.glide_parity for a in axes if a.glide_parity}))

    label, reason = _label(p, group, cls, info.order, bool(mirrors))
    ab = _ab_params(cls, group, info.order)
    genus = set(_GENERA.get(label.split("_")[0], ())) if label else set()
    mode = fall_apart_mode(p)
    if mode is FallApartMode.Thick:
        genus.add("V")
    elif mode in (FallApartMode.Layer, FallApartMode.Other):
        genus.add("other")
    return SpeciesSignature(
        cls,
        group.crystal_type,
        h1.crystal_type,
        h1_relation(group),
        bool(mirrors),
        mirrors,
        group.has_sr_translations,
        parities,
        ab,
        label,
        reason,
        frozenset(genus),
    )


def _label(p, group, cls, order, has_mirrors) -> tuple[str | None, str | None]:
    if cls is SpeciesClass.Unclassified:
        return None, "not an isonemal symmetry group"
    if cls is SpeciesClass.Exceptional:
        return None, "order below 5: exceptional prefabric"
    if cls is SpeciesClass.QuarterTurn:
        from .colouring import stripable_thin

        if stripable_thin(p, group):
            return "36_s", None
        return None, "quarter-turn species outside the thinly stripable one"
    if fall_apart_mode(p) is not FallApartMode.Thin and cls is SpeciesClass.PerpendicularAxes:
        return None, "perpendicular-axes species calibrated only for thin fall-apart designs"
    return _group_label(group, cls, order, has_mirrors)


def _group_label(group, cls, order, has_mirrors) -> tuple[str | None, str | None]:
    ctype = group.crystal_type
    if cls is SpeciesClass.ParallelAxes:
        if not group.has_sr_translations:
            return None, "parallel axes without side-reversing translations"
        if not has_mirrors and ctype is CrystalType.pg:
            return "3", None
        if ctype is CrystalType.pm:
            return "6", None
        if ctype is CrystalType.cm:
            return "9", None
        return None, f"parallel axes with projection {ctype.value}"
    if order % 4:
        return None, "order not a multiple of 4"
    sub = "o" if (order // 4) % 2 else "e"
    if ctype is CrystalType.pgg:
        return f"15_{sub}", None
    if ctype is CrystalType.pmg:
        return (f"23_{sub}" if group.has_sr_translations else f"19_{sub}"), None
    if ctype is CrystalType.cmm:
        return "31", None
    return None, f"perpendicular axes with projection {ctype.value}"
