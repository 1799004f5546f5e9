"""Strand colourings, thin striping and perfect colouring.

Words are tuples of booleans with ``True`` for Dark, indexed by strand number
and repeated periodically.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from math import gcd

import numpy as np

from .isometry import Point, SignedIsometry
from .naming import DesignName, NamingRefused, canonical_name
from .pattern import PeriodicPattern, Role, StrandKind, StrandRef
from .symmetry import (
    SymmetryGroup,
    axis_data,
    rotation_centre,
    strand_image,
    symmetry_group,
)
from .topology import hangs_together


class ColouringKind(Enum):
    Normal = "normal"
    ThinStripe = "thin"
    ThickStripe = "thick"
    Custom = "custom"


@dataclass(frozen=True)
class StrandColouring:
    warp_colours: tuple[bool, ...]
    weft_colours: tuple[bool, ...]
    kind: ColouringKind = ColouringKind.Custom
    phase: int | None = None
    flags: tuple[str, ...] = field(default=(), compare=False)

    def warp(self, i: int) -> bool:
        return self.warp_colours[i % len(self.warp_colours)]

    def weft(self, j: int) -> bool:
        return self.weft_colours[j % len(self.weft_colours)]

    def colour(self, s: StrandRef) -> bool:
        return self.warp(s.index) if s.kind is StrandKind.Warp else self.weft(s.index)

    def __str__(self):
        if self.kind is ColouringKind.Normal:
            return "normal"
        if self.kind in (ColouringKind.ThinStripe, ColouringKind.ThickStripe):
            return f"{self.kind.value} {self.phase}"
        word = lambda w: "".join("D" if c else "P" for c in w)  # noqa: E731
        return f"warps {word(self.warp_colours)} / wefts {word(self.weft_colours)}"


NORMAL = StrandColouring((True,), (False,), ColouringKind.Normal)


def make_colouring(kind: ColouringKind | str, order: int | None = None, phase: int = 0) -> StrandColouring:
    """Normal, thin-striped or thick-striped strand colouring.

    Thin phase 0 makes warp ``i`` dark iff ``i`` is odd and weft ``j`` dark iff
    ``j`` is odd (redundant cells at equal parities); phase 1 makes warp ``i``
    dark iff ``i`` is even.  Thick phase ``k`` colours strands ``P P D D``
    starting ``k`` strands along.
    """
    kind = ColouringKind(kind) if isinstance(kind, str) else kind
    flags = []
    if kind is ColouringKind.Normal:
        return NORMAL
    if kind is ColouringKind.ThinStripe:
        if phase not in (0, 1):
            raise ValueError("thin phase must be 0 or 1")
        if order is not None and order % 2:
            flags.append("order is odd: striping is not periodic with the design")
        weft = (False, True)
        warp = (False, True) if phase == 0 else (True, False)
        return StrandColouring(warp, weft, kind, phase, tuple(flags))
    if kind is ColouringKind.ThickStripe:
        if phase not in range(4):
            raise ValueError("thick phase must be 0..3")
        if order is not None and order % 4:
            flags.append("order is not a multiple of 4: striping is not periodic with the design")
        base = (False, False, True, True)
        word = base[-phase:] + base[:-phase] if phase else base
        return StrandColouring(word, word, kind, phase, tuple(flags))
    raise ValueError("custom colourings are built directly")


def parse_colouring(text: str) -> StrandColouring:
    """``normal``, ``thin N``, ``thick N`` or the two-line ``warps``/``wefts`` form."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) == 1:
        parts = lines[0].split()
        if parts == ["normal"]:
            return NORMAL
        if len(parts) == 2 and parts[0] in ("thin", "thick"):
            return make_colouring(parts[0], phase=int(parts[1]))
    if len(lines) == 2:
        words = {}
        for ln in lines:
            key, _, word = ln.partition(" ")
            word = word.strip()
            if key not in ("warps", "wefts") or not word or set(word) - set("DP"):
                raise ValueError(f"bad colouring line: {ln!r}")
            words[key] = tuple(c == "D" for c in word)
        if set(words) == {"warps", "wefts"}:
            return StrandColouring(words["warps"], words["wefts"])
    raise ValueError(f"bad colouring specification: {text!r}")


def _torus(d: PeriodicPattern, c: StrandColouring) -> tuple[int, int]:
    w = d.width * len(c.warp_colours) // gcd(d.width, len(c.warp_colours))
    h = d.height * len(c.weft_colours) // gcd(d.height, len(c.weft_colours))
    return w, h


def _strand_grids(d: PeriodicPattern, c: StrandColouring):
    w, h = _torus(d, c)
    cells = d.tile(w, h)
    warp = np.array([c.warp(i) for i in range(w)], dtype=bool)[None, :]
    weft = np.array([c.weft(j) for j in range(h)], dtype=bool)[:, None]
    return cells, warp, weft


def obverse_pattern(d: PeriodicPattern, c: StrandColouring) -> PeriodicPattern:
    """Colour of the uppermost strand in each cell."""
    cells, warp, weft = _strand_grids(d, c)
    return PeriodicPattern(np.where(cells, warp, weft), Role.Pattern).primitive()


def reverse_pattern(d: PeriodicPattern, c: StrandColouring) -> PeriodicPattern:
    """Colour of the lowermost strand, reflected left to right (mirror held behind)."""
    cells, warp, weft = _strand_grids(d, c)
    under = np.where(cells, weft, warp)
    return PeriodicPattern(under[:, ::-1], Role.Pattern).primitive()


def redundant_cells(d: PeriodicPattern, c: StrandColouring) -> np.ndarray:
    """Boolean grid over the colouring torus: warp colour equals weft colour."""
    _, warp, weft = _strand_grids(d, c)
    return warp == weft


@dataclass(frozen=True)
class PerfectVerdict:
    verdict: bool
    witness: SignedIsometry | None = None

    def __bool__(self):
        return self.verdict


def _colour_consistent(g: SignedIsometry, c: StrandColouring, torus: tuple[int, int]) -> bool:
    w, h = torus
    big = (10 * w * h, 10 * w * h)  # no reduction of strand indices
    swaps = set()
    for s in [StrandRef(StrandKind.Warp, i) for i in range(w)] + [
        StrandRef(StrandKind.Weft, j) for j in range(h)
    ]:
        t = strand_image(g, s, big)
        swaps.add(c.colour(s) != c.colour(t))
        if len(swaps) > 1:
            return False
    return True


def is_perfect(
    d: PeriodicPattern, c: StrandColouring, group: SymmetryGroup | None = None
) -> PerfectVerdict:
    """Whether every symmetry of the design permutes strand colours consistently.

    Consistency is closed under composition, so it is enough to test every
    element of the finite quotient together with the period translations.
    """
    q = d.primitive()
    group = group or symmetry_group(q)
    torus = _torus(q, c)
    w, h = group.period
    checks = list(group.elements) + [
        SignedIsometry(Point.Id, (2 * w, 0)),
        SignedIsometry(Point.Id, (0, 2 * h)),
    ]
    for g in checks:
        if not _colour_consistent(g, c, torus):
            return PerfectVerdict(False, g)
    return PerfectVerdict(True)


def _violates_thin(group: SymmetryGroup, g: SignedIsometry) -> str | None:
    """Reason why ``g`` cannot preserve the thin checkerboard of cell classes."""
    if g.is_translation:
        x, y = g.translation[0] // 2, g.translation[1] // 2
        return None if (x - y) % 2 == 0 else f"translation ({x}, {y}) of mixed parity"
    if g.point is Point.R180:
        c = rotation_centre(g)
        if c[0] % 2 != c[1] % 2:
            return "half-turn centred on a cell side"
        return None
    if g.point in (Point.R90, Point.R270):
        c = rotation_centre(g)
        if not (c[0] % 2 and c[1] % 2):
            return "quarter-turn not centred in a cell"
        return None
    if not g.point.is_diagonal:
        return "axis-parallel reflection"
    _, k, _ = axis_data(g)
    if k % 2:
        return "glide-reflection axis not in mirror position"
    return None


@dataclass(frozen=True)
class Stripability:
    stripable: bool
    phases: tuple[int, ...]
    reasons: tuple[str, ...] = ()

    def __bool__(self):
        return self.stripable


def stripable_thin(d: PeriodicPattern, group: SymmetryGroup | None = None) -> Stripability:
    """Structural test: can the cell classes of a thin striping be preserved?"""
    group = group or symmetry_group(d)
    reasons = sorted({r for g in group.elements if (r := _violates_thin(group, g))})
    w, h = group.period
    if w % 2 or h % 2:
        reasons.append("odd period: striping does not repeat with the design")
    if reasons:
        return Stripability(False, (), tuple(reasons))
    return Stripability(True, (0, 1))


# -- striping analysis --------------------------------------------------------


def _through_redundant(g: SignedIsometry, phase: int) -> bool:
    """Whether a mirror-position diagonal axis passes through redundant cells."""
    _, k, _ = axis_data(g)
    if g.point is Point.MirDiagUp:
        diff = k // 2  # i - j of the cells on the axis
        same_parity = diff % 2 == 0
    else:
        total = k // 2 - 1  # i + j of the cells on the axis
        same_parity = total % 2 == 0
    return same_parity if phase == 0 else not same_parity


@dataclass(frozen=True)
class AxisCorrespondence:
    fabric_element: SignedIsometry
    through_redundant: bool
    glide_parity: str
    predicted_tau: bool
    holds: bool


def axis_correspondence(
    fabric_group: SymmetryGroup, pattern: PeriodicPattern, phase: int
) -> list[AxisCorrespondence]:
    """Fate of each side-preserving glide-reflection of the fabric in the striped pattern.

    Through redundant cells with even glide, or between them with odd glide,
    the isometry should reappear side-reversing; in the other two cases it
    should reappear side-preserving.
    """
    out = []
    for g in fabric_group.elements:
        if g.tau or not g.point.is_diagonal:
            continue
        _, k, glide = axis_data(g)
        if k % 2:
            continue
        through = _through_redundant(g, phase)
        even = (glide // 2) % 2 == 0
        predicted_tau = through == even
        image = SignedIsometry(g.point, g.translation, predicted_tau)
        holds = _is_symmetry_on(pattern, image)
        out.append(AxisCorrespondence(g, through, "even" if even else "odd", predicted_tau, holds))
    return out


def glide_transitive(group: SymmetryGroup) -> bool:
    """Whether H1 is strand-transitive and generated by its mirror-position glides.

    Designs of this kind stripe thinly, in both phases, to isonemal designs
    that fall apart, and the fate of each glide follows ``axis_correspondence``.
    """
    from .symmetry import closure, side_preserving_subgroup

    h1 = side_preserving_subgroup(group)
    if not h1.is_transitive:
        return False
    glides = [g for g in h1.elements if g.point.is_reflection and axis_data(g)[1] % 2 == 0]
    return bool(glides) and len(closure(glides, group.period)) == len(h1)


def _is_symmetry_on(p: PeriodicPattern, g: SignedIsometry) -> bool:
    from .pattern import transform

    return transform(p, g) == p


@dataclass
class StripeResult:
    phase: int
    pattern: PeriodicPattern
    perfect: bool
    is_isonemal: bool
    falls_apart: bool
    name: DesignName | None
    correspondence: list[AxisCorrespondence]

    @property
    def correspondence_holds(self) -> bool:
        return all(c.holds for c in self.correspondence)

    def summary(self) -> str:
        if self.is_isonemal and self.name is not None:
            return str(self.name)
        return "non-isonemal"


def stripe_analysis(d: PeriodicPattern, name_bucket=None) -> list[StripeResult]:
    """Both thin stripings of a design, each analysed as a design in its own right."""
    q = d.primitive()
    group = symmetry_group(q)
    results = []
    for phase in (0, 1):
        c = make_colouring(ColouringKind.ThinStripe, phase=phase)
        pat = obverse_pattern(q, c).as_role(Role.Design)
        pgroup = symmetry_group(pat)
        iso = pgroup.is_transitive
        apart = not hangs_together(pat)
        name = None
        if iso:
            try:
                name = canonical_name(pat, apart)
            except NamingRefused:
                name = None
        results.append(
            StripeResult(
                phase,
                pat,
                bool(is_perfect(q, c, group)),
                iso,
                apart,
                name,
                axis_correspondence(group, pat, phase),
            )
        )
    return results


# -- unstriping ---------------------------------------------------------------


@dataclass
class UnstripeResult:
    """Fabrics whose thin striping reproduces a pattern, or why there are none.

    ``obstruction`` is the lattice unit forced on any completion when the
    search fails, described in delta units.
    """

    candidates: list[PeriodicPattern]
    phase: int
    partial: PeriodicPattern | None = None
    known: np.ndarray | None = None
    diagnosis: str | None = None
    obstruction: str | None = None
    truncated: bool = False

    @property
    def ok(self) -> bool:
        return bool(self.candidates)


def partial_fabric(p: PeriodicPattern) -> tuple[np.ndarray, np.ndarray, tuple[int, int]]:
    """Irredundant cells of a fabric that would stripe thinly to ``p``.

    Returns ``(cells, known, anchor)`` over the primitive period, doubled in
    any odd direction: irredundant
    cells in the predominantly dark rows are complemented, those in the
    predominantly pale rows copied, and redundant cells left unknown.
    """
    from .topology import has_thin_checkerboard

    q = p.primitive()
    anchor = has_thin_checkerboard(q)
    if anchor is None:
        raise ValueError("pattern has no thin redundant checkerboard")
    a, b = anchor
    grid = q.tile(q.width * (1 + q.width % 2), q.height * (1 + q.height % 2))
    j, i = np.mgrid[0 : grid.shape[0], 0 : grid.shape[1]]
    known = (i - a) % 2 != (j - b) % 2
    dark_row = (j - b) % 2 == 0
    cells = np.where(dark_row, ~grid, grid) & known
    return cells, known, anchor


def _class_preserving(n: int) -> list[SignedIsometry]:
    from .orbitfill import compatible_elements

    out = []
    for g in compatible_elements(n):
        out.append(SignedIsometry(g.point, g.translation, False))
        out.append(SignedIsometry(g.point, g.translation, True))
    return out


def _respects(g: SignedIsometry, cells: np.ndarray, known: np.ndarray, n: int) -> bool:
    from .orbitfill import _image

    ci, cj = _image(g, n)
    img = cells[cj, ci]
    return bool(np.array_equal(img[known], cells[known] ^ g.colour_action))


def _shift_kind(g: SignedIsometry, n: int) -> int | None:
    """Columns by which ``g`` moves every warp along, if it is a translation or horizontal glide."""
    if g.point not in (Point.Id, Point.MirY):
        return None
    return (g.translation[0] // 2) % n


def backward_group(
    pattern: np.ndarray, colouring: StrandColouring, n: int
) -> list[SignedIsometry]:
    """Fabric counterparts of the symmetries of a striped pattern on the ``n x n`` torus.

    A fabric symmetry with side flag ``tau`` that moves strand colours with
    swap ``sigma`` acts on the irredundant cells of the pattern with colour
    action ``sigma xor tau``.  Running that backwards, each pattern symmetry
    whose strand-colour action is consistent yields one fabric isometry.
    """
    q = PeriodicPattern(pattern, Role.Design)
    group = symmetry_group(q)
    out = []
    torus = (n, n)
    for g in _torus_elements(group, n):
        sigma = _strand_swap(g, colouring, torus)
        if sigma is None:
            continue
        out.append(SignedIsometry(g.point, g.translation, g.colour_action != sigma))
    return out


def _torus_elements(group: SymmetryGroup, n: int) -> list[SignedIsometry]:
    w, h = group.period
    out = set()
    for g in group.elements:
        tx, ty = g.translation
        for dx in range(0, 2 * n, 2 * w):
            for dy in range(0, 2 * n, 2 * h):
                out.add(SignedIsometry(g.point, ((tx + dx) % (2 * n), (ty + dy) % (2 * n)), g.tau))
    return sorted(out, key=SignedIsometry.sort_key)


def _strand_swap(g: SignedIsometry, c: StrandColouring, torus) -> bool | None:
    w, h = torus
    big = (10 * w * h, 10 * w * h)
    swaps = {
        c.colour(s) != c.colour(strand_image(g, s, big))
        for s in [StrandRef(StrandKind.Warp, i) for i in range(w)]
        + [StrandRef(StrandKind.Weft, j) for j in range(h)]
    }
    return swaps.pop() if len(swaps) == 1 else None


def unstripe(
    p: PeriodicPattern,
    max_free: int = 16,
    limit: int = 4096,
    scale: int = 1,
    exhaustive: bool = False,
) -> UnstripeResult:
    """Isonemal fabrics whose thin striping is ``p``, searched orbit by orbit.

    The irredundant cells are forced.  ``S`` holds the isometries that carry
    over from symmetries of ``p`` and preserve the forced cells; a fabric whose
    side-preserving glides act transitively has such a transitive subgroup.
    With ``exhaustive`` every class-preserving isometry respecting the forced
    cells is admitted instead, which also finds fabrics whose symmetries do
    not carry over.  Every strand-transitive subgroup of ``S`` contains a
    translation or horizontal glide moving warps one column, or one moving
    them two columns together with a warp-reversing element, plus a
    warp-weft swap.  Each such generating set fixes the redundant cells
    orbit by orbit, and every completion is isonemal because the generating
    set is transitive.  Completions that stripe back to ``p`` are returned
    in canonical order, one per position.  On a torus of side below 5 an
    empty backward search is retried exhaustively.  The search torus is ``scale`` times
    the pattern's period, so fabrics of larger period need ``scale > 1``.
    """
    from math import lcm

    from .naming import canonical_key
    from .orbitfill import orbit_structure

    q = p.primitive()
    cells, known, anchor = partial_fabric(q)
    n = lcm(cells.shape[1], cells.shape[0]) * scale
    cells = PeriodicPattern(cells).tile(n, n)
    known = PeriodicPattern(known).tile(n, n)
    target = q.tile(n, n)
    # put the dark redundant cells at (odd, odd)
    dx, dy = (1 - anchor[0]) % 2, (1 - anchor[1]) % 2
    cells = np.roll(cells, (dy, dx), axis=(0, 1))
    known = np.roll(known, (dy, dx), axis=(0, 1))
    target = np.roll(target, (dy, dx), axis=(0, 1))
    phase = 0
    colouring = make_colouring(ColouringKind.ThinStripe, phase=0)
    partial = PeriodicPattern(np.roll(cells, (-dy, -dx), axis=(0, 1)))

    if exhaustive:
        S = [g for g in _class_preserving(n) if _respects(g, cells, known, n)]
    else:
        S = [g for g in backward_group(target, colouring, n) if _respects(g, cells, known, n)]
    shifts = defaultdict(list)
    swaps, reversers = [], []
    for g in S:
        u = _shift_kind(g, n)
        if u is not None:
            shifts[u].append(g)
        if g.point.swaps:
            swaps.append(g)
        if g.point in (Point.R180, Point.MirX) and (g.translation[0] // 2) % 2 == 0:
            reversers.append(g)

    def generating_sets():
        for t in shifts[1] + shifts[n - 1]:
            for s in swaps:
                yield (t, s)
        if n % 2 == 0:
            for t in shifts[2] + shifts[n - 2]:
                for r in reversers:
                    for s in swaps:
                        yield (t, r, s)

    fixed = (known, cells)
    seen_structures, found = set(), {}
    truncated = False
    for gens in generating_sets():
        st = orbit_structure(gens, n, pinned=False, fixed=fixed)
        if st is None or (key := st.key()) in seen_structures:
            continue
        seen_structures.add(key)
        if st.free_count > max_free:
            truncated = True
            continue
        # every generating set is strand-transitive, so each fill is isonemal
        for c in st.designs():
            raw = c.tobytes()
            if raw in found:
                continue
            if obverse_pattern(PeriodicPattern(c), colouring) != PeriodicPattern(target):
                continue
            found[raw] = PeriodicPattern(np.roll(c, (-dy, -dx), axis=(0, 1)), Role.Design).primitive()
            if len(found) >= limit:
                truncated = True
                break
        if len(found) >= limit:
            break
    candidates = sorted(found.values(), key=canonical_key)
    # report the phase in the pattern's own coordinates
    phase = phase if dx == 0 else 1 - phase
    if candidates:
        return UnstripeResult(candidates, phase, partial, known, truncated=truncated)
    if not exhaustive and n < 5:
        # fabrics this small are the exceptional prefabrics, whose symmetries need not carry over
        return unstripe(p, max_free, limit, scale, exhaustive=True)
    diagnosis, unit = _obstruction(S, cells, known, n)
    return UnstripeResult([], phase, partial, known, diagnosis, unit, truncated)


def _obstruction(S, cells, known, n) -> tuple[str, str | None]:
    """Explain an empty search by the largest consistent part of ``S``.

    Elements are added greedily, reflections and glides first, and one is kept
    only if the redundant cells can still be coloured.  The group they generate
    gives the smallest period a completion respecting them can have.
    """
    from .orbitfill import orbit_structure
    from .symmetry import lattice_units

    if not S:
        return "no isometry preserves the forced cells", None
    fixed = (known, cells)
    ordered = [g for g in S if not g.is_translation] + [g for g in S if g.is_translation]
    kept: list[SignedIsometry] = []
    for g in ordered:
        if orbit_structure(kept + [g], n, pinned=False, fixed=fixed) is not None:
            kept.append(g)
    if not kept:
        return "the forced cells admit no consistent colouring of the redundant cells", None
    group = SymmetryGroup((n, n), tuple(sorted(set(_generated_set(kept, n)), key=SignedIsometry.sort_key)))
    unit = lattice_units(group)["G1"]
    lost = len(S) - len(group.elements)
    reason = f"no strand-transitive completion; forced lattice unit {unit.dimensions}"
    if lost > 0:
        reason += f" ({lost} symmetries of the pattern cannot be kept)"
    return reason, unit.dimensions


def _generated_set(gens, n):
    from .orbitfill import _generated

    return _generated(tuple(gens), (2 * n, 2 * n))
