"""Catalogue of isonemal prefabrics that fall apart thinly.

Designs are produced by orbit filling on the ``n x n`` torus with the thin
redundant checkerboard fixed (dark at ``(odd, odd)``, pale at
``(even, even)``), then classified by their full symmetry group.
"""

from __future__ import annotations

import json
import logging
import os
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache


from .isometry import SignedIsometry
from .naming import DesignName, binary_index, canonical_key, is_palindromic, index_word
from .orbitfill import (
    _generated,
    candidate_designs,
    conjugacy_key,
    has_order,
    orbit_structure,
    transitive_generators,
)
from .pattern import PeriodicPattern, Role, StrandRef
from .species import SpeciesSignature, group_species, species_signature
from .symmetry import AxisOrCentre, SymmetryGroup, axis_data, lattice_units, symmetry_group
from .topology import FallApartMode, fall_apart_mode, liftable_sets

log = logging.getLogger(__name__)

VALIDATED_ORDERS = (4, 8, 12, 16, 20)


# -- parameter laws -----------------------------------------------------------


@dataclass(frozen=True)
class FeasibleSpecies:
    species: str
    options: tuple[tuple[int, int], ...]
    extrapolated: bool = False


def feasible_species(order: int) -> list[FeasibleSpecies]:
    """Species of genus II and/or IV that a thin fall-apart design of ``order`` may show.

    Parallel-axes species satisfy ``order = 2ab`` and perpendicular-axes
    species ``order = 4ab``.  With ``q = order / 4``:

    * 3: ``(q, 2)`` for odd ``q``
    * 6: ``(1, order / 2)``, and ``(q, 2)`` for odd ``q``
    * 9: ``(2, q)`` for even ``q``
    * 15 and 19: ``(1, q)``
    * 23: ``(q, 1)``, and ``(1, q)`` for odd ``q``
    * 31: ``(1, q)`` for even ``q``

    Subscripts of 15, 19 and 23 record the parity of ``q``.  Orders outside
    4..20 are flagged as extrapolated.
    """
    extra = order not in VALIDATED_ORDERS
    out: list[FeasibleSpecies] = []

    def add(label, *options):
        opts = tuple(dict.fromkeys(options))
        if opts:
            out.append(FeasibleSpecies(label, opts, extra))

    if order % 2:
        return out
    if order % 4:
        add("6", (1, order // 2))
        return out
    q = order // 4
    odd = q % 2 == 1
    sub = "o" if odd else "e"
    if odd:
        add("3", (q, 2))
        add("6", (1, order // 2), (q, 2))
    else:
        add("6", (1, order // 2))
        add("9", (2, q))
    add(f"15_{sub}", (1, q))
    add(f"19_{sub}", (1, q))
    if odd:
        add(f"23_{sub}", (1, q), (q, 1))
    else:
        add(f"23_{sub}", (q, 1))
        add("31", (1, q))
    return out


def _feasible_pairs(order: int) -> set[tuple[str, tuple[int, int]]]:
    return {(f.species, ab) for f in feasible_species(order) for ab in f.options}


# -- configurations -----------------------------------------------------------


@dataclass(frozen=True)
class GroupConfiguration:
    """A species group fitted to the redundant checkerboard, up to conjugacy."""

    species: str
    ab_params: tuple[int, int]
    axes: tuple[AxisOrCentre, ...]
    lattice_unit: str
    group: SymmetryGroup = field(compare=False, repr=False)
    key: bytes = field(compare=True, repr=False)

    def summary(self) -> str:
        a, b = self.ab_params
        parts = [f"species {self.species}", f"a={a} b={b}", f"G1 {self.lattice_unit}"]
        parts += [x.describe() for x in self.axes if x.is_axis]
        return "; ".join(parts)


def _torus_elements(group: SymmetryGroup, n: int) -> set[SignedIsometry]:
    w, h = group.period
    out = set()
    for g in group.elements:
        for dx in range(0, 2 * n, 2 * w):
            for dy in range(0, 2 * n, 2 * h):
                tx, ty = g.translation
                out.add(SignedIsometry(g.point, (tx + dx, ty + dy), g.tau).reduced((2 * n, 2 * n)))
    return out


def placement_violations(config: GroupConfiguration) -> list[str]:
    """Diagonal glide axes breaking the parity law for the redundant checkerboard.

    A side-preserving glide-reflection with odd glide must lie through
    redundant cells and one with even glide through irredundant cells;
    side-reversing ones take the other placement.  Only axes in mirror
    position (through cells) are constrained.
    """
    from .colouring import _through_redundant

    bad = set()
    for g in config.group.elements:
        if not g.point.is_diagonal:
            continue
        _, k, glide = axis_data(g)
        if k % 2 or glide % 4 == 0:
            continue  # side position, or mirror-like
        odd = (glide // 2) % 2 == 1
        through = _through_redundant(g, 0)
        if through != (odd != g.tau):
            bad.add(f"{g}: glide {'odd' if odd else 'even'}, through {'redundant' if through else 'irredundant'} cells")
    return sorted(bad)


def _config_from(elements, n: int, key: bytes | None = None) -> GroupConfiguration | None:
    group = SymmetryGroup((n, n), tuple(sorted(elements, key=SignedIsometry.sort_key)))
    label, ab = group_species(group, n)
    if label is None or ab is None or (label, ab) not in _feasible_pairs(n):
        return None
    return GroupConfiguration(
        label,
        ab,
        group.inventory,
        lattice_units(group)["G1"].dimensions,
        group,
        key or conjugacy_key(elements, n),
    )


@lru_cache(maxsize=None)
def _generated_configurations(n: int) -> tuple[GroupConfiguration, ...]:
    period = (2 * n, 2 * n)
    seen, out = set(), {}
    for gens in transitive_generators(n):
        st = orbit_structure(gens, n)
        if st is None or (k := st.key()) in seen:
            continue
        seen.add(k)
        if not any(has_order(c, n) for c in st.designs()):
            continue
        els = _generated(gens, period)
        key = conjugacy_key(els, n)
        if key not in out:
            out[key] = _config_from(els, n, key)
    return tuple(c for c in out.values() if c is not None)


def fit_configurations(order: int) -> list[GroupConfiguration]:
    """Species groups of ``order`` fitted to the redundant checkerboard, up to conjugacy.

    Candidates are the groups generated during the orbit search together with
    the full groups of the resulting designs; those whose species and
    parameters are feasible are kept.
    """
    out = {c.key: c for c in _generated_configurations(order)}
    for design in _unique_designs(order):
        els = _torus_elements(symmetry_group(design), order)
        key = conjugacy_key(els, order)
        if key not in out and (c := _config_from(els, order, key)) is not None:
            out[key] = c
    return sorted(out.values(), key=lambda c: (_species_sort(c.species), c.ab_params, c.key))


# -- entries ------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogueEntry:
    name: DesignName
    design: PeriodicPattern
    species: SpeciesSignature
    configuration: GroupConfiguration | None
    liftable: tuple[frozenset[StrandRef], ...]

    def to_json(self) -> str:
        lift = [sorted(str(s) for s in part) for part in self.liftable]
        return json.dumps(
            {
                "name": str(self.name),
                "order": self.name.order,
                "index": self.name.index,
                "species": self.species.roth_label,
                "genus": sorted(self.species.genus_tags),
                "rows": self.design.rows(),
                "liftable": lift,
                "configuration": self.configuration.summary() if self.configuration else None,
            }
        )


def _species_sort(label: str | None):
    if label is None:
        return (999, "")
    base, _, sub = label.partition("_")
    return (int(base), sub)


@lru_cache(maxsize=None)
def _unique_designs(n: int) -> tuple[PeriodicPattern, ...]:
    """One pinned representative per equivalence class, in canonical order."""
    reps: dict[tuple, PeriodicPattern] = {}
    for cells in candidate_designs(n):
        p = PeriodicPattern(cells.copy(), Role.Design)
        k = canonical_key(p)
        if k not in reps:
            reps[k] = p
    return tuple(reps[k] for k in sorted(reps))


def _analyse(p: PeriodicPattern):
    group = symmetry_group(p)
    return group, species_signature(p, group), fall_apart_mode(p)


def _jobs(jobs: int | None) -> int:
    env = os.environ.get("WEAVE_JOBS")
    if env:
        return max(1, int(env))
    if jobs:
        return max(1, jobs)
    return os.cpu_count() or 1


def enumerate_fall_apart(
    order: int, mode: FallApartMode = FallApartMode.Thin, jobs: int | None = None
) -> list[CatalogueEntry]:
    """Every isonemal design of ``order`` falling apart in ``mode``, one per prefabric.

    Designs are classified by their full group; those outside the feasible
    species are dropped.  Output is sorted by species, index and sequence
    number, independent of ``jobs``.
    """
    if mode is not FallApartMode.Thin:
        raise ValueError("only the thin fall-apart catalogue is supported")
    designs = _unique_designs(order)
    workers = min(_jobs(jobs), max(1, len(designs)))
    if workers > 1 and len(designs) > 8:
        with ProcessPoolExecutor(workers) as pool:
            analysed = list(pool.map(_analyse, designs, chunksize=4))
    else:
        analysed = [_analyse(p) for p in designs]
    feasible = _feasible_pairs(order)
    configs = {c.key: c for c in fit_configurations(order)}
    kept = []
    for p, (group, sig, fam) in zip(designs, analysed):
        if fam is not FallApartMode.Thin or not group.is_transitive:
            continue
        if (sig.roth_label, sig.ab_params) not in feasible:
            log.info("dropping %s: species %s %s not feasible", p, sig.roth_label, sig.ab_params)
            continue
        cfg = configs.get(conjugacy_key(_torus_elements(group, order), order))
        kept.append((p, sig, cfg))
    return _name_entries(kept, order)


def _name_entries(kept, order: int) -> list[CatalogueEntry]:
    from .registry import known_names

    table = known_names()
    buckets = defaultdict(list)
    for p, sig, cfg in kept:
        buckets[binary_index(p)].append((canonical_key(p), p, sig, cfg))
    entries = []
    for (n, index), items in buckets.items():
        items.sort(key=lambda t: t[0])
        taken = {table[k].seq for k, *_ in items if k in table}
        spare = (s for s in range(1, len(items) + len(taken) + 1) if s not in taken)
        for k, p, sig, cfg in items:
            hit = table.get(k)
            seq = hit.seq if hit is not None and (hit.order, hit.index) == (n, index) else next(spare)
            name = DesignName(n, index, seq, True)
            entries.append(CatalogueEntry(name, p, sig, cfg, tuple(liftable_sets(p))))
    entries.sort(key=lambda e: (_species_sort(e.species.roth_label), e.name.index, e.name.seq))
    return entries


def write_jsonl(entries, stream) -> None:
    for e in entries:
        stream.write(e.to_json() + "\n")


# -- verification -------------------------------------------------------------

PRINTED_NAMES = {
    "12-69-2*": "3",
    "12-69-1*": "6",
    "16-277-4*": "9",
    "12-21-4*": "15_o",
    "16-277-2*": "15_e",
    "12-69-3*": "19_o",
    "16-85-3*": "19_e",
    "12-21-1*": "23_o",
    "8-5-1*": "23_e",
    "8-5-3*": "31",
}

# order -> (species -> entry count, index -> multiplicity)
EXPECTED = {
    20: (
        {"3": 6, "6": 6, "15_o": 12, "19_o": 12, "23_o": 6},
        {341: 6, 4433: 6, 16709: 6, 1109: 4, 4373: 4, 5141: 4, 17477: 4, 17489: 4, 17669: 4},
    ),
}


@dataclass
class VerificationReport:
    order: int
    discrepancies: list[str]
    species_counts: dict[str, int]
    index_counts: dict[int, int]
    palindromes: list[int]

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def lines(self) -> list[str]:
        out = [f"order {self.order}: {sum(self.species_counts.values())} entries"]
        out += [f"  species {s}: {c}" for s, c in sorted(self.species_counts.items(), key=lambda t: _species_sort(t[0]))]
        out += [f"  index {i}: {c}{' (palindrome)' if i in self.palindromes else ''}" for i, c in sorted(self.index_counts.items())]
        out += [f"  MISMATCH {d}" for d in self.discrepancies] or ["  all checks passed"]
        return out


def verify_catalogue(entries, order: int) -> VerificationReport:
    species = Counter(e.species.roth_label for e in entries)
    indices = Counter(e.name.index for e in entries)
    pal = sorted(i for i in indices if is_palindromic(index_word(i, order)))
    bad = []
    if order in EXPECTED:
        want_species, want_index = EXPECTED[order]
        if dict(species) != want_species:
            bad.append(f"species counts {dict(species)} != {want_species}")
        if dict(indices) != want_index:
            bad.append(f"index multiplicities {dict(indices)} != {want_index}")
        pal_count = {i for i in indices if indices[i] == 6}
        if set(pal) != pal_count:
            bad.append(f"palindromes {pal} do not carry multiplicity 6")
    if order <= 16:
        have = {str(e.name): e.species.roth_label for e in entries}
        for name, sp in PRINTED_NAMES.items():
            if DesignName.parse(name).order != order:
                continue
            if have.get(name) != sp:
                bad.append(f"{name} expected species {sp}, found {have.get(name)}")
    for e in entries:
        if e.species.roth_label is None:
            bad.append(f"{e.name} has no species label")
    return VerificationReport(order, bad, dict(species), dict(indices), pal)
