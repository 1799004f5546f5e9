import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from isoweave.colouring import stripe_analysis
from isoweave.isometry import Point, SignedIsometry, about, translation
from isoweave.naming import word_variants
from isoweave.pattern import PeriodicPattern, parse_pattern, strand_sequence, strands
from isoweave.registry import named_designs
from isoweave.species import SpeciesClass, species_signature
from isoweave.symmetry import (
    CrystalType,
    Direction,
    Kind,
    closure,
    group_report,
    is_isonemal,
    is_symmetry,
    lattice_units,
    side_preserving_subgroup,
    symmetry_group,
)

from _data import corpus, corpus_designs, golden, order40

CHECKER = parse_pattern("#-\n-#")
DARK = parse_pattern("#")


def striped(name: str, phase: int) -> PeriodicPattern:
    return stripe_analysis(golden(name))[phase].pattern


class TestIsSymmetry:
    def test_checkerboard_shift_with_tau(self):
        assert is_symmetry(CHECKER, translation(1, 0, tau=True))
        assert not is_symmetry(CHECKER, translation(1, 0))

    def test_satin_quarter_turn_needs_tau(self):
        p = golden("10-1-1")
        assert is_symmetry(p, about(Point.R90, (1, 7), tau=True))
        assert not is_symmetry(p, about(Point.R90, (1, 7), tau=False))


class TestGroup:
    def test_all_dark_has_every_point(self):
        g = symmetry_group(DARK)
        assert {e.point for e in g.elements} == set(Point)
        assert g.crystal_type is CrystalType.other

    def test_satin_is_p4(self):
        g = symmetry_group(golden("10-1-1"))
        assert g.crystal_type is CrystalType.p4
        assert any(e.point is Point.R90 and e.tau for e in g.elements)

    def test_translations_only_is_p1(self):
        g = closure([translation(1, 2)], (5, 5))
        assert g.crystal_type is CrystalType.p1

    def test_species_3_h1_is_pg(self):
        p = striped("12-183-1", 1)
        assert str(species_signature(p).roth_label) == "3"
        assert side_preserving_subgroup(symmetry_group(p)).crystal_type is CrystalType.pg

    def test_species_23e_h1_is_pgg(self):
        p = striped("8-11-2", 1)
        assert species_signature(p).roth_label == "23_e"
        assert side_preserving_subgroup(symmetry_group(p)).crystal_type is CrystalType.pgg

    def test_cm_with_alternating_axes(self):
        # species 9: mirrors (always with tau) alternate with glide axes in one direction
        p = named_designs()["16-277-4*"]
        g = symmetry_group(p)
        assert g.crystal_type is CrystalType.cm
        axes = sorted((a.position, a.kind) for a in g.inventory if a.is_axis)
        assert len({a.direction for a in g.inventory if a.is_axis}) == 1
        assert {a.tau for a in g.inventory if a.kind is Kind.Mirror} == {True}
        kinds = [k for _, k in axes]
        assert all(x != y for x, y in zip(kinds, kinds[1:])) and len(set(kinds)) == 2

    def test_report_is_stable(self):
        g = symmetry_group(golden("8-11-1"))
        assert group_report(g) == group_report(symmetry_group(golden("8-11-1")))
        assert len(group_report(g)) == len(g.coset_reps)


class TestIsonemal:
    def test_satin(self):
        assert is_isonemal(golden("10-1-1"))

    def test_printed_catalogue_entry(self):
        assert is_isonemal(named_designs()["20-341-1*"])

    def test_striped_pattern_is_not(self):
        assert not is_isonemal(striped("8-11-1", 0))


class TestSpecies:
    def test_plain_weave_exceptional(self):
        assert species_signature(CHECKER).cls is SpeciesClass.Exceptional

    def test_23e(self):
        s = species_signature(named_designs()["8-5-1*"])
        assert s.cls is SpeciesClass.PerpendicularAxes
        assert s.roth_label == "23_e"
        assert s.genus_tags == {"II", "IV"}

    def test_species_3_at_order_20(self):
        s = species_signature(named_designs()["20-1109-1*"])
        assert s.cls is SpeciesClass.ParallelAxes
        assert not s.has_mirrors
        assert s.roth_label == "3"
        assert s.genus_tags == {"II"}
        assert s.ab_params == (5, 2)

    def test_satin_36s(self):
        s = species_signature(golden("10-1-1"))
        assert s.cls is SpeciesClass.QuarterTurn and s.roth_label == "36_s"

    def test_unlabelled_has_reason(self):
        s = species_signature(golden("8-19-5"))
        assert s.roth_label is not None or s.reason


class TestLatticeUnits:
    def test_all_dark(self):
        u = lattice_units(symmetry_group(DARK))["G1"]
        assert u.area == 1

    def test_order40_h1_is_twice_g1(self):
        units = lattice_units(symmetry_group(order40()))
        assert units["H1"].area == 2 * units["G1"].area
        assert units["G1"].dimensions == "4δx5δ"


@pytest.mark.parametrize("n", sorted(corpus()))
def test_corpus_group_laws(n):
    for p in corpus()[n]:
        g = symmetry_group(p)
        h1 = side_preserving_subgroup(g)
        assert len(g) // len(h1) in (1, 2) and len(g) % len(h1) == 0
        assert g.is_transitive
        if n > 4:
            # exceptional prefabrics (order below 5) may have side-preserving mirrors
            assert not any(a.kind is Kind.Mirror and not a.tau for a in g.inventory)
            assert not any(a.is_axis and a.direction in (Direction.Horizontal, Direction.Vertical) for a in g.inventory)
        words = {strand_sequence(p, s) for s in strands(p)}
        first = next(iter(words))
        assert all(w in word_variants(first) for w in words)


@pytest.mark.parametrize("n", [8, 10, 12])
def test_coset_reps_compose_to_symmetries(n):
    for p in corpus()[n][:15]:
        g = symmetry_group(p)
        for a, b in itertools.product(g.coset_reps, repeat=2):
            assert is_symmetry(p, a.compose(b))


def _naive_group(p: PeriodicPattern) -> set[SignedIsometry]:
    w, h = p.shape
    out = set()
    for pt in Point:
        for tau in (False, True):
            for tx in range(0, 2 * w, 2):
                for ty in range(0, 2 * h, 2):
                    for dx, dy in ((0, 0), (1, 1), (1, 0), (0, 1)):
                        g = SignedIsometry(pt, (tx + dx, ty + dy), tau)
                        if g.apply(1, 1)[0] % 2 == 0 or g.apply(1, 1)[1] % 2 == 0:
                            continue
                        if is_symmetry(p, g):
                            out.add(g.reduced((2 * w, 2 * h)))
    return out


@settings(max_examples=40, deadline=None)
@given(arrays(bool, st.tuples(st.integers(1, 6), st.integers(1, 6))))
def test_brute_force_oracle(cells):
    p = PeriodicPattern(cells)
    naive = _naive_group(p)
    got = {e.reduced((2 * p.width, 2 * p.height)) for e in symmetry_group(p).elements} if p.primitive().shape == p.shape else None
    if got is not None:
        assert got == naive
    else:
        assert all(is_symmetry(p, g) for g in symmetry_group(p).elements)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(list(corpus()[8]) + list(corpus()[12][:30])), st.integers(0, 11), st.integers(0, 11))
def test_reanchoring_conjugates(p, u, v):
    g = symmetry_group(p)
    q = p.shifted(u, v)
    t = translation(u, v)
    conj = {g.reduce(t.compose(e).compose(t.inverse())) for e in g.elements}
    assert conj == set(symmetry_group(q).elements)
    assert symmetry_group(q).crystal_type is g.crystal_type


def test_corpus_is_nonempty():
    assert len(corpus_designs()) == 713
