import numpy as np
import pytest

from isoweave.colouring import (
    NORMAL,
    ColouringKind,
    StrandColouring,
    glide_transitive,
    is_perfect,
    make_colouring,
    obverse_pattern,
    parse_colouring,
    partial_fabric,
    redundant_cells,
    reverse_pattern,
    stripable_thin,
    stripe_analysis,
    unstripe,
)
from isoweave.isometry import Point
from isoweave.naming import canonical_key, canonical_name
from isoweave.pattern import PeriodicPattern, complement, order_of, parse_pattern
from isoweave.species import species_signature
from isoweave.symmetry import symmetry_group
from isoweave.topology import FallApartMode, fall_apart_mode, has_thin_checkerboard

from _data import corpus, corpus_designs, golden, order40, random_design

CHECKER = parse_pattern("#-\n-#")
DARK = parse_pattern("#")
PALE = parse_pattern("-")
THIN = [make_colouring("thin", phase=k) for k in (0, 1)]


def satin(n: int, step: int) -> PeriodicPattern:
    """One pale cell per strand, at row ``step * i`` in column ``i``."""
    j, i = np.mgrid[0:n, 0:n]
    return PeriodicPattern((j - step * i) % n != 0)


def twillin() -> PeriodicPattern:
    """5x5 design with symmetry translation (2, 1), which has mixed parity."""
    return satin(5, 3)


def has_quarter_turn(p: PeriodicPattern) -> bool:
    return any(g.point in (Point.R90, Point.R270) for g in symmetry_group(p).elements)


class TestMakeColouring:
    def test_thin_phase_0(self):
        c = make_colouring(ColouringKind.ThinStripe, order=4, phase=0)
        assert [c.warp(i) for i in range(4)] == [False, True, False, True]
        assert [c.weft(j) for j in range(4)] == [False, True, False, True]
        assert not c.flags

    def test_thin_phase_1_swaps_warps(self):
        c = make_colouring("thin", phase=1)
        assert [c.warp(i) for i in range(2)] == [True, False]

    def test_normal(self):
        c = make_colouring("normal", order=7)
        assert c.warp(3) and not c.weft(3)

    def test_thick(self):
        c = make_colouring("thick", order=8, phase=1)
        assert [c.warp(i) for i in range(4)] == [True, False, False, True]

    def test_thick_redundant_cells_are_box_weave(self):
        mask = redundant_cells(parse_pattern("#"), make_colouring("thick", phase=0))
        assert str(canonical_name(PeriodicPattern(mask), False)) == "4-3-1"

    def test_flags(self):
        assert make_colouring("thin", order=5).flags
        assert make_colouring("thick", order=6).flags
        assert not make_colouring("thick", order=12).flags

    @pytest.mark.parametrize("kind, phase", [("thin", 2), ("thick", 4)])
    def test_bad_phase(self, kind, phase):
        with pytest.raises(ValueError):
            make_colouring(kind, phase=phase)


class TestParseColouring:
    def test_named(self):
        assert parse_colouring("normal") == NORMAL
        assert parse_colouring("thin 1") == THIN[1]
        assert parse_colouring("thick 2") == make_colouring("thick", phase=2)

    def test_words(self):
        c = parse_colouring("warps DDP\nwefts P")
        assert c == StrandColouring((True, True, False), (False,))
        assert str(c) == "warps DDP / wefts P"

    @pytest.mark.parametrize("text", ["", "thin", "warps DX\nwefts P", "warps D"])
    def test_rejects(self, text):
        with pytest.raises(ValueError):
            parse_colouring(text)


class TestViews:
    def test_all_pale_rows_follow_wefts(self):
        for c in THIN:
            assert obverse_pattern(PALE, c) == parse_pattern("#\n-")

    def test_all_pale_reverse_columns_follow_warps(self):
        assert reverse_pattern(PALE, THIN[0]) == parse_pattern("#-")
        assert reverse_pattern(PALE, THIN[1]) == parse_pattern("-#")

    def test_normal_reproduces_design(self):
        p = golden("8-11-1")
        assert obverse_pattern(p, NORMAL) == p

    def test_trivial_and_plain_weave_share_patterns(self):
        def seen(designs):
            return {obverse_pattern(d, c).serialize([]) for d in designs for c in THIN}

        trivial = seen([DARK, PALE])
        assert trivial == seen([CHECKER, complement(CHECKER)])
        assert len(trivial) == 3

    def test_satin_thin_phase_0(self):
        pat = obverse_pattern(golden("10-1-1"), THIN[0])
        assert pat.shape == (10, 10)
        assert not symmetry_group(pat).is_transitive


def test_reverse_view_law_1000(rng):
    """Redundant cells look alike from both sides; irredundant cells are complementary."""
    kinds = [NORMAL] + THIN + [make_colouring("thick", phase=k) for k in range(4)]
    for _ in range(1000):
        d = random_design(rng, 12)
        if rng.random() < 0.5:
            c = kinds[int(rng.integers(len(kinds)))]
        else:
            c = StrandColouring(
                tuple(bool(x) for x in rng.integers(0, 2, int(rng.integers(1, 5)))),
                tuple(bool(x) for x in rng.integers(0, 2, int(rng.integers(1, 5)))),
            )
        red = redundant_cells(d, c)
        h, w = red.shape
        ob = obverse_pattern(d, c).tile(w, h)
        rv = reverse_pattern(d, c).tile(w, h)[:, ::-1]
        assert np.array_equal(rv[red], ob[red])
        assert np.array_equal(rv[~red], ~ob[~red])


class TestPerfect:
    def test_satin_thin(self):
        for c in THIN:
            assert is_perfect(golden("10-1-1"), c)

    def test_twillin_witness_mixed_parity(self):
        v = is_perfect(twillin(), THIN[0])
        assert not v
        g = v.witness
        assert g.is_translation
        x, y = g.translation[0] // 2, g.translation[1] // 2
        assert (x - y) % 2 == 1

    def test_normal_on_corpus(self):
        assert all(is_perfect(p, NORMAL) for p in corpus_designs())


class TestStripable:
    def test_satin_36s(self):
        assert stripable_thin(golden("10-1-1")).phases == (0, 1)

    def test_8_3_satin(self):
        p = satin(8, 3)
        assert str(canonical_name(p, False)) == "8-1-1"
        assert stripable_thin(p)

    def test_twillin(self):
        s = stripable_thin(twillin())
        assert not s and any("mixed parity" in r for r in s.reasons)


def names(name: str) -> list[str]:
    return sorted(r.summary() for r in stripe_analysis(golden(name)))


class TestStripeAnalysis:
    def test_8_27_5(self):
        assert names("8-27-5") == ["4-1-1*", "8-5-3*"]

    def test_8_11_1(self):
        assert names("8-11-1") == ["8-5-3*", "non-isonemal"]

    def test_8_19_5(self):
        assert names("8-19-5") == ["4-1-1*", "non-isonemal"]

    def test_8_11_2(self):
        assert names("8-11-2") == ["8-5-1*", "non-isonemal"]

    def test_12_183_1(self):
        assert names("12-183-1") == ["12-21-2*", "12-69-2*"]

    def test_satin_neither_isonemal(self):
        assert names("10-1-1") == ["non-isonemal", "non-isonemal"]

    def test_12_79_1_one_isonemal_phase(self):
        results = stripe_analysis(golden("12-79-1"))
        iso = [r for r in results if r.is_isonemal]
        assert len(iso) == 1 and iso[0].falls_apart and iso[0].pattern.shape == (12, 12)

    def test_imperfect_still_reports(self):
        results = stripe_analysis(twillin())
        assert len(results) == 2 and not any(r.perfect for r in results)


def exemplars() -> list[PeriodicPattern]:
    return [p for p in corpus_designs() if glide_transitive(symmetry_group(p))]


class TestTheorems:
    def test_stripable_iff_perfect(self):
        checked = 0
        for p in corpus_designs():
            if order_of(p) <= 4:
                continue
            verdicts = [is_perfect(p, c).verdict for c in THIN]
            assert bool(stripable_thin(p)) == any(verdicts)
            if stripable_thin(p):
                assert all(verdicts)
                checked += 1
        assert checked > 500

    def test_quarter_turns_perfect_iff_36s(self):
        seen = 0
        for p in corpus_designs():
            if not has_quarter_turn(p) or order_of(p) <= 4:
                continue
            seen += 1
            perfect = all(is_perfect(p, c) for c in THIN)
            assert perfect == (species_signature(p).roth_label == "36_s")
        assert seen > 10

    def test_quarter_turns_never_stripe_isonemal(self):
        for p in corpus_designs():
            if has_quarter_turn(p) and order_of(p) > 4:
                assert not any(r.is_isonemal for r in stripe_analysis(p))

    def test_glide_transitive_exemplars(self):
        found = exemplars()
        assert len(found) >= 15
        for p in found:
            for r in stripe_analysis(p):
                assert r.is_isonemal and r.falls_apart
                assert r.correspondence and r.correspondence_holds

    def test_stripe_outputs_in_listed_species(self):
        allowed = {"3", "6", "9", "15", "19", "23", "31"}
        seen = 0
        for p in corpus_designs():
            if order_of(p) <= 4 or not stripable_thin(p):
                continue
            for r in stripe_analysis(p):
                if not r.is_isonemal or order_of(r.pattern) <= 4:
                    continue
                sig = species_signature(r.pattern)
                assert sig.base_species in allowed, (p, sig)
                assert sig.genus_tags <= {"II", "IV"}
                seen += 1
        assert seen > 20


class TestUnstripe:
    def test_partial_fabric_complements_dark_rows(self):
        pat = stripe_analysis(golden("8-11-1"))[1].pattern
        cells, known, (a, b) = partial_fabric(pat)
        assert known.sum() * 2 == known.size

    def test_requires_checkerboard(self):
        with pytest.raises(ValueError):
            unstripe(DARK)

    @pytest.mark.parametrize("text", ["-#", "#-", "#\n-"])
    def test_non_uniqueness(self, text):
        r = unstripe(parse_pattern(text))
        got = {str(canonical_name(c, fall_apart_mode(c) is not FallApartMode.None_)) for c in r.candidates}
        assert {"1-0-1*", "2-1-1"} <= got

    def test_candidates_stripe_back(self):
        f = min(exemplars(), key=lambda p: p.cells.size)
        pat = stripe_analysis(f)[0].pattern
        r = unstripe(pat, scale=max(1, f.width // pat.width))
        assert r.ok
        for c in r.candidates:
            assert any(obverse_pattern(c, t) == pat for t in THIN)
            assert symmetry_group(c).is_transitive

    @pytest.mark.slow
    def test_exemplar_round_trips(self):
        for f in exemplars():
            for r in stripe_analysis(f):
                scale = max(1, f.width // r.pattern.width)
                got = {canonical_key(c) for c in unstripe(r.pattern, scale=scale).candidates}
                assert canonical_key(f) in got

    def test_12_79_1_from_its_striping(self):
        # 12-79-1 lacks a glide-generated H1, so its symmetries do not all carry over
        f = golden("12-79-1")
        pat = next(r.pattern for r in stripe_analysis(f) if r.is_isonemal)
        got = {canonical_key(c) for c in unstripe(pat, exhaustive=True).candidates}
        assert canonical_key(f) in got

    @pytest.mark.slow
    def test_order40_fails_with_forced_unit(self):
        r = unstripe(order40())
        assert not r.ok
        assert r.obstruction == "4δx10δ"
        assert "no strand-transitive completion" in r.diagnosis


def test_catalogue_rows_three_quarters_dark():
    from isoweave.registry import named_designs

    for name, p in named_designs().items():
        if not name.startswith("20-"):
            continue
        a, b = has_thin_checkerboard(p)
        c = p.cells
        assert c[b::2].mean() == 0.75 and c[1 - b :: 2].mean() == 0.25
        assert complement(p).cells[b::2].mean() == 0.25
        assert c.mean() == 0.5


def test_corpus_orders():
    assert set(corpus()) >= {8, 12}
