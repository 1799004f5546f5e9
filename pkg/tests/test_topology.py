import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from isoweave.isometry import Point, SignedIsometry
from isoweave.pattern import PeriodicPattern, StrandKind, StrandRef, complement, parse_pattern, transform
from isoweave.registry import named_designs
from isoweave.topology import (
    FallApartMode,
    fall_apart_mode,
    hangs_together,
    has_thin_checkerboard,
    interlacement,
    liftable_sets,
)

from _data import golden, random_design

CHECKER = parse_pattern("#-\n-#")
DARK = parse_pattern("#")
BOX = parse_pattern("##--\n##--\n--##\n--##")


def exhaustive_falls_apart(p: PeriodicPattern) -> bool:
    """Search every proper nonempty strand subset for one lying wholly on top.

    Dark means the warp is uppermost.  A subset L lifts off when no crossing
    has a strand of L underneath a strand outside L.
    """
    q = p.primitive()
    w, h = q.shape
    dark = q.cells.astype(np.int64)  # [j, i]
    n = w + h
    masks = np.arange(1, 2**n - 1, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(n)) & 1
    warp, weft = bits[:, :w], bits[:, w:]
    # warp in L under a weft outside L: pale cell
    bad_warp = (warp @ (1 - dark).T * (1 - weft)).sum(axis=1)
    # weft in L under a warp outside L: dark cell
    bad_weft = (weft @ dark * (1 - warp)).sum(axis=1)
    return bool(np.any((bad_warp == 0) & (bad_weft == 0)))


def test_oracle_agreement_1000(rng):
    agree = 0
    for _ in range(1000):
        p = random_design(rng, 12)
        agree += hangs_together(p) != exhaustive_falls_apart(p)
    assert agree == 1000


class TestInterlacement:
    def test_plain_weave_is_a_cycle(self):
        # each warp meets each weft once per period, alternately over and under
        g = interlacement(CHECKER)
        assert g.number_of_edges() == 4
        assert all(g.in_degree(s) == g.out_degree(s) == 1 for s in g.nodes)
        assert hangs_together(CHECKER)

    def test_all_dark_wefts_under(self):
        g = interlacement(DARK)
        assert list(g.edges) == [(StrandRef(StrandKind.Weft, 0), StrandRef(StrandKind.Warp, 0))]

    def test_box_weave(self):
        g = interlacement(BOX)
        warps = [StrandRef(StrandKind.Warp, i) for i in range(4)]
        wefts = [StrandRef(StrandKind.Weft, j) for j in range(4)]
        for a in warps:
            for b in wefts:
                assert g.has_edge(a, b) != g.has_edge(b, a)  # each pair crosses once per period
        assert all(g.has_edge(a, b) or g.has_edge(b, a) for a in warps for b in wefts)

    def test_every_pair_crosses(self, rng):
        for _ in range(30):
            p = random_design(rng).primitive()
            g = interlacement(p)
            for i in range(p.width):
                for j in range(p.height):
                    a, b = StrandRef(StrandKind.Warp, i), StrandRef(StrandKind.Weft, j)
                    assert g.has_edge(a, b) or g.has_edge(b, a)


class TestHangsTogether:
    def test_plain_weave(self):
        assert hangs_together(CHECKER)

    def test_trivial(self):
        assert not hangs_together(DARK)

    def test_striped_fabric_falls_apart(self):
        assert not hangs_together(named_designs()["8-5-3*"])

    def test_golden_fabrics_hang_together(self):
        for name in ("8-11-1", "8-11-2", "8-19-5", "8-27-5", "12-183-1", "12-79-1", "10-1-1"):
            assert hangs_together(golden(name))

    @settings(max_examples=60, deadline=None)
    @given(arrays(bool, st.tuples(st.integers(1, 6), st.integers(1, 6))), st.sampled_from(list(Point)), st.booleans(), st.booleans())
    def test_invariant_under_isometries_and_complement(self, cells, pt, tau, comp):
        p = PeriodicPattern(cells)
        q = transform(p, SignedIsometry(pt, (0, 0), tau))
        if comp:
            q = complement(q)
        assert hangs_together(q) == hangs_together(p)

    def test_xor_liftable(self, rng):
        for _ in range(200):
            p = random_design(rng)
            assert hangs_together(p) != bool(liftable_sets(p))


class TestLiftable:
    def test_all_dark_lifts_warps(self):
        assert liftable_sets(DARK) == [frozenset({StrandRef(StrandKind.Warp, 0)})]

    def test_alternate_strands_lift(self):
        p = named_designs()["20-341-1*"]
        sets = liftable_sets(p)
        assert sets
        for s in sets:
            warps = sorted(x.index for x in s if x.kind is StrandKind.Warp)
            wefts = sorted(x.index for x in s if x.kind is StrandKind.Weft)
            assert len(warps) == p.width // 2 and len(wefts) == p.height // 2
            assert len({i % 2 for i in warps}) == 1 and len({j % 2 for j in wefts}) == 1

    def test_single_free_warp(self):
        p = parse_pattern("##-#\n#-#-\n##-#\n#-#-")
        assert liftable_sets(p) == [frozenset({StrandRef(StrandKind.Warp, 0)})]
        assert fall_apart_mode(p) is FallApartMode.Other

    def test_hanging_together_has_none(self):
        assert liftable_sets(CHECKER) == []


class TestMode:
    def test_trivial_is_layer(self):
        assert fall_apart_mode(DARK) is FallApartMode.Layer

    def test_plain_weave_none(self):
        assert fall_apart_mode(CHECKER) is FallApartMode.None_

    def test_catalogue_entries_thin(self):
        for name, p in named_designs().items():
            if name.startswith("20-"):
                assert fall_apart_mode(p) is FallApartMode.Thin

    def test_thin_implies_checkerboard(self, rng):
        seen = 0
        for name, p in named_designs().items():
            if fall_apart_mode(p) is FallApartMode.Thin:
                assert has_thin_checkerboard(p) is not None
                seen += 1
        for _ in range(400):
            p = random_design(rng, 10)
            if fall_apart_mode(p) is FallApartMode.Thin:
                assert has_thin_checkerboard(p) is not None
                seen += 1
        assert seen > 40

    def test_thick(self):
        # warps and wefts 0, 1 ride over 2, 3; each pair is woven plainly within itself
        j, i = np.mgrid[0:4, 0:4]
        top_warp, top_weft = i < 2, j < 2
        cells = np.where(top_warp & ~top_weft, True, np.where(~top_warp & top_weft, False, (i + j) % 2 == 0))
        p = PeriodicPattern(cells)
        assert fall_apart_mode(p) is FallApartMode.Thick
        lifted = liftable_sets(p)[0]
        assert {(s.kind, s.index) for s in lifted} == {(k, x) for k in StrandKind for x in (0, 1)}


@pytest.mark.parametrize("seed", range(3))
def test_modes_are_consistent(seed):
    rng = np.random.default_rng(seed)
    for _ in range(100):
        p = random_design(rng, 10)
        mode = fall_apart_mode(p)
        assert (mode is FallApartMode.None_) == hangs_together(p)
