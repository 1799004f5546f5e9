"""Whether a prefabric hangs together, and how it falls apart."""

from __future__ import annotations

from enum import Enum
from itertools import product

import networkx as nx

from .pattern import PeriodicPattern, StrandKind, StrandRef


class FallApartMode(Enum):
    None_ = "none"
    Thin = "thin"
    Thick = "thick"
    Layer = "layer"
    Other = "other"


def interlacement(p: PeriodicPattern) -> nx.DiGraph:
    """Arc ``s -> t`` when strand ``s`` passes under strand ``t`` somewhere.

    Strand classes are taken on the primitive period rectangle.  Nodes are
    warps then wefts in ascending order.
    """
    q = p.primitive()
    g = nx.DiGraph()
    warps = [StrandRef(StrandKind.Warp, i) for i in range(q.width)]
    wefts = [StrandRef(StrandKind.Weft, j) for j in range(q.height)]
    g.add_nodes_from(warps + wefts)
    for j in range(q.height):
        for i in range(q.width):
            if q.cells[j, i]:
                g.add_edge(wefts[j], warps[i])
            else:
                g.add_edge(warps[i], wefts[j])
    return g


def hangs_together(p: PeriodicPattern) -> bool:
    return nx.is_strongly_connected(interlacement(p))


def liftable_sets(p: PeriodicPattern) -> list[frozenset[StrandRef]]:
    """Strand sets lying wholly on top of the rest, smallest first.

    These are the components of the condensation with no arc leaving them
    (nothing of the rest passes over them).
    """
    g = interlacement(p)
    cond = nx.condensation(g)
    if cond.number_of_nodes() == 1:
        return []
    tops = [
        frozenset(cond.nodes[c]["members"]) for c in cond.nodes if cond.out_degree(c) == 0
    ]
    return sorted(tops, key=lambda s: (len(s), sorted((x.kind.value, x.index) for x in s)))


def is_liftable(g: nx.DiGraph, subset) -> bool:
    """No arc leaves ``subset``: every neighbour outside lies underneath."""
    subset = set(subset)
    if not subset or len(subset) == g.number_of_nodes():
        return False
    return all(t in subset for s in subset for t in g.successors(s))


def _strands_where(q: PeriodicPattern, warp_ok, weft_ok) -> set[StrandRef]:
    return {StrandRef(StrandKind.Warp, i) for i in range(q.width) if warp_ok(i)} | {
        StrandRef(StrandKind.Weft, j) for j in range(q.height) if weft_ok(j)
    }


def fall_apart_mode(p: PeriodicPattern) -> FallApartMode:
    q = p.primitive()
    g = interlacement(q)
    if nx.is_strongly_connected(g):
        return FallApartMode.None_
    w, h = q.shape
    if w % 2 == 0 and h % 2 == 0:
        for a, b in product((0, 1), repeat=2):
            s = _strands_where(q, lambda i: i % 2 == a, lambda j: j % 2 == b)
            if is_liftable(g, s):
                return FallApartMode.Thin
    if w % 4 == 0 and h % 4 == 0:
        for a, b in product(range(4), repeat=2):
            s = _strands_where(q, lambda i: (i - a) % 4 < 2, lambda j: (j - b) % 4 < 2)
            if is_liftable(g, s):
                return FallApartMode.Thick
    for s in (
        _strands_where(q, lambda i: True, lambda j: False),
        _strands_where(q, lambda i: False, lambda j: True),
    ):
        if is_liftable(g, s):
            return FallApartMode.Layer
    return FallApartMode.Other


def has_thin_checkerboard(p: PeriodicPattern) -> tuple[int, int] | None:
    """Anchor ``(a, b)`` with cells ``(a, b) mod 2`` dark and ``(a+1, b+1) mod 2`` pale."""
    q = p.primitive()
    c = q.tile(q.width * (1 + q.width % 2), q.height * (1 + q.height % 2))
    for a, b in product((0, 1), repeat=2):
        if c[b::2, a::2].all() and not c[1 - b :: 2, 1 - a :: 2].any():
            return a, b
    return None
