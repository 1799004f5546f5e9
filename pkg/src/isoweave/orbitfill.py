"""Exhaustive search for isonemal designs of a given order.

Designs of order ``n`` live on the ``n x n`` torus.  Every isonemal design is
invariant under a strand-transitive group, and every such group contains one
of the small generating configurations listed by :func:`transitive_generators`.
Filling the cell orbits of each configuration in every consistent way
therefore reaches every design.

In the *pinned* setting cells ``(odd, odd)`` are dark and ``(even, even)``
pale (the thin redundant checkerboard) and only isometries preserving that
structure are used; this is the fast path for prefabrics that fall apart
thinly.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .isometry import Point, SignedIsometry, cell_maps

log = logging.getLogger(__name__)


def checkerboard(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Masks ``(dark, pale)`` of the redundant cells, indexed ``[j, i]``."""
    j, i = np.mgrid[0:n, 0:n]
    return (i % 2 == 1) & (j % 2 == 1), (i % 2 == 0) & (j % 2 == 0)


def _image(g: SignedIsometry, n: int) -> tuple[np.ndarray, np.ndarray]:
    ci, cj = cell_maps(g, n, n)
    return ci % n, cj % n


def fit_tau(g: SignedIsometry, n: int) -> SignedIsometry | None:
    """``g`` with the side flag that respects the checkerboard, or None if impossible."""
    dark, pale = checkerboard(n)
    ci, cj = _image(g, n)
    if dark[cj, ci][dark].all() and pale[cj, ci][pale].all():
        action = False
    elif pale[cj, ci][dark].all() and dark[cj, ci][pale].all():
        action = True
    else:
        return None
    return SignedIsometry(g.point, g.translation, action != g.point.swaps)


@lru_cache(maxsize=None)
def compatible_elements(n: int, pinned: bool = True) -> tuple[SignedIsometry, ...]:
    """Isometries modulo the ``n x n`` torus.

    With ``pinned`` only the checkerboard-preserving ones, each with its forced
    side flag; otherwise every point part, translation and side flag.
    """
    out = []
    for pt in Point:
        for tx in range(0, 2 * n, 2):
            for ty in range(0, 2 * n, 2):
                if pinned:
                    g = fit_tau(SignedIsometry(pt, (tx, ty)), n)
                    if g is not None:
                        out.append(g)
                else:
                    out.extend(SignedIsometry(pt, (tx, ty), tau) for tau in (False, True))
    return tuple(out)


def _normalizer_generators(n: int, pinned: bool) -> list[SignedIsometry]:
    if not pinned:
        return [
            SignedIsometry(Point.Id, (2, 0)),
            SignedIsometry(Point.Id, (0, 2)),
            *(SignedIsometry(pt) for pt in Point if pt is not Point.Id),
        ]
    els = compatible_elements(n)
    gens = [g for g in els if g.point is Point.Id and g.translation in ((2, 2), (4, 0), (0, 4))]
    for pt in Point:
        first = next((g for g in els if g.point is pt), None)
        if first is not None and pt is not Point.Id:
            gens.append(first)
    return gens


def conjugacy_representatives(elements, n: int, pinned: bool = True) -> list[SignedIsometry]:
    """One element from each class under conjugation by the normalizer of the setting."""
    period = (2 * n, 2 * n)
    gens = _normalizer_generators(n, pinned)
    pending = {g.reduced(period) for g in elements}
    reps = []
    while pending:
        start = min(pending)
        reps.append(start)
        seen = {start}
        queue = deque([start])
        while queue:
            g = queue.popleft()
            for h in gens:
                c = h.compose(g).compose(h.inverse()).reduced(period)
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
        pending -= seen
    return reps


def _generated(gens, period) -> set[SignedIsometry]:
    group = {SignedIsometry(Point.Id)}
    queue = list(group)
    while queue:
        g = queue.pop()
        for h in gens:
            c = h.compose(g).reduced(period)
            if c not in group:
                group.add(c)
                queue.append(c)
    return group


def _warp_shifts(n: int, u: int, pinned: bool):
    """Elements moving every warp ``u`` columns along: translations and horizontal glides."""
    for pt in (Point.Id, Point.MirY):
        for v in range(n):
            for tau in (False, True):
                g = SignedIsometry(pt, ((2 * u) % (2 * n), 2 * v), tau)
                if pinned and fit_tau(g, n) != g:
                    continue
                yield g


def transitive_generators(n: int, pinned: bool = True):
    """Generating sets covering every strand-transitive group of the setting.

    A transitive group acts transitively on warps, so either some element
    (a translation or horizontal glide-reflection) moves warps by one column,
    or such elements move them by two and a half-turn or vertical reflection
    reverses them.  Conjugation lets the swap
    element (first case) or the reversing element (second case) be taken from
    a list of class representatives; in the second case swaps differing by an
    element of the other generators' group are interchangeable.
    """
    if pinned and n % 2:
        return
    period = (2 * n, 2 * n)
    els = compatible_elements(n, pinned)
    swaps = [g for g in els if g.point.swaps]
    for s in conjugacy_representatives(swaps, n, pinned):
        for t in _warp_shifts(n, 1, pinned):
            yield (t, s)
    if n % 2:
        return
    # warp i -> a - i with a odd: translation x-component 2a + 2 = 0 mod 4
    reversing = [
        g
        for g in els
        if g.point in (Point.R180, Point.MirX) and (g.translation[0] // 2) % 2 == 0
    ]
    for r in conjugacy_representatives(reversing, n, pinned):
        for t in _warp_shifts(n, 2, pinned):
            sub = _generated((t, r), period)
            covered = set()
            for s in swaps:
                if s in covered:
                    continue
                covered.update(s.compose(h).reduced(period) for h in sub)
                yield (t, r, s)


@dataclass(frozen=True)
class OrbitStructure:
    """Cell orbits of a group, with colour parity, pinned by the checkerboard."""

    n: int
    base: np.ndarray  # pinned colours (free cells arbitrary)
    free_index: np.ndarray  # -1 for pinned cells, else orbit number
    free_flip: np.ndarray  # colour of a free cell is bit xor flip
    free_count: int

    def key(self) -> bytes:
        return self.free_index.tobytes() + self.free_flip.tobytes() + self.base.tobytes()

    def designs(self) -> np.ndarray:
        """All ``2**free_count`` fillings, shape ``(count, n, n)``."""
        k = self.free_count
        bits = ((np.arange(2**k)[:, None] >> np.arange(k)[None, :]) & 1).astype(bool)
        out = np.broadcast_to(self.base, (2**k, self.n, self.n)).copy()
        mask = self.free_index >= 0
        idx = self.free_index[mask]
        out[:, mask] = bits[:, idx] ^ self.free_flip[mask][None, :]
        return out


def orbit_structure(
    generators, n: int, pinned: bool = True, fixed: tuple[np.ndarray, np.ndarray] | None = None
) -> OrbitStructure | None:
    """Orbits of the cell/colour graph, or None when no design is invariant.

    Cells are fixed by the checkerboard when ``pinned``, and by ``fixed``
    (a mask and the colours of the masked cells) when given.
    """
    cells = n * n
    src, dst = [], []
    flat = np.arange(cells)
    for g in generators:
        ci, cj = _image(g, n)
        img = (cj * n + ci).ravel()
        a = int(g.colour_action)
        for b in (0, 1):
            src.append(flat * 2 + b)
            dst.append(img * 2 + (b ^ a))
    src = np.concatenate(src)
    dst = np.concatenate(dst)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(2 * cells, 2 * cells))
    _, comp = connected_components(graph, directed=False)
    c0, c1 = comp[0::2], comp[1::2]
    if (c0 == c1).any():
        return None
    true = np.zeros(comp.max() + 1, dtype=bool)
    if pinned:
        dark, pale = checkerboard(n)
        true[c1[dark.ravel()]] = True
        true[c0[pale.ravel()]] = True
    if fixed is not None:
        mask, values = (a.ravel() for a in fixed)
        true[c1[mask & values]] = True
        true[c0[mask & ~values]] = True
    if (true[c0] & true[c1]).any():
        return None
    held = true[c0] | true[c1]
    base = true[c1].reshape(n, n)
    rep = np.minimum(c0, c1)
    free_reps, free_index = np.unique(rep[~held], return_inverse=True)
    fi = np.full(cells, -1)
    fi[~held] = free_index
    flip = (c0 == rep) & ~held  # colour 1 lives in the partner component
    return OrbitStructure(
        n, base, fi.reshape(n, n), flip.reshape(n, n), len(free_reps)
    )


def has_order(cells: np.ndarray, n: int) -> bool:
    """Whether warp 0 and weft 0 have primitive period exactly ``n``.

    For an isonemal design every strand then has order ``n``.
    """
    for line in (cells[:, 0], cells[0, :]):
        for d in range(1, n):
            if n % d == 0 and np.array_equal(line, np.roll(line, d)):
                return False
    return True


def candidate_designs(n: int, pinned: bool = True, max_free: int = 24):
    """Distinct cell arrays of every order-``n`` design reached by the search.

    ``pinned`` restricts to designs with the thin redundant checkerboard;
    otherwise all isonemal designs of order ``n`` are produced (up to
    repetition).  Orbit structures with more than ``max_free`` free orbits are
    skipped with a warning.
    """
    seen_structures = set()
    seen = set()
    for gens in transitive_generators(n, pinned):
        st = orbit_structure(gens, n, pinned)
        if st is None:
            continue
        key = st.key()
        if key in seen_structures:
            continue
        seen_structures.add(key)
        if st.free_count > max_free:
            log.warning("skipping orbit structure with %d free orbits", st.free_count)
            continue
        for cells in st.designs():
            raw = cells.tobytes()
            if raw in seen:
                continue
            seen.add(raw)
            if has_order(cells, n):
                yield cells


def conjugacy_key(elements, n: int) -> bytes:
    """Canonical form of a pinned group under checkerboard-preserving conjugation.

    Two groups get the same key exactly when some compatible isometry
    conjugates one onto the other.  Translations are handled in bulk: a
    translation by ``t`` moves the translation part of ``(A, v)`` to
    ``v + (I - A) t``.
    """
    m = 2 * n
    point_reps = [g for g in _normalizer_generators(n, True) if g.point is not Point.Id]
    point_reps.insert(0, SignedIsometry(Point.Id))
    shifts = np.array(
        [(x, y) for x in range(0, m, 2) for y in range(0, m, 2) if (x - y) % 4 == 0]
    )
    best = None
    for h in point_reps:
        hi = h.inverse()
        conj = [h.compose(g).compose(hi) for g in elements]
        pts = np.array([g.point.value for g in conj])
        tau = np.array([int(g.tau) for g in conj])
        vec = np.array([g.translation for g in conj])
        mats = np.array([g.point.matrix for g in conj])  # (k, 2, 2)
        moved = shifts[:, None, :] - np.einsum("kab,sb->ska", mats, shifts)
        v = (vec[None, :, :] + moved) % m
        codes = ((pts * 2 + tau)[None, :] * m + v[..., 0]) * m + v[..., 1]
        codes.sort(axis=1)
        row = codes[np.lexsort(codes.T[::-1])[0]]
        if best is None or tuple(row) < tuple(best):
            best = row
    return np.asarray(best, dtype=np.int64).tobytes()
