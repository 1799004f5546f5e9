"""Write tests/data/order40_twillin.wv.

The design is the first completion, in orbit-fill order, of the order-40
twillin generated by ``Id (18,2) tau`` and ``MirDiagUp (0,0) tau`` that is
isonemal of species 6 with a 4δx5δ lattice unit.
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from isoweave.isometry import Point, SignedIsometry  # noqa: E402
from isoweave.orbitfill import has_order, orbit_structure  # noqa: E402
from isoweave.pattern import PeriodicPattern, Role  # noqa: E402
from isoweave.species import species_signature  # noqa: E402
from isoweave.symmetry import lattice_units, symmetry_group  # noqa: E402

N = 40
GENERATORS = (SignedIsometry(Point.Id, (18, 2), True), SignedIsometry(Point.MirDiagUp, (0, 0), True))


def build() -> PeriodicPattern:
    st = orbit_structure(GENERATORS, N)
    for c in st.designs():
        if not has_order(c, N):
            continue
        p = PeriodicPattern(c, Role.Design)
        g = symmetry_group(p)
        if not g.is_transitive:
            continue
        if species_signature(p, g).roth_label == "6" and lattice_units(g)["G1"].dimensions == "4δx5δ":
            return p
    raise SystemExit("no completion of the requested kind")


def main():
    p = build()
    out = ROOT / "tests/data/order40_twillin.wv"
    out.write_text(p.serialize(["order-40 twillin: Id (18,2) tau and MirDiagUp (0,0) tau"]))
    print(f"wrote {out.relative_to(ROOT)}")


if __name__ == "__main__":
    main()
