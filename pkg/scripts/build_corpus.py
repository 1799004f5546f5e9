"""Write every isonemal design of small order to tests/data/isonemal_corpus.json.

Usage: python3 scripts/build_corpus.py [ORDER ...]
"""

import json
import sys
from pathlib import Path

from isoweave.naming import canonical_key, canonical_pattern
from isoweave.orbitfill import candidate_designs
from isoweave.pattern import PeriodicPattern

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "isonemal_corpus.json"


def main(orders):
    data = json.loads(OUT.read_text()) if OUT.exists() else {}
    for n in orders:
        keys = {}
        for cells in candidate_designs(n, pinned=False):
            p = PeriodicPattern(cells)
            keys.setdefault(canonical_key(p), p)
        data[str(n)] = sorted(canonical_pattern(p).rows() for p in keys.values())
        print(n, len(keys), flush=True)
        OUT.write_text(json.dumps(data, indent=0, sort_keys=True))


if __name__ == "__main__":
    main([int(a) for a in sys.argv[1:]] or [3, 4, 5, 6, 7, 8, 9, 10, 11, 12])
