"""Write src/isoweave/data/names.json and the golden fabric files.

Sequence numbers within an order-index bucket follow catalogue usage where it
is known; the rules below encode it per species, and remaining ties go by
canonical-key rank.  Golden fabrics are fixed by their rows.
"""

from __future__ import annotations

import json
import sys
from collections import defaultdict
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from isoweave.catalogue import enumerate_fall_apart  # noqa: E402
from isoweave.colouring import stripe_analysis  # noqa: E402
from isoweave.naming import canonical_key, index_word, is_palindromic  # noqa: E402
from isoweave.pattern import parse_pattern  # noqa: E402

GOLDEN = {
    "8-11-1": "###-#--#/--#-##--/#-#--###/#-##----/#--####-/##----#-/-####-#-/----#-##",
    "8-11-2": "#-#--###/##----#-/###-#--#/#-##----/-####-#-/--#-##--/#--####-/----#-##",
    "8-19-5": "#---#--#/##---#--/-##---#-/--##---#/#--##---/-#--##--/--#--##-/---#--##",
    "8-27-5": "##-##---/##---##-/--##-##-/#-##---#/#---##-#/-##-##--/-##---##/---##-##",
    "12-183-1": "#-###----#-#/--#-##-###--/###----#-##-/#-##-###----/#----#-##-##/##-###----#-/"
    "---#-##-###-/-###----#-##/-#-##-###---/##----#-##-#/-##-###----#/----#-##-###",
    "12-79-1": "#----#####-#/---#--####--/---#####-##-/-#--####----/-#####-##---/--####-----#/"
    "####-##----#/####-----#--/##-##----###/##-----#--##/-##----#####/-----#--####",
    "10-1-1": "##-#######/#####-####/########-#/#-########/####-#####/#######-##/-#########/"
    "###-######/######-###/#########-",
}


def golden_patterns():
    return {name: parse_pattern("\n".join(rows.split("/"))) for name, rows in GOLDEN.items()}


# species -> seq for entries whose index word is not a palindrome, and
# species -> seqs (in key order) for palindromic ones, at order 20
ORDER20_PLAIN = {"3": 1, "6": 2, "15_o": 3, "19_o": 4}
ORDER20_PAL = {"15_o": (1, 2), "19_o": (3, 4)}
ORDER20_PAL_23 = {(1, 5): 5, (5, 1): 6}

FIXED = {
    (8, 5): {"23_e": 1, "15_e": 2, "31": 3},
    (12, 69): {"6": 1, "3": 2, "19_o": 3, "15_o": 4},
    (12, 21): {"15_o": 4},
    (16, 277): {"9": 4, "15_e": 2},
    (16, 85): {"19_e": 3},
}


def assign(entries, order, pinned_keys):
    """Canonical key -> seq for one order's entries."""
    out = {}
    buckets = defaultdict(list)
    for e in entries:
        buckets[e.name.index].append(e)
    for index, items in buckets.items():
        items.sort(key=lambda e: canonical_key(e.design))
        taken = {}
        if order == 20:
            pal = is_palindromic(index_word(index, order))
            used = defaultdict(int)
            for e in items:
                sp = e.species.roth_label
                if not pal:
                    taken[canonical_key(e.design)] = ORDER20_PLAIN[sp]
                elif sp in ORDER20_PAL:
                    taken[canonical_key(e.design)] = ORDER20_PAL[sp][used[sp]]
                    used[sp] += 1
                else:
                    taken[canonical_key(e.design)] = ORDER20_PAL_23[e.configuration.ab_params]
        else:
            rule = FIXED.get((order, index), {})
            for e in items:
                k = canonical_key(e.design)
                if k in pinned_keys:
                    taken[k] = pinned_keys[k]
                elif e.species.roth_label in rule and rule[e.species.roth_label] not in taken.values():
                    taken[k] = rule[e.species.roth_label]
            if (order, index) == (12, 21):
                # the remaining 23_o entry takes the first free number
                for e in items:
                    k = canonical_key(e.design)
                    if k not in taken and e.species.roth_label == "23_o":
                        taken[k] = min(set(range(1, 9)) - set(taken.values()))
        free = iter(s for s in range(1, len(items) + 1) if s not in taken.values())
        for e in items:
            k = canonical_key(e.design)
            out[k] = taken.get(k) or next(free)
        assert sorted(out[canonical_key(e.design)] for e in items) == list(range(1, len(items) + 1))
    return out


def main():
    from isoweave import registry

    registry.named_designs.cache_clear()
    registry.known_names.cache_clear()
    data_file = ROOT / "src/isoweave/data/names.json"
    data_file.write_text("[]\n")
    registry.named_designs.cache_clear()
    registry.known_names.cache_clear()

    golden = golden_patterns()
    # the 12-21 entry reached by striping 12-183-1 carries sequence number 2
    pinned = {}
    for r in stripe_analysis(golden["12-183-1"]):
        if r.is_isonemal and r.name is not None and r.name.index == 21:
            pinned[canonical_key(r.pattern)] = 2

    records = []
    for order in (8, 12, 16, 20):
        entries = enumerate_fall_apart(order)
        seqs = assign(entries, order, pinned)
        for e in entries:
            k = canonical_key(e.design)
            records.append((order, e.name.index, seqs[k], True, e.design))
    for name, p in golden.items():
        n, i, s = (int(x) for x in name.split("-"))
        records.append((n, i, s, False, p))

    out = [
        {"name": f"{n}-{i}-{s}{'*' if apart else ''}", "rows": p.rows()}
        for n, i, s, apart, p in sorted(records, key=lambda r: r[:3])
    ]
    data_file.write_text(json.dumps(out, indent=1) + "\n")
    registry.named_designs.cache_clear()
    registry.known_names.cache_clear()

    gold_dir = ROOT / "tests/data/golden"
    gold_dir.mkdir(parents=True, exist_ok=True)
    for name, p in golden.items():
        (gold_dir / f"{name}.wv").write_text(p.serialize([name]))
    print(f"wrote {len(out)} names and {len(golden)} golden files")


if __name__ == "__main__":
    main()
