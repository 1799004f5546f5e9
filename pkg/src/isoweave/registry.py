"""Bundled table of catalogue names whose sequence numbers follow published usage."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import numpy as np

from .naming import DesignName, canonical_key
from .pattern import PeriodicPattern


@lru_cache(maxsize=1)
def named_designs() -> dict[str, PeriodicPattern]:
    """Name -> design for every entry of ``data/names.json``."""
    try:
        raw = resources.files("isoweave").joinpath("data/names.json").read_text()
    except FileNotFoundError:
        return {}
    out = {}
    for entry in json.loads(raw):
        cells = np.array([[c == "#" for c in r] for r in reversed(entry["rows"])], dtype=bool)
        out[entry["name"]] = PeriodicPattern(cells)
    return out


@lru_cache(maxsize=1)
def known_names() -> dict[tuple[int, int, bytes], DesignName]:
    """Canonical key -> published name."""
    return {canonical_key(p): DesignName.parse(name) for name, p in named_designs().items()}
