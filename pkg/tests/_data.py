"""Shared test data: the small-order corpus, golden fabrics and random designs."""

from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path

import numpy as np

from isoweave.pattern import PeriodicPattern, parse_pattern

DATA = Path(__file__).parent / "data"


@lru_cache(maxsize=None)
def corpus() -> dict[int, tuple[PeriodicPattern, ...]]:
    raw = json.loads((DATA / "isonemal_corpus.json").read_text())
    return {int(n): tuple(PeriodicPattern.from_rows(rows) for rows in designs) for n, designs in raw.items()}


def corpus_designs():
    return [p for n in sorted(corpus()) for p in corpus()[n]]


@lru_cache(maxsize=None)
def golden(name: str) -> PeriodicPattern:
    return parse_pattern((DATA / "golden" / f"{name}.wv").read_text())


@lru_cache(maxsize=None)
def order40() -> PeriodicPattern:
    return parse_pattern((DATA / "order40_twillin.wv").read_text())


def random_design(rng: np.random.Generator, max_sum: int = 12) -> PeriodicPattern:
    w = int(rng.integers(1, max_sum))
    h = int(rng.integers(1, max_sum - w + 1))
    return PeriodicPattern(rng.random((h, w)) < 0.5)


def pattern_of(text: str) -> PeriodicPattern:
    return parse_pattern("\n".join(text.split("/")))
