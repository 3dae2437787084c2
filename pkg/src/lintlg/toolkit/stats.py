"""Ambiguity histogram and type coverage curves."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..types import print_type
from .lexicon import Lexicon, Sample, sample_tokens


@dataclass(frozen=True)
class Bar:
    low: int    # exclusive, except for the first bucket
    high: int   # inclusive
    count: int


def bucket(n_types: int) -> int:
    """Index of the log2 bucket holding ``n_types``: 1 -> 0, 2 -> 1, 3..4 -> 2, 5..8 -> 3."""
    if n_types < 1:
        raise ValueError('a word has at least one type')
    return (n_types - 1).bit_length()


def ambiguity_histogram(lex: Lexicon) -> list[Bar]:
    counts: dict[int, int] = {}
    for types in lex.entries.values():
        k = bucket(len(types))
        counts[k] = counts.get(k, 0) + 1
    return [Bar(2 ** (k - 1) if k else 1, 2 ** k, counts[k]) for k in sorted(counts)]


@dataclass(frozen=True)
class CoverageCurve:
    points: tuple[tuple[float, float], ...]

    def is_monotone(self) -> bool:
        return all(a[0] <= b[0] and a[1] <= b[1] for a, b in zip(self.points, self.points[1:]))


def type_ranking(lex: Lexicon) -> list:
    """Types by descending frequency; ties broken by the printed type."""
    freq = lex.type_frequencies()
    return sorted(freq, key=lambda t: (-freq[t], print_type(t)))


def coverage_curves(samples: Iterable[Sample], lex: Lexicon) -> tuple[CoverageCurve, CoverageCurve]:
    """Word- and sentence-level coverage when only the k most frequent
    types are kept, for k = 1 .. #types."""
    ranking = type_ranking(lex)
    rank = {t: i for i, t in enumerate(ranking)}
    sentences: list[Sequence[int]] = [[rank[t] for _, t in sample_tokens(s)] for s in samples]
    tokens = sum(len(s) for s in sentences)
    worst = [max(s) for s in sentences if s]
    words, sents = [], []
    total = len(ranking)
    for k in range(1, total + 1):
        covered = sum(1 for s in sentences for r in s if r < k)
        words.append((k / total, covered / tokens))
        sents.append((k / total, sum(1 for w in worst if w < k) / len(worst)))
    return CoverageCurve(tuple(words)), CoverageCurve(tuple(sents))
