"""Weighted lexicon: word -> type -> occurrence count."""
from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from ..extraction.assign import TypedDag
from ..types import LinearType, parse_type, print_type

Sample = Union[TypedDag, Sequence[tuple[str, LinearType]]]


def sample_tokens(sample: Sample) -> list[tuple[str, LinearType]]:
    if isinstance(sample, TypedDag):
        return sample.leaf_types()
    return list(sample)


@dataclass
class Lexicon:
    entries: dict[str, Counter] = field(default_factory=dict)

    def add(self, word: str, t: LinearType, count: int = 1):
        if count <= 0:
            raise ValueError('counts must be positive')
        self.entries.setdefault(word, Counter())[t] += count

    def merge(self, other: 'Lexicon') -> 'Lexicon':
        out = Lexicon({w: Counter(c) for w, c in self.entries.items()})
        for w, counts in other.entries.items():
            for t, n in counts.items():
                out.add(w, t, n)
        return out

    @property
    def tokens(self) -> int:
        return sum(sum(c.values()) for c in self.entries.values())

    @property
    def vocabulary(self) -> int:
        return len(self.entries)

    def type_frequencies(self) -> Counter:
        freq = Counter()
        for counts in self.entries.values():
            freq.update(counts)
        return freq

    def types_per_word(self) -> float:
        return sum(len(c) for c in self.entries.values()) / self.vocabulary if self.entries else 0.0

    def words_per_type(self) -> float:
        words_of = Counter()
        for counts in self.entries.values():
            words_of.update(counts.keys())
        return sum(words_of.values()) / len(words_of) if words_of else 0.0

    def rows(self) -> list[tuple[str, str, int]]:
        return sorted((w, print_type(t), n) for w, counts in self.entries.items() for t, n in counts.items())

    def write_tsv(self, path):
        with open(path, 'w', newline='', encoding='utf-8') as f:
            writer = csv.writer(f, delimiter='\t', lineterminator='\n')
            writer.writerow(['word', 'type', 'count'])
            writer.writerows(self.rows())

    @classmethod
    def read_tsv(cls, path) -> 'Lexicon':
        lex = cls()
        with open(path, newline='', encoding='utf-8') as f:
            for row in csv.DictReader(f, delimiter='\t'):
                lex.add(row['word'], parse_type(row['type']), int(row['count']))
        return lex


def build_lexicon(samples: Iterable[Sample]) -> Lexicon:
    lex = Lexicon()
    for sample in samples:
        for word, t in sample_tokens(sample):
            lex.add(word, t)
    return lex
