"""Translation tables: tags to atoms, dependency labels to modalities and
their obliqueness ranks."""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Mapping, Optional, Union

from ..types import Atom


class ExtractionError(Exception):
    """Base class for every extraction failure; ``kind`` names the failure
    class used in summaries and ``stage`` the pipeline stage."""
    kind = 'extraction-failure'
    stage = 'typing'


class MissingTableEntry(ExtractionError):
    kind = 'missing-table-entry'


class TablesConfigError(ValueError):
    pass


@dataclass(frozen=True)
class TranslationTables:
    pos_to_atom: Mapping[str, str]
    cat_to_atom: Mapping[str, str]
    dep_modality: Mapping[str, str]
    head_labels: frozenset
    mod_labels: frozenset
    obliqueness: Mapping[str, int]
    det_label: str = 'det'
    cnj_label: str = 'cnj'
    crd_label: str = 'crd'

    def __post_init__(self):
        for name in ('pos_to_atom', 'cat_to_atom', 'dep_modality', 'obliqueness'):
            object.__setattr__(self, name, MappingProxyType(dict(getattr(self, name))))
        object.__setattr__(self, 'head_labels', frozenset(self.head_labels))
        object.__setattr__(self, 'mod_labels', frozenset(self.mod_labels))
        ranks = list(self.obliqueness.values())
        if len(set(ranks)) != len(ranks):
            raise TablesConfigError('obliqueness ranks must be distinct')
        bad = {m for m in self.dep_modality.values()} - {'dia', 'box'}
        if bad:
            raise TablesConfigError(f'unknown modality kinds {sorted(bad)}')

    def atom(self, cat: Optional[str], pos: Optional[str]) -> Atom:
        if cat is not None:
            if cat in self.cat_to_atom:
                return Atom(self.cat_to_atom[cat])
            if cat in self.pos_to_atom:
                return Atom(self.pos_to_atom[cat])
        elif pos is not None and pos in self.pos_to_atom:
            return Atom(self.pos_to_atom[pos])
        raise MissingTableEntry(f'no atomic type for tag {cat if cat is not None else pos!r}')

    def rank(self, label: str) -> int:
        try:
            return self.obliqueness[label]
        except KeyError:
            raise MissingTableEntry(f'no obliqueness rank for label {label!r}') from None

    def modality(self, label: str) -> str:
        try:
            return self.dep_modality[label]
        except KeyError:
            raise MissingTableEntry(f'no modality for label {label!r}') from None

    def labels(self) -> frozenset:
        return frozenset(self.dep_modality)

    def to_json(self) -> dict:
        return {
            'pos_to_atom': dict(self.pos_to_atom), 'cat_to_atom': dict(self.cat_to_atom),
            'dep_modality': dict(self.dep_modality),
            'head_labels': sorted(self.head_labels), 'mod_labels': sorted(self.mod_labels),
            'det_label': self.det_label, 'cnj_label': self.cnj_label, 'crd_label': self.crd_label,
            'obliqueness': dict(self.obliqueness),
        }


_REQUIRED = ('pos_to_atom', 'cat_to_atom', 'dep_modality', 'head_labels', 'mod_labels', 'obliqueness')


def tables_from_json(data: dict) -> TranslationTables:
    missing = [k for k in _REQUIRED if k not in data]
    if missing:
        raise TablesConfigError(f'tables config lacks {", ".join(missing)}')
    extra = {k: data[k] for k in ('det_label', 'cnj_label', 'crd_label') if k in data}
    return TranslationTables(data['pos_to_atom'], data['cat_to_atom'], data['dep_modality'],
                             data['head_labels'], data['mod_labels'],
                             {k: int(v) for k, v in data['obliqueness'].items()}, **extra)


def load_tables(path: Union[str, Path, None] = None) -> TranslationTables:
    """Load a tables file, or the bundled defaults when ``path`` is None."""
    try:
        if path is None:
            text = resources.files('lintlg').joinpath('data/tables.json').read_text('utf-8')
        else:
            text = Path(path).read_text('utf-8')
        return tables_from_json(json.loads(text))
    except (OSError, json.JSONDecodeError) as e:
        raise TablesConfigError(f'cannot read tables: {e}') from e


DEFAULT_TABLES: Optional[TranslationTables] = None


def default_tables() -> TranslationTables:
    global DEFAULT_TABLES
    if DEFAULT_TABLES is None:
        DEFAULT_TABLES = load_tables()
    return DEFAULT_TABLES
