"""From preprocessed DAGs to typed DAGs and proof nets."""
from .assign import (
    AsymmetricConjunction, CopyOutsideConjunction, HeadlessConjunction, NoProgress, TypedDag,
    UnresolvableSecondaryEdge, type_conjunctions, type_dag, type_non_local, type_simple,
)
from .linking import CountMismatch, LinkingFailure, link_axioms, sample_sequent
from .tables import (
    ExtractionError, MissingTableEntry, TablesConfigError, TranslationTables, default_tables,
    load_tables, tables_from_json,
)
