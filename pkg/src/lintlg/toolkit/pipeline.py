"""Corpus pipeline: treebank files in, theorems and a failure breakdown out."""
from __future__ import annotations

import csv
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from ..deduction import lambda_typecheck, nd_bindings, nd_to_lambda, nd_to_sequent, sequentialize
from ..extraction import ExtractionError, link_axioms, type_dag
from ..extraction.tables import TranslationTables, default_tables, load_tables, tables_from_json
from ..proofnet import check_correctness, proofnet_to_json
from ..proofs import print_nd, print_sequent_proof, print_term, term_to_json
from ..treebank import PreprocessConfig, TreebankError, dag_from_json, parse_treebank, preprocess
from ..types import parse_type, print_sequent, print_type

FORMATS = ('proofnet', 'nd', 'sequent', 'lambda')
STAGES = ('preprocessing', 'typing', 'linking', 'verification')


class PipelineError(Exception):
    """Configuration or I/O problem (as opposed to a per-sample failure)."""


@dataclass
class PipelineConfig:
    tables: Optional[TranslationTables] = None
    jobs: int = 1
    preprocessing: PreprocessConfig = field(default_factory=PreprocessConfig)

    @classmethod
    def from_paths(cls, tables: Optional[str] = None, jobs: int = 1) -> 'PipelineConfig':
        try:
            return cls(load_tables(tables) if tables else None, jobs)
        except ValueError as e:
            raise PipelineError(str(e)) from e


@dataclass
class DagResult:
    words: list[str]
    types: list[str]
    goal: str
    proofnet: dict
    nd: str
    sequent: str
    sequent_proof: str
    term: str
    term_json: dict
    term_checks: bool


@dataclass
class SampleResult:
    name: str
    path: str
    ok: bool
    dags: list[DagResult] = field(default_factory=list)
    stage: Optional[str] = None
    kind: Optional[str] = None
    detail: Optional[str] = None

    @property
    def outcome(self) -> str:
        return 'ok' if self.ok else self.kind

    def tokens(self):
        return [(w, parse_type(t)) for d in self.dags for w, t in zip(d.words, d.types)]


@dataclass
class PipelineResult:
    samples: list[SampleResult]

    def summary(self) -> dict:
        failures = Counter((s.stage, s.kind) for s in self.samples if not s.ok)
        return {
            'samples': len(self.samples),
            'ok': sum(s.ok for s in self.samples),
            'failed': sum(not s.ok for s in self.samples),
            'dags': sum(len(s.dags) for s in self.samples if s.ok),
            'by_stage': {stage: sum(n for (st, _), n in failures.items() if st == stage) for stage in STAGES},
            'by_kind': dict(sorted(Counter(s.kind for s in self.samples if not s.ok).items())),
        }

    @property
    def all_ok(self) -> bool:
        return all(s.ok for s in self.samples)


def collect_inputs(paths: Iterable[str]) -> list[Path]:
    out = []
    for p in map(Path, paths):
        if p.is_dir():
            out.extend(sorted(q for q in p.iterdir() if q.suffix in ('.xml', '.json')))
        elif p.is_file():
            out.append(p)
        else:
            raise PipelineError(f'no such input: {p}')
    return out


def _extract_one(d, tables: TranslationTables) -> DagResult:
    td = type_dag(d, tables)
    net = link_axioms(td, tables)
    if not net.verified:
        err = ExtractionError(f'extracted net rejected: {check_correctness(net.frame, net.linking).reason}')
        err.stage, err.kind = 'verification', 'rejected-net'
        raise err
    proof = sequentialize(net)
    term = nd_to_lambda(proof)
    checks = lambda_typecheck(term, nd_bindings(proof), net.frame.sequent.succedent)
    if not checks:
        err = ExtractionError('term does not type check')
        err.stage, err.kind = 'verification', 'ill-typed-term'
        raise err
    s = net.frame.sequent
    return DagResult(list(s.names()), [print_type(t) for t in s.antecedent], print_type(s.succedent),
                     proofnet_to_json(net), print_nd(proof), print_sequent(s),
                     print_sequent_proof(nd_to_sequent(proof)), print_term(term), term_to_json(term), checks)


def process_sample(path: Path, tables: Optional[TranslationTables] = None,
                   config: PreprocessConfig = PreprocessConfig()) -> SampleResult:
    tables = tables or default_tables()
    name = path.stem
    try:
        raw = path.read_bytes()
        d = dag_from_json(json.loads(raw)) if path.suffix == '.json' else parse_treebank(raw, name)
        d.name = d.name or name
        dags = preprocess(d, config)
    except TreebankError as e:
        return SampleResult(name, str(path), False, stage='preprocessing', kind=e.kind, detail=str(e))
    except (OSError, ValueError, KeyError, TypeError) as e:
        return SampleResult(name, str(path), False, stage='preprocessing', kind='parse-error', detail=str(e))
    results = []
    for d in dags:
        try:
            results.append(_extract_one(d, tables))
        except ExtractionError as e:
            return SampleResult(name, str(path), False, stage=e.stage, kind=e.kind, detail=str(e))
    return SampleResult(name, str(path), True, results)


def _worker(args) -> SampleResult:
    path, tables_json = args
    tables = tables_from_json(tables_json) if tables_json is not None else None
    return process_sample(Path(path), tables)


def run_pipeline(config: PipelineConfig, inputs: Sequence[str]) -> PipelineResult:
    paths = collect_inputs(inputs)
    tables_json = config.tables.to_json() if config.tables is not None else None
    jobs = [(str(p), tables_json) for p in paths]
    if config.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_worker, jobs, chunksize=1))
    else:
        results = [process_sample(p, config.tables, config.preprocessing) for p in paths]
    return PipelineResult(results)


def _dump(path: Path, data):
    path.write_text(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + '\n', encoding='utf-8')


def write_outputs(result: PipelineResult, out: Path, formats: Sequence[str] = FORMATS):
    """Write per-DAG artefacts and the summary tables; content is a pure
    function of the inputs, so reruns are byte-identical."""
    out = Path(out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        for s in result.samples:
            if not s.ok:
                continue
            target = out / s.name
            target.mkdir(exist_ok=True)
            for k, d in enumerate(s.dags):
                if 'proofnet' in formats:
                    _dump(target / f'dag{k}.proofnet.json', d.proofnet)
                if 'nd' in formats:
                    (target / f'dag{k}.nd.txt').write_text(d.nd + '\n', encoding='utf-8')
                if 'sequent' in formats:
                    (target / f'dag{k}.sequent.txt').write_text(
                        d.sequent + '\n\n' + d.sequent_proof + '\n', encoding='utf-8')
                if 'lambda' in formats:
                    (target / f'dag{k}.lambda.txt').write_text(d.term + '\n', encoding='utf-8')
        with open(out / 'summary.csv', 'w', newline='', encoding='utf-8') as f:
            w = csv.writer(f, lineterminator='\n')
            w.writerow(['sample', 'outcome', 'stage', 'dags', 'detail'])
            for s in result.samples:
                w.writerow([s.name, s.outcome, s.stage or '', len(s.dags), s.detail or ''])
        _dump(out / 'summary.json', result.summary())
    except OSError as e:
        raise PipelineError(f'cannot write outputs: {e}') from e
