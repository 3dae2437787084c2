"""Command line interface: ``lintlg {extract,check,prove,lexicon,stats}``."""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from ..deduction import nd_to_lambda, sequentialize
from ..proofnet import (
    BoundExceeded, build_frame, check_correctness, enumerate_linkings, make_proof_net,
    proofnet_from_json,
)
from ..proofs import print_nd, print_term
from ..types import TypeSyntaxError, UnknownLabelError, count_check, parse_sequent, print_type
from .lexicon import build_lexicon
from .pipeline import FORMATS, PipelineConfig, PipelineError, run_pipeline, write_outputs
from .stats import ambiguity_histogram, coverage_curves

EXIT_OK, EXIT_CONFIG, EXIT_FAILED = 0, 1, 2


def _run(args):
    config = PipelineConfig.from_paths(args.tables, args.jobs)
    return config, run_pipeline(config, args.input)


def cmd_extract(args) -> int:
    _, result = _run(args)
    formats = FORMATS if args.format == 'all' else (args.format,)
    write_outputs(result, Path(args.out), formats)
    summary = result.summary()
    print(f'{summary["ok"]}/{summary["samples"]} samples ok, {summary["dags"]} theorems')
    for kind, n in summary['by_kind'].items():
        print(f'  {kind}: {n}')
    return EXIT_OK if result.all_ok else EXIT_FAILED


def cmd_check(args) -> int:
    try:
        data = json.loads(Path(args.proofnet).read_text(encoding='utf-8'))
        net = proofnet_from_json(data)
    except (OSError, ValueError, KeyError) as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_CONFIG
    verdict = check_correctness(net.frame, net.linking)
    if verdict:
        print('correct')
        print(print_term(nd_to_lambda(verdict.proof)))
        return EXIT_OK
    print(f'rejected: {verdict.reason}')
    return EXIT_FAILED


def cmd_prove(args) -> int:
    try:
        s = parse_sequent(args.sequent)
    except (TypeSyntaxError, UnknownLabelError) as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_CONFIG
    check = count_check(s)
    if not check:
        print(f'not provable: atom counts unbalanced {check.deficit}')
        return EXIT_FAILED
    frame = build_frame(s)
    try:
        linkings = enumerate_linkings(frame, 'correct', args.bound)
    except BoundExceeded as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_CONFIG
    if not linkings:
        print('not provable')
        return EXIT_FAILED
    shown = linkings if args.enumerate else linkings[:1]
    for k, linking in enumerate(shown):
        proof = sequentialize(make_proof_net(frame, linking))
        if args.enumerate:
            print(f'# net {k}: {list(linking.pairs)}')
        print(print_nd(proof))
        print(print_term(nd_to_lambda(proof)))
    if args.enumerate:
        print(f'{len(linkings)} correct net(s)')
    return EXIT_OK


def _ok_tokens(result):
    return [s.tokens() for s in result.samples if s.ok]


def cmd_lexicon(args) -> int:
    _, result = _run(args)
    lex = build_lexicon(_ok_tokens(result))
    try:
        lex.write_tsv(args.out)
    except OSError as e:
        raise PipelineError(str(e)) from e
    print(f'{lex.vocabulary} words, {len(lex.type_frequencies())} types, {lex.tokens} tokens, '
          f'{lex.types_per_word():.2f} types/word, {lex.words_per_type():.2f} words/type')
    return EXIT_OK if result.all_ok else EXIT_FAILED


def cmd_stats(args) -> int:
    _, result = _run(args)
    samples = _ok_tokens(result)
    lex = build_lexicon(samples)
    out = Path(args.out)
    report = {'samples': len(result.samples), 'ok': len(samples), 'tokens': lex.tokens,
              'vocabulary': lex.vocabulary, 'types': len(lex.type_frequencies()),
              'types_per_word': lex.types_per_word(), 'words_per_type': lex.words_per_type(),
              'dags_per_sample': (sum(len(s.dags) for s in result.samples if s.ok) / len(samples)
                                  if samples else 0.0)}
    try:
        out.mkdir(parents=True, exist_ok=True)
        if args.histogram:
            bars = ambiguity_histogram(lex)
            report['histogram'] = [{'low': b.low, 'high': b.high, 'words': b.count} for b in bars]
            with open(out / 'histogram.csv', 'w', newline='') as f:
                w = csv.writer(f, lineterminator='\n')
                w.writerow(['low', 'high', 'words'])
                w.writerows((b.low, b.high, b.count) for b in bars)
        if args.coverage and samples:
            words, sents = coverage_curves(samples, lex)
            report['coverage'] = {'word': [list(p) for p in words.points],
                                  'sentence': [list(p) for p in sents.points]}
            with open(out / 'coverage.csv', 'w', newline='') as f:
                w = csv.writer(f, lineterminator='\n')
                w.writerow(['types_kept', 'word_coverage', 'sentence_coverage'])
                w.writerows((a[0], a[1], b[1]) for a, b in zip(words.points, sents.points))
        (out / 'stats.json').write_text(json.dumps(report, indent=2, sort_keys=True) + '\n')
    except OSError as e:
        raise PipelineError(str(e)) from e
    for key in ('samples', 'ok', 'tokens', 'vocabulary', 'types'):
        print(f'{key}: {report[key]}')
    print(f'types/word: {report["types_per_word"]:.2f}')
    return EXIT_OK if result.all_ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog='lintlg', description='Typed dependency DAGs to linear logic proofs.')
    sub = ap.add_subparsers(dest='command', required=True)

    def corpus_args(p):
        p.add_argument('--input', nargs='+', required=True, help='treebank files or directories')
        p.add_argument('--tables', help='translation tables JSON (default: bundled)')
        p.add_argument('--jobs', type=int, default=1, help='worker processes')

    p = sub.add_parser('extract', help='extract proofs from a treebank')
    corpus_args(p)
    p.add_argument('--out', required=True, help='output directory')
    p.add_argument('--format', choices=FORMATS + ('all',), default='all')
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser('check', help='verify a stored proof net')
    p.add_argument('proofnet', help='proof net JSON file')
    p.set_defaults(func=cmd_check)

    p = sub.add_parser('prove', help='search proofs of a sequent')
    p.add_argument('sequent', help='e.g. "a, a -o b |- b"')
    p.add_argument('--enumerate', action='store_true', help='list every correct net')
    p.add_argument('--bound', type=int, default=10, help='maximum number of positive atoms')
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser('lexicon', help='write the extracted lexicon as TSV')
    corpus_args(p)
    p.add_argument('--out', default='lexicon.tsv')
    p.set_defaults(func=cmd_lexicon)

    p = sub.add_parser('stats', help='ambiguity histogram and coverage curves')
    corpus_args(p)
    p.add_argument('--coverage', action='store_true')
    p.add_argument('--histogram', action='store_true')
    p.add_argument('--out', default='stats', help='output directory')
    p.set_defaults(func=cmd_stats)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PipelineError as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_CONFIG


if __name__ == '__main__':
    sys.exit(main())
