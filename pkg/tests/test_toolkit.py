import filecmp
import json
from collections import defaultdict

import pytest

from lintlg.toolkit import (
    Lexicon, PipelineConfig, ambiguity_histogram, build_lexicon, coverage_curves, run_pipeline, write_outputs,
)
from lintlg.toolkit.cli import main
from lintlg.toolkit.pipeline import PipelineError
from lintlg.toolkit.stats import bucket
from lintlg.types import Atom, parse_type as T

from helpers import WAAROVER_SAMPLE, MINICORPUS


@pytest.fixture(scope='module')
def corpus():
    return run_pipeline(PipelineConfig(), [str(MINICORPUS)])


@pytest.fixture(scope='module')
def samples(corpus):
    return [s.tokens() for s in corpus.samples if s.ok]


def test_lexicon_of_waarover_sample():
    result = run_pipeline(PipelineConfig(), [str(WAAROVER_SAMPLE)])
    lex = build_lexicon(s.tokens() for s in result.samples)
    assert lex.vocabulary == 4 and lex.tokens == 4
    assert all(list(c.values()) == [1] for c in lex.entries.values())
    assert build_lexicon([]).entries == {}


def test_lexicon_tsv_round_trip(tmp_path, samples):
    lex = build_lexicon(samples)
    lex.write_tsv(tmp_path / 'lex.tsv')
    assert (tmp_path / 'lex.tsv').read_text().splitlines()[0] == 'word\ttype\tcount'
    assert Lexicon.read_tsv(tmp_path / 'lex.tsv').entries == lex.entries
    with pytest.raises(ValueError):
        lex.add('x', Atom('n'), 0)


def test_lexicon_merge_is_associative(samples):
    a, b, c = (build_lexicon(samples[i::3]) for i in range(3))
    assert a.merge(b).merge(c).entries == a.merge(b.merge(c)).entries == build_lexicon(samples).entries


def test_token_total_matches_sample_lengths(corpus, samples):
    assert build_lexicon(samples).tokens == sum(len(d.words) for s in corpus.samples if s.ok for d in s.dags)


def test_histogram_examples():
    assert [bucket(n) for n in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]
    lex = Lexicon()
    lex.add('w', Atom('a'))
    assert [(b.low, b.high, b.count) for b in ambiguity_histogram(lex)] == [(1, 1, 1)]
    for t in ('a', 'b', 'c'):
        lex.add('v', Atom(t))
    assert [(b.low, b.high, b.count) for b in ambiguity_histogram(lex)] == [(1, 1, 1), (2, 4, 1)]


def test_histogram_matches_brute_force(samples):
    lex = build_lexicon(samples)
    types_of = defaultdict(set)
    for sample in samples:
        for w, t in sample:
            types_of[w].add(t)
    expected = defaultdict(int)
    for types in types_of.values():
        k = 0
        while 2 ** k < len(types):
            k += 1
        expected[k] += 1
    got = {bucket(b.high): b.count for b in ambiguity_histogram(lex)}
    assert got == dict(expected)
    assert sum(got.values()) == lex.vocabulary


def test_coverage_examples():
    samples = [[('a', T('x')), ('b', T('x')), ('c', T('x')), ('d', T('y'))]]
    words, sents = coverage_curves(samples, build_lexicon(samples))
    assert words.points == ((0.5, 0.75), (1.0, 1.0))
    assert sents.points == ((0.5, 0.0), (1.0, 1.0))
    one = [[('a', T('x'))], [('b', T('x'))]]
    assert coverage_curves(one, build_lexicon(one))[0].points == ((1.0, 1.0),)


def test_coverage_matches_brute_force(samples):
    lex = build_lexicon(samples)
    words, sents = coverage_curves(samples, lex)
    freq = defaultdict(int)
    for sample in samples:
        for _, t in sample:
            freq[str(t)] += 1
    ranked = sorted(freq, key=lambda t: (-freq[t], t))
    tokens = [str(t) for s in samples for _, t in s]
    for k in range(1, len(ranked) + 1):
        kept = set(ranked[:k])
        assert words.points[k - 1] == (k / len(ranked), sum(t in kept for t in tokens) / len(tokens))
        full = sum(all(str(t) in kept for _, t in s) for s in samples)
        assert sents.points[k - 1][1] == full / len(samples)
    assert words.is_monotone() and sents.is_monotone()
    assert words.points[-1] == sents.points[-1] == (1.0, 1.0)
    assert all(s[1] <= w[1] for w, s in zip(words.points, sents.points))


def test_pipeline_outcomes(corpus):
    summary = corpus.summary()
    assert (summary['samples'], summary['ok']) == (30, 28)
    assert summary['by_kind'] == {'asymmetric-conjunction': 1, 'headless-conjunction': 1}
    assert summary['by_stage']['typing'] == 2
    assert all(d.term_checks and d.proofnet for s in corpus.samples if s.ok for d in s.dags)


def test_pipeline_empty_and_missing(tmp_path):
    assert run_pipeline(PipelineConfig(), [str(tmp_path)]).summary()['samples'] == 0
    with pytest.raises(PipelineError):
        run_pipeline(PipelineConfig(), [str(tmp_path / 'nope')])


def test_pipeline_reports_bad_input(tmp_path):
    (tmp_path / 'bad.xml').write_text('<alpino_ds><node')
    (tmp_path / 'punct.xml').write_text('<alpino_ds><node id="0" rel="top" cat="top" begin="0" end="1">'
                                        '<node id="1" rel="--" pt="let" word="." begin="0" end="1"/></node></alpino_ds>')
    result = run_pipeline(PipelineConfig(), [str(tmp_path)])
    assert [(s.name, s.stage, s.kind) for s in result.samples] == [
        ('bad', 'preprocessing', 'parse-error'), ('punct', 'preprocessing', 'empty-output')]


def test_json_input(tmp_path):
    data = {'nodes': [{'id': 0, 'cat': 'smain', 'begin': 0, 'end': 2},
                      {'id': 1, 'pos': 'n', 'word': 'Jan', 'begin': 0, 'end': 1},
                      {'id': 2, 'pos': 'ww', 'word': 'slaapt', 'begin': 1, 'end': 2}],
            'edges': [{'parent': 0, 'child': 1, 'dep': 'su'}, {'parent': 0, 'child': 2, 'dep': 'hd'}]}
    (tmp_path / 's.json').write_text(json.dumps(data))
    [s] = run_pipeline(PipelineConfig(), [str(tmp_path / 's.json')]).samples
    assert s.ok and s.dags[0].term == 'slaapt Jan'


def test_outputs_are_byte_identical(tmp_path, corpus):
    write_outputs(corpus, tmp_path / 'a')
    write_outputs(run_pipeline(PipelineConfig(jobs=4), [str(MINICORPUS)]), tmp_path / 'b')
    cmp = filecmp.dircmp(tmp_path / 'a', tmp_path / 'b')
    stack = [cmp]
    while stack:
        c = stack.pop()
        assert not c.left_only and not c.right_only and not c.diff_files
        assert not filecmp.cmpfiles(c.left, c.right, c.common_files, shallow=False)[1]
        stack.extend(c.subdirs.values())


def test_cli_extract_and_check(tmp_path, capsys):
    assert main(['extract', '--input', str(WAAROVER_SAMPLE), '--out', str(tmp_path)]) == 0
    sample = tmp_path / WAAROVER_SAMPLE.stem
    assert (sample / 'dag0.lambda.txt').read_text() == 'Waarover (\\x. gaat x (de machtstrijd))\n'
    assert main(['check', str(sample / 'dag0.proofnet.json')]) == 0
    data = json.loads((sample / 'dag0.proofnet.json').read_text())
    data['links'] = [[0, 8], [2, 1]] + data['links'][2:]
    (tmp_path / 'bad.json').write_text(json.dumps(data))
    assert main(['check', str(tmp_path / 'bad.json')]) == 2
    assert main(['check', str(tmp_path / 'missing.json')]) == 1
    assert main(['extract', '--input', str(MINICORPUS), '--out', str(tmp_path / 'all'), '--jobs', '2']) == 2
    assert main(['extract', '--input', str(WAAROVER_SAMPLE), '--out', str(tmp_path), '--tables',
                 str(tmp_path / 'none.json')]) == 1


def test_cli_prove(capsys):
    assert main(['prove', 'a, a -o a |- a', '--enumerate']) == 0
    assert '1 correct net(s)' in capsys.readouterr().out
    assert main(['prove', 'np |- s']) == 2
    assert main(['prove', 'a -o |- a']) == 1


def test_cli_lexicon_and_stats(tmp_path):
    assert main(['lexicon', '--input', str(WAAROVER_SAMPLE), '--out', str(tmp_path / 'lex.tsv')]) == 0
    assert len((tmp_path / 'lex.tsv').read_text().splitlines()) == 5
    assert main(['stats', '--input', str(MINICORPUS), '--coverage', '--histogram', '--out', str(tmp_path / 's')]) == 2
    report = json.loads((tmp_path / 's' / 'stats.json').read_text())
    assert report['ok'] == 28 and report['coverage']['word'][-1] == [1.0, 1.0]
    assert (tmp_path / 's' / 'coverage.csv').exists() and (tmp_path / 's' / 'histogram.csv').exists()
