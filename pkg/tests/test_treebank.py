import pytest

from lintlg.treebank import (
    PRIMARY, SECONDARY, DuplicateId, EmptyOutput, MalformedXML, MissingAttribute, PreprocessConfig,
    canonical_form, collapse_coindexed, dag_from_json, dag_to_json, majority, parse_treebank, preprocess,
)

from helpers import WAAROVER_SAMPLE, MINICORPUS


def doc(body: str) -> bytes:
    return f'<?xml version="1.0"?><alpino_ds version="1.3">{body}</alpino_ds>'.encode()


def leaf(i, rel, pt, word, b, index=None):
    idx = f' index="{index}"' if index is not None else ''
    return f'<node id="{i}" rel="{rel}" pt="{pt}" word="{word}" begin="{b}" end="{b + 1}"{idx}/>'


def test_single_leaf():
    d = parse_treebank(doc('<node id="0" rel="top" pt="n" word="machtstrijd" begin="0" end="1"/>'))
    assert len(d.nodes) == 1 and d.edges == [] and d.root == 0


def test_waarover_sample_parses_and_reduces_to_seven_nodes():
    d = parse_treebank(WAAROVER_SAMPLE.read_bytes())
    assert d.name == 'WS-U-E-A-0000000236.p.11.s.1'
    assert len(d.nodes) == 10  # top, phantom and punctuation included
    [clean] = preprocess(d)
    assert sorted(clean.nodes) == [1, 2, 3, 4, 5, 6, 7]
    assert clean.root == 1
    assert {(e.parent, e.child, e.dep, e.kind) for e in clean.edges} == {
        (1, 2, 'whd', PRIMARY), (1, 3, 'whd_body', PRIMARY), (3, 4, 'hd', PRIMARY), (3, 5, 'su', PRIMARY),
        (5, 6, 'det', PRIMARY), (5, 7, 'hd', PRIMARY), (3, 2, 'pc', SECONDARY)}


def test_coindexed_phantom_is_kept_then_collapsed():
    xml = doc('<node id="0" rel="top" cat="smain" begin="0" end="2">'
              + leaf(1, 'su', 'n', 'Jan', 0, index=1)
              + '<node id="2" rel="vc" cat="inf" begin="0" end="2">'
              + '<node id="3" rel="su" begin="0" end="1" index="1"/>'
              + leaf(4, 'hd', 'ww', 'slapen', 1) + '</node></node>')
    d = parse_treebank(xml)
    assert d.nodes[3].is_phantom and d.nodes[3].coindex == 1
    c = collapse_coindexed(d)
    assert 3 not in c.nodes
    assert [e for e in c.edges if e.kind == SECONDARY] == [c.in_edges(1)[1]]


@pytest.mark.parametrize('body, error', [
    ('<node id="0" rel="top"', MalformedXML),
    ('<node id="0" rel="top" cat="np" begin="0"/>', MissingAttribute),
    ('<node id="0" rel="top" cat="np" begin="0" end="1"><node id="0" rel="hd" pt="n" word="x" begin="0" end="1"/></node>',
     DuplicateId),
    ('<node id="0" rel="top" cat="np" begin="0" end="1"><node id="1" pt="n" word="x" begin="0" end="1"/></node>',
     MissingAttribute),
])
def test_parse_errors(body, error):
    with pytest.raises(error):
        parse_treebank(doc(body))


def test_punctuation_only_sample_is_empty():
    xml = doc('<node id="0" rel="top" cat="top" begin="0" end="1">' + leaf(1, '--', 'let', '.', 0) + '</node>')
    with pytest.raises(EmptyOutput):
        preprocess(parse_treebank(xml))


def test_discourse_unit_splits_into_independent_dags():
    xml = doc('<node id="0" rel="top" cat="top" begin="0" end="4"><node id="1" rel="--" cat="du" begin="0" end="4">'
              '<node id="2" rel="dp" cat="smain" begin="0" end="2">' + leaf(3, 'su', 'n', 'Jan', 0)
              + leaf(4, 'hd', 'ww', 'komt', 1) + '</node>'
              '<node id="5" rel="dp" cat="smain" begin="2" end="4">' + leaf(6, 'su', 'n', 'Marie', 2)
              + leaf(7, 'hd', 'ww', 'gaat', 3) + '</node></node></node>')
    out = preprocess(parse_treebank(xml))
    assert [d.root for d in out] == [2, 5]
    assert [d.words() for d in out] == [['Jan', 'komt'], ['Marie', 'gaat']]


def test_conjunction_relabelled_by_majority():
    xml = doc('<node id="0" rel="top" cat="smain" begin="0" end="4">'
              '<node id="1" rel="su" cat="conj" begin="0" end="3">'
              '<node id="2" rel="cnj" cat="np" begin="0" end="1">' + leaf(3, 'hd', 'n', 'Jan', 0)
              + leaf(10, 'mod', 'adj', 'oude', 0) + '</node>'
              + leaf(4, 'crd', 'vg', 'en', 1)
              + '<node id="5" rel="cnj" cat="np" begin="2" end="3">' + leaf(6, 'hd', 'n', 'Piet', 2)
              + leaf(11, 'mod', 'adj', 'jonge', 2) + '</node></node>'
              + leaf(7, 'hd', 'ww', 'slapen', 3) + '</node>')
    [d] = preprocess(parse_treebank(xml))
    assert d.nodes[1].cat == 'np'


def test_majority_tie_goes_to_leftmost():
    assert majority(['ap', 'np']) == 'ap'
    assert majority(['ap', 'np', 'np']) == 'np'
    assert majority([None, None]) is None


def test_mwu_merge_and_unary_contraction():
    xml = doc('<node id="0" rel="top" cat="smain" begin="0" end="4">'
              '<node id="1" rel="su" cat="mwu" begin="0" end="3">' + leaf(2, 'mwp', 'spec', 'Jan', 0)
              + leaf(3, 'mwp', 'spec', 'de', 1) + leaf(4, 'mwp', 'n', 'Vries', 2) + '</node>'
              + '<node id="5" rel="vc" cat="inf" begin="3" end="4">' + leaf(6, 'hd', 'ww', 'slapen', 3) + '</node>'
              + leaf(7, 'hd', 'ww', 'wil', 3) + '</node>')
    [d] = preprocess(parse_treebank(xml))
    mwu = d.nodes[1]
    assert (mwu.word, mwu.pos, mwu.cat, mwu.begin, mwu.end) == ('Jan_de_Vries', 'spec', None, 0, 3)
    assert 5 not in d.nodes
    assert any(e.parent == 0 and e.child == 6 and e.dep == 'vc' for e in d.edges)


def test_understood_subject_removed_but_wh_gap_kept():
    d = parse_treebank((MINICORPUS / 'mini-19-understood-subject.xml').read_bytes())
    [clean] = preprocess(d)
    assert not any(e.kind == SECONDARY for e in clean.edges)
    d = parse_treebank((MINICORPUS / 'mini-11-relative-local.xml').read_bytes())
    [clean] = preprocess(d)
    assert [(e.dep, e.kind) for e in clean.edges if e.kind == SECONDARY] == [('su', SECONDARY)]


def test_body_label_refinement():
    for name, label in [('mini-11-relative-local', 'rhd_body'), ('mini-13-wh-object', 'whd_body'),
                        ('mini-21-complement-clause', 'cmp_body')]:
        [d] = preprocess(parse_treebank((MINICORPUS / f'{name}.xml').read_bytes()))
        assert label in {e.dep for e in d.edges}
        assert 'body' not in {e.dep for e in d.edges}


def test_discourse_configuration_is_respected():
    d = parse_treebank((MINICORPUS / 'mini-09-discourse.xml').read_bytes())
    assert len(preprocess(d)) == 2
    keep_du = PreprocessConfig(discourse_cats=frozenset({'top'}), discourse_rels=frozenset({'--'}))
    assert len(preprocess(d, keep_du)) == 1


def corpus_dags():
    for f in sorted(MINICORPUS.glob('*.xml')):
        yield f.stem, preprocess(parse_treebank(f.read_bytes()))


def test_output_invariants_on_corpus():
    for name, dags in corpus_dags():
        for d in dags:
            assert d.root in d.nodes
            reach = {d.root} | d.descendants(d.root, primary_only=False)
            assert reach == set(d.nodes), name
            for n in d.nodes:
                if n != d.root:
                    assert len([e for e in d.in_edges(n) if e.kind == PRIMARY]) == 1, name
                if d.nodes[n].pos is not None:
                    assert d.nodes[n].cat is None
            spans = [(d.nodes[n].begin, d.nodes[n].end) for n in d.leaves()]
            assert all(a[1] <= b[0] for a, b in zip(spans, spans[1:])), name


def test_preprocess_is_idempotent():
    for name, dags in corpus_dags():
        for d in dags:
            again = preprocess(d)
            assert [canonical_form(x) for x in again] == [canonical_form(d)], name


def test_json_round_trip():
    for _, dags in corpus_dags():
        for d in dags:
            back = dag_from_json(dag_to_json(d))
            assert canonical_form(back) == canonical_form(d)
            assert dag_to_json(back) == dag_to_json(d)
