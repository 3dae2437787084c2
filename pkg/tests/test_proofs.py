import pytest

from lintlg.proofs import (
    Abs, App, Bracket, Const, Leaf, Pair, ProofError, Rule, Var, ax, box_e, dia_i, impl_e, impl_i, lex,
    nd_rules, nd_to_json, print_nd, print_structure, print_term,
)
from lintlg.types import parse_type as T


def test_elimination_checks_argument():
    f = lex('slaapt', 1, T('<su>np -o s'))
    with pytest.raises(ProofError):
        impl_e(f, lex('Jan', 0, T('np')))
    p = impl_e(f, dia_i('su', lex('Jan', 0, T('np'))))
    assert p.type == T('s')
    assert print_structure(p.structure) == 'slaapt (Jan)_su'


def test_bang_is_transparent_for_application():
    f = lex('f', 0, T('!<su>np -o s'))
    assert impl_e(f, ax(0, 'x', T('<su>np'))).type == T('s')


def test_box_elimination():
    de = box_e(lex('de', 0, T('[det](n -o np)')))
    assert de.type == T('n -o np') and de.label == 'det'
    with pytest.raises(ProofError):
        box_e(lex('n', 0, T('n')))
    with pytest.raises(ProofError):
        impl_e(lex('n', 0, T('n')), lex('m', 1, T('n')))


def test_introduction_removes_hypothesis_from_structure():
    body = impl_e(lex('gaat', 0, T('<pc>bw -o sv1')), ax(0, 'x', T('<pc>bw')))
    assert print_structure(body.structure) == 'gaat x'
    p = impl_i(0, 'x', T('<pc>bw'), body)
    assert p.type == T('<pc>bw -o sv1')
    assert print_structure(p.structure) == 'gaat'
    assert [q.rule for q in nd_rules(p)] == [Rule.IMPL_I, Rule.IMPL_E, Rule.LEX, Rule.AX]
    assert print_nd(p).splitlines()[0] == '-oI(x): gaat |- <pc>bw -o sv1'
    assert nd_to_json(p)['premises'][0]['rule'] == 'impl_e'


def test_structure_printing():
    s = Pair(Leaf('a', T('a')), Pair(Leaf('b', T('b')), Bracket('su', Leaf('c', T('c')))))
    assert print_structure(s) == 'a (b (c)_su)'


def test_term_printing():
    t = App(Const('Waarover'), Abs('x', App(App(Const('gaat'), Var('x')), App(Const('de'), Const('machtstrijd')))))
    assert print_term(t) == 'Waarover (\\x. gaat x (de machtstrijd))'
    assert print_term(App(Abs('x', Var('x')), Var('y'))) == '(\\x. x) y'
