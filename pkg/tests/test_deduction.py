import pytest

from lintlg.deduction import (
    axiom_links, is_linear, lambda_typecheck, nd_bindings, nd_to_lambda, nd_to_sequent, prove_all,
    provable_linkings, sequent_to_lambda, sequent_to_nd, sequentialize,
)
from lintlg.proofnet import build_frame, check_correctness, enumerate_linkings, make_proof_net
from lintlg.proofs import Abs, App, Const, Rule, SeqRule, Var, nd_rules, print_term, seq_rules
from lintlg.types import count_check, parse_sequent, parse_type as T

from helpers import random_sequents

WAAROVER = ('Waarover: <whd_body>(<pc>bw -o sv1) -o whq, gaat: <pc>bw -o <su>np -o sv1, '
          'de: [det](n -o np), machtstrijd: n |- whq')

SUITE = random_sequents(150, seed=11)


def correct_nets(s):
    frame = build_frame(s)
    return frame, [l for l in enumerate_linkings(frame) if check_correctness(frame, l)]


def test_waarover_sequent_has_one_net_and_the_expected_term():
    frame, nets = correct_nets(parse_sequent(WAAROVER))
    assert len(nets) == 1
    proof = sequentialize(make_proof_net(frame, nets[0]))
    assert print_term(nd_to_lambda(proof)) == 'Waarover (\\x. gaat x (de machtstrijd))'
    rules = [q.rule for q in nd_rules(proof)]
    assert rules.count(Rule.LEX) == 4 and rules.count(Rule.AX) == 1
    assert rules.count(Rule.IMPL_E) == 4 and rules.count(Rule.IMPL_I) == 1
    assert sorted(q.label for q in nd_rules(proof) if q.rule is Rule.DIA_I) == ['su', 'whd_body']
    assert [q.label for q in nd_rules(proof) if q.rule is Rule.BOX_E] == ['det']


def test_oracle_agreement_on_random_suite():
    for s in SUITE:
        frame, nets = correct_nets(s)
        assert set(nets) == provable_linkings(s, frame), str(s)


def test_round_trips_on_random_suite():
    for s in SUITE:
        frame, nets = correct_nets(s)
        for linking in nets:
            proof = sequentialize(make_proof_net(frame, linking))
            assert axiom_links(proof, frame) == linking
            term = nd_to_lambda(proof)
            assert is_linear(term)
            assert lambda_typecheck(term, nd_bindings(proof), s.succedent)
            seq = nd_to_sequent(proof)
            assert sequent_to_nd(seq) == proof
            assert sequent_to_lambda(seq) == term


def test_correct_nets_pass_count_check():
    for s in random_sequents(150, seed=12, balanced=False):
        frame, nets = correct_nets(s)
        if nets:
            assert count_check(s)


def test_unbalanced_sequent_has_no_proof():
    s = parse_sequent('np, <su>np -o s |- np')
    assert not count_check(s)
    assert prove_all(s) == [] and correct_nets(s)[1] == []


def test_sequentialize_requires_verified_net():
    frame = build_frame(parse_sequent('a, a -o a |- a'))
    nets = [make_proof_net(frame, l) for l in enumerate_linkings(frame)]
    assert sorted(n.verified for n in nets) == [False, True]
    with pytest.raises(ValueError):
        sequentialize(next(n for n in nets if not n.verified))


def test_typecheck_rejects_bad_terms():
    b = {0: T('np'), 1: T('<su>np -o s')}
    assert lambda_typecheck(App(Const('f', 1), Const('j', 0)), b, T('s'))
    assert not lambda_typecheck(App(Const('f', 1), Const('j', 0)), b, T('np'))
    assert not lambda_typecheck(Const('j', 0), b, T('np'))  # unused constant
    assert not is_linear(Abs('x', App(App(Var('f'), Var('x')), Var('x'))))
    assert not is_linear(Abs('x', Var('y')))


def test_sequent_proof_shape_for_waarover():
    frame, nets = correct_nets(parse_sequent(WAAROVER))
    seq = nd_to_sequent(sequentialize(make_proof_net(frame, nets[0])))
    rules = [p.rule for p in seq_rules(seq)]
    assert rules.count(SeqRule.IMPL_R) == 1
    assert rules.count(SeqRule.DIA_R) == 2
    assert rules.count(SeqRule.BOX_L) == 1
    assert rules.count(SeqRule.IMPL_L) == 4
