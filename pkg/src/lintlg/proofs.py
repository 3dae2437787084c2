"""Proof objects: natural deduction trees with bracketed antecedent
structures, sequent calculus trees and linear lambda terms."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .types import Box, Dia, Impl, LinearType, erase_bangs, print_type, strip_bang


class ProofError(ValueError):
    pass


# ---------------------------------------------------------------------------
# antecedent structures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    name: str
    type: LinearType
    hypothesis: bool = False
    index: int = 0


@dataclass(frozen=True)
class Pair:
    left: 'Structure'
    right: 'Structure'


@dataclass(frozen=True)
class Bracket:
    label: str
    body: 'Structure'


Structure = Union[Leaf, Pair, Bracket]


def print_structure(s: Optional[Structure]) -> str:
    match s:
        case None:
            return ''
        case Leaf(name):
            return name
        case Pair(left, right):
            r = print_structure(right)
            return f'{print_structure(left)} {f"({r})" if isinstance(right, Pair) else r}'
        case Bracket(label, body):
            return f'({print_structure(body)})_{label}'
    raise TypeError(s)


def structure_leaves(s: Optional[Structure]) -> list[Leaf]:
    match s:
        case None:
            return []
        case Leaf():
            return [s]
        case Pair(left, right):
            return structure_leaves(left) + structure_leaves(right)
        case Bracket(_, body):
            return structure_leaves(body)
    raise TypeError(s)


def _remove_hypothesis(s: Optional[Structure], hyp: int) -> Optional[Structure]:
    match s:
        case None:
            return None
        case Leaf(hypothesis=True, index=i) if i == hyp:
            return None
        case Leaf():
            return s
        case Pair(left, right):
            left, right = _remove_hypothesis(left, hyp), _remove_hypothesis(right, hyp)
            if left is None:
                return right
            if right is None:
                return left
            return Pair(left, right)
        case Bracket(label, body):
            body = _remove_hypothesis(body, hyp)
            return None if body is None else Bracket(label, body)
    raise TypeError(s)


# ---------------------------------------------------------------------------
# natural deduction
# ---------------------------------------------------------------------------

class Rule(Enum):
    LEX = 'Lex'
    AX = 'Ax'
    IMPL_E = '-oE'
    IMPL_I = '-oI'
    DIA_I = 'DiaI'
    BOX_E = 'BoxE'


@dataclass(frozen=True)
class NDProof:
    """One natural deduction step and its premises.

    ``name``/``index`` identify the word (``LEX``, position in the sentence)
    or the hypothesis (``AX`` and the discharging ``IMPL_I``); ``label`` is
    the dependency decoration of ``DIA_I``/``BOX_E``.
    """
    rule: Rule
    type: LinearType
    premises: tuple['NDProof', ...] = ()
    name: Optional[str] = None
    index: Optional[int] = None
    label: Optional[str] = None

    @property
    def structure(self) -> Optional[Structure]:
        return nd_structure(self)

    def __str__(self) -> str:
        return print_nd(self)


def lex(word: str, index: int, t: LinearType) -> NDProof:
    return NDProof(Rule.LEX, t, name=word, index=index)


def ax(hyp: int, name: str, t: LinearType) -> NDProof:
    return NDProof(Rule.AX, t, name=name, index=hyp)


def impl_e(fun: NDProof, arg: NDProof) -> NDProof:
    ft = strip_bang(fun.type)
    if not isinstance(ft, Impl):
        raise ProofError(f'-oE: function type {print_type(fun.type)} is not an implication')
    if erase_bangs(ft.argument) != erase_bangs(arg.type):
        raise ProofError(f'-oE: argument {print_type(arg.type)} does not fit {print_type(ft)}')
    return NDProof(Rule.IMPL_E, ft.result, (fun, arg))


def impl_i(hyp: int, name: str, hyp_type: LinearType, body: NDProof) -> NDProof:
    return NDProof(Rule.IMPL_I, Impl(hyp_type, body.type), (body,), name=name, index=hyp)


def dia_i(label: str, body: NDProof) -> NDProof:
    return NDProof(Rule.DIA_I, Dia(label, body.type), (body,), label=label)


def box_e(body: NDProof) -> NDProof:
    bt = strip_bang(body.type)
    if not isinstance(bt, Box):
        raise ProofError(f'BoxE: {print_type(body.type)} is not a box')
    return NDProof(Rule.BOX_E, bt.body, (body,), label=bt.label)


def nd_structure(p: NDProof) -> Optional[Structure]:
    match p.rule:
        case Rule.LEX:
            return Leaf(p.name, p.type, False, p.index)
        case Rule.AX:
            return Leaf(p.name, p.type, True, p.index)
        case Rule.IMPL_E:
            fun, arg = (nd_structure(q) for q in p.premises)
            if fun is None:
                return arg
            if arg is None:
                return fun
            return Pair(fun, arg)
        case Rule.IMPL_I:
            return _remove_hypothesis(nd_structure(p.premises[0]), p.index)
        case Rule.DIA_I | Rule.BOX_E:
            body = nd_structure(p.premises[0])
            return None if body is None else Bracket(p.label, body)
    raise TypeError(p.rule)


def nd_rules(p: NDProof) -> list[NDProof]:
    """All steps of the proof in pre-order."""
    out = [p]
    for q in p.premises:
        out.extend(nd_rules(q))
    return out


def nd_leaves(p: NDProof) -> list[NDProof]:
    return [q for q in nd_rules(p) if q.rule in (Rule.LEX, Rule.AX)]


def rule_name(p: NDProof) -> str:
    if p.rule is Rule.DIA_I:
        return f'<{p.label}>I'
    if p.rule is Rule.BOX_E:
        return f'[{p.label}]E'
    if p.rule is Rule.IMPL_I:
        return f'-oI({p.name})'
    return p.rule.value


def print_nd(p: NDProof, indent: int = 0) -> str:
    line = f'{"  " * indent}{rule_name(p)}: {print_structure(p.structure)} |- {print_type(p.type)}'
    return '\n'.join([line] + [print_nd(q, indent + 1) for q in p.premises])


def nd_to_json(p: NDProof) -> dict:
    out = {'rule': p.rule.name.lower(), 'type': print_type(p.type),
           'structure': print_structure(p.structure)}
    if p.name is not None:
        out['name'] = p.name
    if p.index is not None:
        out['index'] = p.index
    if p.label is not None:
        out['label'] = p.label
    if p.premises:
        out['premises'] = [nd_to_json(q) for q in p.premises]
    return out


# ---------------------------------------------------------------------------
# lambda terms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    word: str
    index: Optional[int] = None


@dataclass(frozen=True)
class App:
    fun: 'LambdaTerm'
    arg: 'LambdaTerm'


@dataclass(frozen=True)
class Abs:
    var: str
    body: 'LambdaTerm'


LambdaTerm = Union[Var, Const, App, Abs]


def print_term(t: LambdaTerm) -> str:
    match t:
        case Var(name):
            return name
        case Const(word):
            return word
        case App(fun, arg):
            f = print_term(fun)
            if isinstance(fun, Abs):
                f = f'({f})'
            a = print_term(arg)
            if isinstance(arg, (App, Abs)):
                a = f'({a})'
            return f'{f} {a}'
        case Abs(var, body):
            return f'\\{var}. {print_term(body)}'
    raise TypeError(t)


def term_to_json(t: LambdaTerm) -> dict:
    match t:
        case Var(name):
            return {'var': name}
        case Const(word, index):
            return {'const': word, 'index': index}
        case App(fun, arg):
            return {'app': [term_to_json(fun), term_to_json(arg)]}
        case Abs(var, body):
            return {'abs': var, 'body': term_to_json(body)}
    raise TypeError(t)


# ---------------------------------------------------------------------------
# sequent calculus
# ---------------------------------------------------------------------------

class SeqRule(Enum):
    AX = 'Ax'
    IMPL_L = '-oL'
    IMPL_R = '-oR'
    DIA_R = 'DiaR'
    BOX_L = 'BoxL'


@dataclass(frozen=True)
class SeqItem:
    """A named antecedent formula; ``hypothesis`` separates abstracted
    variables from words."""
    name: str
    type: LinearType
    hypothesis: bool = False
    index: int = 0


@dataclass(frozen=True)
class SequentProof:
    rule: SeqRule
    antecedent: tuple[SeqItem, ...]
    succedent: LinearType
    premises: tuple['SequentProof', ...] = ()
    principal: Optional[SeqItem] = None
    label: Optional[str] = None

    def __str__(self) -> str:
        return print_sequent_proof(self)


def seq_rules(p: SequentProof) -> list[SequentProof]:
    out = [p]
    for q in p.premises:
        out.extend(seq_rules(q))
    return out


def _seq_rule_name(p: SequentProof) -> str:
    if p.rule is SeqRule.DIA_R:
        return f'<{p.label}>R'
    if p.rule is SeqRule.BOX_L:
        return f'[{p.label}]L'
    return p.rule.value


def print_sequent_proof(p: SequentProof, indent: int = 0) -> str:
    left = ', '.join(f'{i.name}:{print_type(i.type)}' for i in p.antecedent)
    line = f'{"  " * indent}{_seq_rule_name(p)}: {left} |- {print_type(p.succedent)}'
    return '\n'.join([line] + [print_sequent_proof(q, indent + 1) for q in p.premises])


def sequent_proof_to_json(p: SequentProof) -> dict:
    out = {'rule': p.rule.name.lower(),
           'antecedent': [[i.name, print_type(i.type)] for i in p.antecedent],
           'succedent': print_type(p.succedent)}
    if p.principal is not None:
        out['principal'] = p.principal.name
    if p.label is not None:
        out['label'] = p.label
    if p.premises:
        out['premises'] = [sequent_proof_to_json(q) for q in p.premises]
    return out
