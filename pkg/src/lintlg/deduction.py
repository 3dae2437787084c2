"""Operations on natural deduction proofs: sequentialization of verified
nets, Curry-Howard terms, term type checking, the translation to and from
sequent calculus, and an exhaustive proof search used as a testing oracle."""
from __future__ import annotations

import itertools
from collections import Counter
from typing import Mapping, Optional, Union

from .proofnet import Linking, ProofFrame, ProofNet, check_correctness, variable_name
from .proofs import (
    Abs, App, Const, LambdaTerm, NDProof, Rule, SeqItem, SeqRule, SequentProof, Var,
    ax, box_e, dia_i, impl_e, impl_i, lex,
)
from .types import (
    Box, Dia, Impl, LinearType, POS, Sequent, atom_count, count_check, erase_bangs,
    erase_modalities, print_type, strip_bang,
)


class InternalInconsistency(AssertionError):
    pass


class UnboundConstantError(KeyError):
    pass


def sequentialize(net: ProofNet) -> NDProof:
    if not net.verified:
        raise ValueError('only verified nets can be sequentialized')
    if net.witness is not None:
        return net.witness
    verdict = check_correctness(net.frame, net.linking)
    if not verdict:
        raise InternalInconsistency(f'verified net failed to sequentialize: {verdict.reason}')
    return verdict.proof


def axiom_links(p: NDProof, frame: ProofFrame) -> Linking:
    """Recover the axiom linking of a (normal, eta-long) ND proof by tracing
    atom occurrences from the lexical leaves and the goal."""
    polarity = {a.index: a.polarity for a in frame.atoms}
    hypotheses: dict[int, tuple[int, ...]] = {}
    pairs: dict[int, int] = {}

    def walk(node: NDProof, goal: tuple[int, ...]):
        if node.rule is Rule.IMPL_I:
            n = atom_count(strip_bang(node.type).argument)
            hypotheses[node.index] = goal[:n]
            walk(node.premises[0], goal[n:])
        elif node.rule is Rule.DIA_I:
            walk(node.premises[0], goal)
        else:
            for g, t in zip(goal, synth(node), strict=True):
                p, n = (g, t) if polarity[g] is POS else (t, g)
                if p in pairs:
                    raise ValueError(f'atom {p} linked twice')
                pairs[p] = n

    def synth(node: NDProof) -> tuple[int, ...]:
        match node.rule:
            case Rule.LEX:
                return frame.item_indices(node.index)
            case Rule.AX:
                return hypotheses[node.index]
            case Rule.BOX_E:
                return synth(node.premises[0])
            case Rule.IMPL_E:
                fun, arg = node.premises
                idx = synth(fun)
                n = atom_count(strip_bang(fun.type).argument)
                walk(arg, idx[:n])
                return idx[n:]
        raise ValueError(f'{node.rule.value} in elimination position: proof is not normal')

    walk(p, frame.item_indices(frame.goal_item))
    return Linking.from_dict(pairs)


# ---------------------------------------------------------------------------
# lambda terms
# ---------------------------------------------------------------------------

def nd_to_lambda(p: NDProof) -> LambdaTerm:
    """Curry-Howard term; modal steps leave no trace.  Bound variables are
    renamed x, y, z, x3, ... in pre-order so equal proofs give equal terms."""
    names: dict[int, str] = {}

    def go(node: NDProof) -> LambdaTerm:
        match node.rule:
            case Rule.LEX:
                return Const(node.name, node.index)
            case Rule.AX:
                return Var(names[node.index])
            case Rule.IMPL_E:
                return App(go(node.premises[0]), go(node.premises[1]))
            case Rule.IMPL_I:
                names[node.index] = name = variable_name(len(names))
                return Abs(name, go(node.premises[0]))
            case Rule.DIA_I | Rule.BOX_E:
                return go(node.premises[0])
        raise TypeError(node.rule)

    return go(p)


def nd_bindings(p: NDProof) -> dict[int, LinearType]:
    """Lexical type per sentence position."""
    return {q.index: q.type for q in _steps(p) if q.rule is Rule.LEX}


def _steps(p: NDProof):
    yield p
    for q in p.premises:
        yield from _steps(q)


def is_linear(t: LambdaTerm) -> bool:
    def occurrences(term: LambdaTerm, name: str) -> int:
        match term:
            case Var(n):
                return int(n == name)
            case Const():
                return 0
            case App(f, a):
                return occurrences(f, name) + occurrences(a, name)
            case Abs(v, body):
                return 0 if v == name else occurrences(body, name)
        raise TypeError(term)

    def check(term: LambdaTerm) -> bool:
        match term:
            case Var() | Const():
                return True
            case App(f, a):
                return check(f) and check(a)
            case Abs(v, body):
                return occurrences(body, v) == 1 and check(body)
        raise TypeError(term)

    return check(t)


def _constants(t: LambdaTerm) -> list[Const]:
    match t:
        case Const():
            return [t]
        case Var():
            return []
        case App(f, a):
            return _constants(f) + _constants(a)
        case Abs(_, body):
            return _constants(body)
    raise TypeError(t)


def _free_vars(t: LambdaTerm) -> set[str]:
    match t:
        case Var(n):
            return {n}
        case Const():
            return set()
        case App(f, a):
            return _free_vars(f) | _free_vars(a)
        case Abs(v, body):
            return _free_vars(body) - {v}
    raise TypeError(t)


def lambda_typecheck(term: LambdaTerm, bindings: Mapping[Union[int, str], LinearType],
                     goal: LinearType) -> bool:
    """True iff ``term`` is linear, uses every bound constant exactly once and
    has type ``goal`` with all modalities erased.

    Constants are looked up by sentence position first, then by word.
    """
    def lookup(c: Const) -> LinearType:
        if c.index is not None and c.index in bindings:
            return erase_modalities(bindings[c.index])
        if c.word in bindings:
            return erase_modalities(bindings[c.word])
        raise UnboundConstantError(c.word)

    consts = _constants(term)
    types = {c: lookup(c) for c in consts}
    keys = Counter(c.index if c.index is not None and c.index in bindings else c.word
                   for c in consts)
    if any(n != 1 for n in keys.values()) or set(keys) != set(bindings):
        return False
    if _free_vars(term) or not is_linear(term):
        return False

    def infer(t: LambdaTerm, env: dict[str, LinearType]) -> Optional[LinearType]:
        match t:
            case Var(n):
                return env.get(n)
            case Const():
                return types[t]
            case App(f, a):
                ft = infer(f, env)
                if not isinstance(ft, Impl) or not check(a, ft.argument, env):
                    return None
                return ft.result
        return None

    def check(t: LambdaTerm, expected: LinearType, env: dict[str, LinearType]) -> bool:
        if isinstance(t, Abs):
            return (isinstance(expected, Impl)
                    and check(t.body, expected.result, {**env, t.var: expected.argument}))
        return infer(t, env) == expected

    return check(term, erase_modalities(goal), {})


# ---------------------------------------------------------------------------
# sequent calculus
# ---------------------------------------------------------------------------

def _item(leaf: NDProof, t: LinearType) -> SeqItem:
    return SeqItem(leaf.name, t, leaf.rule is Rule.AX, leaf.index)


def _same_item(a: SeqItem, b: SeqItem) -> bool:
    return a.hypothesis == b.hypothesis and a.index == b.index


def _retype(antecedent: tuple[SeqItem, ...], item: SeqItem) -> tuple[SeqItem, ...]:
    return tuple(item if _same_item(i, item) else i for i in antecedent)


def nd_to_sequent(p: NDProof) -> SequentProof:
    """Translate a normal ND proof: introductions become right rules, each
    elimination spine becomes a stack of left rules over one identity axiom."""
    match p.rule:
        case Rule.IMPL_I:
            premise = nd_to_sequent(p.premises[0])
            hyp = next(i for i in premise.antecedent if i.hypothesis and i.index == p.index)
            rest = tuple(i for i in premise.antecedent if i is not hyp)
            return SequentProof(SeqRule.IMPL_R, rest, p.type, (premise,), principal=hyp)
        case Rule.DIA_I:
            premise = nd_to_sequent(p.premises[0])
            return SequentProof(SeqRule.DIA_R, premise.antecedent, p.type, (premise,),
                                label=p.label)
    ops, head = [], p
    while head.rule in (Rule.IMPL_E, Rule.BOX_E):
        ops.append(head)
        head = head.premises[0]
    if head.rule not in (Rule.LEX, Rule.AX):
        raise ValueError('proof is not normal')
    goal = p.type
    item = _item(head, p.type)
    proof = SequentProof(SeqRule.AX, (item,), goal)
    for op in ops:  # outermost first
        fun = op.premises[0]
        item = _item(head, fun.type)
        if op.rule is Rule.IMPL_E:
            left = nd_to_sequent(op.premises[1])
            antecedent = _retype(proof.antecedent, item) + left.antecedent
            proof = SequentProof(SeqRule.IMPL_L, antecedent, goal, (left, proof), principal=item)
        else:
            proof = SequentProof(SeqRule.BOX_L, _retype(proof.antecedent, item), goal, (proof,),
                                 principal=item, label=op.label)
    return proof


def sequent_to_nd(sq: SequentProof) -> NDProof:
    def leaf(i: SeqItem) -> NDProof:
        return ax(i.index, i.name, i.type) if i.hypothesis else lex(i.name, i.index, i.type)

    def go(node: SequentProof, env: dict) -> NDProof:
        match node.rule:
            case SeqRule.AX:
                i = node.antecedent[0]
                return env.get((i.hypothesis, i.index)) or leaf(i)
            case SeqRule.IMPL_R:
                h = node.principal
                return impl_i(h.index, h.name, h.type, go(node.premises[0], env))
            case SeqRule.DIA_R:
                return dia_i(node.label, go(node.premises[0], env))
            case SeqRule.IMPL_L:
                left, right = node.premises
                f = node.principal
                fun = env.get((f.hypothesis, f.index)) or leaf(f)
                return go(right, {**env, (f.hypothesis, f.index): impl_e(fun, go(left, env))})
            case SeqRule.BOX_L:
                f = node.principal
                fun = env.get((f.hypothesis, f.index)) or leaf(f)
                return go(node.premises[0], {**env, (f.hypothesis, f.index): box_e(fun)})
        raise TypeError(node.rule)

    return go(sq, {})


def sequent_to_lambda(sq: SequentProof) -> LambdaTerm:
    return nd_to_lambda(sequent_to_nd(sq))


# ---------------------------------------------------------------------------
# exhaustive proof search (oracle)
# ---------------------------------------------------------------------------

def _spines(t: LinearType):
    t, ops = strip_bang(t), []
    while True:
        yield list(ops), t
        if isinstance(t, Box):
            ops.append(('box', None))
            t = strip_bang(t.body)
        elif isinstance(t, Impl):
            ops.append(('impl', t.argument))
            t = strip_bang(t.result)
        else:
            return


class _Search:
    def __init__(self, limit: Optional[int]):
        self.hypotheses = 0
        self.limit = limit

    def search(self, ctx: tuple[NDProof, ...], goal: LinearType) -> list[NDProof]:
        goal = strip_bang(goal)
        if not count_check(Sequent(tuple(p.type for p in ctx), goal)):
            return []
        if isinstance(goal, Impl):
            h = self.hypotheses
            self.hypotheses += 1
            name = variable_name(h)
            hyp = ax(h, name, goal.argument)
            return [impl_i(h, name, goal.argument, body)
                    for body in self.search(ctx + (hyp,), goal.result)]
        found = []
        if isinstance(goal, Dia):
            found.extend(dia_i(goal.label, body) for body in self.search(ctx, goal.body))
        target = erase_bangs(goal)
        for k, head in enumerate(ctx):
            rest = ctx[:k] + ctx[k + 1:]
            for ops, t in _spines(head.type):
                if erase_bangs(t) != target:
                    continue
                args = [a for kind, a in ops if kind == 'impl']
                for groups in _assignments(rest, len(args)):
                    subproofs = [self.search(g, a) for g, a in zip(groups, args)]
                    for combo in itertools.product(*subproofs):
                        found.append(_apply(head, ops, combo))
        return found


def _assignments(rest: tuple, n: int):
    if n == 0:
        if not rest:
            yield []
        return
    for labels in itertools.product(range(n), repeat=len(rest)):
        yield [tuple(p for p, l in zip(rest, labels) if l == i) for i in range(n)]


def _apply(head: NDProof, ops, args) -> NDProof:
    proof, args = head, iter(args)
    for kind, _ in ops:
        proof = box_e(proof) if kind == 'box' else impl_e(proof, next(args))
    return proof


def prove_all(s: Sequent) -> list[NDProof]:
    """Every normal eta-long ND proof of ``s``, found by blind backward search."""
    ctx = tuple(lex(w, i, t) for i, (t, w) in enumerate(zip(s.antecedent, s.names())))
    return _Search(None).search(ctx, s.succedent)


def provable_linkings(s: Sequent, frame: ProofFrame) -> set[Linking]:
    return {axiom_links(p, frame) for p in prove_all(s)}
