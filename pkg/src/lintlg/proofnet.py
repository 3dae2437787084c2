"""Axiom-link proof nets over indexed atom occurrences.

Correctness is decided by sequentialization: the linking is read as a
recipe for a natural deduction proof (goal-directed, eta-long), and the
net is accepted exactly when that recipe goes through.  The ND proof built
on the way is kept as the witness.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .proofs import NDProof, ax, box_e, dia_i, impl_e, impl_i, lex
from .types import (
    Box, Dia, Impl, LinearType, NEG, POS, Polarity, Sequent, atom_count,
    erase_bangs, parse_type, polar_atoms, print_type, strip_bang,
)

DEFAULT_BOUND = 10


class BoundExceeded(ValueError):
    pass


@dataclass(frozen=True)
class IndexedAtom:
    index: int
    name: str
    polarity: Polarity
    host: tuple[int, int]  # (antecedent position or len(antecedent) for the goal, atom ordinal)


@dataclass(frozen=True)
class ProofFrame:
    sequent: Sequent
    atoms: tuple[IndexedAtom, ...]

    def item_indices(self, item: int) -> tuple[int, ...]:
        return tuple(a.index for a in self.atoms if a.host[0] == item)

    @property
    def goal_item(self) -> int:
        return len(self.sequent.antecedent)

    def positives(self) -> list[IndexedAtom]:
        return [a for a in self.atoms if a.polarity is POS]

    def negatives(self) -> list[IndexedAtom]:
        return [a for a in self.atoms if a.polarity is NEG]


@dataclass(frozen=True)
class Linking:
    pairs: tuple[tuple[int, int], ...]  # (positive index, negative index), sorted

    def __post_init__(self):
        object.__setattr__(self, 'pairs', tuple(sorted((int(p), int(n)) for p, n in self.pairs)))

    @classmethod
    def from_dict(cls, mapping: dict[int, int]) -> 'Linking':
        return cls(tuple(mapping.items()))

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: Optional[str] = None
    proof: Optional[NDProof] = None

    def __bool__(self) -> bool:
        return self.accepted


@dataclass(frozen=True)
class ProofNet:
    frame: ProofFrame
    linking: Linking
    verified: bool = False
    witness: Optional[NDProof] = field(default=None, compare=False)


def build_frame(s: Sequent) -> ProofFrame:
    out, index = [], 0
    items = [(t, NEG) for t in s.antecedent] + [(s.succedent, POS)]
    for item, (t, seed) in enumerate(items):
        for k, (name, pol) in enumerate(polar_atoms(t, seed)):
            out.append(IndexedAtom(index, name, pol, (item, k)))
            index += 1
    return ProofFrame(s, tuple(out))


def validate_linking(frame: ProofFrame, linking: Linking) -> bool:
    by_index = {a.index: a for a in frame.atoms}
    pos_seen, neg_seen = set(), set()
    for p, n in linking.pairs:
        if p not in by_index or n not in by_index:
            return False
        pa, na = by_index[p], by_index[n]
        if pa.polarity is not POS or na.polarity is not NEG or pa.name != na.name:
            return False
        if p in pos_seen or n in neg_seen:
            return False
        pos_seen.add(p)
        neg_seen.add(n)
    return (pos_seen == {a.index for a in frame.positives()}
            and neg_seen == {a.index for a in frame.negatives()})


# ---------------------------------------------------------------------------
# sequentialization
# ---------------------------------------------------------------------------

class _Reject(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass
class _Item:
    type: LinearType
    idx: tuple[int, ...]
    proof: NDProof


def head_offset(t: LinearType) -> int:
    """Position of the result atom among the atoms of ``t``."""
    t = strip_bang(t)
    if isinstance(t, Impl):
        return atom_count(t.argument) + head_offset(t.result)
    if isinstance(t, (Dia, Box)):
        return head_offset(t.body)
    return 0


def variable_name(i: int) -> str:
    return ('x', 'y', 'z')[i] if i < 3 else f'x{i}'


class _Sequentializer:
    def __init__(self, frame: ProofFrame, linking: Linking):
        self.frame = frame
        self.partner: dict[int, int] = {}
        for p, n in linking.pairs:
            self.partner[p] = n
            self.partner[n] = p
        self.hypotheses = 0

    def run(self) -> NDProof:
        s = self.frame.sequent
        ctx = [_Item(t, self.frame.item_indices(i), lex(w, i, t))
               for i, (t, w) in enumerate(zip(s.antecedent, s.names()))]
        return self.prove(ctx, s.succedent, self.frame.item_indices(self.frame.goal_item))

    def prove(self, ctx: list[_Item], goal: LinearType, gidx: tuple[int, ...]) -> NDProof:
        goal = strip_bang(goal)
        if isinstance(goal, Impl):
            n = atom_count(goal.argument)
            hyp = self.hypotheses
            self.hypotheses += 1
            name = variable_name(hyp)
            item = _Item(goal.argument, gidx[:n], ax(hyp, name, goal.argument))
            body = self.prove(ctx + [item], goal.result, gidx[n:])
            return impl_i(hyp, name, goal.argument, body)

        target = self.partner[gidx[head_offset(goal)]]
        owner = next((it for it in ctx if target in it.idx), None)
        spine = None
        if owner is not None and owner.idx[head_offset(owner.type)] == target:
            spine = self.unwind(owner, goal)
        if spine is None:
            if isinstance(goal, Dia):
                return dia_i(goal.label, self.prove(ctx, goal.body, gidx))
            raise _Reject('cyclic')
        ops, tidx = spine
        if any(self.partner[g] != t for g, t in zip(gidx, tidx)):
            raise _Reject('cyclic')

        rest = [it for it in ctx if it is not owner]
        args = [(op[1], op[2]) for op in ops if op[0] == 'impl']
        groups = self.partition(rest, args)
        arg_proofs = iter([self.prove(group, t, idx) for group, (t, idx) in zip(groups, args)])
        proof = owner.proof
        for op in ops:
            proof = box_e(proof) if op[0] == 'box' else impl_e(proof, next(arg_proofs))
        return proof

    def unwind(self, owner: _Item, goal: LinearType):
        """Peel BoxE/-oE steps off ``owner`` until it matches ``goal``."""
        target = erase_bangs(goal)
        t, idx, ops = strip_bang(owner.type), owner.idx, []
        while True:
            if erase_bangs(t) == target:
                return ops, idx
            if isinstance(t, Box):
                ops.append(('box',))
                t = strip_bang(t.body)
            elif isinstance(t, Impl):
                n = atom_count(t.argument)
                ops.append(('impl', t.argument, idx[:n]))
                t, idx = strip_bang(t.result), idx[n:]
            else:
                return None

    def partition(self, rest: list[_Item], args) -> list[list[_Item]]:
        local: dict[int, tuple[str, object]] = {}
        for it in rest:
            for a in it.idx:
                local[a] = ('ctx', it)
        for i, (_, idx) in enumerate(args):
            for a in idx:
                local[a] = ('arg', i)
        claimed: dict[int, int] = {}
        for i, (_, idx) in enumerate(args):
            frontier = list(idx)
            while frontier:
                who = local.get(self.partner[frontier.pop()])
                if who is None:
                    raise _Reject('cyclic')
                kind, value = who
                if kind == 'arg':
                    if value != i:
                        raise _Reject('cyclic')
                    continue
                key = id(value)
                if key in claimed:
                    if claimed[key] != i:
                        raise _Reject('cyclic')
                    continue
                claimed[key] = i
                frontier.extend(value.idx)
        leftover = [it for it in rest if id(it) not in claimed]
        if leftover:
            selfloop = any(self.partner[a] in it.idx for it in leftover for a in it.idx)
            raise _Reject('cyclic' if selfloop else 'disconnected')
        return [[it for it in rest if claimed[id(it)] == i] for i in range(len(args))]


def check_correctness(frame: ProofFrame, linking: Linking) -> Verdict:
    if not validate_linking(frame, linking):
        return Verdict(False, 'invalid')
    try:
        proof = _Sequentializer(frame, linking).run()
    except _Reject as e:
        return Verdict(False, e.reason)
    return Verdict(True, None, proof)


def make_proof_net(frame: ProofFrame, linking: Linking) -> ProofNet:
    """Attach a linking to a frame; ``verified`` reflects the correctness check."""
    verdict = check_correctness(frame, linking)
    return ProofNet(frame, linking, verdict.accepted, verdict.proof)


def verify(net: ProofNet) -> ProofNet:
    return make_proof_net(net.frame, net.linking)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def count_bijections(frame: ProofFrame) -> int:
    pos, neg = defaultdict(int), defaultdict(int)
    for a in frame.atoms:
        (pos if a.polarity is POS else neg)[a.name] += 1
    if pos != neg:
        return 0
    return math.prod(math.factorial(n) for n in pos.values())


def enumerate_linkings(frame: ProofFrame, mode: str = 'all',
                       bound: int = DEFAULT_BOUND) -> list[Linking]:
    """Every name/polarity-compatible bijection (``mode='all'``) or only the
    correct ones (``mode='correct'``), in lexicographic order of pair lists."""
    if mode not in ('all', 'correct'):
        raise ValueError(f'unknown mode {mode!r}')
    if mode == 'correct' and len(frame.positives()) > bound:
        raise BoundExceeded(f'{len(frame.positives())} positive atoms exceed the bound of {bound}')
    pos, neg = defaultdict(list), defaultdict(list)
    for a in frame.atoms:
        (pos if a.polarity is POS else neg)[a.name].append(a.index)
    if {k: len(v) for k, v in pos.items()} != {k: len(v) for k, v in neg.items()}:
        return []
    names = sorted(pos)
    choices = [[list(zip(pos[n], perm)) for perm in itertools.permutations(neg[n])]
               for n in names]
    out = [Linking(tuple(itertools.chain.from_iterable(combo)))
           for combo in itertools.product(*choices)]
    out.sort(key=lambda l: l.pairs)
    if mode == 'correct':
        out = [l for l in out if check_correctness(frame, l)]
    return out


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def proofnet_to_json(net: ProofNet) -> dict:
    s = net.frame.sequent
    return {
        'words': list(s.names()),
        'types': [print_type(t) for t in s.antecedent],
        'goal': print_type(s.succedent),
        'atoms': [{'index': a.index, 'name': a.name, 'polarity': a.polarity.value,
                   'host': list(a.host)} for a in net.frame.atoms],
        'links': [list(p) for p in net.linking.pairs],
    }


def proofnet_from_json(data: dict, labels: Optional[Iterable[str]] = None) -> ProofNet:
    """Rebuild an (unverified) net; the stored atom table must agree with the
    one recomputed from the types."""
    s = Sequent(tuple(parse_type(t, labels) for t in data['types']),
                parse_type(data['goal'], labels), tuple(data['words']))
    frame = build_frame(s)
    if 'atoms' in data:
        stored = [(a['index'], a['name'], a['polarity'], tuple(a['host'])) for a in data['atoms']]
        ours = [(a.index, a.name, a.polarity.value, a.host) for a in frame.atoms]
        if stored != ours:
            raise ValueError('atom table does not match the types')
    return ProofNet(frame, Linking(tuple(tuple(p) for p in data['links'])))
