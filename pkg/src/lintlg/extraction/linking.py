"""Axiom linking: read the proof prescribed by a typed DAG off its
branchings and record it as a bijection of atom occurrences."""
from __future__ import annotations

from dataclasses import dataclass

from ..proofnet import Linking, ProofNet, build_frame, make_proof_net
from ..treebank import PRIMARY, Edge
from ..types import Atom, Box, Dia, Impl, LinearType, Sequent, atom_count, count_check, strip_bang
from .assign import TypedDag, _Typer
from .tables import ExtractionError, TranslationTables, default_tables


class CountMismatch(ExtractionError):
    kind = 'count-mismatch'
    stage = 'linking'


class LinkingFailure(ExtractionError):
    kind = 'linking-failure'
    stage = 'linking'


@dataclass(frozen=True)
class _IT:
    """A type together with the frame indices of its atoms."""
    type: LinearType
    idx: tuple[int, ...]

    def strip(self) -> '_IT':
        return _IT(strip_bang(self.type), self.idx)

    def split(self) -> tuple['_IT', '_IT']:
        t = self.type
        n = atom_count(t.argument)
        return _IT(t.argument, self.idx[:n]), _IT(t.result, self.idx[n:])

    def body(self) -> '_IT':
        return _IT(self.type.body, self.idx)


def sample_sequent(td: TypedDag) -> Sequent:
    leaves = td.dag.leaves()
    return Sequent(tuple(td.types[n] for n in leaves), td.root_type,
                   tuple(td.dag.nodes[n].word or f'w{i}' for i, n in enumerate(leaves)))


class _Linker:
    def __init__(self, td: TypedDag, tables: TranslationTables):
        self.td = td
        self.d = td.dag
        self.typer = _Typer(td, tables)
        self.t = tables
        self.sequent = sample_sequent(td)
        self.frame = build_frame(self.sequent)
        self.leaf_index = {n: i for i, n in enumerate(self.d.leaves())}
        self.links: dict[int, int] = {}
        self.placeholders: dict[tuple[int, int, str], _IT] = {}

    def fail(self, message: str):
        raise LinkingFailure(message)

    # -- matching --------------------------------------------------------

    def match(self, pos: _IT, neg: _IT):
        pos, neg = pos.strip(), neg.strip()
        p, n = pos.type, neg.type
        if isinstance(p, Atom) and isinstance(n, Atom) and p.name == n.name:
            self.links[pos.idx[0]] = neg.idx[0]
        elif isinstance(p, Impl) and isinstance(n, Impl):
            pa, pr = pos.split()
            na, nr = neg.split()
            self.match(na, pa)
            self.match(pr, nr)
        elif isinstance(p, (Dia, Box)) and type(p) is type(n) and p.label == n.label:
            self.match(pos.body(), neg.body())
        elif isinstance(p, Dia):
            self.match(pos.body(), neg)
        else:
            self.fail(f'cannot match {p} against {n}')

    def apply(self, functor: _IT, arg_neg: _IT) -> _IT:
        f = functor.strip()
        if isinstance(f.type, Box):
            f = f.body().strip()
        if not isinstance(f.type, Impl):
            self.fail(f'{f.type} is not a functor')
        a, r = f.split()
        self.match(a, arg_neg)
        return r

    # -- derivation ------------------------------------------------------

    def value(self, e: Edge) -> _IT:
        key = (e.parent, e.child, e.dep)
        if key in self.placeholders:
            return self.placeholders[key]
        if e.kind != PRIMARY:
            self.fail(f'secondary edge {e.parent}->{e.child} was never resolved')
        return self.derive(e.child)

    def derive(self, n: int) -> _IT:
        if n in self.leaf_index:
            i = self.leaf_index[n]
            return _IT(self.td.types[n], self.frame.item_indices(i))
        edges = self.typer.out[n]
        by_role: dict[str, list[Edge]] = {}
        for e in edges:
            by_role.setdefault(self.typer.edge_role(e.dep), []).append(e)
        if 'cnj' in by_role:
            core = self.derive_conjunction(n, by_role)
        else:
            heads = by_role.get('head', [])
            if len(heads) != 1:
                self.fail(f'node {n} has {len(heads)} heads')
            head = heads[0]
            core = self.value(head)
            gaps = self.td.gaps.get(head.child, {})
            pending = list(by_role.get('arg', []))
            for _ in range(len(pending)):
                f = core.strip()
                if not isinstance(f.type, Impl):
                    self.fail(f'head of node {n} takes fewer arguments than it has complements')
                arg, core = f.split()
                arg = arg.strip()
                if not isinstance(arg.type, Dia):
                    self.fail(f'head argument {arg.type} lacks a dependency decoration')
                comp = next((e for e in pending if e.dep == arg.type.label), None)
                if comp is None:
                    self.fail(f'no {arg.type.label!r} complement for the head of node {n}')
                pending.remove(comp)
                hyp_edges = gaps.get(comp.dep, [])
                if not hyp_edges:
                    self.match(arg, self.value(comp))
                    continue
                inner = arg.body()
                for hyp_edge in hyp_edges:
                    inner = inner.strip()
                    hyp, inner = inner.split()
                    self.placeholders[(hyp_edge.parent, hyp_edge.child, hyp_edge.dep)] = hyp
                self.match(inner, self.value(comp))
            for e in by_role.get('det', []):
                core = self.apply(self.value(e), core)
        for e in by_role.get('mod', []):
            core = self.apply(self.value(e), core)
        return core

    def derive_conjunction(self, n: int, by_role: dict[str, list[Edge]]) -> _IT:
        crds = by_role.get('crd', [])
        if len(crds) != 1:
            self.fail(f'conjunction {n} has {len(crds)} coordinators')
        coord = self.value(crds[0])
        copies = self.td.copies.get(n, [])
        for conj in by_role['cnj']:
            f = coord.strip()
            if not isinstance(f.type, Impl):
                self.fail(f'coordinator of {n} takes too few conjuncts')
            arg, coord = f.split()
            arg = arg.strip()
            if not (isinstance(arg.type, Dia) and arg.type.label == conj.dep):
                self.fail(f'coordinator argument {arg.type} does not fit a conjunct')
            inner = arg.body()
            scope = {conj.child} | self.d.descendants(conj.child)
            for m, label in copies:
                inner = inner.strip()
                hyp, inner = inner.split()
                edge = next((e for e in self.typer.incoming[m] if e.parent in scope and e.dep == label), None)
                if edge is None:
                    self.fail(f'copied node {m} is missing from a conjunct of {n}')
                self.placeholders[(edge.parent, edge.child, edge.dep)] = hyp
            self.match(inner, self.value(conj))
        for m, _ in copies:
            coord = self.apply(coord, self.derive(m))
        return coord

    def run(self) -> ProofNet:
        check = count_check(self.sequent)
        if not check:
            raise CountMismatch(f'atom counts do not balance: {check.deficit}')
        goal = _IT(self.sequent.succedent, self.frame.item_indices(self.frame.goal_item))
        self.match(goal, self.derive(self.d.root))
        if len(self.links) != len(self.frame.positives()):
            self.fail('linking does not cover every atom occurrence')
        if len(set(self.links.values())) != len(self.links):
            self.fail('linking is not injective')
        return make_proof_net(self.frame, Linking.from_dict(self.links))


def link_axioms(td: TypedDag, tables: TranslationTables = None) -> ProofNet:
    """Build the proof net a fully typed DAG prescribes.  The returned net
    carries the outcome of the correctness check in ``verified``."""
    return _Linker(td, tables or default_tables()).run()
