"""Type assignment over preprocessed DAGs.

Typing is a fixpoint iteration.  Each step runs three fringe passes to
exhaustion: simple clauses (atomic translations, heads, modifiers,
determiners), non-local dependencies (higher-order pronoun types) and
conjunctions (polymorphic coordinator types).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..treebank import PRIMARY, SECONDARY, Dag, Edge
from ..types import Bang, Box, Dia, Impl, LinearType, impl_chain, strip_bang
from .tables import ExtractionError, TranslationTables, default_tables


class NoProgress(ExtractionError):
    kind = 'no-progress'


class HeadlessConjunction(ExtractionError):
    kind = 'headless-conjunction'


class AsymmetricConjunction(ExtractionError):
    kind = 'asymmetric-conjunction'


class CopyOutsideConjunction(ExtractionError):
    kind = 'copy-outside-conjunction'


class UnresolvableSecondaryEdge(ExtractionError):
    kind = 'unresolvable-secondary-edge'


@dataclass
class TypedDag:
    """A DAG with a (partial, then total) node typing.

    ``gaps`` maps a pronoun node to ``{body label: secondary edges}``, the
    edges listed in the order their hypotheses appear in the body argument.
    ``copies`` maps a conjunction node to its shared nodes as
    ``(node, label)`` pairs, in argument order.
    """
    dag: Dag
    types: dict[int, LinearType] = field(default_factory=dict)
    gaps: dict[int, dict[str, list[Edge]]] = field(default_factory=dict)
    copies: dict[int, list[tuple[int, str]]] = field(default_factory=dict)

    def leaf_types(self) -> list[tuple[str, LinearType]]:
        return [(self.dag.nodes[n].word, self.types[n]) for n in self.dag.leaves()]

    @property
    def root_type(self) -> LinearType:
        return self.types[self.dag.root]


class _Typer:
    def __init__(self, td: TypedDag, tables: TranslationTables):
        self.td = td
        self.d = td.dag
        self.t = tables
        self.parent: dict[int, Optional[Edge]] = {n: self.d.primary_parent(n) for n in self.d.nodes}
        self.out = {n: self.d.out_edges(n) for n in self.d.nodes}
        self.incoming = {n: self.d.in_edges(n) for n in self.d.nodes}

    # -- classification ----------------------------------------------------

    def role(self, n: int) -> str:
        e = self.parent[n]
        if n == self.d.root or e is None:
            return 'root'
        return self.edge_role(e.dep)

    def edge_role(self, dep: str) -> str:
        t = self.t
        if dep in t.head_labels:
            return 'head'
        if dep in t.mod_labels:
            return 'mod'
        if dep == t.det_label:
            return 'det'
        if dep == t.crd_label:
            return 'crd'
        if dep == t.cnj_label:
            return 'cnj'
        return 'arg'

    def atomic(self, n: int):
        node = self.d.nodes[n]
        return self.t.atom(node.cat, node.pos)

    def position(self, n: int) -> tuple[int, int]:
        return (self.d.nodes[n].begin, n)

    def complements(self, p: int) -> list[Edge]:
        return [e for e in self.out[p] if self.edge_role(e.dep) == 'arg']

    def siblings(self, n: int, role: str) -> list[Edge]:
        p = self.parent[n].parent
        return [e for e in self.out[p] if e.child != n and self.edge_role(e.dep) == role]

    def is_conj(self, n: int) -> bool:
        return any(e.dep == self.t.cnj_label and e.kind == PRIMARY for e in self.out[n])

    def is_pronoun(self, n: int) -> bool:
        labels = [e.dep for e in self.incoming[n]]
        return len(labels) > 1 and len(set(labels)) == len(labels)

    def ancestors(self, n: int) -> list[int]:
        out = []
        while self.parent[n] is not None:
            n = self.parent[n].parent
            out.append(n)
        return out

    def within(self, n: int, top: int) -> bool:
        return n == top or top in self.ancestors(n)

    # -- checks that can be made before typing -----------------------------

    def validate(self):
        for n in sorted(self.d.nodes):
            if self.is_conj(n):
                if not any(e.dep == self.t.crd_label for e in self.out[n]):
                    raise HeadlessConjunction(f'conjunction {n} has no coordinator')
        for n in sorted(self.d.nodes):
            labels = [e.dep for e in self.incoming[n]]
            if len(labels) < 2 or len(set(labels)) == len(labels):
                continue
            if len(set(labels)) != 1:
                raise CopyOutsideConjunction(f'node {n} mixes shared and distinct incoming labels')
            self.register_copy(n, labels[0])
        for c in self.td.copies:
            self.td.copies[c].sort(key=lambda m: (self.t.rank(m[1]), self.position(m[0])))

    def register_copy(self, m: int, label: str):
        parents = [e.parent for e in self.incoming[m]]
        chains = [[p] + self.ancestors(p) for p in parents]
        common = [a for a in chains[0] if all(a in ch for ch in chains[1:])]
        if not common or not self.is_conj(common[0]):
            raise CopyOutsideConjunction(f'node {m} is shared outside a conjunction')
        c = common[0]
        conjuncts = [e.child for e in self.out[c] if e.dep == self.t.cnj_label and e.kind == PRIMARY]
        hits = []
        for p in parents:
            owners = [k for k in conjuncts if self.within(p, k)]
            if not owners:
                raise AsymmetricConjunction(f'node {m} is attached to conjunction {c} outside its conjuncts')
            hits.append(owners[0])
        if sorted(hits) != sorted(conjuncts):
            raise AsymmetricConjunction(f'node {m} is not shared by every conjunct of {c}')
        self.td.copies.setdefault(c, []).append((m, label))

    # -- fringe passes -----------------------------------------------------

    def simple(self) -> bool:
        types, changed = self.td.types, False
        for n in sorted(self.d.nodes):
            if n in types:
                continue
            t = self.simple_type(n)
            if t is not None:
                types[n] = t
                changed = True
        return changed

    def simple_type(self, n: int) -> Optional[LinearType]:
        types = self.td.types
        role = self.role(n)
        if role in ('root', 'arg'):
            if all(e.child in types for e in self.complements(n) if e.kind == PRIMARY):
                return self.atomic(n)
            return None
        p = self.parent[n].parent
        if p not in types:
            return None
        if role == 'head':
            comps = self.complements(p)
            if any(e.kind == PRIMARY and e.child not in types for e in comps):
                return None
            args = []
            for e in comps:
                body = types[e.child] if e.kind == PRIMARY else self.atomic(e.child)
                args.append((self.t.rank(e.dep), self.position(e.child), Dia(e.dep, body)))
            args.sort(key=lambda a: a[:2])
            result = self.atomic(n) if self.siblings(n, 'det') else types[p]
            return impl_chain(*(a[2] for a in args), result)
        if role == 'mod':
            return Box(self.parent[n].dep, Impl(types[p], types[p]))
        if role == 'det':
            heads = self.siblings(n, 'head')
            if not heads:
                raise NoProgress(f'determiner {n} has no head to combine with')
            return Box(self.t.det_label, Impl(self.atomic(heads[0].child), types[p]))
        if role == 'cnj':
            return types[p]
        return None  # coordinators are handled by the conjunction pass

    def non_local(self) -> bool:
        changed = False
        for n in sorted(self.d.nodes):
            if n in self.td.gaps or not self.is_pronoun(n):
                continue
            if self.role(n) != 'head':
                raise UnresolvableSecondaryEdge(f'node {n} has distinct incoming labels but heads nothing')
            if n not in self.td.types:
                continue
            if self.update_pronoun(n):
                changed = True
        return changed

    def update_pronoun(self, n: int) -> bool:
        types = self.td.types
        p = self.parent[n].parent
        secondary = [e for e in self.incoming[n] if e.kind == SECONDARY]
        comps = [e for e in self.out[p] if e.kind == PRIMARY and e.child != n
                 and self.edge_role(e.dep) == 'arg']
        placed: dict[str, list[tuple[Edge, LinearType]]] = {}
        # innermost first: deeper sources get the inner hypotheses
        for e in sorted(secondary, key=lambda e: (-len(self.ancestors(e.parent)), self.position(e.parent))):
            body = next((b for b in comps if self.within(e.parent, b.child)), None)
            if body is None:
                raise UnresolvableSecondaryEdge(f'secondary edge {e.parent}->{n} lies outside the clause body')
            if self.edge_role(e.dep) == 'mod':
                if e.parent not in types:
                    return False
                z = types[e.parent]
                hyp = Box(e.dep, Impl(z, z))
            elif self.edge_role(e.dep) == 'arg':
                hyp = Dia(e.dep, self.atomic(n))
            else:
                raise UnresolvableSecondaryEdge(f'secondary edge {e.parent}->{n} has label {e.dep!r}')
            if e.parent != body.child:
                hyp = Bang(hyp)
            placed.setdefault(body.dep, []).append((e, hyp))

        args, t = [], strip_bang(types[n])
        while isinstance(t, Impl):
            args.append(t.argument)
            t = t.result
        for label, hyps in placed.items():
            k = next((i for i, a in enumerate(args) if isinstance(a, Dia) and a.label == label), None)
            if k is None:
                raise UnresolvableSecondaryEdge(f'pronoun {n} has no {label!r} argument')
            inner = args[k].body
            for _, hyp in hyps:
                inner = Impl(hyp, inner)
            args[k] = Dia(label, inner)
        types[n] = impl_chain(*args, t)
        self.td.gaps[n] = {label: [e for e, _ in reversed(hyps)] for label, hyps in placed.items()}
        # everything functorial beneath an altered phrase is re-derived
        for m in self.d.descendants(n):
            if self.role(m) not in ('root', 'arg'):
                types.pop(m, None)
        return True

    def conjunctions(self) -> bool:
        types, changed = self.td.types, False
        for c in sorted(self.d.nodes):
            if not self.is_conj(c) or c not in types:
                continue
            crds = [e for e in self.out[c] if e.dep == self.t.crd_label]
            if len(crds) != 1:
                raise NoProgress(f'conjunction {c} has {len(crds)} coordinators')
            crd = crds[0].child
            if crd in types:
                continue
            conjuncts = [e.child for e in self.out[c] if e.dep == self.t.cnj_label and e.kind == PRIMARY]
            if any(k not in types for k in conjuncts):
                continue
            hyps = []
            for m, label in self.td.copies.get(c, []):
                if self.edge_role(label) == 'mod':
                    if m not in types:
                        break
                    hyps.append(Bang(types[m]))
                else:
                    hyps.append(Bang(Dia(label, self.atomic(m))))
            else:
                x = impl_chain(*hyps, types[c])
                types[crd] = impl_chain(*[Dia(self.t.cnj_label, x)] * len(conjuncts), x)
                changed = True
        return changed

    def step(self) -> bool:
        changed = False
        for fringe in (self.simple, self.non_local, self.conjunctions):
            while fringe():
                changed = True
        return changed


def type_simple(td: TypedDag, tables: Optional[TranslationTables] = None) -> TypedDag:
    typer = _Typer(td, tables or default_tables())
    while typer.simple():
        pass
    return td


def type_non_local(td: TypedDag, tables: Optional[TranslationTables] = None) -> TypedDag:
    typer = _Typer(td, tables or default_tables())
    while typer.non_local():
        pass
    return td


def type_conjunctions(td: TypedDag, tables: Optional[TranslationTables] = None) -> TypedDag:
    typer = _Typer(td, tables or default_tables())
    if not td.copies:
        typer.validate()
    while typer.conjunctions():
        pass
    return td


def type_dag(d: Dag, tables: Optional[TranslationTables] = None) -> TypedDag:
    """Type every node of a preprocessed DAG, or raise the failure class
    that blocked it."""
    td = TypedDag(d)
    typer = _Typer(td, tables or default_tables())
    typer.validate()
    while typer.step():
        pass
    untyped = sorted(set(d.nodes) - set(td.types))
    if untyped:
        raise NoProgress(f'untypeable nodes {untyped}')
    return td
