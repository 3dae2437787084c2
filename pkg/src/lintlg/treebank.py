"""Alpino/Lassy style dependency DAGs and the preprocessing that turns a
raw annotation into clean, single-rooted DAGs ready for type assignment."""
from __future__ import annotations

import copy
import json
import xml.etree.ElementTree as ET
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional

PRIMARY = 'primary'
SECONDARY = 'secondary'


class TreebankError(ValueError):
    kind = 'parse-error'


class MalformedXML(TreebankError):
    pass


class MissingAttribute(TreebankError):
    pass


class DuplicateId(TreebankError):
    pass


class EmptyOutput(TreebankError):
    kind = 'empty-output'


@dataclass
class Node:
    id: int
    cat: Optional[str] = None
    pos: Optional[str] = None
    word: Optional[str] = None
    begin: int = 0
    end: int = 0
    coindex: Optional[int] = None

    @property
    def tag(self) -> Optional[str]:
        return self.cat if self.cat is not None else self.pos

    @property
    def is_phantom(self) -> bool:
        return self.coindex is not None and self.tag is None and self.word is None


@dataclass(frozen=True)
class Edge:
    parent: int
    child: int
    dep: str
    kind: str = PRIMARY


@dataclass
class Dag:
    nodes: dict[int, Node]
    edges: list[Edge]
    root: Optional[int] = None
    name: str = ''

    def copy(self) -> 'Dag':
        return Dag(copy.deepcopy(self.nodes), list(self.edges), self.root, self.name)

    def out_edges(self, n: int) -> list[Edge]:
        return sorted((e for e in self.edges if e.parent == n),
                      key=lambda e: (self.nodes[e.child].begin, self.nodes[e.child].end, e.child))

    def in_edges(self, n: int) -> list[Edge]:
        return [e for e in self.edges if e.child == n]

    def primary_children(self, n: int) -> list[Edge]:
        return [e for e in self.out_edges(n) if e.kind == PRIMARY]

    def primary_parent(self, n: int) -> Optional[Edge]:
        return next((e for e in self.edges if e.child == n and e.kind == PRIMARY), None)

    def sources(self) -> list[int]:
        targets = {e.child for e in self.edges}
        return sorted((n for n in self.nodes if n not in targets),
                      key=lambda n: (self.nodes[n].begin, n))

    def is_leaf(self, n: int) -> bool:
        return not any(e.parent == n and e.kind == PRIMARY for e in self.edges)

    def leaves(self) -> list[int]:
        return sorted((n for n in self.nodes if self.is_leaf(n)),
                      key=lambda n: (self.nodes[n].begin, n))

    def descendants(self, n: int, primary_only: bool = True) -> set[int]:
        seen, stack = set(), [n]
        while stack:
            m = stack.pop()
            for e in self.edges:
                if e.parent == m and (e.kind == PRIMARY or not primary_only) and e.child not in seen:
                    seen.add(e.child)
                    stack.append(e.child)
        return seen

    def words(self) -> list[str]:
        return [self.nodes[n].word for n in self.leaves()]

    def remove_node(self, n: int):
        del self.nodes[n]
        self.edges = [e for e in self.edges if n not in (e.parent, e.child)]


# ---------------------------------------------------------------------------
# input
# ---------------------------------------------------------------------------

def _int_attr(el: ET.Element, name: str, required: bool = True) -> Optional[int]:
    value = el.get(name)
    if value is None:
        if required:
            raise MissingAttribute(f'node {el.get("id", "?")} lacks attribute {name!r}')
        return None
    try:
        return int(value)
    except ValueError:
        raise MalformedXML(f'attribute {name}={value!r} is not an integer') from None


def parse_treebank(xml: bytes, name: str = '') -> Dag:
    """Read an ``<alpino_ds>`` document into a DAG, one primary edge per
    nested ``<node>``; coindexed phantom nodes are kept as they are."""
    try:
        root = ET.fromstring(xml)
    except ET.ParseError as e:
        raise MalformedXML(str(e)) from None
    top = root if root.tag == 'node' else root.find('node')
    if top is None:
        raise MalformedXML('no <node> element')
    nodes: dict[int, Node] = {}
    edges: list[Edge] = []

    def visit(el: ET.Element, parent: Optional[int]):
        nid = _int_attr(el, 'id')
        if nid in nodes:
            raise DuplicateId(f'duplicate node id {nid}')
        node = Node(nid, cat=el.get('cat'), pos=el.get('pt', el.get('pos')), word=el.get('word'),
                    begin=_int_attr(el, 'begin'), end=_int_attr(el, 'end'),
                    coindex=_int_attr(el, 'index', required=False))
        if node.cat is not None and node.pos is not None:
            node.pos = None
        nodes[nid] = node
        if parent is not None:
            rel = el.get('rel')
            if rel is None:
                raise MissingAttribute(f'node {nid} lacks attribute \'rel\'')
            edges.append(Edge(parent, nid, rel))
        for child in el.findall('node'):
            visit(child, nid)

    visit(top, None)
    if not name:
        sentid = root.find('sentence')
        name = (sentid.get('sentid') or '') if sentid is not None else ''
    return Dag(nodes, edges, _int_attr(top, "id"), name)


def dag_to_json(d: Dag) -> dict:
    return {
        'name': d.name,
        'root': d.root,
        'nodes': [{k: v for k, v in asdict(d.nodes[n]).items() if v is not None}
                  for n in sorted(d.nodes)],
        'edges': [asdict(e) for e in sorted(d.edges, key=lambda e: (e.parent, e.child, e.dep))],
    }


def dag_from_json(data: dict) -> Dag:
    nodes = {}
    for raw in data['nodes']:
        if 'id' not in raw:
            raise MissingAttribute('node without id')
        if raw['id'] in nodes:
            raise DuplicateId(f'duplicate node id {raw["id"]}')
        nodes[raw['id']] = Node(**raw)
    edges = [Edge(e['parent'], e['child'], e.get('dep', e.get('rel')), e.get('kind', PRIMARY))
             for e in data['edges']]
    root = data.get('root')
    if root is None:
        targets = {e.child for e in edges}
        roots = [n for n in nodes if n not in targets]
        root = roots[0] if len(roots) == 1 else None
    return Dag(nodes, edges, root, data.get('name', ''))


def dump_dag(d: Dag) -> str:
    return json.dumps(dag_to_json(d), sort_keys=True, ensure_ascii=False)


# ---------------------------------------------------------------------------
# preprocessing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PreprocessConfig:
    discourse_cats: frozenset = frozenset({'du', 'top'})
    discourse_rels: frozenset = frozenset({'dp', '--'})
    punctuation: frozenset = frozenset({'let'})
    nonfinite_cats: frozenset = frozenset({'inf', 'ti', 'oti', 'ppart', 'ppres', 'ahi'})
    understood_labels: frozenset = frozenset({'su', 'obj1', 'obj2', 'sup'})
    wh_heads: frozenset = frozenset({'rhd', 'whd'})
    body_refinement: dict = field(default_factory=lambda: {
        'rhd': 'rhd_body', 'whd': 'whd_body', 'cmp': 'cmp_body'})
    mwu_cat: str = 'mwu'
    conj_cat: str = 'conj'
    cnj_label: str = 'cnj'


def majority(tags: Iterable[Optional[str]]) -> Optional[str]:
    """Most frequent tag; ties go to the leftmost."""
    tags = [t for t in tags if t is not None]
    if not tags:
        return None
    counts = Counter(tags)
    best = max(counts.values())
    return next(t for t in tags if counts[t] == best)


def collapse_coindexed(d: Dag) -> Dag:
    d = d.copy()
    groups: dict[int, list[int]] = {}
    for n in sorted(d.nodes):
        if d.nodes[n].coindex is not None:
            groups.setdefault(d.nodes[n].coindex, []).append(n)
    for members in groups.values():
        content = [n for n in members if not d.nodes[n].is_phantom or not d.is_leaf(n)]
        if not content:
            continue
        keep = content[0]
        for n in members:
            if n == keep or n in content:
                continue
            for e in d.in_edges(n):
                d.edges.append(Edge(e.parent, keep, e.dep, SECONDARY))
            d.remove_node(n)
    return d


def erase_discourse(d: Dag, config: PreprocessConfig) -> Dag:
    d = d.copy()
    for n in [n for n, node in d.nodes.items() if node.cat in config.discourse_cats]:
        d.remove_node(n)
    d.edges = [e for e in d.edges if e.dep not in config.discourse_rels]
    d.root = None
    return d


def merge_mwus(d: Dag, config: PreprocessConfig) -> Dag:
    d = d.copy()
    mwus = [n for n, node in d.nodes.items() if node.cat == config.mwu_cat]
    # innermost first
    mwus.sort(key=lambda n: len(d.descendants(n)))
    for n in mwus:
        if n not in d.nodes:
            continue
        parts = sorted(d.descendants(n), key=lambda m: (d.nodes[m].begin, m))
        leaves = [m for m in parts if d.is_leaf(m)]
        node = d.nodes[n]
        node.word = '_'.join(d.nodes[m].word or '' for m in leaves)
        node.pos = majority(d.nodes[m].pos for m in leaves)
        node.cat = None
        node.begin = min(d.nodes[m].begin for m in leaves)
        node.end = max(d.nodes[m].end for m in leaves)
        for m in parts:
            for e in d.in_edges(m):
                if e.parent not in parts and e.parent != n:
                    d.edges.append(Edge(e.parent, n, e.dep, SECONDARY))
            d.remove_node(m)
    return d


def drop_punctuation(d: Dag, config: PreprocessConfig) -> Dag:
    d = d.copy()
    for n in [n for n, node in d.nodes.items()
              if node.pos in config.punctuation and d.is_leaf(n)]:
        d.remove_node(n)
    return d


def remove_understood_arguments(d: Dag, config: PreprocessConfig) -> Dag:
    """Drop the reentrant subject/object edges of non-finite verbal domains."""
    d = d.copy()

    def understood(e: Edge) -> bool:
        if e.kind != SECONDARY or e.dep not in config.understood_labels:
            return False
        if d.nodes[e.parent].cat not in config.nonfinite_cats:
            return False
        antecedent = d.primary_parent(e.child)
        return antecedent is None or antecedent.dep not in config.wh_heads

    d.edges = [e for e in d.edges if not understood(e)]
    return d


def relabel_by_majority(d: Dag, config: PreprocessConfig) -> Dag:
    d = d.copy()
    pending = [n for n, node in d.nodes.items() if node.cat in (config.conj_cat, config.mwu_cat)]
    pending.sort(key=lambda n: len(d.descendants(n)))
    for n in pending:
        node = d.nodes[n]
        daughters = d.primary_children(n)
        if node.cat == config.conj_cat:
            daughters = [e for e in daughters if e.dep == config.cnj_label] or daughters
        tag = majority(d.nodes[e.child].tag for e in daughters)
        if tag is not None:
            node.cat = tag
    return d


def refine_body_labels(d: Dag, config: PreprocessConfig) -> Dag:
    d = d.copy()
    edges = []
    for e in d.edges:
        if e.dep == 'body':
            siblings = {s.dep for s in d.edges if s.parent == e.parent and s.kind == PRIMARY}
            for head, refined in config.body_refinement.items():
                if head in siblings:
                    e = Edge(e.parent, e.child, refined, e.kind)
                    break
        edges.append(e)
    d.edges = edges
    return d


def split_sources(d: Dag) -> list[Dag]:
    out = []
    for source in d.sources():
        keep = {source} | d.descendants(source, primary_only=False)
        sub = Dag({n: copy.deepcopy(d.nodes[n]) for n in keep},
                  [e for e in d.edges if e.parent in keep and e.child in keep], source, d.name)
        for n in sorted(keep):
            if n != source and sub.primary_parent(n) is None:
                first = sub.in_edges(n)[0]
                sub.edges = [Edge(e.parent, e.child, e.dep, PRIMARY) if e == first else e
                             for e in sub.edges]
        out.append(sub)
    return out


def contract(d: Dag, config: PreprocessConfig) -> Dag:
    """Remove unary intermediate nodes and truncate one-conjunct
    conjunctions, repeatedly."""
    d = d.copy()
    changed = True
    while changed:
        changed = False
        for n in sorted(d.nodes):
            if n == d.root:
                continue
            incoming, outgoing = d.in_edges(n), d.out_edges(n)
            if len(incoming) == 1 and len(outgoing) == 1 and outgoing[0].kind == PRIMARY:
                parent, child = incoming[0], outgoing[0].child
                d.remove_node(n)
                d.edges.append(Edge(parent.parent, child, parent.dep, parent.kind))
                changed = True
                break
            if not outgoing and d.nodes[n].word is None and d.nodes[n].pos is None:
                d.remove_node(n)
                changed = True
                break
        if not changed and d.root is not None and len(d.out_edges(d.root)) == 1:
            only = d.out_edges(d.root)[0]
            if only.kind == PRIMARY and d.nodes[d.root].word is None and len(d.in_edges(only.child)) == 1:
                old = d.root
                d.root = only.child
                d.remove_node(old)
                changed = True
    return d


def preprocess(d: Dag, config: PreprocessConfig = PreprocessConfig()) -> list[Dag]:
    """Apply the cleanup transforms in order and return one DAG per
    independent source."""
    d = collapse_coindexed(d)
    d = erase_discourse(d, config)
    d = merge_mwus(d, config)
    d = drop_punctuation(d, config)
    d = remove_understood_arguments(d, config)
    d = relabel_by_majority(d, config)
    d = refine_body_labels(d, config)
    out = [contract(sub, config) for sub in split_sources(d)]
    out = [sub for sub in out if sub.nodes]
    if not out:
        raise EmptyOutput(f'{d.name or "sample"}: nothing left after preprocessing')
    return out


def canonical_form(d: Dag) -> tuple:
    """Id-independent structural summary, used to compare DAGs."""
    def shape(n: int) -> tuple:
        node = d.nodes[n]
        kids = tuple((e.dep, e.kind, shape(e.child) if e.kind == PRIMARY else
                      ('ref', d.nodes[e.child].begin, d.nodes[e.child].end))
                     for e in d.out_edges(n))
        return (node.tag, node.word, node.begin, node.end, kids)
    return shape(d.root)
