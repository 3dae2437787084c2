"""Shared fixtures: random sequent generation and corpus locations."""
import random
from importlib import resources
from pathlib import Path

from lintlg.proofnet import build_frame
from lintlg.types import Atom, Bang, Box, Dia, Impl, Sequent, count_check

MINICORPUS = Path(str(resources.files('lintlg').joinpath('data/minicorpus')))
WAAROVER_SAMPLE = MINICORPUS / 'WS-U-E-A-0000000236.p.11.s.1.xml'


def random_type(rng: random.Random, depth: int, names: str = 'abc'):
    if depth == 0 or rng.random() < 0.35:
        t = Atom(rng.choice(names))
    else:
        t = Impl(random_type(rng, depth - 1, names), random_type(rng, depth - 1, names))
    if depth > 0:
        r = rng.random()
        if r < 0.08:
            t = Dia(rng.choice('de'), t)
        elif r < 0.14:
            t = Box(rng.choice('de'), t)
        elif r < 0.18:
            t = Bang(t)
    return t


def random_sequents(n: int, seed: int = 0, max_atoms: int = 10, balanced: bool = True):
    """``n`` sequents of depth <= 4 over three atom names with at most
    ``max_atoms`` atom occurrences; balanced ones pass the count check."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        s = Sequent(tuple(random_type(rng, 4) for _ in range(rng.randint(1, 4))), random_type(rng, 3))
        if len(build_frame(s).atoms) > max_atoms:
            continue
        if balanced and not count_check(s):
            continue
        out.append(s)
    return out


def build_dag(tree, secondary=(), name='fixture'):
    """Build a DAG from nested tuples.

    A leaf is ``(rel, pt, word)``, a phrase ``(rel, cat, [children])``; the
    root's rel is ignored.  Ids are assigned in pre-order from 0, word spans
    from leaf order.  ``secondary`` lists extra ``(parent, child, rel)`` edges.
    """
    from lintlg.treebank import SECONDARY, Dag, Edge, Node
    nodes, edges, position = {}, [], [0]

    def visit(t, parent):
        nid = len(nodes)
        rel, tag, rest = t
        nodes[nid] = None
        if isinstance(rest, str):
            node = Node(nid, pos=tag, word=rest, begin=position[0], end=position[0] + 1)
            position[0] += 1
        else:
            start = position[0]
            for child in rest:
                visit(child, nid)
            node = Node(nid, cat=tag, begin=start, end=position[0])
        nodes[nid] = node
        if parent is not None:
            edges.append(Edge(parent, nid, rel))

    visit(tree, None)
    edges += [Edge(p, c, r, SECONDARY) for p, c, r in secondary]
    return Dag(nodes, edges, 0, name)
