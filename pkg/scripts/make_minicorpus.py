#!/usr/bin/env python3
"""Generate the bundled synthetic mini-corpus (Alpino XML).

Trees are written with a tiny DSL; node ids are assigned in pre-order and
word spans from the order of the leaves, exactly as Alpino does.

    python3 scripts/make_minicorpus.py [--out src/lintlg/data/minicorpus]
"""
import argparse
import xml.etree.ElementTree as ET
from pathlib import Path


class N:
    def __init__(self, rel, cat, *children, index=None):
        self.rel, self.cat, self.children, self.index = rel, cat, children, index


class W:
    def __init__(self, rel, pt, word, index=None):
        self.rel, self.pt, self.word, self.index = rel, pt, word, index


class P:
    """Coindexed phantom."""
    def __init__(self, rel, index):
        self.rel, self.index = rel, index


def top(*children):
    return N('top', 'top', *children)


def render(name: str, tree: N) -> bytes:
    words, spans, antecedents = [], {}, {}

    def number(node):
        if isinstance(node, W):
            spans[id(node)] = (len(words), len(words) + 1)
            words.append(node.word)
            if node.index is not None:
                antecedents[node.index] = id(node)
        elif isinstance(node, N):
            for c in node.children:
                number(c)
            inner = [spans[id(c)] for c in node.children if id(c) in spans]
            if inner:
                spans[id(node)] = (min(b for b, _ in inner), max(e for _, e in inner))
            if node.index is not None:
                antecedents[node.index] = id(node)

    number(tree)
    counter = iter(range(10_000))

    def build(node, parent):
        attrs = {'id': str(next(counter)), 'rel': node.rel}
        if isinstance(node, P):
            b, e = spans[antecedents[node.index]]
        else:
            b, e = spans.get(id(node), (0, 0))
        attrs.update(begin=str(b), end=str(e))
        if isinstance(node, N):
            attrs['cat'] = node.cat
        elif isinstance(node, W):
            attrs.update(pt=node.pt, word=node.word)
        if node.index is not None:
            attrs['index'] = str(node.index)
        el = ET.SubElement(parent, 'node', attrs) if parent is not None else ET.Element('node', attrs)
        for c in getattr(node, 'children', ()):
            build(c, el)
        return el

    doc = ET.Element('alpino_ds', {'version': '1.3'})
    doc.append(build(tree, None))
    ET.SubElement(doc, 'sentence', {'sentid': name}).text = ' '.join(words)
    ET.indent(doc)
    return ET.tostring(doc, encoding='utf-8', xml_declaration=True) + b'\n'


def np_(rel, det, noun, *more, index=None):
    return N(rel, 'np', W('det', 'lid', det), W('hd', 'n', noun), *more, index=index)


SAMPLES = {
    'WS-U-E-A-0000000236.p.11.s.1': top(
        N('--', 'whq',
          W('whd', 'bw', 'Waarover', index=1),
          N('body', 'sv1', W('hd', 'ww', 'gaat'), np_('su', 'de', 'machtstrijd'), P('pc', 1))),
        W('--', 'let', '?')),
    'mini-02-intransitive': top(N('--', 'smain', W('su', 'n', 'Jan'), W('hd', 'ww', 'slaapt')), W('--', 'let', '.')),
    'mini-03-transitive': top(N('--', 'smain', W('su', 'n', 'Marie'), W('hd', 'ww', 'leest'),
                                np_('obj1', 'een', 'boek')), W('--', 'let', '.')),
    'mini-04-adjective': top(N('--', 'smain',
                               N('su', 'np', W('det', 'lid', 'de'), W('mod', 'adj', 'oude'), W('hd', 'n', 'man')),
                               W('hd', 'ww', 'slaapt'))),
    'mini-05-adverb': top(N('--', 'smain', W('su', 'n', 'Jan'), W('hd', 'ww', 'werkt'), W('mod', 'bw', 'vandaag')),
                          W('--', 'let', '.')),
    'mini-06-pp-modifier': top(N('--', 'smain',
                                 np_('su', 'de', 'kat', N('mod', 'pp', W('hd', 'vz', 'op'), np_('obj1', 'de', 'mat'))),
                                 W('hd', 'ww', 'slaapt'))),
    'mini-07-mwu-name': top(N('--', 'smain',
                              N('su', 'mwu', W('mwp', 'spec', 'Jan'), W('mwp', 'spec', 'de'), W('mwp', 'n', 'Vries')),
                              W('hd', 'ww', 'woont'),
                              N('ld', 'pp', W('hd', 'vz', 'in'), W('obj1', 'n', 'Amsterdam'))),
                            W('--', 'let', '.')),
    'mini-08-mwu-adverb': top(N('--', 'smain',
                                N('mod', 'mwu', W('mwp', 'vz', 'ten'), W('mwp', 'bw', 'slotte'), W('mwp', 'bw', 'toch')),
                                W('hd', 'ww', 'wint'), W('su', 'n', 'Ajax'))),
    'mini-09-discourse': top(N('--', 'du',
                               N('dp', 'smain', W('su', 'n', 'Jan'), W('hd', 'ww', 'komt')),
                               W('--', 'let', ';'),
                               N('dp', 'smain', W('su', 'n', 'Marie'), W('hd', 'ww', 'gaat'))),
                             W('--', 'let', '.')),
    'mini-10-shared-subject-object': top(N('--', 'conj',
                                           N('cnj', 'smain', W('su', 'n', 'Jan', index=1), W('hd', 'ww', 'koopt'),
                                             P('obj1', 2)),
                                           W('crd', 'vg', 'en'),
                                           N('cnj', 'smain', P('su', 1), W('hd', 'ww', 'verkoopt'),
                                             W('obj1', 'n', 'boeken', index=2))),
                                         W('--', 'let', '.')),
    'mini-11-relative-local': top(N('--', 'smain', W('su', 'vnw', 'Ik'), W('hd', 'ww', 'zie'),
                                    np_('obj1', 'de', 'man',
                                        N('mod', 'rel', W('rhd', 'vnw', 'die', index=1),
                                          N('body', 'ssub', P('su', 1), W('hd', 'ww', 'slaapt'))))),
                                  W('--', 'let', '.')),
    'mini-12-relative-deep': top(N('--', 'smain', W('su', 'vnw', 'Ik'), W('hd', 'ww', 'ken'),
                                   np_('obj1', 'de', 'man',
                                       N('mod', 'rel', W('rhd', 'vnw', 'die', index=1),
                                         N('body', 'ssub', W('su', 'vnw', 'ik'),
                                           N('vc', 'cp', W('cmp', 'vg', 'dat'),
                                             N('body', 'ssub', P('su', 1), W('hd', 'ww', 'wint'))),
                                           W('hd', 'ww', 'denk'))))),
                                 W('--', 'let', '.')),
    'mini-13-wh-object': top(N('--', 'whq', W('whd', 'vnw', 'Wat', index=1),
                               N('body', 'sv1', W('hd', 'ww', 'leest'), W('su', 'n', 'Marie'), P('obj1', 1))),
                             W('--', 'let', '?')),
    'mini-14-wh-deep': top(N('--', 'whq', W('whd', 'vnw', 'Wat', index=1),
                             N('body', 'sv1', W('hd', 'ww', 'denk'), W('su', 'vnw', 'je'),
                               N('vc', 'cp', W('cmp', 'vg', 'dat'),
                                 N('body', 'ssub', W('su', 'n', 'Marie'), P('obj1', 1), W('hd', 'ww', 'leest'))))),
                           W('--', 'let', '?')),
    'mini-15-modifier-gap': top(N('--', 'smain', W('su', 'vnw', 'Ik'), W('hd', 'ww', 'ken'),
                                  np_('obj1', 'de', 'stad',
                                      N('mod', 'rel', W('rhd', 'bw', 'waar', index=1),
                                        N('body', 'ssub', W('su', 'vnw', 'hij'), P('mod', 1), W('hd', 'ww', 'woont'))))),
                                W('--', 'let', '.')),
    'mini-16-modifier-gap-deep': top(N('--', 'whq', W('whd', 'bw', 'Waar', index=1),
                                       N('body', 'sv1', W('hd', 'ww', 'denk'), W('su', 'vnw', 'je'),
                                         N('vc', 'cp', W('cmp', 'vg', 'dat'),
                                           N('body', 'ssub', W('su', 'vnw', 'hij'), P('mod', 1),
                                             W('hd', 'ww', 'woont'))))),
                                     W('--', 'let', '?')),
    'mini-17-shared-subject': top(N('--', 'conj',
                                    N('cnj', 'smain', W('su', 'n', 'Jan', index=1), W('hd', 'ww', 'zingt')),
                                    W('crd', 'vg', 'en'),
                                    N('cnj', 'smain', P('su', 1), W('hd', 'ww', 'danst'))),
                                  W('--', 'let', '.')),
    'mini-18-np-coordination': top(N('--', 'smain',
                                     N('su', 'conj', np_('cnj', 'de', 'man'), W('crd', 'vg', 'en'),
                                       np_('cnj', 'de', 'vrouw')),
                                     W('hd', 'ww', 'slapen')),
                                   W('--', 'let', '.')),
    'mini-19-understood-subject': top(N('--', 'smain', W('su', 'n', 'Jan', index=1), W('hd', 'ww', 'probeert'),
                                        N('vc', 'ti', W('cmp', 'vz', 'te'),
                                          N('body', 'inf', P('su', 1), W('hd', 'ww', 'slapen')))),
                                      W('--', 'let', '.')),
    'mini-20-passive': top(N('--', 'smain', np_('su', 'het', 'boek', index=1), W('hd', 'ww', 'wordt'),
                             N('vc', 'ppart', P('obj1', 1), W('hd', 'ww', 'gelezen'))),
                           W('--', 'let', '.')),
    'mini-21-complement-clause': top(N('--', 'smain', W('su', 'vnw', 'Ik'), W('hd', 'ww', 'denk'),
                                       N('vc', 'cp', W('cmp', 'vg', 'dat'),
                                         N('body', 'ssub', W('su', 'n', 'Jan'), W('hd', 'ww', 'slaapt')))),
                                     W('--', 'let', '.')),
    'mini-22-locative': top(N('--', 'smain',
                              N('su', 'np', W('det', 'lid', 'het'), W('mod', 'adj', 'kleine'), W('hd', 'n', 'kind')),
                              W('hd', 'ww', 'speelt'),
                              N('mod', 'pp', W('hd', 'vz', 'in'), np_('obj1', 'de', 'tuin'))),
                            W('--', 'let', '.')),
    'mini-23-ditransitive': top(N('--', 'smain', W('su', 'n', 'Jan'), W('hd', 'ww', 'geeft'),
                                  W('obj2', 'n', 'Marie'), np_('obj1', 'een', 'boek')),
                                W('--', 'let', '.')),
    'mini-24-separable-particle': top(N('--', 'smain', W('su', 'n', 'Jan'), W('hd', 'ww', 'belt'),
                                        W('obj1', 'n', 'Marie'), W('svp', 'vz', 'op')),
                                      W('--', 'let', '.')),
    'mini-25-predicative': top(N('--', 'smain', W('su', 'n', 'Jan'), W('hd', 'ww', 'is'), W('predc', 'adj', 'ziek')),
                               W('--', 'let', '.')),
    'mini-26-single-word': top(W('--', 'n', 'Amsterdam'), W('--', 'let', '.')),
    'mini-27-three-conjuncts': top(N('--', 'smain',
                                     N('su', 'conj', W('cnj', 'n', 'Jan'), W('--', 'let', ','), W('cnj', 'n', 'Piet'),
                                       W('crd', 'vg', 'en'), W('cnj', 'n', 'Marie')),
                                     W('hd', 'ww', 'lachen')),
                                   W('--', 'let', '.')),
    'mini-28-mixed-modifiers': top(N('--', 'smain', W('mod', 'bw', 'Morgen'), W('hd', 'ww', 'vertrekt'),
                                     np_('su', 'de', 'trein', N('mod', 'pp', W('hd', 'vz', 'naar'),
                                                                W('obj1', 'n', 'Parijs')))),
                                   W('--', 'let', '.')),
    'mini-29-headless-conjunction': top(N('--', 'conj',
                                          N('cnj', 'smain', W('su', 'n', 'Jan'), W('hd', 'ww', 'zingt')),
                                          W('--', 'let', ','),
                                          N('cnj', 'smain', W('su', 'n', 'Marie'), W('hd', 'ww', 'danst'))),
                                        W('--', 'let', '.')),
    'mini-30-asymmetric-conjunction': top(N('--', 'conj',
                                            N('cnj', 'smain', W('su', 'n', 'Jan', index=1), W('hd', 'ww', 'zingt')),
                                            W('--', 'let', ','),
                                            N('cnj', 'smain', P('su', 1), W('hd', 'ww', 'danst')),
                                            W('crd', 'vg', 'en'),
                                            N('cnj', 'smain', W('su', 'n', 'Piet'), W('hd', 'ww', 'lacht'))),
                                          W('--', 'let', '.')),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument('--out', default=str(Path(__file__).resolve().parent.parent / 'src/lintlg/data/minicorpus'))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, tree in SAMPLES.items():
        (out / f'{name}.xml').write_bytes(render(name, tree))
    print(f'wrote {len(SAMPLES)} samples to {out}')


if __name__ == '__main__':
    main()
