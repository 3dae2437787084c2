"""Dependency-decorated linear types.

The type language is implicational linear logic over a finite set of atoms,
extended with two unary modalities that carry a dependency label (``<d>T``
for a diamond, ``[d]T`` for a box) and the structural ``!T``.

Concrete syntax::

    np                  atom
    <su>np -o s         diamond-decorated argument, -o is right-associative
    [det](n -o np)      box
    !<su>np -o smain    bang
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Optional, Union


class TypeSyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f'{message} at position {position}: {text!r}')
        self.text = text
        self.position = position


class UnknownLabelError(ValueError):
    pass


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return print_type(self)


@dataclass(frozen=True)
class Impl:
    argument: 'LinearType'
    result: 'LinearType'

    def __str__(self) -> str:
        return print_type(self)


@dataclass(frozen=True)
class Dia:
    label: str
    body: 'LinearType'

    def __str__(self) -> str:
        return print_type(self)


@dataclass(frozen=True)
class Box:
    label: str
    body: 'LinearType'

    def __str__(self) -> str:
        return print_type(self)


@dataclass(frozen=True)
class Bang:
    body: 'LinearType'

    def __str__(self) -> str:
        return print_type(self)


LinearType = Union[Atom, Impl, Dia, Box, Bang]
Unary = (Dia, Box, Bang)


class Polarity(Enum):
    NEG = 'neg'
    POS = 'pos'

    def __neg__(self) -> 'Polarity':
        return Polarity.POS if self is Polarity.NEG else Polarity.NEG

    def __str__(self) -> str:
        return '+' if self is Polarity.POS else '-'


NEG, POS = Polarity.NEG, Polarity.POS


def impl_chain(*types: LinearType) -> LinearType:
    """``impl_chain(a, b, c) == a -o b -o c``."""
    *args, result = types
    for arg in reversed(args):
        result = Impl(arg, result)
    return result


# ---------------------------------------------------------------------------
# printing & parsing
# ---------------------------------------------------------------------------

def print_type(t: LinearType) -> str:
    match t:
        case Atom(name):
            return name
        case Impl(arg, res):
            a = print_type(arg)
            if isinstance(arg, Impl):
                a = f'({a})'
            return f'{a} -o {print_type(res)}'
        case Dia(label, body):
            return f'<{label}>{_unary_operand(body)}'
        case Box(label, body):
            return f'[{label}]{_unary_operand(body)}'
        case Bang(body):
            return f'!{_unary_operand(body)}'
    raise TypeError(f'not a linear type: {t!r}')


def _unary_operand(t: LinearType) -> str:
    s = print_type(t)
    return f'({s})' if isinstance(t, Impl) else s


_TOKEN = re.compile(r'\s*(?:(?P<impl>-o)|(?P<ident>[a-z][a-z0-9_]*)|(?P<sym>[<>\[\]()!]))')


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == '':
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise TypeSyntaxError('unexpected character', text, start)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(('eof', '', len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, labels: Optional[Iterable[str]]):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.labels = None if labels is None else set(labels)

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str, value: Optional[str] = None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            expected = value or kind
            found = tok[1] or 'end of input'
            raise TypeSyntaxError(f'expected {expected!r}, found {found!r}', self.text, tok[2])
        self.i += 1
        return tok

    def parse(self) -> LinearType:
        t = self.impl()
        self.take('eof')
        return t

    def impl(self) -> LinearType:
        left = self.unary()
        if self.peek()[0] == 'impl':
            self.i += 1
            return Impl(left, self.impl())
        return left

    def label(self, closing: str) -> str:
        _, name, pos = self.take('ident')
        if self.labels is not None and name not in self.labels:
            raise UnknownLabelError(f'unknown dependency label {name!r} at position {pos}')
        self.take('sym', closing)
        return name

    def unary(self) -> LinearType:
        kind, value, pos = self.peek()
        if kind == 'ident':
            self.i += 1
            return Atom(value)
        if kind == 'sym':
            self.i += 1
            if value == '(':
                inner = self.impl()
                self.take('sym', ')')
                return inner
            if value == '<':
                return Dia(self.label('>'), self.unary())
            if value == '[':
                return Box(self.label(']'), self.unary())
            if value == '!':
                return Bang(self.unary())
        found = value or 'end of input'
        raise TypeSyntaxError(f'unexpected {found!r}', self.text, pos)


def parse_type(text: str, labels: Optional[Iterable[str]] = None) -> LinearType:
    """Parse the concrete syntax into a type.

    When ``labels`` is given, modal decorations must be drawn from it.
    """
    return _Parser(text, labels).parse()


# ---------------------------------------------------------------------------
# structural functions
# ---------------------------------------------------------------------------

def order(t: LinearType) -> int:
    match t:
        case Atom():
            return 0
        case Impl(arg, res):
            return max(order(arg) + 1, order(res))
        case Dia(_, body) | Box(_, body) | Bang(body):
            return order(body)
    raise TypeError(t)


def atoms(t: LinearType) -> Iterator[Atom]:
    match t:
        case Atom():
            yield t
        case Impl(arg, res):
            yield from atoms(arg)
            yield from atoms(res)
        case Dia(_, body) | Box(_, body) | Bang(body):
            yield from atoms(body)


def atom_count(t: LinearType) -> int:
    return sum(1 for _ in atoms(t))


def polar_atoms(t: LinearType, polarity: Polarity) -> list[tuple[str, Polarity]]:
    """Atoms of ``t`` in textual order, each with its polarity when ``t``
    occurs with ``polarity``."""
    match t:
        case Atom(name):
            return [(name, polarity)]
        case Impl(arg, res):
            return polar_atoms(arg, -polarity) + polar_atoms(res, polarity)
        case Dia(_, body) | Box(_, body) | Bang(body):
            return polar_atoms(body, polarity)
    raise TypeError(t)


def strip_bang(t: LinearType) -> LinearType:
    while isinstance(t, Bang):
        t = t.body
    return t


def erase_bangs(t: LinearType) -> LinearType:
    match t:
        case Atom():
            return t
        case Impl(arg, res):
            return Impl(erase_bangs(arg), erase_bangs(res))
        case Dia(label, body):
            return Dia(label, erase_bangs(body))
        case Box(label, body):
            return Box(label, erase_bangs(body))
        case Bang(body):
            return erase_bangs(body)
    raise TypeError(t)


def erase_modalities(t: LinearType) -> LinearType:
    """The bare implicational skeleton."""
    match t:
        case Atom():
            return t
        case Impl(arg, res):
            return Impl(erase_modalities(arg), erase_modalities(res))
        case Dia(_, body) | Box(_, body) | Bang(body):
            return erase_modalities(body)
    raise TypeError(t)


def labels_of(t: LinearType) -> set[str]:
    match t:
        case Atom():
            return set()
        case Impl(arg, res):
            return labels_of(arg) | labels_of(res)
        case Dia(label, body) | Box(label, body):
            return {label} | labels_of(body)
        case Bang(body):
            return labels_of(body)
    raise TypeError(t)


# ---------------------------------------------------------------------------
# sequents
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Sequent:
    antecedent: tuple[LinearType, ...]
    succedent: LinearType
    words: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, 'antecedent', tuple(self.antecedent))
        if self.words is not None:
            object.__setattr__(self, 'words', tuple(self.words))
            if len(self.words) != len(self.antecedent):
                raise ValueError('one word per antecedent type is required')

    def names(self) -> tuple[str, ...]:
        if self.words is not None:
            return self.words
        return tuple(f'w{i}' for i in range(len(self.antecedent)))

    def __str__(self) -> str:
        return print_sequent(self)


def print_sequent(s: Sequent) -> str:
    left = ', '.join(print_type(t) for t in s.antecedent)
    return f'{left} |- {print_type(s.succedent)}'


def parse_sequent(text: str, labels: Optional[Iterable[str]] = None) -> Sequent:
    """Parse ``a, f: a -o b |- b``; antecedent items may be named ``name: type``.

    ``⊢`` is accepted in place of ``|-``.
    """
    text = text.replace('⊢', '|-')
    if text.count('|-') != 1:
        raise TypeSyntaxError("expected exactly one '|-'", text, 0)
    left, right = text.split('|-')
    types, words = [], []
    if left.strip():
        for item in left.split(','):
            name, sep, body = item.rpartition(':')
            types.append(parse_type(body, labels))
            words.append(name.strip() if sep else None)
    named = [w for w in words if w is not None]
    if named and len(named) != len(words):
        raise TypeSyntaxError('either all or no antecedent items must be named', text, 0)
    return Sequent(tuple(types), parse_type(right, labels), tuple(words) if named else None)


@dataclass(frozen=True)
class CountCheck:
    """Outcome of the atom count invariance test.

    ``deficit[name]`` is (#positive - #negative) for every unbalanced atom.
    """
    ok: bool
    deficit: dict[str, int] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def atom_balance(s: Sequent) -> Counter:
    balance = Counter()
    for t in s.antecedent:
        for name, pol in polar_atoms(t, NEG):
            balance[name] += 1 if pol is POS else -1
    for name, pol in polar_atoms(s.succedent, POS):
        balance[name] += 1 if pol is POS else -1
    return balance


def count_check(s: Sequent) -> CountCheck:
    deficit = {name: n for name, n in sorted(atom_balance(s).items()) if n != 0}
    return CountCheck(not deficit, deficit)
