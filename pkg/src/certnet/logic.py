"""Propositional language over named binary attributes.

Formulas are immutable trees built from :class:`Const`, :class:`Atom`,
:class:`Not`, :class:`And`, :class:`Or` and :class:`Implies`.  Worlds are
total truth assignments over an ordered vocabulary, enumerated in the order

    a b c, a b !c, a !b c, ..., !a !b !c

i.e. binary counting over declaration order with true before false and the
first declared attribute most significant.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .errors import (
    EnumerationLimitError,
    FormulaSyntaxError,
    UnknownAtomError,
)

DEFAULT_MAX_VARS = 20

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
KEYWORDS = frozenset({"true", "false"})


class Formula:
    """Base class of formula nodes."""

    __slots__ = ()

    def __invert__(self):
        return Not(self)

    def __and__(self, other):
        return And((self, other))

    def __or__(self, other):
        return Or((self, other))

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True, repr=False)
class Const(Formula):
    value: bool

    def __repr__(self):
        return "TOP" if self.value else "BOTTOM"


TOP = Const(True)
BOTTOM = Const(False)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    args: tuple

    def __post_init__(self):
        if len(self.args) < 2:
            raise ValueError("And needs at least two operands")


@dataclass(frozen=True)
class Or(Formula):
    args: tuple

    def __post_init__(self):
        if len(self.args) < 2:
            raise ValueError("Or needs at least two operands")


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, order=True)
class Literal:
    """An attribute together with a polarity (``a`` or ``!a``)."""

    name: str
    positive: bool = True

    def negate(self) -> "Literal":
        return Literal(self.name, not self.positive)

    def to_formula(self) -> Formula:
        return Atom(self.name) if self.positive else Not(Atom(self.name))

    def holds(self, world: "World") -> bool:
        return world[self.name] is self.positive

    def __str__(self):
        return self.name if self.positive else "!" + self.name


class Clause:
    """A disjunction of literals; the empty clause is falsum.

    Literal order is kept for printing, equality ignores it.
    """

    __slots__ = ("literals",)

    def __init__(self, literals: Iterable[Literal] = ()):
        seen = []
        for lit in literals:
            if lit not in seen:
                seen.append(lit)
        self.literals = tuple(seen)

    def __eq__(self, other):
        if not isinstance(other, Clause):
            return NotImplemented
        return frozenset(self.literals) == frozenset(other.literals)

    def __hash__(self):
        return hash(frozenset(self.literals))

    def __len__(self):
        return len(self.literals)

    def __iter__(self):
        return iter(self.literals)

    def __repr__(self):
        return f"Clause({format_formula(self.to_formula())!r})"

    def is_tautology(self) -> bool:
        return any(lit.negate() in self.literals for lit in self.literals)

    def to_formula(self) -> Formula:
        if not self.literals:
            return BOTTOM
        if len(self.literals) == 1:
            return self.literals[0].to_formula()
        return Or(tuple(lit.to_formula() for lit in self.literals))

    def holds(self, world: "World") -> bool:
        return any(lit.holds(world) for lit in self.literals)


# ---------------------------------------------------------------------------
# vocabulary and worlds


def check_vocabulary(names: Iterable[str]) -> tuple:
    """Validate attribute names and return them as a tuple."""
    names = tuple(names)
    seen = set()
    for name in names:
        if not isinstance(name, str) or not IDENT_RE.fullmatch(name):
            raise ValueError(f"invalid attribute name {name!r}")
        if name in KEYWORDS:
            raise ValueError(f"attribute name {name!r} is reserved")
        if name in seen:
            raise ValueError(f"duplicate attribute {name!r}")
        seen.add(name)
    return names


def check_enumerable(vocabulary: Sequence[str], max_vars: int | None = DEFAULT_MAX_VARS):
    if max_vars is not None and len(vocabulary) > max_vars:
        raise EnumerationLimitError(len(vocabulary), max_vars)


@dataclass(frozen=True)
class World:
    """A total truth assignment over an ordered vocabulary."""

    vocabulary: tuple
    values: tuple

    def __post_init__(self):
        if len(self.vocabulary) != len(self.values):
            raise ValueError("world must assign every attribute exactly once")

    @classmethod
    def from_mapping(cls, vocabulary: Sequence[str], assignment: dict) -> "World":
        vocabulary = tuple(vocabulary)
        missing = [a for a in vocabulary if a not in assignment]
        if missing:
            raise ValueError(f"world is not total, missing {missing}")
        extra = set(assignment) - set(vocabulary)
        if extra:
            raise UnknownAtomError(sorted(extra)[0])
        return cls(vocabulary, tuple(bool(assignment[a]) for a in vocabulary))

    @classmethod
    def from_index(cls, vocabulary: Sequence[str], index: int) -> "World":
        vocabulary = tuple(vocabulary)
        n = len(vocabulary)
        return cls(vocabulary, tuple(not (index >> (n - 1 - i)) & 1 for i in range(n)))

    @property
    def index(self) -> int:
        """Position of this world in :func:`enumerate_worlds` order."""
        code = 0
        for value in self.values:
            code = (code << 1) | (not value)
        return code

    def __getitem__(self, name: str) -> bool:
        try:
            return self.values[self.vocabulary.index(name)]
        except ValueError:
            raise UnknownAtomError(name) from None

    def as_dict(self) -> dict:
        return dict(zip(self.vocabulary, self.values))

    def literals(self) -> tuple:
        return tuple(Literal(a, v) for a, v in zip(self.vocabulary, self.values))

    def restrict(self, names: Sequence[str]) -> tuple:
        return tuple(self[name] for name in names)

    def __str__(self):
        return " ".join(str(lit) for lit in self.literals())


def enumerate_worlds(vocabulary: Sequence[str], max_vars: int | None = DEFAULT_MAX_VARS) -> list:
    vocabulary = tuple(vocabulary)
    if not vocabulary:
        raise ValueError("vocabulary must be nonempty")
    check_enumerable(vocabulary, max_vars)
    return [World(vocabulary, values)
            for values in itertools.product((True, False), repeat=len(vocabulary))]


# ---------------------------------------------------------------------------
# semantics


def atoms(f: Formula) -> list:
    """Attribute names in order of first occurrence."""
    out = []
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            if node.name not in out:
                out.append(node.name)
        elif isinstance(node, Not):
            stack.append(node.arg)
        elif isinstance(node, (And, Or)):
            stack.extend(reversed(node.args))
        elif isinstance(node, Implies):
            stack.append(node.right)
            stack.append(node.left)
    return out


def check_atoms(f: Formula, vocabulary: Iterable[str]):
    known = set(vocabulary)
    for name in atoms(f):
        if name not in known:
            raise UnknownAtomError(name)


def compile_formula(f: Formula, vocabulary: Sequence[str]) -> Callable[[tuple], bool]:
    """Return a predicate over value tuples aligned with ``vocabulary``."""
    position = {name: i for i, name in enumerate(vocabulary)}

    def build(node):
        if isinstance(node, Const):
            value = node.value
            return lambda vals: value
        if isinstance(node, Atom):
            try:
                i = position[node.name]
            except KeyError:
                raise UnknownAtomError(node.name) from None
            return lambda vals: vals[i]
        if isinstance(node, Not):
            inner = build(node.arg)
            return lambda vals: not inner(vals)
        if isinstance(node, And):
            parts = [build(a) for a in node.args]
            return lambda vals: all(p(vals) for p in parts)
        if isinstance(node, Or):
            parts = [build(a) for a in node.args]
            return lambda vals: any(p(vals) for p in parts)
        if isinstance(node, Implies):
            left, right = build(node.left), build(node.right)
            return lambda vals: (not left(vals)) or right(vals)
        raise TypeError(f"not a formula: {node!r}")

    return build(f)


def entails(w: World, f: Formula) -> bool:
    """True iff ``w`` satisfies ``f``."""
    return compile_formula(f, w.vocabulary)(w.values)


def models(f: Formula, vocabulary: Sequence[str], max_vars: int | None = DEFAULT_MAX_VARS) -> frozenset:
    vocabulary = tuple(vocabulary)
    check_atoms(f, vocabulary)
    pred = compile_formula(f, vocabulary)
    return frozenset(w for w in enumerate_worlds(vocabulary, max_vars) if pred(w.values))


def as_clause(f: Formula) -> Clause | None:
    """Recognize a literal or a flat disjunction of literals.

    ``false`` is the empty clause.  Returns None for anything else.
    """

    def literal(node):
        if isinstance(node, Atom):
            return Literal(node.name, True)
        if isinstance(node, Not) and isinstance(node.arg, Atom):
            return Literal(node.arg.name, False)
        return None

    if f == BOTTOM:
        return Clause()
    single = literal(f)
    if single is not None:
        return Clause([single])
    if isinstance(f, Or):
        lits = [literal(a) for a in f.args]
        if all(lit is not None for lit in lits):
            return Clause(lits)
    return None


def falsifying_clauses(f: Formula) -> list:
    """Clauses whose conjunction is equivalent to ``f``.

    Clause-shaped formulas map to themselves.  Anything else is expanded by
    enumerating assignments of its own atoms: each falsifying assignment
    contributes the clause excluding it.
    """
    clause = as_clause(f)
    if clause is not None:
        return [] if clause.is_tautology() else [clause]
    names = atoms(f)
    pred = compile_formula(f, names)
    out = []
    for values in itertools.product((True, False), repeat=len(names)):
        if not pred(values):
            out.append(Clause(Literal(n, not v) for n, v in zip(names, values)))
    return out


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"->|[!&|()]|[A-Za-z_][A-Za-z0-9_]*")


def _tokenize(text):
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        tokens.append((m.group(), pos))
        pos = m.end()
    tokens.append((None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, vocabulary):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.vocabulary = None if vocabulary is None else set(vocabulary)

    def peek(self):
        return self.tokens[self.i][0]

    def pos(self):
        return self.tokens[self.i][1]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, want):
        tok, pos = self.take()
        if tok != want:
            found = "end of input" if tok is None else repr(tok)
            raise FormulaSyntaxError(f"expected {want!r}, found {found}", pos, self.text)

    def parse(self):
        f = self.impl()
        if self.peek() is not None:
            raise FormulaSyntaxError(f"unexpected token {self.peek()!r}", self.pos(), self.text)
        return f

    def impl(self):
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.impl())
        return left

    def nary(self, op, sub, cls):
        parts = [sub()]
        while self.peek() == op:
            self.take()
            parts.append(sub())
        return parts[0] if len(parts) == 1 else cls(tuple(parts))

    def disj(self):
        return self.nary("|", self.conj, Or)

    def conj(self):
        return self.nary("&", self.neg, And)

    def neg(self):
        if self.peek() == "!":
            self.take()
            return Not(self.neg())
        return self.atomexpr()

    def atomexpr(self):
        tok, pos = self.take()
        if tok == "(":
            f = self.impl()
            self.expect(")")
            return f
        if tok == "true":
            return TOP
        if tok == "false":
            return BOTTOM
        if tok is not None and IDENT_RE.fullmatch(tok):
            if self.vocabulary is not None and tok not in self.vocabulary:
                raise UnknownAtomError(tok)
            return Atom(tok)
        found = "end of input" if tok is None else repr(tok)
        raise FormulaSyntaxError(f"expected an atom or '(', found {found}", pos, self.text)


def parse_formula(text: str, vocabulary: Iterable[str] | None = None) -> Formula:
    """Parse formula text; atoms are checked against ``vocabulary`` if given."""
    return _Parser(text, vocabulary).parse()


def parse_clause(text: str, vocabulary: Iterable[str] | None = None) -> Clause:
    f = parse_formula(text, vocabulary)
    clause = as_clause(f)
    if clause is None:
        raise FormulaSyntaxError(f"not a clause: {text!r}")
    return clause


# ---------------------------------------------------------------------------
# printing

_PREC = {Implies: 1, Or: 2, And: 3, Not: 4}


def _prec(f):
    return _PREC.get(type(f), 5)


def format_formula(f) -> str:
    """Canonical text; ``parse_formula(format_formula(f)) == f``."""
    if isinstance(f, Clause):
        f = f.to_formula()
    if isinstance(f, Literal):
        return str(f)
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        inner = format_formula(f.arg)
        return "!" + (f"({inner})" if _prec(f.arg) < 4 else inner)
    if isinstance(f, (And, Or)):
        op = " & " if isinstance(f, And) else " | "
        mine = _prec(f)
        return op.join(
            f"({format_formula(a)})" if _prec(a) <= mine else format_formula(a)
            for a in f.args
        )
    if isinstance(f, Implies):
        left = format_formula(f.left)
        if _prec(f.left) <= 1:
            left = f"({left})"
        return f"{left} -> {format_formula(f.right)}"
    raise TypeError(f"not a formula: {f!r}")


def iter_subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from iter_subformulas(f.arg)
    elif isinstance(f, (And, Or)):
        for a in f.args:
            yield from iter_subformulas(a)
    elif isinstance(f, Implies):
        yield from iter_subformulas(f.left)
        yield from iter_subformulas(f.right)
