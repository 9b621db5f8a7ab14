"""Explicit certainty distributions over worlds and the measures they induce."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .degrees import ONE, ZERO, as_degree, format_degree, parse_degree
from .errors import FileFormatError, VocabularyMismatchError
from .logic import (
    DEFAULT_MAX_VARS,
    Formula,
    Not,
    World,
    check_atoms,
    check_enumerable,
    check_vocabulary,
    compile_formula,
    enumerate_worlds,
)


class Distribution:
    """A degree for every world of a vocabulary, stored in enumeration order."""

    __slots__ = ("vocabulary", "values")

    def __init__(self, vocabulary: Sequence[str], values: Iterable):
        self.vocabulary = check_vocabulary(vocabulary)
        values = tuple(as_degree(v) for v in values)
        if len(values) != 1 << len(self.vocabulary):
            raise ValueError(
                f"distribution over {len(self.vocabulary)} attributes needs "
                f"{1 << len(self.vocabulary)} values, got {len(values)}"
            )
        self.values = values

    @classmethod
    def _trusted(cls, vocabulary: tuple, values: list) -> "Distribution":
        # kernel output: already exact degrees in order, vocabulary checked
        d = cls.__new__(cls)
        d.vocabulary = tuple(vocabulary)
        d.values = tuple(values)
        return d

    @classmethod
    def from_mapping(cls, vocabulary: Sequence[str], mapping: Mapping[World, Fraction],
                     max_vars: int | None = DEFAULT_MAX_VARS) -> "Distribution":
        worlds = enumerate_worlds(vocabulary, max_vars)
        missing = [w for w in worlds if w not in mapping]
        if missing:
            raise ValueError(f"distribution is not total, e.g. missing world {missing[0]}")
        return cls(vocabulary, (mapping[w] for w in worlds))

    @classmethod
    def constant(cls, vocabulary: Sequence[str], value=ONE) -> "Distribution":
        return cls(vocabulary, [value] * (1 << len(tuple(vocabulary))))

    def __getitem__(self, world: World) -> Fraction:
        if world.vocabulary != self.vocabulary:
            raise VocabularyMismatchError("world and distribution use different vocabularies")
        return self.values[world.index]

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, Distribution):
            return NotImplemented
        return self.vocabulary == other.vocabulary and self.values == other.values

    def __hash__(self):
        return hash((self.vocabulary, self.values))

    def __repr__(self):
        return f"Distribution({self.vocabulary!r}, {len(self.values)} worlds)"

    def worlds(self) -> list:
        return enumerate_worlds(self.vocabulary, max_vars=None)

    def items(self) -> Iterator[tuple]:
        return zip(self.worlds(), self.values)

    def height(self) -> Fraction:
        """Largest degree over all worlds (1 for a normalized distribution)."""
        return max(self.values)


def _same_vocabulary(a, b):
    if tuple(a.vocabulary) != tuple(b.vocabulary):
        raise VocabularyMismatchError(
            f"vocabularies differ: {list(a.vocabulary)} vs {list(b.vocabulary)}"
        )


def possibility(d: Distribution, p: Formula) -> Fraction:
    """Largest degree among models of ``p``; 0 if ``p`` has none."""
    check_atoms(p, d.vocabulary)
    pred = compile_formula(p, d.vocabulary)
    best = ZERO
    for w, v in d.items():
        if v > best and pred(w.values):
            best = v
    return best


def necessity(d: Distribution, p: Formula) -> Fraction:
    return ONE - possibility(d, Not(p))


def equivalent(d1: Distribution, d2: Distribution) -> bool:
    """Exact world-by-world equality."""
    _same_vocabulary(d1, d2)
    return d1.values == d2.values


def max_discrepancy(d1: Distribution, d2: Distribution) -> Fraction:
    _same_vocabulary(d1, d2)
    return max(abs(a - b) for a, b in zip(d1.values, d2.values))


# ---------------------------------------------------------------------------
# fuzzy world sets


class FuzzyWorldSet:
    """Truth degree of a fuzzy proposition in every world."""

    __slots__ = ("vocabulary", "membership")

    def __init__(self, vocabulary: Sequence[str], membership: Iterable):
        self.vocabulary = check_vocabulary(vocabulary)
        membership = tuple(as_degree(v) for v in membership)
        if len(membership) != 1 << len(self.vocabulary):
            raise ValueError("fuzzy world set must give a degree for every world")
        self.membership = membership

    @classmethod
    def crisp(cls, p: Formula, vocabulary: Sequence[str],
              max_vars: int | None = DEFAULT_MAX_VARS) -> "FuzzyWorldSet":
        vocabulary = tuple(vocabulary)
        check_enumerable(vocabulary, max_vars)
        check_atoms(p, vocabulary)
        pred = compile_formula(p, vocabulary)
        return cls(vocabulary, (ONE if pred(w.values) else ZERO
                                for w in enumerate_worlds(vocabulary, max_vars)))

    def complement(self) -> "FuzzyWorldSet":
        return FuzzyWorldSet(self.vocabulary, (ONE - t for t in self.membership))

    def __getitem__(self, world: World) -> Fraction:
        return self.membership[world.index]


def fuzzy_possibility_profile(d: Distribution, fs: FuzzyWorldSet) -> dict:
    """Map each attained truth degree t to the best degree of a world at t."""
    _same_vocabulary(d, fs)
    profile = {}
    for t, v in zip(fs.membership, d.values):
        if t not in profile or v > profile[t]:
            profile[t] = v
    return dict(sorted(profile.items()))


def fuzzy_necessity_profile(d: Distribution, fs: FuzzyWorldSet) -> dict:
    """Dual profile: possibility profile of the complement, then ``1 - v``."""
    _same_vocabulary(d, fs)
    return {t: ONE - v for t, v in fuzzy_possibility_profile(d, fs.complement()).items()}


# ---------------------------------------------------------------------------
# TSV export


def format_tsv(d: Distribution, column: str = "degree") -> str:
    lines = ["\t".join((*d.vocabulary, column))]
    for w, v in d.items():
        lines.append("\t".join((*(str(lit) for lit in w.literals()), format_degree(v))))
    return "\n".join(lines) + "\n"


def parse_tsv(text: str, source: str | None = None) -> Distribution:
    rows = [line for line in text.splitlines() if line.strip()]
    if not rows:
        raise FileFormatError("empty distribution file", source=source)
    header = rows[0].split("\t")
    vocabulary = tuple(header[:-1])
    try:
        check_vocabulary(vocabulary)
    except ValueError as exc:
        raise FileFormatError(str(exc), 1, source) from None
    values = {}
    for lineno, line in enumerate(rows[1:], start=2):
        cells = line.split("\t")
        if len(cells) != len(header):
            raise FileFormatError(f"expected {len(header)} cells, got {len(cells)}", lineno, source)
        assignment = {}
        for name, cell in zip(vocabulary, cells):
            if cell == name:
                assignment[name] = True
            elif cell == "!" + name:
                assignment[name] = False
            else:
                raise FileFormatError(f"cell {cell!r} is not a literal of {name}", lineno, source)
        world = World.from_mapping(vocabulary, assignment)
        if world in values:
            raise FileFormatError(f"duplicate world {world}", lineno, source)
        try:
            values[world] = parse_degree(cells[-1])
        except Exception as exc:
            raise FileFormatError(str(exc), lineno, source) from None
    if len(values) != 1 << len(vocabulary):
        raise FileFormatError(f"expected {1 << len(vocabulary)} rows, got {len(values)}", source=source)
    return Distribution.from_mapping(vocabulary, values, max_vars=None)
