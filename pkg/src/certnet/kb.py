"""Weighted-clause knowledge bases and their translation from networks.

A weighted formula ``(phi, alpha)`` states that ``phi`` is certain to at
least degree ``alpha``.  A knowledge base induces a certainty distribution
on worlds: a world satisfying every formula gets 1, otherwise 1 minus the
largest weight among the formulas it violates.

A network node compiles to one clause per table entry ``N(x | u) < 1``:
the clause ``!x | !u`` excludes exactly the worlds where ``x`` and ``u``
hold, with weight ``1 - N(x | u)``.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import _accel
from .degrees import (
    ONE,
    ZERO,
    FuzzyDegree,
    as_degree,
    complement,
    defuzzify,
    format_value,
    parse_value,
)
from .distribution import Distribution
from .errors import CertnetError, FileFormatError, UnknownAtomError, VocabularyMismatchError
from .logic import (
    DEFAULT_MAX_VARS,
    IDENT_RE,
    Clause,
    Formula,
    Literal,
    atoms,
    check_enumerable,
    check_vocabulary,
    compile_formula,
    enumerate_worlds,
    falsifying_clauses,
    format_formula,
    parse_formula,
)
from .network import CertainNetwork


@dataclass(frozen=True)
class WeightedFormula:
    formula: Formula
    weight: Fraction
    source: str | None = None
    line: int | None = field(default=None, compare=False)

    def __post_init__(self):
        w = as_degree(self.weight)
        if w == 0:
            raise ValueError("weight must be positive; a zero weight asserts nothing")
        object.__setattr__(self, "weight", w)


@dataclass(frozen=True)
class FuzzyWeightedFormula:
    formula: Formula
    weight: FuzzyDegree
    source: str | None = None
    line: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.weight, FuzzyDegree):
            object.__setattr__(self, "weight", FuzzyDegree.crisp(self.weight))
        if defuzzify(self.weight) == 0:
            raise ValueError("fuzzy weight must have a positive peak")

    def crisp(self) -> WeightedFormula:
        return WeightedFormula(self.formula, defuzzify(self.weight), self.source, self.line)


class KnowledgeBase:
    """An ordered collection of weighted formulas over a vocabulary."""

    fuzzy = False
    _item = WeightedFormula

    def __init__(self, name: str, vocabulary: Sequence[str], formulas: Iterable = ()):
        if not IDENT_RE.fullmatch(name):
            raise ValueError(f"invalid knowledge base name {name!r}")
        self.name = name
        self.vocabulary = check_vocabulary(vocabulary)
        self.formulas = tuple(formulas)
        known = set(self.vocabulary)
        for wf in self.formulas:
            if not isinstance(wf, self._item):
                raise TypeError(f"expected {self._item.__name__}, got {type(wf).__name__}")
            for a in atoms(wf.formula):
                if a not in known:
                    raise UnknownAtomError(a)

    def __len__(self):
        return len(self.formulas)

    def __iter__(self):
        return iter(self.formulas)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self.name, self.vocabulary, self.formulas) == (other.name, other.vocabulary, other.formulas)

    def __hash__(self):
        return hash((self.name, self.vocabulary, self.formulas))

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r}, {len(self.formulas)} formulas)"

    def replace(self, formulas=None, name=None):
        return type(self)(name or self.name, self.vocabulary,
                          self.formulas if formulas is None else formulas)

    def without(self, index: int):
        return self.replace(self.formulas[:index] + self.formulas[index + 1:])

    def slice(self, node: str):
        """Formulas compiled from ``node``."""
        return self.replace([wf for wf in self.formulas if wf.source == node],
                            name=f"{self.name}_{node}")


class FuzzyKnowledgeBase(KnowledgeBase):
    fuzzy = True
    _item = FuzzyWeightedFormula

    def crisp_projection(self) -> KnowledgeBase:
        """Replace every fuzzy weight by its point of full membership."""
        return KnowledgeBase(self.name, self.vocabulary, (wf.crisp() for wf in self.formulas))


# ---------------------------------------------------------------------------
# compilation from networks


def _entry_clause(node, positive, parents, context) -> Formula:
    lits = [Literal(node, not positive)]
    lits.extend(Literal(p, not v) for p, v in zip(parents, context))
    return Clause(lits).to_formula()


def _compiled_entries(n: CertainNetwork, node: str):
    t = n.table(node)
    for ctx in t.instantiations():
        for positive in (True, False):
            yield _entry_clause(node, positive, t.parents, ctx), t.lookup(positive, ctx)


def compile_node(n: CertainNetwork, node: str) -> KnowledgeBase:
    """Clauses for one node; entries with degree 1 contribute nothing."""
    if n.fuzzy:
        raise TypeError("use compile_fuzzy for fuzzy networks")
    n.require_valid_structure()
    formulas = [WeightedFormula(clause, ONE - value, node)
                for clause, value in _compiled_entries(n, node) if value < 1]
    return KnowledgeBase(f"{n.name}_{node}", n.vocabulary, formulas)


def compile_network(n: CertainNetwork) -> KnowledgeBase:
    if n.fuzzy:
        raise TypeError("use compile_fuzzy for fuzzy networks")
    n.require_valid_structure()
    formulas = []
    for t in n.tables:
        formulas.extend(compile_node(n, t.node).formulas)
    return KnowledgeBase(n.name, n.vocabulary, formulas)


def compile_fuzzy(n: CertainNetwork) -> FuzzyKnowledgeBase:
    """Fuzzy weights are complements of the entries.

    Entries whose complement peaks at 0 (defuzzified weight 0) are dropped,
    so the crisp projection matches compiling the defuzzified network.
    """
    n.require_valid_structure()
    formulas = []
    for t in n.tables:
        for clause, value in _compiled_entries(n, t.node):
            weight = complement(value if isinstance(value, FuzzyDegree) else FuzzyDegree.crisp(value))
            if defuzzify(weight) != 0:
                formulas.append(FuzzyWeightedFormula(clause, weight, t.node))
    return FuzzyKnowledgeBase(n.name, n.vocabulary, formulas)


# ---------------------------------------------------------------------------
# induced distributions


def _crisp(kb: KnowledgeBase) -> KnowledgeBase:
    return kb.crisp_projection() if kb.fuzzy else kb


def recover_distribution(kb: KnowledgeBase, max_vars: int | None = DEFAULT_MAX_VARS) -> Distribution:
    """1 where every formula holds, else 1 minus the worst violated weight."""
    kb = _crisp(kb)
    check_enumerable(kb.vocabulary, max_vars)
    size = len(kb.vocabulary)
    bit = {a: 1 << (size - 1 - i) for i, a in enumerate(kb.vocabulary)}
    clauses = []
    for wf in kb.formulas:
        for clause in falsifying_clauses(wf.formula):
            pos_mask = neg_mask = 0
            for lit in clause:
                if lit.positive:
                    pos_mask |= bit[lit.name]
                else:
                    neg_mask |= bit[lit.name]
            clauses.append((pos_mask, neg_mask, wf.weight))
    return Distribution._trusted(kb.vocabulary, _accel.clause_recover(size, clauses))


def minmax_distribution(kb: KnowledgeBase, max_vars: int | None = DEFAULT_MAX_VARS) -> Distribution:
    """Per world, min over formulas of max(sat, 1 - weight), sat in {0, 1}.

    Evaluated directly on the formulas, independent of the clause kernel.
    """
    kb = _crisp(kb)
    preds = [(compile_formula(wf.formula, kb.vocabulary), ONE - wf.weight) for wf in kb.formulas]
    values = []
    for w in enumerate_worlds(kb.vocabulary, max_vars):
        v = ONE
        for pred, slack in preds:
            v = min(v, max(ONE if pred(w.values) else ZERO, slack))
        values.append(v)
    return Distribution(kb.vocabulary, values)


def equivalent_kb(k1: KnowledgeBase, k2: KnowledgeBase, max_vars: int | None = DEFAULT_MAX_VARS) -> bool:
    if k1.vocabulary != k2.vocabulary:
        raise VocabularyMismatchError(
            f"vocabularies differ: {list(k1.vocabulary)} vs {list(k2.vocabulary)}")
    return recover_distribution(k1, max_vars) == recover_distribution(k2, max_vars)


def is_subsumed(kb: KnowledgeBase, index: int, max_vars: int | None = DEFAULT_MAX_VARS) -> bool:
    """True iff dropping formula ``index`` leaves the induced distribution unchanged."""
    if not 0 <= index < len(kb.formulas):
        raise IndexError(f"no formula at position {index}")
    return recover_distribution(kb, max_vars) == recover_distribution(kb.without(index), max_vars)


def subsumed_indices(kb: KnowledgeBase, max_vars: int | None = DEFAULT_MAX_VARS) -> list:
    """Positions of formulas that are individually subsumed by the rest."""
    full = recover_distribution(kb, max_vars)
    return [i for i in range(len(kb.formulas))
            if recover_distribution(kb.without(i), max_vars) == full]


# ---------------------------------------------------------------------------
# file format

_FROM_RE = re.compile(r"\s*from\s+([A-Za-z_]\w*)\s*")


def parse_kb(text: str, fuzzy: bool | None = None, source: str | None = None) -> KnowledgeBase:
    """Read the knowledge base file format.

    Zero-weight lines are skipped with a warning.  ``fuzzy`` behaves as in
    :func:`certnet.network.parse_network`.
    """
    name, vocabulary, entries = None, [], []
    try:
        for lineno, raw in enumerate(text.splitlines(), start=1):
            body, _, comment = raw.partition("#")
            body = body.strip()
            if not body:
                continue
            keyword = body.split(None, 1)[0]
            if keyword == "kb":
                parts = body.split()
                if name is not None:
                    raise FileFormatError("kb declared twice", lineno)
                if len(parts) != 2 or not IDENT_RE.fullmatch(parts[1]):
                    raise FileFormatError("expected 'kb <ident>'", lineno)
                name = parts[1]
                continue
            if keyword == "vars":
                names = body.split()[1:]
                if not names:
                    raise FileFormatError("'vars' needs at least one attribute", lineno)
                vocabulary.extend(names)
                continue
            if ":" not in body:
                raise FileFormatError(f"expected '<weight> : <formula>', found {body!r}", lineno)
            weight_text, formula_text = body.rsplit(":", 1)
            try:
                weight = parse_value(weight_text, fuzzy=bool(fuzzy))
                formula = parse_formula(formula_text, vocabulary)
            except CertnetError as exc:
                raise FileFormatError(str(exc), lineno) from None
            m = _FROM_RE.fullmatch(comment) if comment else None
            entries.append((lineno, formula, weight, m.group(1) if m else None))
        if name is None:
            raise FileFormatError("missing 'kb <ident>' line")
        try:
            check_vocabulary(vocabulary)
        except ValueError as exc:
            raise FileFormatError(str(exc)) from None
    except FileFormatError as exc:
        if source is not None and exc.source is None:
            raise exc.with_source(source) from None
        raise

    has_fuzzy = any(isinstance(w, FuzzyDegree) and not w.is_crisp() for _, _, w, _ in entries)
    if fuzzy is False and has_fuzzy:
        raise FileFormatError("fuzzy weights in a crisp knowledge base", source=source)
    make_fuzzy = bool(fuzzy or has_fuzzy)
    formulas = []
    for lineno, formula, weight, src in entries:
        if defuzzify(weight) == 0:
            where = f"{source}:{lineno}" if source else f"line {lineno}"
            warnings.warn(f"{where}: zero-weight formula ignored", stacklevel=2)
            continue
        if make_fuzzy:
            formulas.append(FuzzyWeightedFormula(formula, weight, src, lineno))
        else:
            formulas.append(WeightedFormula(formula, defuzzify(weight), src, lineno))
    cls = FuzzyKnowledgeBase if make_fuzzy else KnowledgeBase
    return cls(name, vocabulary, formulas)


def format_kb(kb: KnowledgeBase) -> str:
    lines = [f"kb {kb.name}", "vars " + " ".join(kb.vocabulary)]
    for wf in kb.formulas:
        line = f"{format_value(wf.weight)} : {format_formula(wf.formula)}"
        if wf.source is not None:
            line += f"  # from {wf.source}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def load_kb(path, fuzzy: bool | None = None) -> KnowledgeBase:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_kb(text, fuzzy=fuzzy, source=str(path))
