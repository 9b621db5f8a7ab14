"""Certain Bayesian networks: min-based networks over binary attributes.

Each attribute carries a conditional certainty table giving N(x | u) for
both of its literals x and each instantiation u of its parents.  Tables may
use an ``else`` row per literal covering every context not listed
explicitly.  The joint certainty of a world is the minimum of the matching
table entries over all nodes.
"""

from __future__ import annotations

import graphlib
import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import _accel
from .degrees import (
    ONE,
    FuzzyDegree,
    as_degree,
    as_fuzzy,
    defuzzify,
    format_degree,
    format_value,
    fuzzy_min_all,
    parse_value,
)
from .distribution import Distribution
from .errors import (
    CertnetError,
    CoverageError,
    FileFormatError,
    NetworkStructureError,
)
from .logic import (
    DEFAULT_MAX_VARS,
    IDENT_RE,
    World,
    check_enumerable,
    check_vocabulary,
    enumerate_worlds,
)

STRICT = "strict"
PERMISSIVE = "permissive"


@dataclass(frozen=True)
class Row:
    """One table entry: N(literal | context) = value; ``context=None`` is else."""

    positive: bool
    context: tuple | None
    value: object

    def is_else(self) -> bool:
        return self.context is None


def format_context(parents: Sequence[str], context) -> str:
    if context is None:
        return "else"
    return " ".join(p if v else "!" + p for p, v in zip(parents, context))


def _lit(name, positive):
    return name if positive else "!" + name


@dataclass(frozen=True)
class ConditionalTable:
    node: str
    parents: tuple
    rows: tuple
    _index: dict = field(init=False, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(self.parents))
        object.__setattr__(self, "rows", tuple(self.rows))
        index = {}
        for row in self.rows:
            index.setdefault((row.positive, row.context), row.value)
        object.__setattr__(self, "_index", index)

    def __hash__(self):
        return hash((self.node, self.parents, self.rows))

    def instantiations(self) -> list:
        return list(itertools.product((True, False), repeat=len(self.parents)))

    def lookup(self, positive: bool, context: tuple):
        """Entry for a full parent instantiation; explicit rows win over else."""
        try:
            return self._index[(positive, tuple(context))]
        except KeyError:
            pass
        try:
            return self._index[(positive, None)]
        except KeyError:
            raise CoverageError(
                f"no row of {self.node} matches {_lit(self.node, positive)} | "
                f"{format_context(self.parents, context)}"
            ) from None

    def expanded(self) -> dict:
        """``{(positive, context): value}`` over every full instantiation."""
        return {(pos, ctx): self.lookup(pos, ctx)
                for ctx in self.instantiations() for pos in (True, False)}

    def map_values(self, fn) -> "ConditionalTable":
        return ConditionalTable(self.node, self.parents,
                                tuple(Row(r.positive, r.context, fn(r.value)) for r in self.rows))


class CertainNetwork:
    """DAG over binary attributes with one conditional table per attribute.

    Construction only checks what is needed to hold the data; structural
    problems (cycles, missing tables, coverage gaps) are reported by
    :func:`validate` and make the enumeration operations refuse to run.
    """

    fuzzy = False

    def __init__(self, name: str, vocabulary: Sequence[str], tables: Iterable[ConditionalTable]):
        if not IDENT_RE.fullmatch(name):
            raise ValueError(f"invalid network name {name!r}")
        self.name = name
        self.vocabulary = check_vocabulary(vocabulary)
        self.tables = tuple(tables)
        for t in self.tables:
            for r in t.rows:
                self._check_value(r.value)

    def _check_value(self, value):
        if isinstance(value, FuzzyDegree):
            raise TypeError("crisp network rows must be Fractions; use FuzzyCertainNetwork")
        as_degree(value)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self.name, self.vocabulary, self.tables) == (other.name, other.vocabulary, other.tables)

    def __hash__(self):
        return hash((self.name, self.vocabulary, self.tables))

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r}, {list(self.vocabulary)!r})"

    def table(self, node: str) -> ConditionalTable:
        for t in self.tables:
            if t.node == node:
                return t
        raise KeyError(node)

    def parents(self, node: str) -> tuple:
        return self.table(node).parents

    def map_values(self, fn, cls=None):
        cls = cls or type(self)
        return cls(self.name, self.vocabulary, (t.map_values(fn) for t in self.tables))

    def require_valid_structure(self):
        report = validate(self, PERMISSIVE)
        if not report.ok:
            raise NetworkStructureError(report.format())


class FuzzyCertainNetwork(CertainNetwork):
    """Same structure, rows are :class:`FuzzyDegree` values."""

    fuzzy = True

    def __init__(self, name, vocabulary, tables):
        tables = [t.map_values(as_fuzzy) for t in tables]
        super().__init__(name, vocabulary, tables)

    def _check_value(self, value):
        if not isinstance(value, FuzzyDegree):
            raise TypeError("fuzzy network rows must be FuzzyDegree")


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    kind: str
    node: str | None
    context: str | None
    message: str

    def __str__(self):
        where = []
        if self.node is not None:
            where.append(f"node {self.node}")
        if self.context is not None:
            where.append(f"context {self.context}")
        prefix = f"[{self.kind}] " + (", ".join(where) + ": " if where else "")
        return prefix + self.message


@dataclass
class ValidationReport:
    level: str
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def format(self) -> str:
        if self.ok:
            return f"valid ({self.level})"
        lines = [f"invalid ({self.level}): {len(self.violations)} violation(s)"]
        lines.extend("  " + str(v) for v in self.violations)
        return "\n".join(lines)


def _structure_violations(n: CertainNetwork) -> list:
    out = []
    vocab = set(n.vocabulary)
    seen = {}
    for t in n.tables:
        if t.node not in vocab:
            out.append(Violation("structure", t.node, None, "table for undeclared attribute"))
            continue
        if t.node in seen:
            out.append(Violation("structure", t.node, None, "more than one table"))
            continue
        seen[t.node] = t
        for p in t.parents:
            if p not in vocab:
                out.append(Violation("structure", t.node, None, f"undeclared parent {p}"))
            elif p == t.node:
                out.append(Violation("structure", t.node, None, "node is its own parent"))
        if len(set(t.parents)) != len(t.parents):
            out.append(Violation("structure", t.node, None, "repeated parent"))
    for a in n.vocabulary:
        if a not in seen:
            out.append(Violation("structure", a, None, "attribute has no table"))
    sorter = graphlib.TopologicalSorter(
        {t.node: [p for p in t.parents if p in vocab] for t in seen.values()})
    try:
        sorter.prepare()
    except graphlib.CycleError as exc:
        cycle = exc.args[1]
        out.append(Violation("structure", None, None, "cycle " + " -> ".join(reversed(cycle))))
    return out


def _table_violations(t: ConditionalTable) -> list:
    out = []
    keys = set()
    for r in t.rows:
        if r.context is not None and len(r.context) != len(t.parents):
            out.append(Violation("structure", t.node, None,
                                 "context does not assign every parent exactly once"))
            continue
        key = (r.positive, r.context)
        if key in keys:
            label = _lit(t.node, r.positive) + " | " + format_context(t.parents, r.context)
            out.append(Violation("structure", t.node, label, "duplicate row"))
        keys.add(key)
        if not isinstance(r.value, FuzzyDegree):
            v = Fraction(r.value)
            if not 0 <= v <= 1:
                out.append(Violation("range", t.node, format_context(t.parents, r.context),
                                     f"degree {v} outside [0, 1]"))
    for ctx in t.instantiations():
        for pos in (True, False):
            if (pos, ctx) not in keys and (pos, None) not in keys:
                out.append(Violation("coverage", t.node, format_context(t.parents, ctx),
                                     f"no row for {_lit(t.node, pos)}"))
    return out


def _normalization_violations(t: ConditionalTable) -> list:
    out = []
    for ctx in t.instantiations():
        pos_v, neg_v = t.lookup(True, ctx), t.lookup(False, ctx)
        a, b = defuzzify(pos_v), defuzzify(neg_v)
        if max(a, b) != ONE:
            where = "root " + t.node if not t.parents else format_context(t.parents, ctx)
            out.append(Violation(
                "normalization", t.node, None if not t.parents else where,
                f"max({format_degree(a)}, {format_degree(b)}) != 1"
                + (f" at {where}" if not t.parents else "")))
    return out


def validate(n: CertainNetwork, level: str = PERMISSIVE) -> ValidationReport:
    """Check structure, coverage and range; ``strict`` adds normalization.

    Strict normalization requires, for every parent instantiation, that one
    of the two literals has degree 1 (fuzzy rows are judged by their
    defuzzified value).
    """
    if level not in (STRICT, PERMISSIVE):
        raise ValueError(f"unknown validation level {level!r}")
    report = ValidationReport(level, _structure_violations(n))
    complete = []
    for t in n.tables:
        found = _table_violations(t)
        report.violations.extend(found)
        if not found:
            complete.append(t)
    if level == STRICT:
        for t in complete:
            report.violations.extend(_normalization_violations(t))
    return report


# ---------------------------------------------------------------------------
# chain rule


def local_degree(n: CertainNetwork, node: str, w: World):
    t = n.table(node)
    return t.lookup(w[node], w.restrict(t.parents))


def _kernel_nodes(n: CertainNetwork):
    size = len(n.vocabulary)
    bit = {a: size - 1 - i for i, a in enumerate(n.vocabulary)}
    nodes = []
    for t in n.tables:
        # index bits: own value first, then parents; set bit = false
        table = [t.lookup(not (idx >> len(t.parents)) & 1,
                          tuple(not (idx >> (len(t.parents) - 1 - j)) & 1
                                for j in range(len(t.parents))))
                 for idx in range(1 << (len(t.parents) + 1))]
        nodes.append(([bit[t.node]] + [bit[p] for p in t.parents], table))
    return nodes


def joint_distribution(n: CertainNetwork, max_vars: int | None = DEFAULT_MAX_VARS) -> Distribution:
    """Chain rule: per world, the minimum matching entry over all nodes."""
    if n.fuzzy:
        raise TypeError("use fuzzy_joint for fuzzy networks")
    n.require_valid_structure()
    check_enumerable(n.vocabulary, max_vars)
    values = _accel.chain_min(len(n.vocabulary), _kernel_nodes(n))
    return Distribution._trusted(n.vocabulary, values)


def fuzzy_joint(n: CertainNetwork, max_vars: int | None = DEFAULT_MAX_VARS) -> dict:
    """Fuzzy chain rule: per world, fuzzy minimum of the matching entries."""
    n.require_valid_structure()
    check_enumerable(n.vocabulary, max_vars)
    out = {}
    for w in enumerate_worlds(n.vocabulary, max_vars):
        out[w] = fuzzy_min_all(as_fuzzy(local_degree(n, t.node, w)) for t in n.tables)
    return out


def defuzzify_network(n: CertainNetwork) -> CertainNetwork:
    return n.map_values(defuzzify, CertainNetwork)


def to_fuzzy(n: CertainNetwork) -> FuzzyCertainNetwork:
    """Embed a crisp network with every entry as a degenerate fuzzy degree."""
    return n.map_values(as_fuzzy, FuzzyCertainNetwork)


# ---------------------------------------------------------------------------
# file format

_CPT_HEAD_RE = re.compile(r"cpt\s+([A-Za-z_]\w*)\s*(?:\|\s*([^{]*?))?\s*\{(.*)\}\s*$", re.S)


def _strip_comment(line):
    # '#' never occurs inside values
    return line.split("#", 1)[0]


def _statements(text):
    """Yield ``(lineno, statement)``; ``cpt`` bodies may span lines."""
    pending, start = None, None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if pending is not None:
            pending += " " + line
            if "}" in line:
                yield start, pending
                pending = None
            continue
        if line.startswith("cpt") and "{" in line and "}" not in line:
            pending, start = line, lineno
            continue
        yield lineno, line
    if pending is not None:
        raise FileFormatError("unterminated cpt block", start)


def _parse_literal(token, node, lineno):
    token = token.strip()
    if token == node:
        return True
    if token == "!" + node:
        return False
    raise FileFormatError(f"expected literal of {node}, found {token!r}", lineno)


def _parse_context(text, parents, lineno):
    text = text.strip()
    if text == "else":
        return None
    values = {}
    for tok in text.split():
        positive = not tok.startswith("!")
        name = tok.lstrip("!")
        if name not in parents:
            raise FileFormatError(f"{name!r} is not a parent in context {text!r}", lineno)
        if name in values:
            raise FileFormatError(f"parent {name} assigned twice in context {text!r}", lineno)
        values[name] = positive
    if len(values) != len(parents):
        missing = [p for p in parents if p not in values]
        raise FileFormatError(f"context {text!r} does not assign {', '.join(missing)}", lineno)
    return tuple(values[p] for p in parents)


def _parse_cpt(stmt, lineno, want_fuzzy):
    m = _CPT_HEAD_RE.fullmatch(stmt)
    if m is None:
        raise FileFormatError(f"malformed cpt statement {stmt!r}", lineno)
    node, parent_text, body = m.group(1), m.group(2), m.group(3)
    parents = tuple(parent_text.split()) if parent_text else ()
    for p in parents:
        if not IDENT_RE.fullmatch(p):
            raise FileFormatError(f"invalid parent name {p!r}", lineno)
    rows = []
    for entry in body.split(";"):
        entry = entry.strip()
        if not entry:
            continue
        if ":" not in entry:
            raise FileFormatError(f"entry {entry!r} lacks ':'", lineno)
        lhs, value_text = entry.split(":", 1)
        if parents:
            if "|" not in lhs:
                raise FileFormatError(f"entry {lhs.strip()!r} needs '| context'", lineno)
            lit_text, ctx_text = lhs.split("|", 1)
            context = _parse_context(ctx_text, parents, lineno)
        else:
            if "|" in lhs:
                raise FileFormatError(f"root {node} cannot have a context", lineno)
            lit_text, context = lhs, ()
        positive = _parse_literal(lit_text, node, lineno)
        try:
            value = parse_value(value_text, fuzzy=bool(want_fuzzy))
        except CertnetError as exc:
            raise FileFormatError(str(exc), lineno) from None
        rows.append(Row(positive, context, value))
    return ConditionalTable(node, parents, tuple(rows))


def parse_network(text: str, fuzzy: bool | None = None, source: str | None = None) -> CertainNetwork:
    """Read the network file format.

    ``fuzzy=None`` returns a :class:`FuzzyCertainNetwork` iff some entry
    uses fuzzy syntax; ``True`` forces fuzzy, ``False`` rejects fuzzy
    entries.
    """
    name, vocabulary, tables = None, [], []
    try:
        for lineno, stmt in _statements(text):
            keyword = stmt.split(None, 1)[0]
            if keyword == "network":
                parts = stmt.split()
                if name is not None:
                    raise FileFormatError("network declared twice", lineno)
                if len(parts) != 2 or not IDENT_RE.fullmatch(parts[1]):
                    raise FileFormatError("expected 'network <ident>'", lineno)
                name = parts[1]
            elif keyword == "var":
                names = stmt.split()[1:]
                if not names:
                    raise FileFormatError("'var' needs at least one attribute", lineno)
                vocabulary.extend(names)
            elif keyword == "cpt":
                tables.append(_parse_cpt(stmt, lineno, fuzzy))
            else:
                raise FileFormatError(f"unknown statement {keyword!r}", lineno)
        if name is None:
            raise FileFormatError("missing 'network <ident>' line")
        try:
            check_vocabulary(vocabulary)
        except ValueError as exc:
            raise FileFormatError(str(exc)) from None
        has_fuzzy = any(isinstance(r.value, FuzzyDegree) and not r.value.is_crisp()
                        for t in tables for r in t.rows)
        if fuzzy is False and has_fuzzy:
            raise FileFormatError("fuzzy entries in a crisp network")
        if fuzzy or has_fuzzy:
            return FuzzyCertainNetwork(name, vocabulary, tables)
        return CertainNetwork(name, vocabulary,
                              (t.map_values(defuzzify) for t in tables))
    except FileFormatError as exc:
        if source is not None and exc.source is None:
            raise exc.with_source(source) from None
        raise


def format_network(n: CertainNetwork) -> str:
    lines = [f"network {n.name}", "var " + " ".join(n.vocabulary)]
    for t in n.tables:
        entries = []
        for r in t.rows:
            lhs = _lit(t.node, r.positive)
            if t.parents:
                lhs += " | " + format_context(t.parents, r.context)
            entries.append(f"{lhs}: {format_value(r.value)}")
        head = f"cpt {t.node}" + (" | " + " ".join(t.parents) if t.parents else "")
        lines.append(f"{head} {{ " + "; ".join(entries) + " }")
    return "\n".join(lines) + "\n"


def load_network(path, fuzzy: bool | None = None) -> CertainNetwork:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_network(text, fuzzy=fuzzy, source=str(path))
