"""Exact certainty degrees and fuzzy degrees.

A crisp degree is a :class:`fractions.Fraction` in [0, 1].  Decimal text is
read without rounding, so ``"0.25"`` is exactly ``1/4``.

A :class:`FuzzyDegree` is a piecewise-linear fuzzy number on [0, 1] stored as
its alpha-cuts at a finite set of levels; the cut at any intermediate level
is the linear interpolation of its neighbours.  Minimum and complement are
computed exactly on this representation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import FormulaSyntaxError

ZERO = Fraction(0)
ONE = Fraction(1)

_DECIMAL_RE = re.compile(r"\d+(?:\.\d+)?|\.\d+")
_FRACTION_RE = re.compile(r"(\d+)\s*/\s*(\d+)")


def parse_degree(text: str) -> Fraction:
    """Read ``0``, ``1``, ``0.25`` or ``1/3`` as an exact rational in [0, 1]."""
    s = text.strip()
    m = _FRACTION_RE.fullmatch(s)
    if m:
        if int(m.group(2)) == 0:
            raise FormulaSyntaxError(f"zero denominator in degree {text!r}")
        value = Fraction(int(m.group(1)), int(m.group(2)))
    elif _DECIMAL_RE.fullmatch(s):
        value = Fraction(s)
    else:
        raise FormulaSyntaxError(f"invalid degree {text!r}")
    if value > 1:
        raise FormulaSyntaxError(f"degree {text!r} is outside [0, 1]")
    return value


def as_degree(value) -> Fraction:
    """Coerce ints, Fractions and decimal strings; floats are rejected."""
    if isinstance(value, str):
        return parse_degree(value)
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    value = Fraction(value)
    if not 0 <= value <= 1:
        raise ValueError(f"degree {value} is outside [0, 1]")
    return value


def _terminates(q: int) -> bool:
    for p in (2, 5):
        while q % p == 0:
            q //= p
    return q == 1


def format_degree(value: Fraction) -> str:
    """Shortest exact decimal if one exists, otherwise ``p/q``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    if not _terminates(value.denominator):
        return f"{value.numerator}/{value.denominator}"
    digits = 0
    scaled = value
    while scaled.denominator != 1:
        scaled *= 10
        digits += 1
    whole, frac = divmod(scaled.numerator, 10 ** digits)
    return f"{whole}.{frac:0{digits}d}"


# ---------------------------------------------------------------------------
# fuzzy degrees


def _collinear(a, b, c):
    # Interior cut b is redundant if both endpoints interpolate linearly.
    (la, lo_a, up_a), (lb, lo_b, up_b), (lc, lo_c, up_c) = a, b, c
    t = (lb - la) / (lc - la)
    return lo_b == lo_a + t * (lo_c - lo_a) and up_b == up_a + t * (up_c - up_a)


@dataclass(frozen=True)
class FuzzyDegree:
    """Fuzzy number on [0, 1] given by nested alpha-cuts.

    ``cuts`` holds ``(level, lower, upper)`` triples with strictly
    increasing levels starting at 0 and ending at 1.  Interior cuts that are
    linear interpolations of their neighbours are dropped, so two instances
    are equal exactly when they describe the same membership function.
    """

    cuts: tuple

    def __post_init__(self):
        cuts = tuple((Fraction(l), Fraction(lo), Fraction(up)) for l, lo, up in self.cuts)
        if len(cuts) < 2 or cuts[0][0] != 0 or cuts[-1][0] != 1:
            raise ValueError("alpha-cuts must include levels 0 and 1")
        for (l1, lo1, up1), (l2, lo2, up2) in zip(cuts, cuts[1:]):
            if not l1 < l2:
                raise ValueError("alpha-cut levels must be strictly increasing")
            if not (lo1 <= lo2 and up2 <= up1):
                raise ValueError("alpha-cuts must be nested")
        for _, lo, up in cuts:
            if not 0 <= lo <= up <= 1:
                raise ValueError(f"alpha-cut [{lo}, {up}] is not inside [0, 1]")
        kept = [cuts[0]]
        for i in range(1, len(cuts) - 1):
            if not _collinear(kept[-1], cuts[i], cuts[i + 1]):
                kept.append(cuts[i])
        kept.append(cuts[-1])
        object.__setattr__(self, "cuts", tuple(kept))

    @classmethod
    def crisp(cls, value) -> "FuzzyDegree":
        v = as_degree(value)
        return cls(((ZERO, v, v), (ONE, v, v)))

    @property
    def support(self) -> tuple:
        return self.cuts[0][1:]

    @property
    def core(self) -> tuple:
        return self.cuts[-1][1:]

    @property
    def levels(self) -> tuple:
        return tuple(c[0] for c in self.cuts)

    def is_crisp(self) -> bool:
        lo, up = self.support
        return lo == up

    def is_triangular(self) -> bool:
        return len(self.cuts) == 2 and self.core[0] == self.core[1]

    def cut(self, level) -> tuple:
        """Interval ``(lower, upper)`` at an arbitrary level in [0, 1]."""
        level = Fraction(level)
        if not 0 <= level <= 1:
            raise ValueError("level must lie in [0, 1]")
        for (l1, lo1, up1), (l2, lo2, up2) in zip(self.cuts, self.cuts[1:]):
            if l1 <= level <= l2:
                t = (level - l1) / (l2 - l1)
                return lo1 + t * (lo2 - lo1), up1 + t * (up2 - up1)
        raise AssertionError("unreachable")

    def __str__(self):
        return format_fuzzy(self)


Value = Union[Fraction, FuzzyDegree]


def triangular(beta1, peak, beta2) -> FuzzyDegree:
    b1, p, b2 = as_degree(beta1), as_degree(peak), as_degree(beta2)
    if not b1 <= p <= b2:
        raise ValueError(f"triangular degree needs beta1 <= peak <= beta2, got {b1}, {p}, {b2}")
    return FuzzyDegree(((ZERO, b1, b2), (ONE, p, p)))


def as_fuzzy(value) -> FuzzyDegree:
    if isinstance(value, FuzzyDegree):
        return value
    return FuzzyDegree.crisp(value)


def membership(fd: FuzzyDegree, chi) -> Fraction:
    """Membership grade of ``chi``: the highest level whose cut contains it."""
    chi = Fraction(chi)
    cuts = fd.cuts
    lo0, up0 = cuts[0][1], cuts[0][2]
    if not lo0 <= chi <= up0:
        return ZERO
    for (l1, lo1, up1), (l2, lo2, up2) in zip(cuts, cuts[1:]):
        if lo2 <= chi <= up2:
            continue
        # chi is in cut l1 but not in cut l2: it sits on one flank.
        if chi < lo2:
            return l1 + (chi - lo1) / (lo2 - lo1) * (l2 - l1)
        return l1 + (up1 - chi) / (up1 - up2) * (l2 - l1)
    return ONE


def defuzzify(fd) -> Fraction:
    """Crisp value of maximal membership; midpoint of a flat core."""
    if not isinstance(fd, FuzzyDegree):
        return as_degree(fd)
    lo, up = fd.core
    return (lo + up) / 2


def _crossings(f1, f2, levels):
    # Levels strictly inside each segment where two linear endpoint
    # functions cross.
    out = []
    for a, b in zip(levels, levels[1:]):
        da = f1(a) - f2(a)
        db = f1(b) - f2(b)
        if da * db < 0:
            out.append(a + (b - a) * da / (da - db))
    return out


def fuzzy_min(a, b) -> FuzzyDegree:
    """Extension-principle minimum, exact on alpha-cuts.

    min is monotone in both arguments, so every cut of the result is the
    cut-wise interval minimum.  Breakpoints are the union of both level sets
    plus the levels where the endpoint functions cross.
    """
    a, b = as_fuzzy(a), as_fuzzy(b)
    if a.is_crisp() and b.is_crisp():
        return a if a.cuts[0][1] <= b.cuts[0][1] else b
    levels = sorted(set(a.levels) | set(b.levels))
    lower = lambda fd: (lambda l: fd.cut(l)[0])
    upper = lambda fd: (lambda l: fd.cut(l)[1])
    extra = _crossings(lower(a), lower(b), levels) + _crossings(upper(a), upper(b), levels)
    levels = sorted(set(levels) | set(extra))
    cuts = []
    for level in levels:
        (alo, aup), (blo, bup) = a.cut(level), b.cut(level)
        cuts.append((level, min(alo, blo), min(aup, bup)))
    return FuzzyDegree(tuple(cuts))


def fuzzy_min_all(values: Iterable) -> FuzzyDegree:
    result = FuzzyDegree.crisp(ONE)
    for v in values:
        result = fuzzy_min(result, v)
    return result


def complement(a):
    """``1 - a``, cut-wise ``(level, 1 - upper, 1 - lower)``; crisp stays crisp."""
    if not isinstance(a, FuzzyDegree):
        return ONE - as_degree(a)
    return FuzzyDegree(tuple((l, ONE - up, ONE - lo) for l, lo, up in a.cuts))


def fuzzy_leq(a: FuzzyDegree, b: FuzzyDegree) -> bool:
    """Cut-wise order: every cut of ``a`` lies left of the matching cut of ``b``."""
    levels = sorted(set(a.levels) | set(b.levels))
    for level in levels:
        (alo, aup), (blo, bup) = a.cut(level), b.cut(level)
        if alo > blo or aup > bup:
            return False
    return True


# ---------------------------------------------------------------------------
# closed-form triangular parameters


@dataclass(frozen=True)
class ClosedFormTriangle:
    """Slope constants ``k1``, ``k2`` and the corner points of a triangle.

    The membership function is

        mu(x) = k1 * (x - beta1) - k2 * (|x - peak| + x - peak)

    clamped to [0, 1] and zero outside ``[beta1, beta2]``.  Left of the
    peak the second term vanishes, so ``k1`` is the rising slope and
    ``k1 - 2 * k2`` the falling slope.
    """

    k1: Fraction
    k2: Fraction
    beta1: Fraction
    beta2: Fraction
    alpha_peak: Fraction

    def __post_init__(self):
        for name in ("k1", "k2"):
            value = getattr(self, name)
            if isinstance(value, float):
                raise TypeError(f"{name} must be exact")
            object.__setattr__(self, name, Fraction(value))
        for name in ("beta1", "beta2", "alpha_peak"):
            object.__setattr__(self, name, as_degree(getattr(self, name)))
        if not self.beta1 <= self.alpha_peak <= self.beta2:
            raise ValueError("need beta1 <= alpha_peak <= beta2")

    def raw(self, x) -> Fraction:
        x = Fraction(x)
        return self.k1 * (x - self.beta1) - self.k2 * (abs(x - self.alpha_peak) + x - self.alpha_peak)

    def mu(self, x) -> Fraction:
        x = Fraction(x)
        if not self.beta1 <= x <= self.beta2:
            return ZERO
        return min(ONE, max(ZERO, self.raw(x)))

    @classmethod
    def for_triangle(cls, beta1, peak, beta2) -> "ClosedFormTriangle":
        """Constants reproducing ``triangular(beta1, peak, beta2)``."""
        b1, p, b2 = as_degree(beta1), as_degree(peak), as_degree(beta2)
        if not b1 < p < b2:
            raise ValueError("closed form needs beta1 < peak < beta2")
        k1 = 1 / (p - b1)
        # falling slope k1 - 2*k2 must equal -1 / (beta2 - peak)
        k2 = (k1 + 1 / (b2 - p)) / 2
        return cls(k1, k2, b1, b2, p)


def from_closed_form(p: ClosedFormTriangle) -> FuzzyDegree:
    """Normalize the closed form to alpha-cuts, validating it is a triangle."""
    if p.beta1 == p.beta2:
        return FuzzyDegree.crisp(p.beta1)
    if p.k1 <= 0:
        raise ValueError(f"k1 must be positive, got {p.k1}")
    at_peak = p.raw(p.alpha_peak)
    if at_peak != 1:
        raise ValueError(f"closed form gives mu(peak) = {_show(at_peak)}, expected 1")
    at_left, at_right = p.raw(p.beta1), p.raw(p.beta2)
    if at_left != 0 or at_right != 0:
        raise ValueError(
            f"closed form gives mu(beta1) = {_show(at_left)}, "
            f"mu(beta2) = {_show(at_right)}, expected 0 at both"
        )
    return triangular(p.beta1, p.alpha_peak, p.beta2)


def _show(value: Fraction) -> str:
    # Diagnostics only: the value may fall outside [0, 1].
    return format_degree(value) if 0 <= value <= 1 else str(value)


# ---------------------------------------------------------------------------
# text syntax

_TRI_RE = re.compile(r"tri\s*\(([^()]*)\)")
_CUTS_RE = re.compile(r"cuts\s*\(([^()]*)\)")


def parse_value(text: str, fuzzy: bool = False) -> Value:
    """Parse a crisp degree or ``tri(b1, peak, b2)`` / ``cuts(l:lo:up, ...)``.

    With ``fuzzy=True`` plain degrees come back as crisp fuzzy degrees.
    """
    s = text.strip()
    m = _TRI_RE.fullmatch(s)
    if m:
        parts = [x.strip() for x in m.group(1).split(",")]
        if len(parts) != 3:
            raise FormulaSyntaxError(f"tri() takes three degrees: {text!r}")
        try:
            return triangular(*(parse_degree(x) for x in parts))
        except ValueError as exc:
            raise FormulaSyntaxError(str(exc)) from None
    m = _CUTS_RE.fullmatch(s)
    if m:
        cuts = []
        for item in m.group(1).split(","):
            fields = item.split(":")
            if len(fields) != 3:
                raise FormulaSyntaxError(f"cut must be level:lower:upper in {text!r}")
            cuts.append(tuple(parse_degree(x) for x in fields))
        try:
            return FuzzyDegree(tuple(cuts))
        except ValueError as exc:
            raise FormulaSyntaxError(str(exc)) from None
    value = parse_degree(s)
    return FuzzyDegree.crisp(value) if fuzzy else value


def format_fuzzy(fd: FuzzyDegree) -> str:
    if fd.is_crisp():
        return format_degree(fd.support[0])
    if fd.is_triangular():
        b1, b2 = fd.support
        return f"tri({format_degree(b1)}, {format_degree(fd.core[0])}, {format_degree(b2)})"
    body = ", ".join(f"{format_degree(l)}:{format_degree(lo)}:{format_degree(up)}" for l, lo, up in fd.cuts)
    return f"cuts({body})"


def format_value(value: Value) -> str:
    if isinstance(value, FuzzyDegree):
        return format_fuzzy(value)
    return format_degree(value)
