"""Kernel selection and exact scaling of rational degrees to integers.

The compiled kernels are used when the extension imported and every scaled
degree fits in a signed 64-bit integer; otherwise the pure-Python kernels
run on unbounded ints.  Set ``CERTNET_KERNELS=python`` to force the
fallback.
"""

from __future__ import annotations

import contextlib
import math
import os
from fractions import Fraction

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_INT64_MAX = (1 << 63) - 1

if _ckernels is not None and os.environ.get("CERTNET_KERNELS", "").lower() != "python":
    BACKEND = "cython"
else:
    BACKEND = "python"


def available_backends() -> list:
    return ["python"] + (["cython"] if _ckernels is not None else [])


@contextlib.contextmanager
def use_backend(name: str):
    """Temporarily switch kernels (tests and benchmarks)."""
    global BACKEND
    if name not in available_backends():
        raise ValueError(f"backend {name!r} is not available")
    previous, BACKEND = BACKEND, name
    try:
        yield
    finally:
        BACKEND = previous


def _module(top: int):
    if BACKEND == "cython" and top <= _INT64_MAX:
        return _ckernels
    return _pykernels


def common_scale(values) -> int:
    """Least common denominator of ``values`` (the scaled value of 1)."""
    top = 1
    for v in values:
        top = math.lcm(top, Fraction(v).denominator)
    return top


def _scaled(value: Fraction, top: int) -> int:
    return value.numerator * (top // value.denominator)


def chain_min(n_vars: int, nodes) -> list:
    """Joint minimum per world code.

    ``nodes`` is a list of ``(bit_positions, table)`` where ``table`` lists
    Fractions indexed by the bits read at ``bit_positions``.
    """
    top = common_scale(v for _, table in nodes for v in table)
    positions, pos_start, tables, tab_start = [], [0], [], [0]
    for bits, table in nodes:
        if len(table) != 1 << len(bits):
            raise ValueError("table size does not match the number of index bits")
        positions.extend(bits)
        pos_start.append(len(positions))
        tables.extend(_scaled(Fraction(v), top) for v in table)
        tab_start.append(len(tables))
    raw = _module(top).chain_min(n_vars, positions, pos_start, tables, tab_start, top)
    return _unscale(raw, top)


def clause_recover(n_vars: int, clauses) -> list:
    """Clause-based recovery per world code.

    ``clauses`` lists ``(pos_mask, neg_mask, weight)`` triples.
    """
    top = common_scale(w for _, _, w in clauses)
    pos_masks = [c[0] for c in clauses]
    neg_masks = [c[1] for c in clauses]
    weights = [_scaled(Fraction(c[2]), top) for c in clauses]
    raw = _module(top).clause_recover(n_vars, pos_masks, neg_masks, weights, top)
    return _unscale(raw, top)


def _unscale(raw, top):
    cache = {}
    out = []
    for v in raw:
        f = cache.get(v)
        if f is None:
            f = cache[v] = Fraction(v, top)
        out.append(f)
    return out
