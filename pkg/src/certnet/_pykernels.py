"""Pure-Python world-enumeration kernels.

Worlds are integer codes in enumeration order: bit ``n - 1 - i`` of the
code is set when attribute ``i`` is false.  Degrees arrive as integers
scaled by a common denominator ``top`` (the scaled value of 1).
"""


def chain_min(n_vars, positions, pos_start, tables, tab_start, top):
    """Per-world minimum over node tables.

    Node ``j`` reads the world bits at ``positions[pos_start[j]:pos_start[j+1]]``
    (its own bit first, then its parents') to form an index into
    ``tables[tab_start[j]:]``.
    """
    n_nodes = len(pos_start) - 1
    nodes = []
    for j in range(n_nodes):
        nodes.append((positions[pos_start[j]:pos_start[j + 1]], tab_start[j]))
    out = [0] * (1 << n_vars)
    for code in range(1 << n_vars):
        m = top
        for pos, base in nodes:
            idx = 0
            for p in pos:
                idx = (idx << 1) | ((code >> p) & 1)
            v = tables[base + idx]
            if v < m:
                m = v
        out[code] = m
    return out


def clause_recover(n_vars, pos_masks, neg_masks, weights, top):
    """Per world, ``top`` minus the largest weight of a violated clause.

    A clause is violated when none of its positive attributes is true and
    none of its negated attributes is false.
    """
    full = (1 << n_vars) - 1
    clauses = list(zip(pos_masks, neg_masks, weights))
    out = [0] * (1 << n_vars)
    for code in range(1 << n_vars):
        true_mask = ~code & full
        worst = 0
        for pm, nm, w in clauses:
            if w > worst and not (true_mask & pm) and not (code & nm):
                worst = w
        out[code] = top - worst
    return out
