# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled world-enumeration kernels; see ``_pykernels`` for the contract."""

from cpython cimport array
import array


def chain_min(int n_vars, positions, pos_start, tables, tab_start, long long top):
    cdef long long[:] pos = array.array("q", positions)
    cdef long long[:] pstart = array.array("q", pos_start)
    cdef long long[:] tab = array.array("q", tables)
    cdef long long[:] tstart = array.array("q", tab_start)
    cdef Py_ssize_t n_worlds = (<Py_ssize_t>1) << n_vars
    cdef Py_ssize_t n_nodes = pstart.shape[0] - 1
    cdef array.array result = array.array("q", [0]) * n_worlds
    cdef long long[:] out = result
    cdef Py_ssize_t code, j, k
    cdef long long m, v, idx
    for code in range(n_worlds):
        m = top
        for j in range(n_nodes):
            idx = 0
            for k in range(pstart[j], pstart[j + 1]):
                idx = (idx << 1) | ((code >> pos[k]) & 1)
            v = tab[tstart[j] + idx]
            if v < m:
                m = v
        out[code] = m
    return result


def clause_recover(int n_vars, pos_masks, neg_masks, weights, long long top):
    cdef long long[:] pm = array.array("q", pos_masks)
    cdef long long[:] nm = array.array("q", neg_masks)
    cdef long long[:] w = array.array("q", weights)
    cdef Py_ssize_t n_worlds = (<Py_ssize_t>1) << n_vars
    cdef Py_ssize_t n_clauses = pm.shape[0]
    cdef long long full = (<long long>1 << n_vars) - 1
    cdef array.array result = array.array("q", [0]) * n_worlds
    cdef long long[:] out = result
    cdef Py_ssize_t code, i
    cdef long long true_mask, worst
    for code in range(n_worlds):
        true_mask = ~code & full
        worst = 0
        for i in range(n_clauses):
            if w[i] > worst and (true_mask & pm[i]) == 0 and (code & nm[i]) == 0:
                worst = w[i]
        out[code] = top - worst
    return result
