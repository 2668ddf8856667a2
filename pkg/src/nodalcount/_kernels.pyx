# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitmask kernels for nodal-domain labeling (vertex counts <= 63)."""

import numpy as np

BACKEND = "compiled"

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _comps(u64* nbr, u64 active) nogil:
    cdef int count = 0
    cdef u64 rem = active, comp, frontier, nxt, f
    cdef int v
    while rem:
        count += 1
        comp = rem & (~rem + 1)
        frontier = comp
        while frontier:
            nxt = 0
            f = frontier
            while f:
                v = __builtin_ctzll(f)
                f &= f - 1
                nxt |= nbr[v]
            frontier = nxt & active & ~comp
            comp |= frontier
        rem &= ~comp
    return count


def mask_component_count(neighbor_masks, active):
    cdef u64 buf[64]
    cdef int V = len(neighbor_masks)
    if V > 63:
        raise ValueError("compiled kernel supports at most 63 vertices")
    cdef int i
    for i in range(V):
        buf[i] = neighbor_masks[i]
    return _comps(buf, <u64> active)


def equinodal_counts(neighbor_masks, int V):
    if V > 63:
        raise ValueError("compiled kernel supports at most 63 vertices")
    cdef u64 buf[64]
    cdef int i
    for i in range(V):
        buf[i] = neighbor_masks[i]
    out = np.empty(1 << V, dtype=np.uint8)
    cdef unsigned char[:] o = out
    cdef u64 full = (<u64> 1 << V) - 1
    cdef u64 half = <u64> 1 << (V - 1)
    cdef u64 m, mask
    cdef int nu
    with nogil:
        for m in range(half):
            mask = m << 1
            nu = _comps(buf, mask) + _comps(buf, full & ~mask)
            o[mask] = <unsigned char> nu
            o[full & ~mask] = <unsigned char> nu
    return out
