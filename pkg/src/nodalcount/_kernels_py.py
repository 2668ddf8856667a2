"""Pure-Python bitmask kernels; twin of the compiled module in _kernels.pyx."""

import numpy as np

BACKEND = "python"


def mask_component_count(neighbor_masks, active):
    """Number of connected components of the subgraph induced on `active`.

    neighbor_masks[v] holds the neighbor bitmask of vertex v; `active` is a
    bitmask of the vertices kept. Works for any vertex count (Python ints).
    """
    count = 0
    rem = active
    while rem:
        count += 1
        comp = rem & -rem
        frontier = comp
        while frontier:
            nxt = 0
            f = frontier
            while f:
                v = (f & -f).bit_length() - 1
                f &= f - 1
                nxt |= neighbor_masks[v]
            frontier = nxt & active & ~comp
            comp |= frontier
        rem &= ~comp
    return count


def equinodal_counts(neighbor_masks, V):
    """Strong nodal count of every sign pattern on V vertices.

    Entry m of the returned uint8 array is the count for the pattern whose
    positive set is the bitmask m. Uses the global sign-flip symmetry
    (count(m) == count(~m)) to halve the sweep.
    """
    full = (1 << V) - 1
    out = np.empty(1 << V, dtype=np.uint8)
    nbr = list(neighbor_masks)
    for m in range(1 << (V - 1)) if V > 0 else []:
        mask = m << 1  # bit 0 clear -> enumerate one of each complement pair
        nu = (mask_component_count(nbr, mask)
              + mask_component_count(nbr, full & ~mask))
        out[mask] = nu
        out[full & ~mask] = nu
    return out
