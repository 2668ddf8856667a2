"""Kernel selection: compiled extension when built, pure Python otherwise."""

from . import _kernels_py

try:
    from . import _kernels as _impl
except ImportError:  # extension not built
    _impl = _kernels_py

BACKEND = _impl.BACKEND


def mask_component_count(neighbor_masks, active):
    if BACKEND == "compiled" and len(neighbor_masks) > 63:
        return _kernels_py.mask_component_count(neighbor_masks, active)
    return _impl.mask_component_count(neighbor_masks, active)


def equinodal_counts(neighbor_masks, V):
    if BACKEND == "compiled" and V > 63:
        return _kernels_py.equinodal_counts(neighbor_masks, V)
    return _impl.equinodal_counts(neighbor_masks, V)


def python_equinodal_counts(neighbor_masks, V):
    """Always-pure variant, kept callable for kernel benchmarking."""
    return _kernels_py.equinodal_counts(neighbor_masks, V)
