"""Driven collective-spin dynamics across the quantum phase transition."""

try:
    from ._lmgdyn import (
        cgc_invert,
        cgc_x,
        evolve,
        fit_couplings,
        min_gap,
        spectrum,
        total_variation,
    )
except ImportError:  # build-tree layout: extension sits on sys.path directly
    from _lmgdyn import (
        cgc_invert,
        cgc_x,
        evolve,
        fit_couplings,
        min_gap,
        spectrum,
        total_variation,
    )

__all__ = [
    "cgc_invert",
    "cgc_x",
    "evolve",
    "fit_couplings",
    "min_gap",
    "spectrum",
    "total_variation",
]
