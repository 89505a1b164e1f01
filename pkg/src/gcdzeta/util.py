"""Small shared numerics helpers."""

from __future__ import annotations

import math

import numpy as np


def fsum_array(a) -> float:
    """Compensated (error-free transformation) sum of a 1-D array or iterable.

    math.fsum tracks all partial round-offs, so the result is the correctly
    rounded sum of the inputs regardless of ordering or cancellation.
    """
    if isinstance(a, np.ndarray):
        return math.fsum(a.reshape(-1).tolist())
    return math.fsum(a)


def blocked_pair_sum(term_block, n: int, block: int = 512) -> float:
    """Sum term_block(i0, i1) over row blocks [i0, i1) of range(n), compensating
    the reduction of per-block totals.

    term_block must return the float total of the rows it was given; blocks are
    visited in ascending order so the reduction is deterministic.
    """
    parts = []
    for i0 in range(0, n, block):
        parts.append(term_block(i0, min(i0 + block, n)))
    return math.fsum(parts)
