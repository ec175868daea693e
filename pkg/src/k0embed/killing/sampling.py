"""Seeded sample points in a subspace, shared by the pipeline and the verifier."""

from __future__ import annotations

import random
from typing import Sequence

from ..ratlin import combination

COEFF_RANGE = 3


def sample_points(basis: Sequence[Sequence], dim: int, seed: int, count: int) -> list[tuple]:
    """The basis itself followed by ``count`` seeded integer combinations.

    Combinations use coefficients in ``[-3, 3]``; an all-zero draw is
    replaced by a single basis vector so every combination is nonzero.
    """
    basis = [tuple(b) for b in basis]
    if not basis:
        return []
    rng = random.Random(seed)
    out = list(basis)
    for s in range(count):
        coeffs = [rng.randint(-COEFF_RANGE, COEFF_RANGE) for _ in basis]
        if not any(coeffs):
            coeffs[s % len(basis)] = 1
        out.append(combination(coeffs, basis, dim))
    return out
