"""Brute-force recomputation of decidable claims on small instances.

Nothing here calls into ``ordgrp``, ``totalize``, ``killing`` or ``nccc``
logic; only ratlin arithmetic and the plain data classes are shared.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .ordgrp import DirectSum, FinGen, Lex, Tail
from .nccc import Cell, InconsistentInput, NcccDescriptor, ReductionResult, Split
from .ratlin import add, is_zero, rank, scale, solve_linear, vec
from .ratlin.lattice import zspan_contains


@dataclass(frozen=True)
class GridSpec:
    dim: int
    den_bound: int = 1
    coord_bound: int = 2
    seed: int = 0


def grid_points(spec: GridSpec) -> list[tuple]:
    """All points with coordinates ``p/q``, ``q <= den_bound``, ``|p/q| <= coord_bound``."""
    values = sorted(
        {Fraction(p, q) for q in range(1, spec.den_bound + 1) for p in range(-spec.coord_bound * q, spec.coord_bound * q + 1)}
    )
    return [tuple(p) for p in itertools.product(values, repeat=spec.dim)]


def sample_grid(spec: GridSpec, count: int) -> list[tuple]:
    pts = grid_points(spec)
    rng = random.Random(spec.seed)
    return pts if count >= len(pts) else rng.sample(pts, count)


def _fingen_member(gens: Sequence[tuple], x: tuple) -> bool:
    # Caratheodory: x is a nonnegative combination of some independent subset.
    if is_zero(x):
        return True
    n = len(x)
    for size in range(1, min(n, len(gens)) + 1):
        for subset in itertools.combinations(gens, size):
            if rank(list(subset)) < size:
                continue
            cols = [tuple(g[i] for g in subset) for i in range(n)]
            coeffs = solve_linear(cols, x)
            if coeffs is not None and all(c >= 0 for c in coeffs):
                return True
    return False


def _lex_member(functionals: Sequence[tuple], tail: Tail, x: tuple) -> bool:
    for f in functionals:
        v = sum(a * b for a, b in zip(f, x))
        if v > 0:
            return True
        if v < 0:
            return False
    return tail is Tail.ALL_OF_KERNEL or is_zero(x)


def brute_member(cone, x: Sequence) -> bool:
    x = vec(x)
    if isinstance(cone, FinGen):
        return _fingen_member(cone.generators, x)
    if isinstance(cone, Lex):
        return _lex_member(cone.functionals, cone.tail, x)
    if isinstance(cone, DirectSum):
        k = 0
        for part in cone.parts:
            if not brute_member(part, x[k : k + part.dim]):
                return False
            k += part.dim
        return True
    raise TypeError(f"unknown cone {cone!r}")


def brute_membership(cone, points: Sequence[Sequence]) -> dict:
    return {tuple(vec(p)): brute_member(cone, p) for p in points}


def brute_phi(
    positive_generators: Sequence[Sequence],
    neg_generators: Sequence[Sequence],
    x: Sequence,
    k_max: int = 25,
    coeff_bound: int = 3,
) -> Optional[int]:
    """Bounded search for ``a + k x >= 0`` with ``a`` in the neg net.

    Returns 0 for ``x = 0``, +1 or -1 when a witness is found for ``x`` or
    ``-x``, and None when both searches come back empty (inconclusive).
    """
    x = vec(x)
    if is_zero(x):
        return 0
    gens = [vec(g) for g in positive_generators]
    negs = [vec(g) for g in neg_generators]
    net = []
    for coeffs in itertools.product(range(coeff_bound + 1), repeat=len(negs)):
        a = tuple([Fraction(0)] * len(x))
        for c, g in zip(coeffs, negs):
            if c:
                a = add(a, scale(c, g))
        net.append(a)

    def reach(v):
        return any(_fingen_member(gens, add(a, scale(k, v))) for k in range(1, k_max + 1) for a in net)

    up = reach(x)
    down = reach(tuple(-t for t in x))
    if up and down:
        raise AssertionError(f"bounded search finds both signs for {x}")
    if up:
        return 1
    if down:
        return -1
    return None


def brute_infinitesimal(cone, unit: Sequence, x: Sequence, n_max: int = 50) -> bool:
    """``u + n x`` in the cone for every integer ``|n| <= n_max``."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    u, x = vec(unit), vec(x)
    return all(brute_member(cone, add(u, scale(n, x))) for n in range(-n_max, n_max + 1))


# --------------------------------------------------------------------------
# rank-calculus reduction, literal re-implementation


def _brute_gamma(blocks, cells, s_rows, box):
    b = len(blocks)
    tail = [0] * len(cells)
    support = set()
    if s_rows:
        for a in itertools.product(range(box + 1), repeat=b):
            if any(a) and zspan_contains(s_rows, list(a) + tail):
                support |= {t + 1 for t in range(b) if a[t]}
    return tuple(sorted(support))


def brute_reduce(desc: NcccDescriptor, s_gens: Optional[Sequence[Sequence[int]]], y: Sequence[int], box: int = 6) -> ReductionResult:
    blocks = list(desc.f0_blocks)
    cells = [(c.n, c.r, list(c.mult)) for c in desc.cells]
    width = len(blocks) + len(cells)
    y = [int(v) for v in y]
    if len(y) != width or min(y, default=0) < 0:
        raise ValueError("brute_reduce needs an almost positive vector of the right length")
    if s_gens is None:
        s = []
        for start in range(width):
            if start >= len(blocks) and cells[start - len(blocks)][0] != 0:
                continue
            v = [0] * width
            v[start] = 1
            for i, (_, _, m) in enumerate(cells):
                pos = len(blocks) + i
                if pos > start:
                    v[pos] = sum(mm * vv for mm, vv in zip(m, v))
            s.append(v)
    else:
        s = [list(map(int, g)) for g in s_gens]
    alive = list(range(width))  # original coordinates still present
    cur_y = list(y)
    trace = []
    while True:
        b = len(blocks)
        if not cells:
            split = Split(tuple(range(1, b + 1)), (), NcccDescriptor(()))
            break
        if cur_y[-1] > 0:
            trace.append(("Case1", len(cells)))
            cells.pop()
            drop = len(cur_y) - 1
        elif all(v == 0 for v in cur_y):
            trace.append(("Case2", 0))
            split = Split((), tuple(range(1, b + 1)), NcccDescriptor(tuple(blocks), tuple(Cell(n, r, tuple(m)) for n, r, m in cells)))
            break
        else:
            positive_cells = [i + 1 for i in range(len(cells)) if cur_y[b + i] > 0]
            if not positive_cells:
                support = _brute_gamma(blocks, cells, s, box)
                keep = [t for t in range(1, b + 1) if t not in support]
                for n, r, m in cells:
                    if any(m[t - 1] for t in support):
                        raise InconsistentInput("cell attached to a Gamma block")
                bcells = tuple(Cell(n, r, tuple(m[t - 1] for t in keep) + tuple(m[b:])) for n, r, m in cells)
                bs = [[g[t - 1] for t in keep] + g[b:] for g in s]
                if _brute_gamma([blocks[t - 1] for t in keep], cells, bs, box):
                    raise InconsistentInput("remaining Gamma is nonzero")
                trace.append(("Case3", len(support)))
                split = Split(support, tuple(keep), NcccDescriptor(tuple(blocks[t - 1] for t in keep), bcells))
                break
            j = positive_cells[-1]
            trace.append(("Case4", j))
            pos = b + j - 1
            n_j, _, m_j = cells[j - 1]
            new_cells = cells[: j - 1]
            for n, r, m in cells[j:]:
                if m[pos] and n_j == 0:
                    raise InconsistentInput("no boundary to reroute through")
                new_cells.append((n, r, [m[t] + m[pos] * m_j[t] for t in range(pos)] + m[pos + 1 :]))
            cells = new_cells
            drop = pos
        del alive[drop]
        del cur_y[drop]
        for g in s:
            del g[drop]
    rank_map = tuple(tuple(1 if c == a else 0 for c in range(width)) for a in alive)
    reduced = NcccDescriptor(tuple(blocks), tuple(Cell(n, r, tuple(m)) for n, r, m in cells))
    image = tuple(y[a] for a in alive)
    return ReductionResult(reduced, rank_map, image, tuple(trace), split, tuple(tuple(g) for g in s))
