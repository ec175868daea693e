"""Rank calculus on non-commutative cell complexes.

A descriptor lists the matrix block sizes ``d_1..d_b`` of the base algebra
and an ordered list of cells. Cell ``i`` has a dimension ``n``, a fiber size
``r`` and a multiplicity vector over every earlier coordinate (the blocks,
then cells ``1..i-1``) describing the rank action of its boundary map.

Rank vectors have one entry per block followed by one per cell. Cells and
blocks are numbered from 1 in every public result, matching the usual
indexing of cells by stage.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .ratlin import Feasible, LinConstraint, lp, primitive
from .ratlin.lattice import integer_left_kernel, zspan_contains


class InconsistentInput(ValueError):
    """Input that a genuine cell complex cannot produce."""


@dataclass(frozen=True)
class Cell:
    n: int
    r: int
    mult: tuple

    def __post_init__(self):
        object.__setattr__(self, "mult", tuple(int(m) for m in self.mult))
        if self.n < 0 or self.r < 1:
            raise ValueError("cell needs n >= 0 and r >= 1")
        if any(m < 0 for m in self.mult):
            raise ValueError("multiplicities must be nonnegative")


@dataclass(frozen=True)
class NcccDescriptor:
    f0_blocks: tuple
    cells: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "f0_blocks", tuple(int(d) for d in self.f0_blocks))
        cells = tuple(c if isinstance(c, Cell) else Cell(*c) for c in self.cells)
        object.__setattr__(self, "cells", cells)
        if any(d < 1 for d in self.f0_blocks):
            raise ValueError("block sizes must be positive")

    @property
    def b(self) -> int:
        return len(self.f0_blocks)

    @property
    def length(self) -> int:
        return len(self.cells)

    @property
    def width(self) -> int:
        return self.b + self.length

    def sizes(self) -> tuple:
        return self.f0_blocks + tuple(c.r for c in self.cells)


@dataclass(frozen=True)
class Diagnostic:
    cell: int  # 1-based
    message: str
    residual: int = 0


def validate(desc: NcccDescriptor) -> list[Diagnostic]:
    """Unitality and index checks; an empty list means the descriptor is valid."""
    out = []
    sizes = desc.sizes()
    for i, c in enumerate(desc.cells):
        expected = desc.b + i
        if len(c.mult) != expected:
            out.append(Diagnostic(i + 1, f"multiplicity vector has length {len(c.mult)}, expected {expected}"))
            continue
        if c.n == 0:
            continue
        mass = sum(m * s for m, s in zip(c.mult, sizes))
        if mass != c.r:
            out.append(Diagnostic(i + 1, f"mass balance: sum mult*size = {mass} but r = {c.r}", c.r - mass))
    return out


@dataclass(frozen=True)
class RankClass:
    y: tuple
    s_membership: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "y", tuple(int(v) for v in self.y))
        if self.s_membership is not None:
            object.__setattr__(self, "s_membership", tuple(int(v) for v in self.s_membership))

    def witness_holds(self, s_gens: Sequence[Sequence[int]]) -> bool:
        if self.s_membership is None:
            return True
        if len(self.s_membership) != len(s_gens):
            return False
        total = [0] * len(self.y)
        for c, g in zip(self.s_membership, s_gens):
            for t, v in enumerate(g):
                total[t] += c * v
        return tuple(total) == self.y


def _vec(y) -> tuple:
    return y.y if isinstance(y, RankClass) else tuple(int(v) for v in y)


def almost_positive(y) -> bool:
    """Rank difference nonnegative everywhere.

    Modeling assumption: positivity is decided on ranks alone, not on
    representative projections.
    """
    return all(v >= 0 for v in _vec(y))


def w_set(y, b: int) -> frozenset:
    """Cells (1-based) where the rank difference is positive."""
    yv = _vec(y)
    return frozenset(i + 1 for i, v in enumerate(yv[b:]) if v > 0)


def _drop_matrix(width: int, coord: int) -> tuple:
    return tuple(tuple(1 if c == (r if r < coord else r + 1) else 0 for c in range(width)) for r in range(width - 1))


def _apply(m: tuple, y: Sequence[int]) -> tuple:
    return tuple(sum(a * v for a, v in zip(row, y)) for row in m)


def _compose(a: tuple, b: tuple) -> tuple:
    cols = list(zip(*b)) if b else []
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def delete_cell(desc: NcccDescriptor, j: int) -> tuple[NcccDescriptor, tuple]:
    """Remove cell ``j`` (1-based), rerouting later multiplicities through it."""
    if not 1 <= j <= desc.length:
        raise IndexError(f"cell {j} out of range 1..{desc.length}")
    k = desc.b + j - 1
    victim = desc.cells[j - 1]
    cells = list(desc.cells[: j - 1])
    for c in desc.cells[j:]:
        through = c.mult[k]
        if through and victim.n == 0:
            raise InconsistentInput(f"cell {j} has no boundary to reroute through but a later cell attaches to it")
        head = tuple(m + through * v for m, v in zip(c.mult[:k], victim.mult))
        cells.append(Cell(c.n, c.r, head + c.mult[k + 1 :]))
    return NcccDescriptor(desc.f0_blocks, tuple(cells)), _drop_matrix(desc.width, k)


def default_s(desc: NcccDescriptor) -> list[tuple]:
    """Rank vectors of the unit projections of the blocks (and of point
    cells), propagated through the multiplicities."""
    gens = []
    seeds = [desc.b + i for i, c in enumerate(desc.cells) if c.n == 0]
    for start in list(range(desc.b)) + seeds:
        v = [0] * desc.width
        v[start] = 1
        for i, c in enumerate(desc.cells):
            coord = desc.b + i
            if coord > start and len(c.mult) == coord:
                v[coord] = sum(m * x for m, x in zip(c.mult, v[:coord]))
        gens.append(tuple(v))
    return gens


@dataclass(frozen=True)
class GammaSplit:
    f1: tuple  # 1-based block indices in the support of Gamma
    b_blocks: tuple  # 1-based block indices kept in B
    b_descriptor: NcccDescriptor
    gamma: tuple  # integer generator of Gamma with full support


def _block_lattice(desc: NcccDescriptor, s_gens: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis data for ``{a : (a, 0, ..., 0) in span_Z(S)}`` as vectors in Z^b."""
    if not s_gens:
        return []
    b = desc.b
    cell_cols = [list(g[b:]) for g in s_gens]
    if desc.length:
        kernel = integer_left_kernel(cell_cols, desc.length)
    else:
        kernel = [[1 if i == j else 0 for j in range(len(s_gens))] for i in range(len(s_gens))]
    out = []
    for c in kernel:
        v = [sum(ci * g[t] for ci, g in zip(c, s_gens)) for t in range(b)]
        if any(v):
            out.append(v)
    return out


def gamma_support(desc: NcccDescriptor, s_gens: Sequence[Sequence[int]]) -> tuple[tuple, tuple]:
    """``(support, generator)`` of the nonnegative part of the block lattice.

    For each block an LP asks for a nonnegative rational point of the
    lattice's span positive on that block; a positive multiple of it is a
    lattice point, and the generator is the sum of those witnesses.
    """
    b = desc.b
    lattice = _block_lattice(desc, s_gens)
    gamma = [0] * b
    support = []
    if not lattice:
        return (), tuple(gamma)
    k = len(lattice)
    for t in range(b):
        if gamma[t] > 0:
            support.append(t + 1)
            continue
        cons = [LinConstraint.ge([Fraction(v[s]) for v in lattice]) for s in range(b)]
        cons.append(LinConstraint.eq([Fraction(v[t]) for v in lattice], 1))
        out = lp(None, cons, dim=k)
        if not isinstance(out, Feasible):
            continue
        p = primitive([sum(c * v[s] for c, v in zip(out.point, lattice)) for s in range(b)])
        point = [int(x) for x in p]
        mult = 1
        while not zspan_contains(lattice, [mult * x for x in point]):
            mult += 1
        gamma = [g + mult * x for g, x in zip(gamma, point)]
        support.append(t + 1)
    return tuple(support), tuple(gamma)


def _restrict_blocks(desc: NcccDescriptor, keep: Sequence[int]) -> NcccDescriptor:
    """Keep the listed 1-based blocks, dropping the others from every cell."""
    drop = [t for t in range(desc.b) if t + 1 not in keep]
    cells = []
    for c in desc.cells:
        if any(c.mult[t] for t in drop):
            raise InconsistentInput("a cell attaches to a block in the support of Gamma")
        cells.append(Cell(c.n, c.r, tuple(m for t, m in enumerate(c.mult) if t not in drop)))
    return NcccDescriptor(tuple(desc.f0_blocks[t - 1] for t in keep), tuple(cells))


def _restrict_s(desc: NcccDescriptor, s_gens, keep: Sequence[int]) -> list[tuple]:
    cols = [t - 1 for t in keep] + list(range(desc.b, desc.width))
    return [tuple(g[c] for c in cols) for g in s_gens]


def gamma_split(desc: NcccDescriptor, s_gens: Sequence[Sequence[int]]) -> GammaSplit:
    """Split off the blocks carrying positive pure-block elements of ``S``."""
    if desc.length == 0:
        raise ValueError("gamma_split needs at least one cell")
    support, gamma = gamma_support(desc, s_gens)
    keep = tuple(t for t in range(1, desc.b + 1) if t not in support)
    bdesc = _restrict_blocks(desc, keep)
    again, _ = gamma_support(bdesc, _restrict_s(desc, s_gens, keep))
    if again:
        raise InconsistentInput(f"Gamma of the remaining part is nonzero on blocks {again}")
    return GammaSplit(support, keep, bdesc, gamma)


class Case(str, Enum):
    DROP_LAST = "Case1"
    ALL_ZERO = "Case2"
    GAMMA = "Case3"
    DELETE_MAX_W = "Case4"


@dataclass(frozen=True)
class Split:
    f1: tuple
    b_blocks: tuple
    b_descriptor: NcccDescriptor
    # Any full-support element of Gamma will do; excluded from equality.
    gamma: tuple = field(default=(), compare=False)


@dataclass(frozen=True)
class ReductionResult:
    reduced: NcccDescriptor
    rank_map: tuple
    image_y: tuple
    case_trace: tuple
    split: Optional[Split]
    s_gens: tuple = field(default=(), compare=False)


def reduce(desc: NcccDescriptor, s_gens: Optional[Sequence[Sequence[int]]], y) -> ReductionResult:
    """Recursive case analysis on (cells, W); one cell removed per step."""
    y0 = _vec(y)
    if len(y0) != desc.width:
        raise ValueError(f"rank vector has length {len(y0)}, expected {desc.width}")
    if not almost_positive(y0):
        raise ValueError("reduce needs an almost positive rank vector")
    bad = validate(desc)
    if bad:
        raise ValueError(f"invalid descriptor: {bad[0].message}")
    s = [tuple(int(v) for v in g) for g in (default_s(desc) if s_gens is None else s_gens)]
    rank_map = tuple(tuple(1 if r == c else 0 for c in range(desc.width)) for r in range(desc.width))
    cur, yv, trace = desc, y0, []
    split = None
    while True:
        if cur.length == 0:
            split = Split(tuple(range(1, cur.b + 1)), (), NcccDescriptor(()))
            break
        if yv[-1] > 0:
            trace.append((Case.DROP_LAST.value, cur.length))
            step = _drop_matrix(cur.width, cur.width - 1)
            cur = NcccDescriptor(cur.f0_blocks, cur.cells[:-1])
        elif not any(yv):
            trace.append((Case.ALL_ZERO.value, 0))
            split = Split((), tuple(range(1, cur.b + 1)), cur)
            break
        else:
            w = w_set(yv, cur.b)
            if not w:
                g = gamma_split(cur, s)
                trace.append((Case.GAMMA.value, len(g.f1)))
                split = Split(g.f1, g.b_blocks, g.b_descriptor, g.gamma)
                break
            j = max(w)
            trace.append((Case.DELETE_MAX_W.value, j))
            cur, step = delete_cell(cur, j)
        rank_map = _compose(step, rank_map)
        yv = _apply(step, yv)
        s = [_apply(step, g) for g in s]
    return ReductionResult(cur, rank_map, _apply(rank_map, y0), tuple(trace), split, tuple(s))


class Verdict(str, Enum):
    POSITIVE = "PositiveAfterStabilization"
    INFINITESIMAL = "InfinitesimalPart"
    NOT_ALMOST_POSITIVE = "NotAlmostPositive"
    MIXED = "MixedSingular"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    witness: tuple = ()
    result: Optional[ReductionResult] = None
    annotation: dict = field(default_factory=dict, compare=False)


def rank_threshold(desc: NcccDescriptor) -> Fraction:
    """``(dim - 1) / 2`` with ``dim`` the largest cell dimension."""
    dim = max((c.n for c in desc.cells), default=0)
    return Fraction(dim - 1, 2)


def classify(desc: NcccDescriptor, s_gens: Optional[Sequence[Sequence[int]]], y) -> Classification:
    yv = _vec(y)
    negative = [t + 1 for t, v in enumerate(yv) if v < 0]
    if negative:
        positive = [t + 1 for t, v in enumerate(yv) if v > 0]
        return Classification(Verdict.NOT_ALMOST_POSITIVE, (negative[0], positive[0] if positive else 0))
    res = reduce(desc, s_gens, yv)
    thr = rank_threshold(desc)
    note = {
        "dimension": max((c.n for c in desc.cells), default=0),
        "threshold": thr,
        "above_threshold": bool(res.image_y) and all(v > thr for v in res.image_y),
    }
    if res.image_y and all(v > 0 for v in res.image_y):
        return Classification(Verdict.POSITIVE, (), res, note)
    sp = res.split
    cur = res.reduced
    bcoords = [t - 1 for t in sp.b_blocks] + list(range(cur.b, cur.width))
    nonzero_b = tuple(c + 1 for c in bcoords if res.image_y[c] != 0)
    if nonzero_b:
        return Classification(Verdict.MIXED, nonzero_b, res, note)
    return Classification(Verdict.INFINITESIMAL, sp.f1, res, note)


@dataclass(frozen=True)
class Census:
    descriptors: int
    rank_maps: int
    bound: int


def finiteness_census(desc: NcccDescriptor, ys: Sequence, s_gens: Optional[Sequence[Sequence[int]]] = None) -> Census:
    seen_desc, seen_maps = set(), set()
    for y in ys:
        res = reduce(desc, s_gens, y)
        seen_desc.add((res.reduced, res.split))
        seen_maps.add(res.rank_map)
    bound = 2 ** (desc.length + 1)
    if len(seen_desc) > bound or len(seen_maps) > bound:
        raise AssertionError(f"census exceeds 2^(l+1) = {bound}")
    return Census(len(seen_desc), len(seen_maps), bound)
