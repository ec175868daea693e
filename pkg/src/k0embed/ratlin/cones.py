"""Polyhedral cones in both descriptions, via the double description method."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .linalg import (
    ZERO,
    Vec,
    add,
    dot,
    is_zero,
    kernel_basis,
    neg,
    primitive,
    rank,
    row_basis,
    scale,
    sub,
    vec,
)


def _combine(p: Vec, n: Vec, ap, an) -> Vec:
    # ap > 0 > an; the result lies on the hyperplane a.x = 0.
    return primitive(sub(scale(ap, n), scale(an, p)))


def double_description(dim: int, inequalities: Sequence[Sequence], equalities: Sequence[Sequence] = ()):
    """Extreme rays and lineality of ``{x : a.x >= 0, e.x = 0}``.

    Returns ``(rays, lineality)``: rays as sorted primitive integer vectors,
    lineality as a canonical (RREF) basis.
    """
    eqs = [vec(e) for e in equalities if not is_zero(e)]
    sub_basis = kernel_basis(eqs, dim) if eqs else [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    sub_basis = [vec(b) for b in sub_basis]
    k = len(sub_basis)
    cons = []
    for a in inequalities:
        a = vec(a)
        row = tuple(dot(a, b) for b in sub_basis)
        if not is_zero(row):
            cons.append(row)

    lin: list[Vec] = [tuple(1 if i == j else 0 for j in range(k)) for i in range(k)]
    lin = [vec(v) for v in lin]
    rays: list[tuple[Vec, frozenset]] = []
    for idx, a in enumerate(cons):
        vals = [dot(a, l) for l in lin]
        pick = next((i for i, v in enumerate(vals) if v != 0), None)
        if pick is not None:
            l0 = lin[pick] if vals[pick] > 0 else neg(lin[pick])
            a0 = abs(vals[pick])
            new_lin = []
            for i, l in enumerate(lin):
                if i == pick:
                    continue
                v = vals[i]
                new_lin.append(sub(l, scale(v / a0, l0)) if v else l)
            new_rays = []
            for r, tight in rays:
                v = dot(a, r)
                r2 = primitive(sub(r, scale(v / a0, l0))) if v else r
                new_rays.append((r2, tight | {idx}))
            new_rays.append((primitive(l0), frozenset(range(idx))))
            lin, rays = new_lin, new_rays
            continue
        pos, zer, negs = [], [], []
        for r, tight in rays:
            v = dot(a, r)
            if v > 0:
                pos.append((r, tight, v))
            elif v < 0:
                negs.append((r, tight, v))
            else:
                zer.append((r, tight | {idx}))
        new_rays = [(r, t) for r, t, _ in pos] + zer
        if pos and negs:
            need = k - len(lin) - 2
            everyone = [t for _, t in rays]
            for p, tp, vp in pos:
                for q, tq, vq in negs:
                    common = tp & tq
                    if len(common) < need:
                        continue
                    adjacent = True
                    for t in everyone:
                        if t is not tp and t is not tq and common <= t:
                            adjacent = False
                            break
                    if adjacent:
                        new_rays.append((_combine(p, q, vp, vq), common | {idx}))
        rays = new_rays

    def lift(y: Vec) -> Vec:
        out = [ZERO] * dim
        for c, b in zip(y, sub_basis):
            if c:
                for j, x in enumerate(b):
                    if x:
                        out[j] += c * x
        return tuple(out)

    out_rays = sorted({primitive(lift(r)) for r, _ in rays})
    out_lin = row_basis([lift(l) for l in lin], dim) if lin else ()
    return tuple(out_rays), tuple(out_lin)


@dataclass(frozen=True)
class PolyCone:
    """A polyhedral cone carrying both descriptions.

    ``rays`` and ``lineality`` generate the cone (lineality in both signs);
    ``inequalities`` (facet normals, ``a.x >= 0``) and ``equalities``
    (``e.x = 0``) cut it out. Both are canonical, so equal cones compare
    equal.
    """

    dim: int
    rays: tuple
    lineality: tuple
    inequalities: tuple
    equalities: tuple

    @classmethod
    def from_generators(cls, dim: int, generators: Sequence[Sequence]) -> "PolyCone":
        gens = [vec(g) for g in generators if not is_zero(g)]
        for g in gens:
            if len(g) != dim:
                raise ValueError("generator dimension mismatch")
        ineqs, eqs = double_description(dim, gens)
        rays, lin = double_description(dim, ineqs, eqs)
        return cls(dim, rays, lin, ineqs, eqs)

    @classmethod
    def from_inequalities(cls, dim: int, inequalities: Sequence[Sequence], equalities: Sequence[Sequence] = ()) -> "PolyCone":
        rays, lin = double_description(dim, inequalities, equalities)
        gens = list(rays) + list(lin) + [neg(l) for l in lin]
        return cls.from_generators(dim, gens)

    @property
    def generators(self) -> tuple:
        return tuple(self.rays) + tuple(self.lineality) + tuple(neg(l) for l in self.lineality)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def is_zero(self) -> bool:
        return not self.rays and not self.lineality

    @cached_property
    def span_dim(self) -> int:
        return self.dim - len(self.equalities)

    @cached_property
    def positive_functional(self):
        """A functional strictly positive on the cone minus the origin
        (sum of facet normals); None for the zero cone or a non-pointed cone."""
        if self.is_zero or not self.is_pointed:
            return None
        total = tuple([ZERO] * self.dim)
        for a in self.inequalities:
            total = add(total, a)
        return total

    def contains(self, x: Sequence) -> bool:
        x = vec(x)
        if len(x) != self.dim:
            raise ValueError(f"dimension mismatch: {len(x)} vs {self.dim}")
        return all(dot(e, x) == 0 for e in self.equalities) and all(dot(a, x) >= 0 for a in self.inequalities)

    def negated(self) -> "PolyCone":
        return PolyCone(
            self.dim,
            tuple(sorted(neg(r) for r in self.rays)),
            self.lineality,
            tuple(sorted(neg(a) for a in self.inequalities)),
            self.equalities,
        )


def project_cone(cone: PolyCone, keep: Sequence[int]) -> PolyCone:
    """Image of ``cone`` under the coordinate projection onto ``keep``.

    Projects the generators and re-derives a canonical irredundant
    description of the image.
    """
    keep = list(keep)
    gens = [tuple(g[i] for i in keep) for g in cone.generators]
    return PolyCone.from_generators(len(keep), gens)


def cone_rank(generators: Sequence[Sequence]) -> int:
    return rank([vec(g) for g in generators]) if generators else 0
