"""Integer lattices: Hermite normal form, membership, kernels, saturation."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from .linalg import Vec, is_zero, kernel_basis, row_basis, vec


def common_denominator(vectors: Sequence[Sequence]) -> int:
    dens = [x.denominator for v in vectors for x in vec(v)]
    return lcm(*dens) if dens else 1


def to_integer_rows(vectors: Sequence[Sequence], den: int) -> list[list[int]]:
    out = []
    for v in vectors:
        row = []
        for x in vec(v):
            y = x * den
            if y.denominator != 1:
                raise ValueError("vector not integral after scaling")
            row.append(int(y))
        out.append(row)
    return out


def hermite_rows(rows: Sequence[Sequence[int]], ncols: int) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form with the unimodular transform.

    Returns ``(h, u)`` with ``u @ rows == h``; the nonzero rows of ``h`` come
    first, are in echelon form with positive pivots, and entries above each
    pivot are reduced into ``[0, pivot)``.
    """
    a = [list(r) for r in rows]
    k = len(a)
    u = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    r = 0
    for c in range(ncols):
        if r == k:
            break
        # Euclid on column c among rows r..k-1.
        while True:
            nz = [i for i in range(r, k) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, k):
                if a[i][c] != 0:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c] != 0:
                        done = False
            if done:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return a, u


def lattice_basis(vectors: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    h, _ = hermite_rows(vectors, ncols)
    return [row for row in h if any(row)]


def _reduce_by_hnf(basis: list[list[int]], x: list[int]) -> list[int]:
    x = list(x)
    for row in basis:
        c = next(i for i, v in enumerate(row) if v != 0)
        if x[c] % row[c] != 0:
            return x
        q = x[c] // row[c]
        if q:
            x = [a - q * b for a, b in zip(x, row)]
    return x


def zspan_contains(generators: Sequence[Sequence], x: Sequence) -> bool:
    """True iff ``x`` is an integer combination of ``generators``."""
    x = vec(x)
    if not generators:
        return is_zero(x)
    den = common_denominator(list(generators) + [x])
    rows = to_integer_rows(generators, den)
    (xi,) = to_integer_rows([x], den)
    basis = lattice_basis(rows, len(x))
    return not any(_reduce_by_hnf(basis, xi))


def integer_left_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of ``{c in Z^k : sum_i c_i rows[i] = 0}``."""
    h, u = hermite_rows(rows, ncols)
    return [u[i] for i in range(len(h)) if not any(h[i])]


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of ``{x in Z^n : rows @ x = 0}``."""
    cols = [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]
    return integer_left_kernel(cols, len(rows))


def saturation_defect(generators: Sequence[Sequence]) -> Optional[tuple[Vec, int]]:
    """Test whether the Z-span of ``generators`` is saturated in its Q-span.

    The ambient lattice is ``(1/D) Z^n`` with ``D`` the common denominator of
    the generators. Returns None when saturated, otherwise ``(x, k)`` with
    ``x`` in the Q-span but not the Z-span and ``k x`` in the Z-span (``k``
    minimal for that ``x``).
    """
    if not generators:
        return None
    n = len(generators[0])
    den = common_denominator(generators)
    rows = to_integer_rows(generators, den)
    lat = lattice_basis(rows, n)
    if not lat:
        return None
    perp = kernel_basis(row_basis([vec(r) for r in rows], n), n)
    if perp:
        pden = common_denominator(perp)
        perp_int = to_integer_rows(perp, pden)
        saturated = integer_kernel(perp_int, n)
    else:
        saturated = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for s in lattice_basis(saturated, n):
        if any(_reduce_by_hnf(lat, s)):
            k = 2
            while any(_reduce_by_hnf(lat, [k * v for v in s])):
                k += 1
            return tuple(Fraction(v, den) for v in s), k
    return None
