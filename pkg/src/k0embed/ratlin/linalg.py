"""Dense exact linear algebra over the rationals.

Vectors are tuples of ``Fraction`` and matrices are tuples of row vectors.
Every function is pure and returns fresh immutable values.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

Vec = tuple  # tuple[Fraction, ...]
Mat = tuple  # tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"n/d"`` strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot read {value!r} as an exact rational")


def vec(values: Iterable) -> Vec:
    return tuple(to_fraction(v) for v in values)


def mat(rows: Iterable[Iterable]) -> Mat:
    out = tuple(vec(r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def zeros(n: int) -> Vec:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def identity(n: int) -> Mat:
    return tuple(unit_vector(n, i) for i in range(n))


def dot(a: Sequence, b: Sequence) -> Fraction:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    total = ZERO
    for x, y in zip(a, b):
        if x and y:
            total += x * y
    return total


def add(a: Sequence, b: Sequence) -> Vec:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> Vec:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: Sequence) -> Vec:
    c = to_fraction(c)
    return tuple(c * x for x in a)


def neg(a: Sequence) -> Vec:
    return tuple(-x for x in a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def combination(coeffs: Sequence, vectors: Sequence[Sequence], dim: int) -> Vec:
    """Return sum_i coeffs[i] * vectors[i] in dimension ``dim``."""
    out = [ZERO] * dim
    for c, v in zip(coeffs, vectors):
        if c:
            for j, x in enumerate(v):
                if x:
                    out[j] += c * x
    return tuple(out)


def matvec(m: Sequence[Sequence], x: Sequence) -> Vec:
    return tuple(dot(row, x) for row in m)


def transpose(m: Sequence[Sequence], ncols: Optional[int] = None) -> Mat:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(tuple(col) for col in zip(*m))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def rref(m: Sequence[Sequence], ncols: Optional[int] = None) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form with left-to-right pivot selection.

    Returns the nonzero rows and the pivot column of each row.
    """
    rows = [[to_fraction(x) for x in r] for r in m]
    n = len(rows[0]) if rows else (ncols or 0)
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][c]
        if p != 1:
            rows[r] = [x / p for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows[:r]), tuple(pivots)


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[0]) if m else 0


def row_basis(vectors: Sequence[Sequence], dim: int) -> Mat:
    """Canonical (RREF) basis of the span of ``vectors``."""
    if not vectors:
        return ()
    return rref(vectors, dim)[0]


def in_span(basis: Sequence[Sequence], x: Sequence) -> bool:
    if is_zero(x):
        return True
    if not basis:
        return False
    return rank(list(basis) + [x]) == rank(basis)


def solve_linear(m: Sequence[Sequence], b: Sequence) -> Optional[Vec]:
    """Solve ``m x = b`` exactly.

    Free variables are set to zero, pivots chosen left to right, so the
    answer is canonical. Returns None when the system is inconsistent.
    """
    b = vec(b)
    if len(m) != len(b):
        raise ValueError(f"dimension mismatch: {len(m)} rows vs rhs of length {len(b)}")
    if not m:
        return ()
    n = len(m[0])
    aug = [tuple(row) + (rhs,) for row, rhs in zip(m, b)]
    rows, pivots = rref(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [ZERO] * n
    for row, p in zip(rows, pivots):
        x[p] = row[n]
    return tuple(x)


def kernel_basis(m: Sequence[Sequence], ncols: Optional[int] = None) -> list[Vec]:
    """Basis of the null space of ``m``, one vector per free column."""
    n = len(m[0]) if m else ncols
    if n is None:
        raise ValueError("ncols required for an empty matrix")
    if not m:
        return [unit_vector(n, i) for i in range(n)]
    rows, pivots = rref(m, n)
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = [ZERO] * n
        v[f] = ONE
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def inverse(m: Sequence[Sequence]) -> Mat:
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("inverse of a non-square matrix")
    aug = [tuple(r) + unit_vector(n, i) for i, r in enumerate(m)]
    rows, pivots = rref(aug, 2 * n)
    if tuple(pivots[:n]) != tuple(range(n)) or len(rows) < n:
        raise ValueError("singular matrix")
    return tuple(tuple(r[n:]) for r in rows)


def complement_indices(basis: Sequence[Sequence], dim: int) -> list[int]:
    """Standard basis indices that, chosen greedily left to right, extend
    ``basis`` to a basis of the whole space."""
    chosen: list[int] = []
    current = [tuple(b) for b in basis]
    r = rank(current) if current else 0
    for i in range(dim):
        if r == dim:
            break
        trial = current + [unit_vector(dim, i)]
        if rank(trial) > r:
            current = trial
            chosen.append(i)
            r += 1
    return chosen


def primitive(v: Sequence) -> Vec:
    """Positive rescaling of ``v`` to a primitive integer vector."""
    v = vec(v)
    if is_zero(v):
        return v
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return tuple(Fraction(a // g) for a in ints)


def sign_normalized(v: Sequence) -> Vec:
    """Primitive integer rescaling with first nonzero entry positive."""
    p = primitive(v)
    for x in p:
        if x != 0:
            return p if x > 0 else neg(p)
    return p


def fmt_vec(v: Sequence) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"
