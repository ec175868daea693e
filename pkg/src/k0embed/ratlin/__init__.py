"""Exact rational linear algebra, lattices, cones and linear programming."""

from .cones import PolyCone, double_description, project_cone
from .lattice import integer_kernel, integer_left_kernel, saturation_defect, zspan_contains
from .linalg import (
    ONE,
    ZERO,
    Mat,
    Vec,
    add,
    combination,
    complement_indices,
    dot,
    fmt_vec,
    identity,
    in_span,
    inverse,
    is_zero,
    kernel_basis,
    mat,
    matmul,
    matvec,
    neg,
    primitive,
    rank,
    row_basis,
    rref,
    scale,
    sign_normalized,
    solve_linear,
    sub,
    to_fraction,
    transpose,
    unit_vector,
    vec,
    zeros,
)
from .lp import (
    Bounded,
    Feasible,
    Infeasible,
    LinConstraint,
    LpOutcome,
    Relation,
    Unbounded,
    check_farkas,
    check_point,
    check_ray,
    lp,
)
