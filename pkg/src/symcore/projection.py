"""Projected polyhedron in block-sum coordinates and its lattice points.

Each original row averages blockwise into a row over the fiber coordinates
s (s_i is the sum of x over block i), so the fiber lattice is exactly Z^d.
Lattice points are enumerated depth-first with exact per-level LP bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceededError, UnboundedError
from .lp import lp_solve
from .model import Instance, require_symmetric
from .rationals import canon

DEFAULT_FIBER_CAP = 10**6


@dataclass(frozen=True)
class ProjectedPolyhedron:
    d: int
    rows: tuple  # tuple[(coeffs over s, rhs), ...]
    block_sizes: tuple


def project_polyhedron(inst: Instance, *, checked: bool = True) -> ProjectedPolyhedron:
    """Inequality description of the projection onto the fixed space.

    Coefficient i of a projected row is the average of the original
    coefficients over block i (the s_i coordinate is the block sum).
    Requires a symmetric instance; otherwise the projected system would
    not describe the projection.
    """
    if checked:
        require_symmetric(inst)
    g = inst.group
    blocks = [(b.coords, b.size) for b in g.blocks]
    seen = set()
    rows = []
    for a, b in inst.rows:
        proj = tuple(
            canon(Fraction(sum(a[i] for i in coords), size)) if size > 1
            else a[coords[0]]
            for coords, size in blocks
        )
        key = (proj, b)
        if key not in seen:
            seen.add(key)
            rows.append(key)
    return ProjectedPolyhedron(d=g.d, rows=tuple(rows), block_sizes=g.block_sizes)


def coordinate_bounds(proj: ProjectedPolyhedron) -> list:
    """Exact (min, max) of every s coordinate; raises on unboundedness.

    Returns None when the projection is empty.
    """
    bounds = []
    for j in range(proj.d):
        obj = [0] * proj.d
        obj[j] = 1
        lo = lp_solve(proj.rows, obj, "min")
        if lo.status == "infeasible":
            return None
        hi = lp_solve(proj.rows, obj, "max")
        if lo.status == "unbounded" or hi.status == "unbounded":
            raise UnboundedError(f"projected polyhedron is unbounded in coordinate {j}")
        bounds.append((lo.optimum, hi.optimum))
    return bounds


def enumerate_lattice_points(proj: ProjectedPolyhedron, cap: int = DEFAULT_FIBER_CAP) -> list:
    """All integer points of the projected polyhedron, lexicographic order."""
    if proj.d == 0:
        return [()]
    if coordinate_bounds(proj) is None:
        return []

    out: list = []

    def emit(prefix):
        if len(out) >= cap:
            raise CapExceededError("fiber count", cap)
        out.append(prefix)

    def recurse(rows, nrem, prefix):
        obj = [0] * nrem
        obj[0] = 1
        lo_res = lp_solve(rows, obj, "min")
        if lo_res.status == "infeasible":
            return
        hi_res = lp_solve(rows, obj, "max")
        # subsets of a bounded region stay bounded
        assert lo_res.status == "optimal" and hi_res.status == "optimal"
        lo = math.ceil(lo_res.optimum)
        hi = math.floor(hi_res.optimum)
        if nrem == 1:
            # one-dimensional section: every integer in [lo, hi] is feasible
            for v in range(lo, hi + 1):
                emit(prefix + (v,))
            return
        for v in range(lo, hi + 1):
            sub = []
            feasible = True
            for a, b in rows:
                rest = a[1:]
                rhs = canon(b - a[0] * v)
                if any(rest):
                    sub.append((rest, rhs))
                elif rhs < 0:
                    feasible = False
                    break
            if feasible:
                recurse(tuple(set(sub)), nrem - 1, prefix + (v,))

    recurse(proj.rows, proj.d, ())
    return out
