"""Solvers: fiber enumeration over the fixed space and exact branch-and-bound.

The fiber solver enumerates all lattice points of the projected polyhedron,
visits them in non-increasing objective order (lexicographic tie-break) and
returns the first fiber whose canonical representative is feasible.

The branch-and-bound solver is a generic exact MILP oracle: LP relaxations
via the rational simplex, most-fractional branching, best-first node order.
For orbit-closed row systems it can separate rows lazily through the group
(the blockwise rearrangement bound), which leaves answers unchanged.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from heapq import heappush, heappop
from math import lcm

from .corepoints import fiber_feasible
from .errors import UnboundedError
from .groups import BlockGroup, fiber_objective
from .lp import LPResult, _DualTableau, lp_solve
from .model import Instance, require_symmetric
from .projection import DEFAULT_FIBER_CAP, enumerate_lattice_points, project_polyhedron
from .rationals import Num, canon, dot, is_integral

_LAZY_ROW_THRESHOLD = 2000
_SCAN_BATCH = 50


@dataclass(frozen=True)
class Solution:
    status: str  # "optimal" | "infeasible"
    point: tuple | None = None
    objective: Num | None = None
    certificate: object = None  # fiber index, or branch count
    stats: dict = field(default_factory=dict)


def solve_fiber(inst: Instance, *, threads: int = 1,
                fiber_cap: int = DEFAULT_FIBER_CAP) -> Solution:
    """Optimal solution (or infeasibility) by exhaustive fiber testing."""
    t0 = time.perf_counter()
    require_symmetric(inst)
    proj = project_polyhedron(inst, checked=False)
    fibers = enumerate_lattice_points(proj, cap=fiber_cap)

    g = inst.group
    values = {s: fiber_objective(g, inst.objective, s) for s in fibers}
    ordered = sorted(fibers, key=lambda s: (-values[s], s))

    tested = 0
    winner = None
    if threads <= 1 or len(ordered) <= 1:
        for s in ordered:
            tested += 1
            z = fiber_feasible(inst, s)
            if z is not None:
                winner = (s, z)
                break
    else:
        chunk = max(1, min(256, math.ceil(len(ordered) / threads)))
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for start in range(0, len(ordered), chunk * threads):
                batch = ordered[start:start + chunk * threads]
                results = list(pool.map(lambda s: fiber_feasible(inst, s), batch))
                tested += len(batch)
                for s, z in zip(batch, results):
                    if z is not None:
                        winner = (s, z)
                        break
                if winner:
                    break

    stats = {
        "fibers_enumerated": len(fibers),
        "fibers_tested": tested,
        "rep_tests": tested,  # exactly one representative per fiber
        "wall_time": time.perf_counter() - t0,
    }
    if winner is None:
        return Solution(status="infeasible", stats=stats)
    s, z = winner
    return Solution(status="optimal", point=z, objective=dot(inst.objective, z),
                    certificate=s, stats=stats)


class _OrbitSeparator:
    """Exact lazy-row oracle for orbit-closed systems over Sym/Id blocks.

    The tightest row of an orbit at a point x pairs the blockwise-descending
    coefficients with the blockwise-descending entries of x (rearrangement
    inequality); the produced row is a genuine member of the closed system.
    """

    def __init__(self, rows, group: BlockGroup):
        assert group.is_sym_id
        self.group = group
        from .groups import sort_blockwise_desc
        seen = set()
        reps = []
        for a, b in rows:
            key = (sort_blockwise_desc(a, group), b)
            if key not in seen:
                seen.add(key)
                reps.append(key)
        self.reps = reps
        self.blocks = [b.coords for b in group.blocks]

    def initial_rows(self) -> list:
        return list(self.reps)

    def _violated(self, x, *, against_ray: bool) -> list:
        orders = [sorted(coords, key=lambda c: (x[c] * -1, c))
                  for coords in self.blocks]
        out = []
        n = self.group.n
        for a, b in self.reps:
            val = 0
            for coords, order in zip(self.blocks, orders):
                for c_src, c_dst in zip(coords, order):
                    val += a[c_src] * x[c_dst]
            threshold = 0 if against_ray else b
            if val > threshold:
                row = [0] * n
                for coords, order in zip(self.blocks, orders):
                    for c_src, c_dst in zip(coords, order):
                        row[c_dst] = a[c_src]
                out.append((tuple(row), b))
        return out

    def violated_by_point(self, x) -> list:
        return self._violated(x, against_ray=False)

    def violated_by_ray(self, ray) -> list:
        return self._violated(ray, against_ray=True)


class _ScanSeparator:
    """Plain lazy-row oracle: scans the full row list exactly."""

    def __init__(self, rows):
        self.rows = list(rows)

    def initial_rows(self) -> list:
        return []

    @staticmethod
    def _scaled(x):
        denoms = [v.denominator for v in x if not isinstance(v, int)]
        scale = lcm(*denoms) if len(denoms) > 1 else (denoms[0] if denoms else 1)
        return [int(v * scale) for v in x], scale

    def _violated(self, x, *, against_ray: bool) -> list:
        xn, scale = self._scaled(x)
        hits = []
        for a, b in self.rows:
            val = sum(ai * xi for ai, xi in zip(a, xn) if xi)
            threshold = 0 if against_ray else b * scale
            if val > threshold:
                hits.append((canon(Fraction(val - threshold, scale)), (a, b)))
        hits.sort(key=lambda h: -h[0])
        return [row for _, row in hits[:_SCAN_BATCH]]

    def violated_by_point(self, x) -> list:
        return self._violated(x, against_ray=False)

    def violated_by_ray(self, ray) -> list:
        return self._violated(ray, against_ray=True)


def _root_lp_symmetric(separator: _OrbitSeparator, objective):
    """Root relaxation of an orbit-closed system, solved in the fixed space.

    The polyhedron and objective are invariant, so the relaxation admits a
    blockwise-constant optimum; in block-sum coordinates that is a LP in d
    variables over the blockwise-averaged representative rows.
    """
    g = separator.group
    proj_rows = []
    for a, b in separator.reps:
        coeffs = tuple(canon(Fraction(sum(a[i] for i in blk.coords), blk.size))
                       for blk in g.blocks)
        proj_rows.append((coeffs, b))
    obj_d = tuple(objective[blk.coords[0]] for blk in g.blocks)
    res = lp_solve(proj_rows, obj_d, "max")
    if res.status == "optimal":
        x = tuple(canon(Fraction(res.point[bi], blk.size))
                  for bi, blk in enumerate(g.blocks) for _ in blk.coords)
        return LPResult("optimal", optimum=res.optimum, point=x)
    if res.status == "unbounded":
        ray = tuple(canon(Fraction(res.ray[bi], blk.size))
                    for bi, blk in enumerate(g.blocks) for _ in blk.coords)
        return LPResult("unbounded", ray=ray)
    return res


def _node_lp(active, node_rows, objective, separator):
    """Solve the node relaxation, lazily pulling in violated rows.

    On return the reported point/ray is valid against the *entire* row
    system, so integral points are genuinely feasible.  A warm-started
    dual tableau carries the basis across separation rounds (each new
    primal row is just one more dual column).  While the relaxation is
    still unbounded the dual is infeasible, so rows are pulled in via ray
    separation on the primal tableau until a bounded tableau exists; that
    tableau is returned for reuse.
    """
    calls = 0
    tab = None
    rebuild = len(active) + len(node_rows) >= 2 * len(objective)
    while True:
        if tab is None and rebuild:
            tab = _DualTableau(objective, active + node_rows)
            rebuild = False
        if tab is not None:
            status = tab.solve()
            calls += 1
            if status == "infeasible":
                return LPResult("infeasible"), calls, tab
            if status == "optimal":
                res = LPResult("optimal", optimum=tab.optimum, point=tab.point)
                if separator is None:
                    return res, calls, tab
                new = separator.violated_by_point(res.point)
                if not new:
                    return res, calls, tab
                active.extend(new)
                tab.add_rows(new)
                continue
            # dual infeasible: the relaxation is unbounded or empty; try to
            # cut off the Farkas ray before resorting to the primal tableau
            if separator is not None:
                new = separator.violated_by_ray(tab.farkas_ray)
                if new:
                    active.extend(new)
                    tab.add_rows(new)
                    continue
            tab = None
        res = lp_solve(active + node_rows, objective, "max")
        calls += 1
        if res.status == "infeasible":
            return res, calls, None
        if separator is None:
            return res, calls, None
        if res.status == "unbounded":
            new = separator.violated_by_ray(res.ray)
        else:
            new = separator.violated_by_point(res.point)
        if not new:
            return res, calls, None
        active.extend(new)
        rebuild = True


def solve_bb(rows, objective, integer_vars=None, *, direction: str = "max",
             group: BlockGroup | None = None) -> Solution:
    """Exact branch-and-bound over {x : Ax <= b} with integrality constraints.

    When `group` is given the row system must be closed under its block
    permutations; relaxations then use lazy orbit separation (identical
    results, far fewer explicit rows).
    """
    if direction == "min":
        inner = solve_bb(rows, [canon(-v) for v in objective], integer_vars,
                         direction="max", group=group)
        if inner.status != "optimal":
            return inner
        return Solution(status="optimal", point=inner.point,
                        objective=canon(-inner.objective),
                        certificate=inner.certificate, stats=inner.stats)
    if direction != "max":
        raise ValueError(f"direction must be 'max' or 'min', got {direction!r}")

    t0 = time.perf_counter()
    nv = len(objective)
    int_vars = tuple(range(nv)) if integer_vars is None else tuple(integer_vars)
    int_set = set(int_vars)

    if group is not None and group.is_sym_id:
        separator = _OrbitSeparator(rows, group)
        active = separator.initial_rows()
    elif len(rows) > _LAZY_ROW_THRESHOLD:
        separator = _ScanSeparator(rows)
        active = separator.initial_rows()
    else:
        separator = None
        active = list(rows)

    # with an all-integer objective on all-integer variables, any attainable
    # value is an integer, so LP bounds may be floored
    use_floor = len(int_set) == nv and all(is_integral(v) for v in objective)

    lp_calls = 0
    nodes = 0
    incumbent = None  # (value, point)

    def bound_of(raw):
        return math.floor(raw) if use_floor else raw

    def integral(point):
        return all(is_integral(point[i]) for i in int_vars)

    warm = isinstance(separator, _OrbitSeparator)

    def tab_lp(tab):
        """Separation loop on a warm dual tableau.

        Returns (result_or_None, calls, tab); None means the tableau could
        not settle the relaxation (dual infeasible) and the caller must
        fall back to the generic path.
        """
        calls = 0
        while True:
            status = tab.solve()
            calls += 1
            if status == "dual_infeasible":
                return None, calls, None
            if status == "infeasible":
                return LPResult("infeasible"), calls, tab
            new = separator.violated_by_point(tab.point)
            if not new:
                return (LPResult("optimal", optimum=tab.optimum,
                                 point=tab.point), calls, tab)
            tab.add_rows(new)

    def make_node(node_rows, parent_tab):
        """Solve one relaxation; returns a heap node, or None when fathomed.

        With orbit separation the symmetric root is solved in the fixed
        space, and every other node inherits its parent's dual tableau:
        the branching row is one extra dual column, so reoptimization is
        a few pivots.  Other modes keep one shared active row list.
        """
        nonlocal lp_calls, nodes, incumbent
        nodes += 1
        tab = None
        if warm:
            if not node_rows:
                res = _root_lp_symmetric(separator, objective)
                calls = 1
            elif parent_tab is not None:
                tab = parent_tab.copy()
                tab.add_rows(node_rows[-1:])
                res, calls, tab = tab_lp(tab)
                if res is None:  # cannot happen off a bounded parent tableau
                    res, extra, tab = _node_lp(separator.initial_rows(),
                                               node_rows, objective, separator)
                    calls += extra
            else:
                res, calls, tab = _node_lp(separator.initial_rows(), node_rows,
                                           objective, separator)
        else:
            res, calls, _ = _node_lp(active, node_rows, objective, separator)
        lp_calls += calls
        if res.status == "infeasible":
            return None
        if res.status == "unbounded":
            raise UnboundedError("LP relaxation is unbounded")
        if integral(res.point):
            value = res.optimum
            point = tuple(int(v) if i in int_set else v
                          for i, v in enumerate(res.point))
            if incumbent is None or value > incumbent[0]:
                incumbent = (value, point)
            return None
        return (bound_of(res.optimum), res.point, node_rows, tab)

    heap = []
    seq = 0

    def push(node):
        nonlocal seq
        if node is not None:
            heappush(heap, (-node[0], seq, node))
            seq += 1

    push(make_node([], None))
    while heap:
        _, _, (bound, point, node_rows, tab) = heappop(heap)
        if incumbent is not None and bound <= incumbent[0]:
            break  # best-first: every remaining node is dominated
        # branch on the most fractional integer variable, lowest index first
        best_i, best_score = None, None
        for i in int_vars:
            v = point[i]
            if is_integral(v):
                continue
            frac = v - math.floor(v)
            score = min(frac, 1 - frac)
            if best_score is None or score > best_score:
                best_i, best_score = i, score
        assert best_i is not None
        v = point[best_i]
        lo_row = tuple(1 if j == best_i else 0 for j in range(nv))
        hi_row = tuple(-1 if j == best_i else 0 for j in range(nv))
        push(make_node(node_rows + [(lo_row, math.floor(v))], tab))
        push(make_node(node_rows + [(hi_row, -(math.floor(v) + 1))], tab))

    stats = {"nodes": nodes, "lp_calls": lp_calls,
             "wall_time": time.perf_counter() - t0}
    if incumbent is None:
        return Solution(status="infeasible", certificate=nodes, stats=stats)
    value, point = incumbent
    return Solution(status="optimal", point=point, objective=value,
                    certificate=nodes, stats=stats)
