"""Exact rational linear programming.

A dense two-phase tableau simplex over exact rationals.  Pivots use the
steepest reduced cost and fall back to Bland's anti-cycling rule when
degenerate pivots pile up, so termination is guaranteed.  Free variables
are split into differences of nonnegative ones; every row gets a slack.
Every reported optimum is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .rationals import Num, canon, dot


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    optimum: Num | None = None
    point: tuple | None = None
    ray: tuple | None = None  # recession direction when unbounded


def _pivot(T, zrow, basis, r, e):
    row = T[r]
    piv = row[e]
    if piv != 1:
        inv = Fraction(1, piv) if isinstance(piv, int) else 1 / piv
        row = [canon(v * inv) for v in row]
        T[r] = row
    for i in range(len(T)):
        if i == r:
            continue
        f = T[i][e]
        if f:
            T[i] = [canon(x - f * y) for x, y in zip(T[i], row)]
    f = zrow[e]
    if f:
        zrow[:] = [canon(x - f * y) for x, y in zip(zrow, row)]
    basis[r] = e


_STALL_LIMIT = 12


def _run_simplex(T, zrow, basis, ncols):
    """Minimize; returns ("optimal", None) or ("unbounded", e).

    Pivots by steepest reduced cost, falling back to Bland's rule after a
    run of degenerate pivots so cycling is impossible and termination is
    guaranteed.
    """
    stall = 0
    last_obj = zrow[-1]
    while True:
        enter = None
        if stall < _STALL_LIMIT:
            best = 0
            for j in range(ncols):
                v = zrow[j]
                if v < best:
                    best = v
                    enter = j
        else:
            for j in range(ncols):
                if zrow[j] < 0:
                    enter = j
                    break
        if enter is None:
            return "optimal", None
        leave = None
        best_num = best_den = None  # ratio best_num/best_den
        for i, row in enumerate(T):
            a = row[enter]
            if a > 0:
                num, den = row[-1], a
                if leave is None:
                    better = True
                else:
                    # compare num/den vs best_num/best_den (both dens > 0)
                    lhs, rhs = num * best_den, best_num * den
                    better = lhs < rhs or (lhs == rhs and basis[i] < basis[leave])
                if better:
                    leave, best_num, best_den = i, num, den
        if leave is None:
            return "unbounded", enter
        _pivot(T, zrow, basis, leave, enter)
        if zrow[-1] != last_obj:
            stall = 0
            last_obj = zrow[-1]
        else:
            stall += 1


def _standard_min(A, b, c):
    """min c.y s.t. Ay = b, y >= 0.

    Returns (status, y, value, ray).  The ray satisfies A ray = 0,
    ray >= 0, c.ray < 0 when status is "unbounded".
    """
    m = len(A)
    nv = len(c)
    T = []
    for i in range(m):
        coeffs = list(A[i])
        rhs = b[i]
        if rhs < 0:
            coeffs = [canon(-v) for v in coeffs]
            rhs = canon(-rhs)
        art = [0] * m
        art[i] = 1
        T.append(coeffs + art + [rhs])
    basis = [nv + i for i in range(m)]
    width = nv + m

    # phase 1: minimize the sum of artificials
    zrow = [0] * nv + [1] * m + [0]
    for i in range(m):
        zrow = [canon(x - y) for x, y in zip(zrow, T[i])]
    status, _ = _run_simplex(T, zrow, basis, width)
    assert status == "optimal"  # phase 1 objective is bounded below by 0
    if -zrow[-1] != 0:
        return "infeasible", None, None, None

    # drive leftover artificials out of the basis, dropping redundant rows
    keep = []
    for i in range(m):
        if basis[i] < nv:
            keep.append(i)
            continue
        piv_col = next((j for j in range(nv) if T[i][j] != 0), None)
        if piv_col is None:
            continue  # redundant constraint
        _pivot(T, zrow, basis, i, piv_col)
        keep.append(i)
    if len(keep) != len(T):
        T = [T[i] for i in keep]
        basis = [basis[i] for i in keep]

    # phase 2
    zrow = list(c) + [0] * m + [0]
    for i, bi in enumerate(basis):
        f = zrow[bi]
        if f:
            zrow = [canon(x - f * y) for x, y in zip(zrow, T[i])]
    status, enter = _run_simplex(T, zrow, basis, nv)
    if status == "unbounded":
        ray = [0] * nv
        ray[enter] = 1
        for i, bi in enumerate(basis):
            if bi < nv and T[i][enter]:
                ray[bi] = canon(-T[i][enter])
        return "unbounded", None, None, tuple(ray)
    y = [0] * nv
    for i, bi in enumerate(basis):
        if bi < nv:
            y[bi] = T[i][-1]
    return "optimal", tuple(y), canon(-zrow[-1]), None


_DUAL_ROW_FACTOR = 3


def _int_scaled(values):
    """The values as integers times a positive scale: (ints, scale)."""
    denoms = [v.denominator for v in values if not isinstance(v, int)]
    if not denoms:
        return [int(v) for v in values], 1
    f = lcm(*denoms) if len(denoms) > 1 else denoms[0]
    return [int(v * f) for v in values], f


class _DualTableau:
    """Incremental exact solver for max c.x over {Ax <= b} with m >> n.

    Works on the dual (min b.y, A^T y = c, y >= 0), whose tableau has only
    n rows; the primal point is read off the artificial columns' reduced
    costs and is exact by strong duality.  All arithmetic is integer
    (fraction-free pivoting with a tracked basis determinant), and adding
    primal rows later only appends dual columns, so the optimal basis is
    reused across separation rounds.

    Column layout per tableau row: n artificial entries, then one entry
    per constraint; right-hand sides and the reduced-cost row are kept
    alongside.  solve() returns "optimal", "infeasible" (primal), or
    "dual_infeasible" (primal unbounded or empty: caller must fall back).
    """

    def __init__(self, objective, rows):
        c_int, self.obj_scale = _int_scaled(list(objective))
        n = self.n = len(objective)
        self.flip = [-1 if v < 0 else 1 for v in c_int]
        self.M = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
        self.rhs = [abs(v) for v in c_int]
        self.basis = list(range(n))
        self.det = 1
        self.costs = []  # scaled b_j per constraint column
        self.Z = None  # reduced costs (times det) for phase 2
        self.Zrhs = 0
        self._phase1_done = False
        self.add_rows(rows)

    def copy(self):
        dup = object.__new__(_DualTableau)
        dup.obj_scale = self.obj_scale
        dup.n = self.n
        dup.flip = self.flip
        dup.M = [row[:] for row in self.M]
        dup.rhs = self.rhs[:]
        dup.basis = self.basis[:]
        dup.det = self.det
        dup.costs = self.costs[:]
        dup.Z = None if self.Z is None else self.Z[:]
        dup.Zrhs = self.Zrhs
        dup._phase1_done = self._phase1_done
        return dup

    def add_rows(self, rows):
        n = self.n
        M = self.M
        for a, b in rows:
            scaled, _ = _int_scaled(list(a) + [b])
            col = [sum(M[i][k] * (self.flip[k] * scaled[k]) for k in range(n))
                   for i in range(n)]
            for i in range(n):
                M[i].append(col[i])
            self.costs.append(scaled[n])
        if self._phase1_done:
            self._extend_z(len(rows))

    def _cost_of(self, col_id):
        return 0 if col_id < self.n else self.costs[col_id - self.n]

    def _extend_z(self, count):
        n = self.n
        width = n + len(self.costs)
        for j in range(width - count, width):
            z = self.det * self._cost_of(j)
            for i in range(n):
                z -= self._cost_of(self.basis[i]) * self.M[i][j]
            self.Z.append(z)

    def _pivot(self, r, e):
        M = self.M
        rhs = self.rhs
        Z = self.Z
        det = self.det
        prow = M[r]
        p = prow[e]
        prhs = rhs[r]
        for i in range(len(M)):
            if i == r:
                continue
            f = M[i][e]
            if f:
                M[i] = [(p * x - f * y) // det for x, y in zip(M[i], prow)]
                rhs[i] = (p * rhs[i] - f * prhs) // det
            else:
                M[i] = [(p * x) // det for x in M[i]]
                rhs[i] = (p * rhs[i]) // det
        f = Z[e]
        if f:
            Z[:] = [(p * x - f * y) // det for x, y in zip(Z, prow)]
            self.Zrhs = (p * self.Zrhs - f * prhs) // det
        else:
            Z[:] = [(p * x) // det for x in Z]
            self.Zrhs = (p * self.Zrhs) // det
        self.basis[r] = e
        self.det = p
        if p < 0:
            self.det = -p
            for i in range(len(M)):
                M[i] = [-x for x in M[i]]
                rhs[i] = -rhs[i]
            Z[:] = [-x for x in Z]
            self.Zrhs = -self.Zrhs

    def _run(self):
        """Minimize the current Z row; True if optimal, False if unbounded."""
        n = self.n
        ncols = n + len(self.costs)
        stall = 0
        last = (self.Zrhs, self.det)
        while True:
            Z = self.Z
            enter = None
            if stall < _STALL_LIMIT:
                best = 0
                for j in range(n, ncols):
                    v = Z[j]
                    if v < best:
                        best = v
                        enter = j
            else:
                for j in range(n, ncols):
                    if Z[j] < 0:
                        enter = j
                        break
            if enter is None:
                return True
            M = self.M
            rhs = self.rhs
            basis = self.basis
            leave = None
            best_num = best_den = None
            for i in range(len(M)):
                a = M[i][enter]
                if a > 0:
                    num, den = rhs[i], a
                    if leave is None:
                        better = True
                    else:
                        lhs, rhscmp = num * best_den, best_num * den
                        better = (lhs < rhscmp
                                  or (lhs == rhscmp and basis[i] < basis[leave]))
                    if better:
                        leave, best_num, best_den = i, num, den
            if leave is None:
                return False
            self._pivot(leave, enter)
            cur = (self.Zrhs, self.det)
            if cur[0] * last[1] != last[0] * cur[1]:
                stall = 0
                last = cur
            else:
                stall += 1

    def solve(self):
        n = self.n
        if not self._phase1_done:
            # phase 1: minimize the sum of artificials (cost 1 each; the
            # artificial columns' Z entries are never consulted)
            width = n + len(self.costs)
            Z = [0] * width
            zrhs = 0
            for i in range(n):
                Z = [x - y for x, y in zip(Z, self.M[i])]
                zrhs -= self.rhs[i]
            self.Z = Z
            self.Zrhs = zrhs
            ok = self._run()
            assert ok  # phase 1 objective is bounded below by 0
            if self.Zrhs != 0:
                return "dual_infeasible"
            # pivot leftover artificials out where possible; rows that are
            # zero on every constraint column are inert and stay put
            for i in range(n):
                if self.basis[i] < n:
                    e = next((j for j in range(n, n + len(self.costs))
                              if self.M[i][j] != 0), None)
                    if e is not None:
                        self._pivot(i, e)
            self._phase1_done = True
            # phase 2 reduced costs from scratch; later solves keep them
            # current through _pivot and _extend_z
            self.Z = []
            self._extend_z(n + len(self.costs))
            self.Zrhs = -sum(self._cost_of(bi) * self.rhs[i]
                             for i, bi in enumerate(self.basis))
        if not self._run():
            return "infeasible"
        return "optimal"

    @property
    def farkas_ray(self):
        """Unbounded primal direction after a failed phase 1.

        The phase-1 simplex multipliers x satisfy a.x <= 0 for every row
        present and c.x > 0, witnessing dual infeasibility.
        """
        return tuple(canon(Fraction(-self.Z[i] * self.flip[i], self.det))
                     for i in range(self.n))

    @property
    def optimum(self):
        return canon(Fraction(-self.Zrhs, self.det * self.obj_scale))

    @property
    def point(self):
        return tuple(canon(Fraction(-self.Z[i] * self.flip[i], self.det))
                     for i in range(self.n))


def lp_solve(rows: Sequence, objective: Sequence, direction: str = "max") -> LPResult:
    """Exact optimum of the objective over {x : Ax <= b} with free x.

    Builds the tableau in inequality form: a row with nonnegative rhs
    starts with its slack basic, so artificials are only introduced for
    rows with negative rhs and phase 1 stays small.
    """
    if direction not in ("max", "min"):
        raise ValueError(f"direction must be 'max' or 'min', got {direction!r}")
    nv = len(objective)
    for a, _ in rows:
        if len(a) != nv:
            raise ValueError("row length does not match objective length")

    m = len(rows)
    if m >= _DUAL_ROW_FACTOR * max(nv, 1):
        obj = (objective if direction == "max"
               else [canon(-v) for v in objective])
        tab = _DualTableau(obj, rows)
        status = tab.solve()
        if status == "infeasible":
            return LPResult("infeasible")
        if status == "optimal":
            opt = tab.optimum if direction == "max" else canon(-tab.optimum)
            return LPResult("optimal", optimum=opt, point=tab.point)
        # dual infeasible: primal tableau below settles unbounded vs empty

    nart = sum(1 for _, rhs in rows if rhs < 0)
    nslack = nv * 2 + m
    width = nslack + nart
    T = []
    basis = []
    k = 0
    for i, (a, rhs) in enumerate(rows):
        slack = [0] * m
        art = [0] * nart
        if rhs >= 0:
            coeffs = list(a) + [canon(-v) for v in a]
            slack[i] = 1
            basis.append(nv * 2 + i)
        else:
            coeffs = [canon(-v) for v in a] + list(a)
            rhs = canon(-rhs)
            slack[i] = -1
            art[k] = 1
            basis.append(nslack + k)
            k += 1
        T.append(coeffs + slack + art + [rhs])

    if nart:
        zrow = [0] * nslack + [1] * nart + [0]
        for i, bi in enumerate(basis):
            if bi >= nslack:
                zrow = [canon(x - y) for x, y in zip(zrow, T[i])]
        status, _ = _run_simplex(T, zrow, basis, width)
        assert status == "optimal"  # phase 1 objective is bounded below by 0
        if zrow[-1] != 0:
            return LPResult("infeasible")
        keep = []
        for i in range(len(T)):
            if basis[i] < nslack:
                keep.append(i)
                continue
            piv_col = next((j for j in range(nslack) if T[i][j] != 0), None)
            if piv_col is None:
                continue  # redundant constraint
            _pivot(T, zrow, basis, i, piv_col)
            keep.append(i)
        if len(keep) != len(T):
            T = [T[i] for i in keep]
            basis = [basis[i] for i in keep]

    sign = -1 if direction == "max" else 1
    zrow = ([canon(sign * v) for v in objective]
            + [canon(-sign * v) for v in objective] + [0] * (m + nart) + [0])
    for i, bi in enumerate(basis):
        f = zrow[bi]
        if f:
            zrow = [canon(x - f * y) for x, y in zip(zrow, T[i])]
    status, enter = _run_simplex(T, zrow, basis, nslack)
    if status == "unbounded":
        ray = [0] * nslack
        ray[enter] = 1
        for i, bi in enumerate(basis):
            if bi < nslack and T[i][enter]:
                ray[bi] = canon(-T[i][enter])
        x_ray = tuple(canon(ray[j] - ray[nv + j]) for j in range(nv))
        return LPResult("unbounded", ray=x_ray)
    y = [0] * nslack
    for i, bi in enumerate(basis):
        if bi < nslack:
            y[bi] = T[i][-1]
    x = tuple(canon(y[j] - y[nv + j]) for j in range(nv))
    return LPResult("optimal", optimum=dot(objective, x), point=x)


def hull_membership(candidate: Sequence, generators: Sequence) -> bool:
    """Is the candidate a convex combination of the generator points?

    Decided exactly via an LP feasibility problem in |generators|
    nonnegative weights.
    """
    if not generators:
        raise ValueError("empty generator list")
    n = len(candidate)
    for g in generators:
        if len(g) != n:
            raise ValueError("generator dimension mismatch")
    A = [[g[i] for g in generators] for i in range(n)]
    b = list(candidate)
    A.append([1] * len(generators))
    b.append(1)
    status, _, _, _ = _standard_min(A, b, [0] * len(generators))
    return status == "optimal"
