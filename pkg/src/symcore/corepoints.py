"""Core points: fiber representatives, feasibility tests, brute-force oracle.

A core point is an integer point whose orbit polytope contains no integer
points beyond the orbit itself.  For block products of symmetric groups a
fiber has a single canonical representative; the oracle here decides
core-ness for arbitrary permutation generators by exhaustive search over
the orbit's bounding box.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceededError
from .groups import BlockGroup, orbit_of_vector
from .lp import hull_membership
from .model import Instance, dominating_rows, require_symmetric

DEFAULT_ORBIT_CAP = 10**6
DEFAULT_BOX_CAP = 10**7
_MIDPOINT_PAIR_CAP = 300_000


@dataclass(frozen=True)
class CoreRep:
    z: tuple  # tuple[int, ...]
    fiber: tuple  # tuple[int, ...] block sums


def fiber_rep(g: BlockGroup, s) -> CoreRep:
    """Canonical core representative of the fiber with block sums s.

    Block i with s_i = q*k_i + r (0 <= r < k_i) gets q+1 on its first r
    positions and q elsewhere; trivial blocks carry s_i directly.
    """
    if len(s) != g.d:
        raise ValueError(f"fiber index length {len(s)} != d={g.d}")
    z = [0] * g.n
    for b, si in zip(g.blocks, s):
        if not isinstance(si, int):
            raise ValueError("fiber index entries must be integers")
        q, r = divmod(si, b.size)
        for pos, i in enumerate(b.coords):
            z[i] = q + 1 if pos < r else q
    return CoreRep(z=tuple(z), fiber=tuple(s))


def fiber_feasible(inst: Instance, s):
    """The fiber's representative if it lies in the polyhedron, else None.

    For symmetric/trivial block products the fiber contains an integer
    point of P exactly when the single representative does.  Because the
    representative is blockwise descending, it satisfies all rows of the
    (orbit-closed) system iff it satisfies the blockwise-descending
    representative of each row orbit.
    """
    require_symmetric(inst)
    rep = fiber_rep(inst.group, s)
    if inst.group.is_sym_id:
        rows = dominating_rows(inst)
    else:
        rows = inst.rows
    z = rep.z
    for a, b in rows:
        if sum(ai * zi for ai, zi in zip(a, z) if zi) > b:
            return None
    return rep.z


def shift_generator(n: int) -> tuple:
    """One-line form of the n-cycle sending coordinate i to i-1 (mod n)."""
    return tuple((i - 1) % n for i in range(n))


def cyclic_example_point(n: int, a) -> tuple:
    """Lattice-free orbit simplex seed (1, a_2..a_m, 0, -a_2..-a_m) for the
    order-n cyclic shift group, n = 2m even."""
    if n < 4 or n % 2 != 0:
        raise ValueError("n must be an even integer >= 4")
    a = tuple(a)
    if len(a) != n // 2 - 1:
        raise ValueError(f"expected {n // 2 - 1} parameters, got {len(a)}")
    if not all(isinstance(v, int) for v in a):
        raise ValueError("parameters must be integers")
    return (1,) + a + (0,) + tuple(-v for v in a)


class _SimplexHullTester:
    """Exact membership in the hull of affinely independent integer points.

    Precomputes an integer adjugate/determinant solve so each candidate
    costs only integer arithmetic.  Construction returns a usable tester
    only when the points are affinely independent (use `ok`).
    """

    def __init__(self, points):
        self.points = points
        self.ok = False
        m = len(points)
        n = len(points[0])
        if m == 1 or m - 1 > n:
            return
        p0 = points[0]
        M = [[p[i] - p0[i] for p in points[1:]] for i in range(n)]  # n x (m-1)
        k = m - 1

        # row echelon over Fractions to find k independent rows
        work = [list(map(Fraction, row)) for row in M]
        pivot_rows = []
        used = [False] * n
        for col in range(k):
            r = next((i for i in range(n)
                      if not used[i] and work[i][col] != 0), None)
            if r is None:
                return  # rank deficient: not affinely independent
            used[r] = True
            pivot_rows.append(r)
            pr = work[r]
            for i in range(n):
                if i != r and work[i][col] != 0:
                    f = work[i][col] / pr[col]
                    work[i] = [x - f * y for x, y in zip(work[i], pr)]

        Mb = [[M[r][c] for c in range(k)] for r in pivot_rows]
        det, inv = _det_and_inverse(Mb)
        if det == 0:
            return
        self.n, self.k = n, k
        self.p0 = p0
        self.M = M
        self.pivot_rows = pivot_rows
        self.other_rows = [i for i in range(n) if i not in set(pivot_rows)]
        self.det = det
        # adjugate = inverse * det, integral by construction
        self.adj = [[int(v * det) for v in row] for row in inv]
        self.ok = True

    def contains(self, p) -> bool:
        rhs = [p[i] - self.p0[i] for i in range(self.n)]
        rb = [rhs[r] for r in self.pivot_rows]
        w = [sum(ar * r for ar, r in zip(arow, rb)) for arow in self.adj]
        det = self.det
        if det > 0:
            if any(wi < 0 for wi in w) or sum(w) > det:
                return False
        else:
            if any(wi > 0 for wi in w) or sum(w) < det:
                return False
        for i in self.other_rows:
            mrow = self.M[i]
            if det * rhs[i] != sum(mc * wc for mc, wc in zip(mrow, w)):
                return False
        return True


def _det_and_inverse(Mb):
    """Exact determinant and inverse of a square integer matrix
    (det 0 when singular)."""
    k = len(Mb)
    A = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(k)]
         for i, row in enumerate(Mb)]
    det = Fraction(1)
    for col in range(k):
        piv = next((r for r in range(col, k) if A[r][col] != 0), None)
        if piv is None:
            return 0, None
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        det *= A[col][col]
        f = A[col][col]
        A[col] = [v / f for v in A[col]]
        for r in range(k):
            if r != col and A[r][col] != 0:
                g = A[r][col]
                A[r] = [x - g * y for x, y in zip(A[r], A[col])]
    inv = [row[k:] for row in A]
    return int(det), inv


def lattice_points_in_hull(points, *, skip=frozenset(), box_cap: int = DEFAULT_BOX_CAP):
    """Yield integer points of conv(points) not in `skip`.

    Points must be integer vectors.  Candidates are pre-filtered exactly:
    coordinate bounding box, the integer range of coordinate sums, and the
    enclosing ball around the centroid.  Membership is then decided by an
    exact barycentric solve for affinely independent point sets and by LP
    otherwise.  Candidates are visited nearest-to-centroid first.
    """
    pts = sorted(set(tuple(p) for p in points))
    if not pts:
        return
    n = len(pts[0])
    if any(not isinstance(v, int) for p in pts for v in p):
        raise ValueError("hull points must be integer vectors")
    if len(pts) == 1:
        if pts[0] not in skip:
            yield pts[0]
        return

    lo = [min(p[i] for p in pts) for i in range(n)]
    hi = [max(p[i] for p in pts) for i in range(n)]
    sums = [sum(p) for p in pts]
    smin, smax = min(sums), max(sums)

    m = len(pts)
    S = [sum(p[i] for p in pts) for i in range(n)]  # centroid * m
    r2s = max(sum((m * pi - si) ** 2 for pi, si in zip(p, S)) for p in pts)

    est = 1
    for i in range(n - 1):
        est *= hi[i] - lo[i] + 1
    est *= smax - smin + 1
    if est > box_cap:
        raise CapExceededError("hull bounding box", box_cap)

    lo_last, hi_last = lo[n - 1], hi[n - 1]
    candidates = []
    prefix_ranges = [range(lo[i], hi[i] + 1) for i in range(n - 1)]
    for target in range(smin, smax + 1):
        for prefix in itertools.product(*prefix_ranges):
            last = target - sum(prefix)
            if last < lo_last or last > hi_last:
                continue
            p = prefix + (last,)
            if p in skip:
                continue
            d2 = sum((m * pi - si) ** 2 for pi, si in zip(p, S))
            if d2 <= r2s:
                candidates.append((d2, p))

    candidates.sort()

    tester = _SimplexHullTester(pts)
    if tester.ok:
        member = tester.contains
    else:
        member = lambda p: hull_membership(p, pts)

    pts_set = set(pts)
    for _, p in candidates:
        if p in pts_set:
            if p not in skip:
                yield p
            continue
        if member(p):
            yield p


def hull_lattice_free(points, *, box_cap: int = DEFAULT_BOX_CAP) -> bool:
    """True iff conv(points) contains no integer points besides the points."""
    gen = lattice_points_in_hull(points, skip=frozenset(tuple(p) for p in points),
                                 box_cap=box_cap)
    return next(gen, None) is None


def _orbit_is_core(orbit, *, box_cap: int) -> bool:
    pts = sorted(orbit)
    if len(pts) == 1:
        return True
    # cheap rejection: an integral midpoint of two orbit points that is not
    # itself an orbit point witnesses non-core-ness
    if len(pts) * len(pts) <= _MIDPOINT_PAIR_CAP:
        oset = set(pts)
        for u, v in itertools.combinations(pts, 2):
            if all((a + b) % 2 == 0 for a, b in zip(u, v)):
                w = tuple((a + b) // 2 for a, b in zip(u, v))
                if w not in oset:
                    return False
    gen = lattice_points_in_hull(pts, skip=frozenset(pts), box_cap=box_cap)
    return next(gen, None) is None


def is_core_point(gens, z, *, orbit_cap: int = DEFAULT_ORBIT_CAP,
                  box_cap: int = DEFAULT_BOX_CAP) -> bool:
    """Ground-truth oracle: does conv(orbit of z) contain only the orbit?"""
    z = tuple(z)
    if any(not isinstance(v, int) for v in z):
        raise ValueError("core point candidates must be integer vectors")
    orbit = orbit_of_vector(gens, z, cap=orbit_cap)
    return _orbit_is_core(orbit, box_cap=box_cap)


def enumerate_core_points_in_box(gens, lo, hi, hyperplane_k: int | None = None, *,
                                 orbit_cap: int = DEFAULT_ORBIT_CAP,
                                 box_cap: int = DEFAULT_BOX_CAP) -> set:
    """All core points in the integer box [lo, hi], optionally restricted to
    the hyperplane of coordinate sum hyperplane_k."""
    lo = tuple(lo)
    hi = tuple(hi)
    if len(lo) != len(hi):
        raise ValueError("box corner length mismatch")
    if any(l > h for l, h in zip(lo, hi)):
        raise ValueError("empty box")
    volume = 1
    for l, h in zip(lo, hi):
        volume *= h - l + 1
    if volume > box_cap:
        raise CapExceededError("enumeration box volume", box_cap)

    cache: dict = {}
    found = set()
    in_box = lambda p: all(l <= v <= h for v, l, h in zip(p, lo, hi))
    for z in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        if hyperplane_k is not None and sum(z) != hyperplane_k:
            continue
        verdict = cache.get(z)
        if verdict is None:
            orbit = orbit_of_vector(gens, z, cap=orbit_cap)
            verdict = _orbit_is_core(orbit, box_cap=box_cap)
            for w in orbit:
                if in_box(w):
                    cache[w] = verdict
        if verdict:
            found.add(z)
    return found
