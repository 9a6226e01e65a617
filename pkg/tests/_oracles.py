"""Independent brute-force oracles used to verify the library under test.

Everything here is deliberately naive: full box scans, explicit group
element enumeration, direct LP membership without prefilters.
"""

import itertools
from fractions import Fraction

from symcore.groups import apply_perm
from symcore.lp import hull_membership


def satisfies(rows, x):
    return all(sum(ai * xi for ai, xi in zip(a, x)) <= b for a, b in rows)


def brute_ilp_max(rows, objective, lo, hi):
    """Exact ILP optimum by scanning every integer point of the box."""
    best = None
    n = len(objective)
    for x in itertools.product(*(range(lo, hi + 1) for _ in range(n))):
        if satisfies(rows, x):
            val = sum(c * v for c, v in zip(objective, x))
            if best is None or val > best[0]:
                best = (val, x)
    return best  # (value, point) or None


def all_block_perms(block_sizes):
    """Every element of S_{k1} x ... x S_{kd}, in one-line notation."""
    pieces = []
    offset = 0
    for k in block_sizes:
        pieces.append([tuple(offset + i for i in p)
                       for p in itertools.permutations(range(k))])
        offset += k
    out = []
    for combo in itertools.product(*pieces):
        perm = []
        for piece in combo:
            perm.extend(piece)
        out.append(tuple(perm))
    return out


def brute_orbit_closure(rows, block_sizes):
    perms = all_block_perms(block_sizes)
    closed = set()
    for a, b in rows:
        for p in perms:
            closed.add((apply_perm(p, a), b))
    return closed


def brute_orbit_of_vector(gens, z):
    orbit = {tuple(z)}
    frontier = [tuple(z)]
    while frontier:
        v = frontier.pop()
        for p in gens:
            w = apply_perm(p, v)
            if w not in orbit:
                orbit.add(w)
                frontier.append(w)
    return orbit


def brute_is_core(gens, z):
    """Direct Def.-style check: box scan plus LP hull membership."""
    orbit = sorted(brute_orbit_of_vector(gens, z))
    n = len(z)
    lo = [min(p[i] for p in orbit) for i in range(n)]
    hi = [max(p[i] for p in orbit) for i in range(n)]
    oset = set(orbit)
    for p in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        if p not in oset and hull_membership(p, orbit):
            return False
    return True


def brute_fiber_points(rows, block_coords, s, lo, hi):
    """All integer points of the fiber with block sums s inside the box."""
    n = sum(len(c) for c in block_coords)
    found = []
    for x in itertools.product(*(range(lo, hi + 1) for _ in range(n))):
        if all(sum(x[i] for i in coords) == si
               for coords, si in zip(block_coords, s)):
            if satisfies(rows, x):
                found.append(x)
    return found


def sq_dist(p, q):
    return sum((Fraction(a) - Fraction(b)) ** 2 for a, b in zip(p, q))
