"""Fiber-enumeration solver and exact branch-and-bound."""

import random
from fractions import Fraction

import pytest

from symcore.errors import NotSymmetricError, UnboundedError
from symcore.groups import fiber_objective, parse_group
from symcore.model import make_instance, orbit_closure_rows
from symcore.corepoints import fiber_feasible
from symcore.projection import enumerate_lattice_points, project_polyhedron
from symcore.rationals import dot
from symcore.solver import solve_bb, solve_fiber
from symcore.transform import lift_solution, transform_instance

from _oracles import brute_ilp_max, satisfies

S2 = parse_group({"blocks": [{"kind": "S", "coords": [0, 1]}]})
RUNNING_ROWS = (((-1, -1), -3), ((1, 2), 5), ((2, 1), 5))
RUNNING = make_instance(RUNNING_ROWS, (1, 1), S2)


def test_solve_fiber_running_example():
    sol = solve_fiber(RUNNING)
    assert sol.status == "optimal"
    assert sol.objective == 3
    assert sol.point == (2, 1)
    assert sol.certificate == (3,)
    assert sol.stats["fibers_enumerated"] == 1
    assert sol.stats["rep_tests"] == sol.stats["fibers_tested"]


def test_solve_fiber_infeasible():
    inst = make_instance((((-1, -1), -4),) + RUNNING_ROWS[1:], (1, 1), S2)
    sol = solve_fiber(inst)
    assert sol.status == "infeasible"
    # every enumerated fiber was tested (exactly one test per fiber)
    assert sol.stats["fibers_tested"] == sol.stats["fibers_enumerated"]


def test_solve_fiber_pinned_origin():
    g = parse_group({"blocks": [{"kind": "Id", "coords": [0]},
                                {"kind": "Id", "coords": [1]}]})
    rows = (((1, 0), 0), ((-1, 0), 0), ((0, 1), 0), ((0, -1), 0))
    sol = solve_fiber(make_instance(rows, (3, 5), g))
    assert sol.status == "optimal"
    assert sol.point == (0, 0)
    assert sol.objective == 0


def test_solve_fiber_requires_symmetry():
    with pytest.raises(NotSymmetricError):
        solve_fiber(make_instance(RUNNING_ROWS, (1, 2), S2))


def test_solve_fiber_unbounded():
    inst = make_instance((((-1, -1), -3),), (1, 1), S2)
    with pytest.raises(UnboundedError):
        solve_fiber(inst)


def test_solve_fiber_threads_deterministic():
    g = parse_group({"blocks": [{"kind": "S", "coords": [0, 1]},
                                {"kind": "S", "coords": [2, 3]}]})
    rng = random.Random(31)
    base = [(tuple(rng.randint(1, 5) for _ in range(4)), rng.randint(6, 14))
            for _ in range(4)]
    base += [(tuple(-1 if k == j else 0 for k in range(4)), 0)
             for j in range(4)]
    base += [((-1, -1, -1, -1), -1)]
    inst = orbit_closure_rows(make_instance(base, (2, 2, 3, 3), g))
    single = solve_fiber(inst, threads=1)
    multi = solve_fiber(inst, threads=4)
    assert (single.status, single.objective, single.point, single.certificate) \
        == (multi.status, multi.objective, multi.point, multi.certificate)


def test_optimality_certificate():
    # no enumerated fiber with strictly larger objective is feasible
    g = parse_group({"blocks": [{"kind": "S", "coords": [0, 1, 2]}]})
    rng = random.Random(37)
    base = [(tuple(rng.randint(1, 6) for _ in range(3)), rng.randint(5, 16))
            for _ in range(5)]
    base += [(tuple(-1 if k == j else 0 for k in range(3)), 0)
             for j in range(3)]
    inst = orbit_closure_rows(make_instance(base, (2, 2, 2), g))
    sol = solve_fiber(inst)
    assert sol.status == "optimal"
    for s in enumerate_lattice_points(project_polyhedron(inst)):
        if fiber_objective(g, inst.objective, s) > sol.objective:
            assert fiber_feasible(inst, s) is None


def test_solve_bb_running_example():
    sol = solve_bb(RUNNING.rows, RUNNING.objective)
    assert sol.status == "optimal" and sol.objective == 3
    sol = solve_bb(RUNNING.rows, RUNNING.objective, group=S2)
    assert sol.status == "optimal" and sol.objective == 3
    assert satisfies(RUNNING.rows, sol.point)


def test_solve_bb_transformed_running_example():
    ti = transform_instance(RUNNING)
    sol = solve_bb(ti.lp_rows(), ti.objective)
    assert sol.status == "optimal" and sol.objective == 3
    assert lift_solution(ti, sol.point) == (2, 1)


def test_solve_bb_infeasible_toy():
    sol = solve_bb((((1,), 0), ((-1,), -1)), (1,))
    assert sol.status == "infeasible"


def test_solve_bb_unbounded():
    with pytest.raises(UnboundedError):
        solve_bb((((-1,), 0),), (1,))


def test_solve_bb_min_direction():
    rows = (((1, 0), 4), ((0, 1), 4), ((-1, 0), 0), ((0, -1), 0))
    sol = solve_bb(rows, (1, 1), direction="min")
    assert sol.status == "optimal" and sol.objective == 0
    with pytest.raises(ValueError):
        solve_bb(rows, (1, 1), direction="sideways")


def test_solve_bb_mixed_integrality():
    rows = (((1, 2), 4), ((2, 1), 4), ((-1, 0), 0), ((0, -1), 0))
    pure = solve_bb(rows, (1, 1))
    assert pure.objective == 2
    mixed = solve_bb(rows, (1, 1), integer_vars=(0,))
    assert mixed.objective == Fraction(5, 2)
    assert mixed.point == (1, Fraction(3, 2))


def test_solve_bb_matches_brute_force():
    rng = random.Random(41)
    for _ in range(25):
        n = rng.randint(2, 3)
        rows = [(tuple(rng.randint(-4, 4) for _ in range(n)),
                 rng.randint(-4, 10)) for _ in range(rng.randint(2, 5))]
        for j in range(n):
            rows.append((tuple(1 if k == j else 0 for k in range(n)), 4))
            rows.append((tuple(-1 if k == j else 0 for k in range(n)), 4))
        obj = tuple(rng.randint(-4, 4) for _ in range(n))
        sol = solve_bb(tuple(rows), obj)
        expect = brute_ilp_max(rows, obj, -4, 4)
        if expect is None:
            assert sol.status == "infeasible"
        else:
            assert sol.status == "optimal"
            assert sol.objective == expect[0]
            assert satisfies(rows, sol.point)
            assert dot(obj, sol.point) == sol.objective


def test_cross_method_agreement_random_symmetric():
    rng = random.Random(43)
    g = parse_group({"blocks": [{"kind": "S", "coords": [0, 1, 2]},
                                {"kind": "S", "coords": [3, 4]}]})
    for _ in range(10):
        base = [(tuple(rng.randint(0, 5) for _ in range(5)),
                 rng.randint(4, 14)) for _ in range(4)]
        base += [(tuple(-1 if k == j else 0 for k in range(5)), 0)
                 for j in range(5)]
        base += [((-1, -1, -1, -1, -1), -1)]
        inst = orbit_closure_rows(make_instance(base, (2, 2, 2, 1, 1), g))

        fib = solve_fiber(inst)
        bb = solve_bb(inst.rows, inst.objective, group=g)
        ti = transform_instance(inst)
        tr = solve_bb(ti.lp_rows(), ti.objective)

        assert fib.status == bb.status == tr.status
        if fib.status == "optimal":
            assert fib.objective == bb.objective == tr.objective
            assert satisfies(inst.rows, bb.point)
            lifted = lift_solution(ti, tr.point)
            assert satisfies(inst.rows, lifted)
            assert dot(inst.objective, lifted) == tr.objective
        expect = brute_ilp_max(inst.rows, inst.objective, -1, 7)
        if expect is None:
            assert fib.status == "infeasible"
        else:
            assert fib.objective == expect[0]
