"""Projected polyhedron construction and lattice point enumeration."""

import itertools
import random
from fractions import Fraction

import pytest

from symcore.errors import (CapExceededError, NotSymmetricError,
                            UnboundedError)
from symcore.groups import parse_group, project_to_fixed
from symcore.model import make_instance, orbit_closure_rows
from symcore.projection import (ProjectedPolyhedron, coordinate_bounds,
                                enumerate_lattice_points, project_polyhedron)

from _oracles import satisfies

S2 = parse_group({"blocks": [{"kind": "S", "coords": [0, 1]}]})
RUNNING = make_instance((((-1, -1), -3), ((1, 2), 5), ((2, 1), 5)), (1, 1), S2)


def test_project_running_example():
    proj = project_polyhedron(RUNNING)
    assert proj.d == 1
    assert proj.block_sizes == (2,)
    assert set(proj.rows) == {((-1,), -3), ((Fraction(3, 2),), 5)}


def test_project_blockwise_constant_row_unchanged():
    g = parse_group({"blocks": [{"kind": "S", "coords": [0, 1]},
                                {"kind": "S", "coords": [2, 3]}]})
    inst = make_instance((((2, 2, 5, 5), 7),), (1, 1, 0, 0), g)
    proj = project_polyhedron(inst)
    assert proj.rows == (((2, 5), 7),)


def test_project_identity_on_trivial_group():
    g = parse_group({"blocks": [{"kind": "Id", "coords": [0]},
                                {"kind": "Id", "coords": [1]}]})
    rows = (((1, 2), 5), ((-3, 1), 0))
    inst = make_instance(rows, (1, 2), g)
    proj = project_polyhedron(inst)
    assert proj.d == 2
    assert proj.rows == rows


def test_project_requires_symmetry():
    bad = make_instance((((1, 2), 5),), (1, 1), S2)
    with pytest.raises(NotSymmetricError):
        project_polyhedron(bad)


def test_coordinate_bounds():
    proj = project_polyhedron(RUNNING)
    assert coordinate_bounds(proj) == [(3, Fraction(10, 3))]
    empty = ProjectedPolyhedron(1, (((1,), 0), ((-1,), -1)), (1,))
    assert coordinate_bounds(empty) is None
    open_up = ProjectedPolyhedron(1, (((-1,), 0),), (1,))
    with pytest.raises(UnboundedError):
        coordinate_bounds(open_up)


def test_enumerate_interval():
    proj = ProjectedPolyhedron(1, (((-1,), -3), ((Fraction(3, 2),), 5)), (2,))
    assert enumerate_lattice_points(proj) == [(3,)]


def test_enumerate_empty():
    proj = ProjectedPolyhedron(1, (((1,), 0), ((-1,), -1)), (1,))
    assert enumerate_lattice_points(proj) == []


def test_enumerate_box_lexicographic():
    rows = (((1, 0), 2), ((-1, 0), 0), ((0, 1), 2), ((0, -1), 0))
    proj = ProjectedPolyhedron(2, rows, (1, 1))
    pts = enumerate_lattice_points(proj)
    assert pts == [(i, j) for i in range(3) for j in range(3)]


def test_enumerate_cap():
    rows = (((1, 0), 2), ((-1, 0), 0), ((0, 1), 2), ((0, -1), 0))
    proj = ProjectedPolyhedron(2, rows, (1, 1))
    with pytest.raises(CapExceededError):
        enumerate_lattice_points(proj, cap=4)


def test_enumerate_unbounded_is_an_error():
    proj = ProjectedPolyhedron(1, (((-1,), 0),), (1,))
    with pytest.raises(UnboundedError):
        enumerate_lattice_points(proj)


def test_enumerate_matches_box_scan():
    rng = random.Random(5)
    for _ in range(30):
        d = rng.randint(1, 3)
        rows = []
        for _ in range(rng.randint(1, 4)):
            a = tuple(rng.randint(-3, 3) for _ in range(d))
            rows.append((a, rng.randint(-6, 6)))
        bound = rng.randint(1, 4)
        for j in range(d):
            rows.append((tuple(1 if k == j else 0 for k in range(d)), bound))
            rows.append((tuple(-1 if k == j else 0 for k in range(d)), bound))
        proj = ProjectedPolyhedron(d, tuple(rows), (1,) * d)
        got = enumerate_lattice_points(proj)
        rng_box = range(-bound, bound + 1)
        expect = [p for p in itertools.product(*([rng_box] * d))
                  if satisfies(rows, p)]
        assert got == sorted(expect)
        assert all(satisfies(proj.rows, s) for s in got)


def test_feasible_points_project_into_stream():
    g = parse_group({"blocks": [{"kind": "S", "coords": [0, 1, 2]}]})
    rng = random.Random(9)
    for _ in range(10):
        base = [(tuple(rng.randint(0, 4) for _ in range(3)),
                 rng.randint(2, 9)) for _ in range(3)]
        base += [(tuple(-1 if k == j else 0 for k in range(3)), 1)
                 for j in range(3)]
        inst = orbit_closure_rows(make_instance(base, (1, 1, 1), g))
        stream = set(enumerate_lattice_points(project_polyhedron(inst)))
        for x in itertools.product(range(-1, 6), repeat=3):
            if satisfies(inst.rows, x):
                _, s = project_to_fixed(g, x)
                assert s in stream


def test_zero_dimensional_projection():
    proj = ProjectedPolyhedron(0, (), ())
    assert enumerate_lattice_points(proj) == [()]
