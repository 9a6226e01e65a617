"""Block groups, fixed-space projection, orbits."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from symcore.errors import CapExceededError, ParseError
from symcore.groups import (apply_perm, block_sums,
                            fiber_objective, full_block_orbit_of_row,
                            group_to_json, orbit_of_vector, parse_group,
                            project_to_fixed, sort_blockwise_desc)

from _oracles import all_block_perms, brute_orbit_of_vector, sq_dist


def sym_blocks(*specs):
    """Group from (kind, coords) pairs, e.g. ("S", (0, 1))."""
    return parse_group({"blocks": [{"kind": k, "coords": list(c)}
                                   for k, c in specs]})


S01 = sym_blocks(("S", (0, 1)))
S01_S23 = sym_blocks(("S", (0, 1)), ("S", (2, 3)))
S012_ID3 = sym_blocks(("S", (0, 1, 2)), ("Id", (3,)))


def test_apply_perm_one_line_convention():
    # p[i] is the image of i: entry at i lands at position p[i]
    assert apply_perm((1, 2, 0), ("a", "b", "c")) == ("c", "a", "b")
    assert apply_perm((0, 1, 2), (5, 6, 7)) == (5, 6, 7)


def test_parse_group_basic():
    g = parse_group({"blocks": [{"kind": "S", "coords": list(range(5))},
                                {"kind": "S", "coords": list(range(5, 10))}]})
    assert g.d == 2 and g.n == 10
    assert g.block_sizes == (5, 5)


def test_parse_group_normalizes_trivial_alternating():
    g = parse_group({"blocks": [{"kind": "A", "coords": [0, 1]}]})
    assert [b.kind for b in g.blocks] == ["Id", "Id"]
    assert g.d == 2


def test_parse_group_rejects_overlap():
    with pytest.raises(ParseError):
        parse_group({"blocks": [{"kind": "S", "coords": [0, 1]},
                                {"kind": "S", "coords": [0, 2]}]})


def test_parse_group_rejects_gaps_and_junk():
    with pytest.raises(ParseError):
        parse_group({"blocks": [{"kind": "S", "coords": [0, 2]}]})
    with pytest.raises(ParseError):
        parse_group({"blocks": [{"kind": "Q", "coords": [0]}]})
    with pytest.raises(ParseError):
        parse_group({})
    with pytest.raises(ParseError):
        parse_group({"blocks": [{"kind": "S", "coords": [0, 1]}],
                     "extra_generators": [[0, 0]]})


def test_group_json_round_trip():
    g = sym_blocks(("S", (0, 1, 2)), ("Id", (3,)))
    assert parse_group(group_to_json(g)) == g
    g2 = parse_group({"blocks": [{"kind": "S", "coords": [0, 1]}],
                      "extra_generators": [[1, 0]]})
    assert parse_group(group_to_json(g2)) == g2


def test_block_generators_generate_full_product():
    for sizes in [(2,), (3,), (2, 2), (3, 2), (4,)]:
        blocks = []
        off = 0
        for k in sizes:
            blocks.append(("S", tuple(range(off, off + k))))
            off += k
        g = sym_blocks(*blocks)
        seed = tuple(range(g.n))  # all-distinct vector: orbit = group
        orbit = orbit_of_vector(g.block_generators(), seed)
        assert len(orbit) == len(all_block_perms(sizes))


def test_alternating_generators_have_even_order():
    g = sym_blocks(("A", (0, 1, 2, 3)))
    seed = (0, 1, 2, 3)
    orbit = orbit_of_vector(g.block_generators(), seed)
    assert len(orbit) == 12  # |A_4|


def test_project_to_fixed_examples():
    fixed, s = project_to_fixed(S01_S23, (1, 3, 2, 2))
    assert fixed == (2, 2, 2, 2)
    assert s == (4, 4)

    fixed, s = project_to_fixed(S01_S23, (0, 0, 0, 0))
    assert fixed == (0, 0, 0, 0) and s == (0, 0)

    fixed, s = project_to_fixed(S012_ID3, (1, 0, 0, 5))
    assert fixed == (Fraction(1, 3),) * 3 + (5,)
    assert s == (1, 5)

    with pytest.raises(ValueError):
        project_to_fixed(S01, (1, 2, 3))


@given(st.lists(st.integers(-9, 9), min_size=4, max_size=4))
def test_projection_idempotent(x):
    fixed, s = project_to_fixed(S01_S23, x)
    fixed2, s2 = project_to_fixed(S01_S23, fixed)
    assert fixed2 == fixed and s2 == s


@given(st.lists(st.integers(-9, 9), min_size=4, max_size=4))
def test_projection_isometric_scaled_lattice(x):
    # squared norm of the projected point is sum of s_i^2 / k_i
    fixed, s = project_to_fixed(S012_ID3, x)
    norm2 = sum(Fraction(v) ** 2 for v in fixed)
    assert norm2 == Fraction(s[0] ** 2, 3) + Fraction(s[1] ** 2, 1)


@given(st.lists(st.integers(-9, 9), min_size=4, max_size=4))
def test_projection_orbit_invariant(x):
    base = project_to_fixed(S01_S23, x)
    for p in all_block_perms((2, 2)):
        assert project_to_fixed(S01_S23, apply_perm(p, x)) == base


def test_orbit_of_vector_examples():
    g = sym_blocks(("S", (0, 1, 2)))
    assert orbit_of_vector(g.block_generators(), (1, 0, 0)) == {
        (1, 0, 0), (0, 1, 0), (0, 0, 1)}
    assert orbit_of_vector([], (3, 1, 4)) == {(3, 1, 4)}
    cyc = (3, 0, 1, 2)  # 4-cycle
    orbit = orbit_of_vector([cyc], (1, 7, 0, -7))
    assert len(orbit) == 4
    assert orbit == brute_orbit_of_vector([cyc], (1, 7, 0, -7))


def test_orbit_cap_enforced():
    g = sym_blocks(("S", tuple(range(6))))
    with pytest.raises(CapExceededError):
        orbit_of_vector(g.block_generators(), tuple(range(6)), cap=100)


@settings(max_examples=40)
@given(st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_orbit_matches_brute_force(z):
    g = sym_blocks(("S", (0, 1, 2)), ("S", (3, 4)))
    gens = g.block_generators()
    assert orbit_of_vector(gens, z) == brute_orbit_of_vector(gens, z)


@settings(max_examples=40)
@given(st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_orbit_points_lie_on_sphere(z):
    # equal squared distance from every orbit point to the orbit barycenter
    g = sym_blocks(("S", (0, 1, 2)), ("S", (3, 4)))
    orbit = sorted(orbit_of_vector(g.block_generators(), z))
    m = len(orbit)
    bary = [Fraction(sum(p[i] for p in orbit), m) for i in range(5)]
    d0 = sq_dist(orbit[0], bary)
    assert all(sq_dist(p, bary) == d0 for p in orbit)


def test_fiber_objective_examples():
    assert fiber_objective(S01, (1, 1), (3,)) == 3
    assert fiber_objective(S012_ID3, (2, 2, 2, 5), (4, 1)) == 13
    assert fiber_objective(S012_ID3, (0, 0, 0, 0), (4, 1)) == 0
    with pytest.raises(ValueError):
        fiber_objective(S012_ID3, (1, 2, 3, 4), (4, 1))


def test_block_sums():
    assert block_sums(S01_S23, (1, 3, 2, 2)) == (4, 4)


def test_sort_blockwise_desc_examples():
    g3 = sym_blocks(("S", (0, 1, 2)))
    assert sort_blockwise_desc((2, 5, 3), g3) == (5, 3, 2)
    assert sort_blockwise_desc((0, 0, -1), g3) == (0, 0, -1)
    assert sort_blockwise_desc((1, 4, 2, 9), S01_S23) == (4, 1, 9, 2)


def test_full_block_orbit_of_row_matches_enumeration():
    g = sym_blocks(("S", (0, 1, 2)), ("S", (3, 4)))
    row = (1, 2, 2, 7, 8)
    got = full_block_orbit_of_row(g, row)
    expect = {apply_perm(p, row) for p in all_block_perms((3, 2))}
    assert got == expect
    # multiplicities: 3!/2! * 2! = 6 images
    assert len(got) == 6


def test_full_block_orbit_alternating_distinct_values():
    g = sym_blocks(("A", (0, 1, 2)))
    got = full_block_orbit_of_row(g, (1, 2, 3))
    assert len(got) == 3  # |A_3| even arrangements of distinct values
    assert (1, 2, 3) in got and (2, 1, 3) not in got


def test_full_block_orbit_cap():
    g = sym_blocks(("S", tuple(range(6))))
    with pytest.raises(CapExceededError):
        full_block_orbit_of_row(g, (1, 2, 3, 4, 5, 6), cap=10)
