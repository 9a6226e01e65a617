"""Seeded random generator for block-symmetric ILP instances.

Recipe per instance of dimension n = sum k_i with group S_k1 x ... x S_kd:
3n base rows a = (+) f_i (sum_j a_ij x_j) with f_i uniform {1..20} and
a_ij zero with probability 0.1, else uniform {5..15}; rhs floor(0.95 <a,1>);
rows closed under block orbits and deduplicated; nonnegativity rows
-x_i <= 0; the row -sum x <= -1 excluding the origin; blockwise-constant
objective with c_i uniform {1..10}.

The PRNG is Python's Mersenne Twister seeded with the given 64-bit seed.
Draw order per base row: f_1..f_d, then a_ij in coordinate order; after all
rows: c_1..c_d.  Identical parameters and seed reproduce the instance
byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .groups import Block, BlockGroup
from .model import DEFAULT_ROW_CAP, Instance, make_instance, orbit_closure_rows

ZERO_PROB = 0.1


@dataclass(frozen=True)
class GenParams:
    block_sizes: tuple  # k_1..k_d, each >= 1
    seed: int
    row_cap: int = DEFAULT_ROW_CAP

    def __post_init__(self):
        if not self.block_sizes or any(k < 1 for k in self.block_sizes):
            raise ValueError("block sizes must be positive")

    @property
    def n(self) -> int:
        return sum(self.block_sizes)


def block_group_for_sizes(sizes) -> BlockGroup:
    blocks = []
    offset = 0
    for k in sizes:
        coords = tuple(range(offset, offset + k))
        blocks.append(Block("S" if k > 1 else "Id", coords))
        offset += k
    return BlockGroup(n=offset, blocks=tuple(blocks))


def generate_instance(p: GenParams) -> Instance:
    rng = random.Random(p.seed)
    group = block_group_for_sizes(p.block_sizes)
    n = p.n
    d = len(p.block_sizes)

    base_rows = []
    for _ in range(3 * n):
        factors = [rng.randint(1, 20) for _ in range(d)]
        coeffs = []
        for bi, k in enumerate(p.block_sizes):
            f = factors[bi]
            for _ in range(k):
                if rng.random() < ZERO_PROB:
                    coeffs.append(0)
                else:
                    coeffs.append(f * rng.randint(5, 15))
        total = sum(coeffs)
        rhs = (95 * total) // 100  # floor(0.95 <a, 1>)
        base_rows.append((tuple(coeffs), rhs))

    c_blocks = [rng.randint(1, 10) for _ in range(d)]
    objective = tuple(c for c, k in zip(c_blocks, p.block_sizes) for _ in range(k))

    base = make_instance(base_rows, objective, group)
    closed = orbit_closure_rows(base, row_cap=p.row_cap)

    bound_rows = [(tuple(-1 if j == i else 0 for j in range(n)), 0)
                  for i in range(n)]
    sum_row = (tuple(-1 for _ in range(n)), -1)
    rows = closed.rows + tuple(bound_rows) + (sum_row,)
    return Instance(n=n, rows=rows, objective=objective, group=group)
