"""Block-product permutation groups, their fixed space, and vector orbits.

A group is a direct product of symmetric / alternating / trivial factors,
each permuting one block of coordinates.  Optional extra generators (for
arbitrary permutation groups) are carried along for the brute-force core
point oracle only; they never participate in fiber computations.

Permutations use one-line notation: ``p[i]`` is the image of ``i``.
Acting on a vector moves the entry at ``i`` to position ``p[i]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CapExceededError, ParseError
from .rationals import Num, canon, dot

Perm = tuple  # tuple[int, ...], one-line notation

DEFAULT_ORBIT_CAP = 10**6


def apply_perm(p: Perm, x: Sequence) -> tuple:
    out = [None] * len(x)
    for i, v in enumerate(x):
        out[p[i]] = v
    return tuple(out)


def check_perm(p: Sequence[int], n: int) -> Perm:
    if sorted(p) != list(range(n)):
        raise ParseError(f"not a permutation of 0..{n - 1}: {p!r}")
    return tuple(p)


def _cycle_perm(n: int, coords: Sequence[int]) -> Perm:
    """Identity outside coords; cyclic shift coords[0] -> coords[1] -> ..."""
    p = list(range(n))
    for a, b in zip(coords, coords[1:]):
        p[a] = b
    p[coords[-1]] = coords[0]
    return tuple(p)


def _swap_perm(n: int, i: int, j: int) -> Perm:
    p = list(range(n))
    p[i], p[j] = j, i
    return tuple(p)


def _three_cycle(n: int, a: int, b: int, c: int) -> Perm:
    p = list(range(n))
    p[a], p[b], p[c] = b, c, a
    return tuple(p)


@dataclass(frozen=True)
class Block:
    kind: str  # "S", "A", or "Id"
    coords: tuple  # tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class BlockGroup:
    n: int
    blocks: tuple  # tuple[Block, ...]
    extra_generators: tuple = ()  # tuple[Perm, ...], oracle use only

    @property
    def d(self) -> int:
        return len(self.blocks)

    @property
    def block_sizes(self) -> tuple:
        return tuple(b.size for b in self.blocks)

    @property
    def is_sym_id(self) -> bool:
        """True when every block is symmetric or trivial (no Alt of size >= 3)."""
        return all(b.kind != "A" for b in self.blocks)

    def block_generators(self) -> list:
        """Generators of the block product, embedded in S_n."""
        gens = []
        for b in self.blocks:
            c = b.coords
            k = len(c)
            if b.kind == "Id" or k == 1:
                continue
            if b.kind == "S":
                gens.append(_swap_perm(self.n, c[0], c[1]))
                if k > 2:
                    gens.append(_cycle_perm(self.n, c))
            elif b.kind == "A":
                # A_k = <(012), (01...k-1)> for odd k, <(012), (12...k-1)> for even k
                gens.append(_three_cycle(self.n, c[0], c[1], c[2]))
                if k > 3:
                    cyc = c if k % 2 == 1 else c[1:]
                    gens.append(_cycle_perm(self.n, cyc))
        return gens

    def oracle_generators(self) -> list:
        return self.block_generators() + list(self.extra_generators)


def parse_group(spec: dict, n: int | None = None) -> BlockGroup:
    """Build a normalized BlockGroup from its JSON-style description.

    Blocks must partition the coordinate set.  Alternating blocks of size
    <= 2 (where A_k is trivial) and size-1 blocks are normalized to Id.
    """
    if not isinstance(spec, dict) or "blocks" not in spec:
        raise ParseError("group spec must be an object with a 'blocks' field")
    raw_blocks = spec["blocks"]
    seen: set = set()
    max_idx = -1
    parsed = []
    for entry in raw_blocks:
        kind = entry.get("kind")
        coords = entry.get("coords")
        if kind not in ("S", "A", "Id"):
            raise ParseError(f"unknown block kind {kind!r}")
        if not coords or any(not isinstance(i, int) or i < 0 for i in coords):
            raise ParseError(f"bad block coords {coords!r}")
        if len(set(coords)) != len(coords):
            raise ParseError(f"repeated coordinate in block {coords!r}")
        overlap = seen.intersection(coords)
        if overlap:
            raise ParseError(f"blocks overlap on coordinates {sorted(overlap)}")
        seen.update(coords)
        max_idx = max(max_idx, max(coords))
        parsed.append((kind, tuple(coords)))

    if n is None:
        n = max_idx + 1
    if max_idx >= n:
        raise ParseError(f"coordinate {max_idx} out of range for n={n}")
    if seen != set(range(n)):
        missing = sorted(set(range(n)) - seen)
        raise ParseError(f"blocks do not partition coordinates; missing {missing}")

    blocks = []
    for kind, coords in parsed:
        if kind == "Id" and len(coords) > 1:
            raise ParseError("Id blocks must have exactly one coordinate")
        if len(coords) == 1 or (kind == "A" and len(coords) <= 2):
            for c in coords:
                blocks.append(Block("Id", (c,)))
        else:
            blocks.append(Block(kind, coords))

    extras = tuple(
        check_perm(p, n) for p in spec.get("extra_generators") or ()
    )
    return BlockGroup(n=n, blocks=tuple(blocks), extra_generators=extras)


def group_to_json(g: BlockGroup) -> dict:
    out = {"blocks": [{"kind": b.kind, "coords": list(b.coords)} for b in g.blocks]}
    if g.extra_generators:
        out["extra_generators"] = [list(p) for p in g.extra_generators]
    return out


def project_to_fixed(g: BlockGroup, x: Sequence):
    """Orthogonal projection onto the fixed space of the block product.

    Returns the projected point (blockwise averages) together with the
    vector of block sums.
    """
    if len(x) != g.n:
        raise ValueError(f"vector length {len(x)} != n={g.n}")
    fixed = [None] * g.n
    sums = []
    for b in g.blocks:
        s = canon(sum(x[i] for i in b.coords))
        sums.append(s)
        avg = canon(Fraction(s, b.size)) if b.size > 1 else s
        for i in b.coords:
            fixed[i] = avg
    return tuple(fixed), tuple(sums)


def block_sums(g: BlockGroup, x: Sequence) -> tuple:
    if len(x) != g.n:
        raise ValueError(f"vector length {len(x)} != n={g.n}")
    return tuple(canon(sum(x[i] for i in b.coords)) for b in g.blocks)


def orbit_of_vector(generators: Iterable[Perm], z: Sequence, cap: int = DEFAULT_ORBIT_CAP) -> set:
    """Breadth-first closure of {z} under the generators."""
    gens = [tuple(p) for p in generators]
    start = tuple(z)
    for p in gens:
        if len(p) != len(start):
            raise ValueError("generator length does not match vector length")
    orbit = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for p in gens:
                w = apply_perm(p, v)
                if w not in orbit:
                    orbit.add(w)
                    if len(orbit) > cap:
                        raise CapExceededError("orbit size", cap)
                    nxt.append(w)
        frontier = nxt
    return orbit


def blockwise_constant(g: BlockGroup, c: Sequence) -> list | None:
    """Per-block coefficient when c is constant on every block, else None."""
    out = []
    for b in g.blocks:
        vals = {c[i] for i in b.coords}
        if len(vals) != 1:
            return None
        out.append(vals.pop())
    return out


def fiber_objective(g: BlockGroup, c: Sequence, s: Sequence) -> Num:
    """Objective value shared by every point of the fiber with block sums s."""
    coeffs = blockwise_constant(g, c)
    if coeffs is None:
        raise ValueError("objective is not blockwise constant")
    if len(s) != g.d:
        raise ValueError(f"fiber index length {len(s)} != d={g.d}")
    return dot(coeffs, s)


def sort_blockwise_desc(a: Sequence, g: BlockGroup) -> tuple:
    """Sort coefficients within each block in non-increasing order."""
    out = list(a)
    for b in g.blocks:
        if b.size > 1:
            vals = sorted((a[i] for i in b.coords), reverse=True)
            for i, v in zip(b.coords, vals):
                out[i] = v
    return tuple(out)


def full_block_orbit_of_row(g: BlockGroup, a: Sequence, cap: int | None = None) -> set:
    """All images of coefficient vector a under the block product.

    Symmetric blocks contribute every distinct arrangement of their slice;
    alternating blocks only the even arrangements (which is again every
    arrangement as soon as the slice has a repeated value).
    """
    per_block = []
    total = 1
    for b in g.blocks:
        sl = tuple(a[i] for i in b.coords)
        if b.size == 1 or b.kind == "Id":
            arrangements = [sl]
        elif b.kind == "S" or len(set(sl)) < len(sl):
            arrangements = list(set(itertools.permutations(sl)))
        else:
            # distinct values under A_k: even arrangements only
            arrangements = []
            for perm in itertools.permutations(range(b.size)):
                if _parity(perm) == 0:
                    arrangements.append(tuple(sl[i] for i in perm))
            arrangements = list(set(arrangements))
        per_block.append((b.coords, arrangements))
        total *= len(arrangements)
        if cap is not None and total > cap:
            raise CapExceededError("row orbit size", cap)

    base = list(a)
    out = set()
    for combo in itertools.product(*(arrs for _, arrs in per_block)):
        row = base[:]
        for (coords, _), arr in zip(per_block, combo):
            for i, v in zip(coords, arr):
                row[i] = v
        out.add(tuple(row))
    return out


def _parity(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    parity = 0
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        clen = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        parity ^= (clen - 1) & 1
    return parity
