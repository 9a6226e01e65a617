"""Core-set parametrization of block-symmetric ILPs.

Rewrites the model in variables (t_i, s_{i,j}) per block: block coordinate
l evaluates to t_i + sum_{j >= l} s_{i,j}, with the s binary and at most
one of them set.  Sorting each row blockwise descending first lets a
single row stand in for its whole orbit, so orbit closure is reversed.
Also exports models in LP text format.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .errors import NotSymmetricError
from .groups import BlockGroup, sort_blockwise_desc
from .model import Instance, require_symmetric
from .rationals import canon

ROW_MODEL = "model"
ROW_SELECT = "select"
ROW_BOUND = "bound"


@dataclass(frozen=True)
class TransformedInstance:
    group: BlockGroup
    var_names: tuple  # "t{i}" and "s{i}_{j}" per block, original order
    t_indices: tuple  # variable index of t_i per block
    s_indices: tuple  # tuple per block of the s_{i,j} variable indices
    rows: tuple  # tuple[(coeffs, rhs, kind), ...]
    objective: tuple
    sense: str = "max"

    @property
    def num_vars(self) -> int:
        return len(self.var_names)

    def rows_of_kind(self, kind: str) -> list:
        return [(a, b) for a, b, k in self.rows if k == kind]

    def lp_rows(self) -> list:
        return [(a, b) for a, b, _ in self.rows]

    @property
    def binary_vars(self) -> tuple:
        return tuple(i for block in self.s_indices for i in block)


def sort_block_descending(a, g: BlockGroup):
    """Coefficients sorted non-increasingly within each block."""
    if len(a) != g.n:
        raise ValueError(f"vector length {len(a)} != n={g.n}")
    return sort_blockwise_desc(a, g)


def _require_sym_id(g: BlockGroup) -> None:
    if not g.is_sym_id:
        raise NotSymmetricError(
            "core-set parametrization requires symmetric or trivial blocks; "
            "alternating blocks of size >= 3 are not supported")


def _substitute_sorted_row(sorted_a, g: BlockGroup, t_indices, s_indices, num_vars):
    """Rewrite a blockwise-descending row into (t, s) coordinates.

    The t_i coefficient is the block coefficient sum; the s_{i,j}
    coefficient is the sum of the j largest block coefficients.
    """
    out = [0] * num_vars
    for bi, b in enumerate(g.blocks):
        coeffs = [sorted_a[i] for i in b.coords]
        out[t_indices[bi]] = canon(sum(coeffs))
        prefix = 0
        for j, sidx in enumerate(s_indices[bi], start=1):
            prefix = canon(prefix + coeffs[j - 1])
            out[sidx] = prefix
    return tuple(out)


def transform_instance(inst: Instance) -> TransformedInstance:
    require_symmetric(inst)
    g = inst.group
    _require_sym_id(g)

    var_names = []
    t_indices = []
    s_indices = []
    for bi, b in enumerate(g.blocks, start=1):
        t_indices.append(len(var_names))
        var_names.append(f"t{bi}")
        block_s = []
        for j in range(1, b.size):
            block_s.append(len(var_names))
            var_names.append(f"s{bi}_{j}")
        s_indices.append(tuple(block_s))
    num_vars = len(var_names)
    assert num_vars == inst.n

    seen_sorted = set()
    model_rows = []
    for a, b in inst.rows:
        key = (sort_blockwise_desc(a, g), b)
        if key in seen_sorted:
            continue
        seen_sorted.add(key)
        model_rows.append((_substitute_sorted_row(key[0], g, t_indices, s_indices,
                                                  num_vars), b))
    model_rows.sort()

    structural = []
    for block_s in s_indices:
        if block_s:
            row = [0] * num_vars
            for sidx in block_s:
                row[sidx] = 1
            structural.append((tuple(row), 1, ROW_SELECT))
    bounds = []
    for block_s in s_indices:
        for sidx in block_s:
            up = [0] * num_vars
            up[sidx] = 1
            lo = [0] * num_vars
            lo[sidx] = -1
            bounds.append((tuple(up), 1, ROW_BOUND))
            bounds.append((tuple(lo), 0, ROW_BOUND))

    rows = []
    seen = set()
    for a, b, kind in ([(a, b, ROW_MODEL) for a, b in model_rows]
                       + structural + bounds):
        if (a, b) not in seen:
            seen.add((a, b))
            rows.append((a, b, kind))

    objective = _substitute_sorted_row(sort_blockwise_desc(inst.objective, g),
                                       g, t_indices, s_indices, num_vars)
    return TransformedInstance(group=g, var_names=tuple(var_names),
                               t_indices=tuple(t_indices),
                               s_indices=tuple(s_indices),
                               rows=tuple(rows), objective=objective,
                               sense=inst.sense)


def lift_solution(ti: TransformedInstance, assignment) -> tuple:
    """Original-space core representative for a (t, s) assignment."""
    if len(assignment) != ti.num_vars:
        raise ValueError("assignment length does not match variable count")
    g = ti.group
    z = [0] * g.n
    for bi, b in enumerate(g.blocks):
        t = assignment[ti.t_indices[bi]]
        svals = [assignment[i] for i in ti.s_indices[bi]]
        if any(v not in (0, 1) for v in svals):
            raise ValueError("selector variables must be binary")
        if sum(svals) > 1:
            raise ValueError("at most one selector per block may be set")
        for pos, i in enumerate(b.coords):
            # coordinate l (1-based pos+1) picks up every s_{i,j} with j >= l
            z[i] = canon(t + sum(svals[pos:]))
    return tuple(z)


def _lp_var_names(n: int) -> list:
    return [f"x{i}" for i in range(n)]


def _scale_row(coeffs, rhs):
    denoms = [v.denominator for v in list(coeffs) + [rhs]
              if not isinstance(v, int)]
    if not denoms:
        return coeffs, rhs
    f = lcm(*denoms) if len(denoms) > 1 else denoms[0]
    return tuple(canon(v * f) for v in coeffs), canon(rhs * f)


def _lp_expr(coeffs, names) -> str:
    terms = []
    for v, name in zip(coeffs, names):
        if v == 0:
            continue
        sign = "+" if v > 0 else "-"
        terms.append(f"{sign} {abs(v)} {name}")
    if not terms:
        return "0 " + names[0]
    text = " ".join(terms)
    return text[2:] if text.startswith("+ ") else text


def export_model(obj, path) -> None:
    """Write an LP-text model file (integer-exact after LCM scaling)."""
    if isinstance(obj, TransformedInstance):
        names = list(obj.var_names)
        rows = [(a, b) for a, b, kind in obj.rows if kind != ROW_BOUND]
        objective = obj.objective
        binaries = [names[i] for i in obj.binary_vars]
        generals = [names[i] for i in obj.t_indices]
        free = generals
    elif isinstance(obj, Instance):
        names = _lp_var_names(obj.n)
        rows = list(obj.rows)
        objective = obj.objective
        binaries = []
        generals = names
        free = names
    else:
        raise TypeError(f"cannot export {type(obj).__name__}")

    lines = ["Maximize"]
    scaled_obj, _ = _scale_row(objective, 0)
    lines.append(" obj: " + _lp_expr(scaled_obj, names))
    lines.append("Subject To")
    for idx, (a, b) in enumerate(rows, start=1):
        sa, sb = _scale_row(a, b)
        lines.append(f" c{idx}: {_lp_expr(sa, names)} <= {sb}")
    lines.append("Bounds")
    for name in free:
        lines.append(f" {name} free")
    for name in binaries:
        lines.append(f" 0 <= {name} <= 1")
    if generals:
        lines.append("Generals")
        lines.append(" " + " ".join(generals))
    if binaries:
        lines.append("Binaries")
        lines.append(" " + " ".join(binaries))
    lines.append("End")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
