"""ILP instances: container, JSON file I/O, symmetry validation, orbit closure.

An instance is ``max <c, x>`` subject to ``Ax <= b`` over integer x, with an
attached block group.  Variable bounds are ordinary rows.  Rows are
deduplicated on load and instances are treated as immutable afterwards.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from .errors import CapExceededError, NotSymmetricError, ParseError
from . import groups
from .groups import BlockGroup, apply_perm, parse_group, group_to_json
from .rationals import as_vector, canon, format_rat, parse_rat

Row = tuple  # (coeffs: tuple[Num, ...], rhs: Num)

DEFAULT_ROW_CAP = 2_000_000


def _dedup_rows(rows) -> tuple:
    seen = set()
    out = []
    for r in rows:
        if r not in seen:
            seen.add(r)
            out.append(r)
    return tuple(out)


@dataclass(eq=False)
class Instance:
    n: int
    rows: tuple  # tuple[Row, ...]
    objective: tuple
    group: BlockGroup
    sense: str = "max"

    def __post_init__(self):
        if self.sense != "max":
            raise ParseError(f"unsupported sense {self.sense!r}")
        if len(self.objective) != self.n:
            raise ParseError("objective length does not match n")
        if self.group.n != self.n:
            raise ParseError("group dimension does not match n")
        for a, b in self.rows:
            if len(a) != self.n:
                raise ParseError(f"row length {len(a)} does not match n={self.n}")
        self.rows = _dedup_rows(self.rows)
        self._cache: dict = {}

    @property
    def row_set(self) -> frozenset:
        cached = self._cache.get("row_set")
        if cached is None:
            cached = frozenset(self.rows)
            self._cache["row_set"] = cached
        return cached


@dataclass(frozen=True)
class SymmetryViolation:
    generator: tuple
    kind: str  # "row" or "objective"
    row_index: int | None
    detail: str


@dataclass(frozen=True)
class SymmetryReport:
    witnesses: tuple

    @property
    def is_symmetric(self) -> bool:
        return not self.witnesses


def make_instance(rows, objective, group: BlockGroup, n: int | None = None) -> Instance:
    if n is None:
        n = group.n
    norm_rows = tuple((as_vector(a), canon(b)) for a, b in rows)
    return Instance(n=n, rows=norm_rows, objective=as_vector(objective), group=group)


def instance_to_json(inst: Instance) -> dict:
    def num(x):
        return x if isinstance(x, int) else format_rat(x)

    return {
        "n": inst.n,
        "rows": [{"a": [num(v) for v in a], "b": num(b)} for a, b in inst.rows],
        "objective": [num(v) for v in inst.objective],
        "sense": inst.sense,
        "group": group_to_json(inst.group),
    }


def dumps_instance(inst: Instance) -> str:
    return json.dumps(instance_to_json(inst))


def save_instance(inst: Instance, path) -> None:
    with open(path, "w") as fh:
        json.dump(instance_to_json(inst), fh)
        fh.write("\n")


def loads_instance(text: str) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    return instance_from_json(data)


def instance_from_json(data: dict) -> Instance:
    for key in ("n", "rows", "objective", "group"):
        if key not in data:
            raise ParseError(f"missing field {key!r}")
    n = data["n"]
    if not isinstance(n, int) or n <= 0:
        raise ParseError(f"bad dimension n={n!r}")
    rows = []
    for idx, row in enumerate(data["rows"]):
        try:
            a = as_vector(parse_rat(v) for v in row["a"])
            b = canon(parse_rat(row["b"]))
        except (KeyError, ValueError, TypeError) as e:
            raise ParseError(f"row {idx}: {e}") from None
        if len(a) != n:
            raise ParseError(f"row {idx}: length {len(a)} does not match n={n}")
        rows.append((a, b))
    try:
        objective = as_vector(parse_rat(v) for v in data["objective"])
    except (ValueError, TypeError) as e:
        raise ParseError(f"objective: {e}") from None
    sense = data.get("sense", "max")
    group = parse_group(data["group"], n=n)
    return Instance(n=n, rows=tuple(rows), objective=objective, group=group, sense=sense)


def load_instance(path) -> Instance:
    with open(path) as fh:
        return loads_instance(fh.read())


def validate_symmetry(inst: Instance) -> SymmetryReport:
    """Check row-set closure and objective invariance generator-wise.

    Closure under each block generator implies closure under the whole
    block product.  Violations are reported, not raised.
    """
    cached = inst._cache.get("symmetry_report")
    if cached is not None:
        return cached

    witnesses = []
    row_set = inst.row_set
    for gen in inst.group.block_generators():
        if apply_perm(gen, inst.objective) != inst.objective:
            witnesses.append(SymmetryViolation(
                generator=gen, kind="objective", row_index=None,
                detail="objective is not invariant under generator"))
        for idx, (a, b) in enumerate(inst.rows):
            image = (apply_perm(gen, a), b)
            if image not in row_set:
                witnesses.append(SymmetryViolation(
                    generator=gen, kind="row", row_index=idx,
                    detail=f"permuted row {[format_rat(v) for v in image[0]]} "
                           f"<= {format_rat(b)} is missing"))
    report = SymmetryReport(witnesses=tuple(witnesses))
    inst._cache["symmetry_report"] = report
    return report


def require_symmetric(inst: Instance) -> None:
    report = validate_symmetry(inst)
    if not report.is_symmetric:
        w = report.witnesses[0]
        raise NotSymmetricError(f"instance is not symmetric: {w.kind} violation ({w.detail})")


def orbit_closure_rows(inst: Instance, row_cap: int = DEFAULT_ROW_CAP) -> Instance:
    """Close the row set under all block permutations; objective unchanged."""
    closed = set()
    for a, b in inst.rows:
        for img in groups.full_block_orbit_of_row(inst.group, a, cap=row_cap):
            closed.add((img, b))
            if len(closed) > row_cap:
                raise CapExceededError("row closure", row_cap)
    ordered = tuple(sorted(closed))
    return Instance(n=inst.n, rows=ordered, objective=inst.objective,
                    group=inst.group, sense=inst.sense)


def dominating_rows(inst: Instance) -> tuple:
    """One blockwise-descending representative per row orbit, deduplicated.

    Only valid for groups whose blocks are all symmetric or trivial: there
    the sorted row dominates its whole orbit on blockwise-sorted points.
    """
    cached = inst._cache.get("dominating_rows")
    if cached is not None:
        return cached
    if not inst.group.is_sym_id:
        raise ValueError("dominating rows require symmetric/trivial blocks only")
    seen = set()
    out = []
    for a, b in inst.rows:
        key = (groups.sort_blockwise_desc(a, inst.group), b)
        if key not in seen:
            seen.add(key)
            out.append(key)
    result = tuple(out)
    inst._cache["dominating_rows"] = result
    return result
