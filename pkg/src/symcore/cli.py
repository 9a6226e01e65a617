"""Command-line interface.

Subcommands: gen, validate, project, solve, transform, core check,
core enum, core cyclic.  Reports are JSON on stdout (``--human`` switches
to a readable rendering).  Exit codes: 0 success, 1 infeasible-as-answer,
2 usage or data error.  ``SYMCORE_LOG`` sets the logging level.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .corepoints import (DEFAULT_BOX_CAP, DEFAULT_ORBIT_CAP,
                         cyclic_example_point, enumerate_core_points_in_box,
                         hull_lattice_free, is_core_point)
from .errors import ParseError, SymcoreError
from .generator import GenParams, generate_instance
from .groups import orbit_of_vector, parse_group
from .model import load_instance, save_instance, validate_symmetry
from .projection import DEFAULT_FIBER_CAP, project_polyhedron
from .rationals import format_rat
from .solver import solve_bb, solve_fiber
from .transform import export_model, lift_solution, transform_instance

log = logging.getLogger("symcore")


def _num(x):
    return x if isinstance(x, int) else format_rat(x)


def _vec(xs):
    return [_num(v) for v in xs]


def _emit(report: dict, human: bool) -> None:
    if human:
        for key, value in report.items():
            print(f"{key}: {json.dumps(value)}")
    else:
        print(json.dumps(report))


def _parse_int_vector(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}")


def _parse_box(text: str) -> tuple:
    parts = text.split("..")
    if len(parts) != 2:
        raise ParseError(f"expected a box of the form lo..hi, got {text!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"box corners must be integers, got {text!r}")
    if lo > hi:
        raise ParseError(f"empty box {text!r}")
    return lo, hi


def _load_group(path, n=None):
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise ParseError(f"{path}: invalid JSON: {e}")
    return parse_group(data, n=n)


def _cmd_gen(args) -> int:
    blocks = _parse_int_vector(args.blocks)
    inst = generate_instance(GenParams(blocks, args.seed, row_cap=args.row_cap))
    if args.out:
        save_instance(inst, args.out)
        _emit({"status": "ok", "out": args.out, "n": inst.n,
               "rows": len(inst.rows), "seed": args.seed,
               "blocks": list(blocks)}, args.human)
    else:
        from .model import instance_to_json
        print(json.dumps(instance_to_json(inst)))
    return 0


def _cmd_validate(args) -> int:
    inst = load_instance(args.instance)
    report = validate_symmetry(inst)
    out = {"status": "symmetric" if report.is_symmetric else "not-symmetric",
           "violations": [{"generator": list(w.generator), "kind": w.kind,
                           "row_index": w.row_index, "detail": w.detail}
                          for w in report.witnesses[:10]],
           "violation_count": len(report.witnesses)}
    _emit(out, args.human)
    return 0 if report.is_symmetric else 2


def _cmd_project(args) -> int:
    inst = load_instance(args.instance)
    proj = project_polyhedron(inst)
    _emit({"status": "ok", "d": proj.d,
           "block_sizes": list(proj.block_sizes),
           "rows": [{"a": _vec(a), "b": _num(b)} for a, b in proj.rows]},
          args.human)
    return 0


def _solution_report(sol, method: str) -> dict:
    out = {"status": sol.status, "method": method,
           "objective": None if sol.objective is None else _num(sol.objective),
           "point": None if sol.point is None else _vec(sol.point),
           "stats": {k: (round(v, 6) if isinstance(v, float) else v)
                     for k, v in sol.stats.items()}}
    return out


def _cmd_solve(args) -> int:
    inst = load_instance(args.instance)
    if args.method == "fiber":
        sol = solve_fiber(inst, threads=args.threads, fiber_cap=args.fiber_cap)
        report = _solution_report(sol, "fiber")
    elif args.method == "bb":
        sol = solve_bb(inst.rows, inst.objective, group=inst.group)
        report = _solution_report(sol, "bb")
    else:
        ti = transform_instance(inst)
        sol = solve_bb(ti.lp_rows(), ti.objective)
        if sol.status == "optimal":
            point = lift_solution(ti, sol.point)
            sol = type(sol)(status=sol.status, point=point,
                            objective=sol.objective,
                            certificate=sol.certificate, stats=sol.stats)
        report = _solution_report(sol, "transform")
    _emit(report, args.human)
    return 0 if sol.status == "optimal" else 1


def _cmd_transform(args) -> int:
    inst = load_instance(args.instance)
    ti = transform_instance(inst)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump({"var_names": list(ti.var_names),
                       "rows": [{"a": _vec(a), "b": _num(b), "kind": kind}
                                for a, b, kind in ti.rows],
                       "objective": _vec(ti.objective),
                       "sense": ti.sense}, fh)
            fh.write("\n")
    if args.export_lp:
        export_model(ti, args.export_lp)
    _emit({"status": "ok", "variables": ti.num_vars, "rows": len(ti.rows),
           "out": args.out, "export_lp": args.export_lp}, args.human)
    return 0


def _core_gens(args, n: int):
    group = _load_group(args.group_file, n=n)
    return group.oracle_generators()


def _cmd_core_check(args) -> int:
    z = _parse_int_vector(args.point)
    gens = _core_gens(args, len(z))
    verdict = is_core_point(gens, z, orbit_cap=args.orbit_cap,
                            box_cap=args.box_cap)
    _emit({"status": "ok", "point": list(z), "core": verdict}, args.human)
    return 0


def _cmd_core_enum(args) -> int:
    lo, hi = _parse_box(args.box)
    group = _load_group(args.group_file)
    n = group.n
    gens = group.oracle_generators()
    found = enumerate_core_points_in_box(
        gens, (lo,) * n, (hi,) * n, hyperplane_k=args.hyperplane,
        orbit_cap=args.orbit_cap, box_cap=args.box_cap)
    _emit({"status": "ok", "box": [lo, hi], "count": len(found),
           "core_points": [list(z) for z in sorted(found)]}, args.human)
    return 0


def _cmd_core_cyclic(args) -> int:
    a = _parse_int_vector(args.a) if args.a else ()
    z = cyclic_example_point(args.n, a)
    from .corepoints import shift_generator
    gens = [shift_generator(args.n)]
    orbit = sorted(orbit_of_vector(gens, z, cap=args.orbit_cap))
    core = hull_lattice_free(orbit, box_cap=args.box_cap)
    with_origin = hull_lattice_free(orbit + [(0,) * args.n],
                                    box_cap=args.box_cap)
    _emit({"status": "ok", "point": list(z), "orbit_size": len(orbit),
           "core": core, "lattice_free_with_origin": with_origin},
          args.human)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symcore")
    p.add_argument("--human", action="store_true",
                   help="readable output instead of one-line JSON")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a seeded random instance")
    g.add_argument("--blocks", required=True, help="block sizes k1,k2,...")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--row-cap", type=int, default=2_000_000)
    g.add_argument("--out", help="instance file to write (default: stdout)")
    g.set_defaults(func=_cmd_gen)

    v = sub.add_parser("validate", help="check group symmetry of an instance")
    v.add_argument("instance")
    v.set_defaults(func=_cmd_validate)

    pr = sub.add_parser("project", help="print the projected polyhedron")
    pr.add_argument("instance")
    pr.set_defaults(func=_cmd_project)

    s = sub.add_parser("solve", help="solve an instance exactly")
    s.add_argument("instance")
    s.add_argument("--method", choices=("fiber", "bb", "transform"),
                   default="fiber")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--fiber-cap", type=int, default=DEFAULT_FIBER_CAP)
    s.set_defaults(func=_cmd_solve)

    t = sub.add_parser("transform", help="emit the orbit-reversed model")
    t.add_argument("instance")
    t.add_argument("--out", help="JSON model file to write")
    t.add_argument("--export-lp", help="LP-format model file to write")
    t.set_defaults(func=_cmd_transform)

    c = sub.add_parser("core", help="core point oracle commands")
    csub = c.add_subparsers(dest="core_command", required=True)

    cc = csub.add_parser("check", help="decide core-ness of one point")
    cc.add_argument("--group-file", required=True)
    cc.add_argument("--point", required=True, help="integer vector v1,v2,...")
    cc.add_argument("--orbit-cap", type=int, default=DEFAULT_ORBIT_CAP)
    cc.add_argument("--box-cap", type=int, default=DEFAULT_BOX_CAP)
    cc.set_defaults(func=_cmd_core_check)

    ce = csub.add_parser("enum", help="enumerate core points in a box")
    ce.add_argument("--group-file", required=True)
    ce.add_argument("--box", required=True, help="coordinate range lo..hi")
    ce.add_argument("--hyperplane", type=int, default=None,
                    help="restrict to coordinate sum = k")
    ce.add_argument("--orbit-cap", type=int, default=DEFAULT_ORBIT_CAP)
    ce.add_argument("--box-cap", type=int, default=DEFAULT_BOX_CAP)
    ce.set_defaults(func=_cmd_core_enum)

    cy = csub.add_parser("cyclic", help="lattice-free cyclic orbit simplex")
    cy.add_argument("--n", type=int, required=True, help="even dimension >= 4")
    cy.add_argument("--a", default="", help="parameters a2,...,a_{n/2}")
    cy.add_argument("--orbit-cap", type=int, default=DEFAULT_ORBIT_CAP)
    cy.add_argument("--box-cap", type=int, default=DEFAULT_BOX_CAP)
    cy.set_defaults(func=_cmd_core_cyclic)

    return p


def run(argv) -> int:
    level = os.environ.get("SYMCORE_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except (SymcoreError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
