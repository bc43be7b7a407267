"""Command-line interface.

Every command is a thin adapter over one library operation; input and
output are JSON.  Exit codes: 0 when the command succeeds and the checked
property holds, 1 when a checked property fails (an identity, a quasi-ideal
verdict, an isomorphism, a lemma clause), 2 on malformed input, unusable
flags or an exceeded budget.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import census as census_mod
from . import families as families_mod
from .algebra import (
    LeibnizAlgebra,
    center,
    is_lie,
    is_nilpotent,
    is_solvable,
    is_symmetric,
    series,
    squares_ideal,
    table_from_json,
    validate,
)
from .errors import QuasileibError
from .fields import parse_field, parse_scalar
from .linalg import DEFAULT_BUDGET, echelonize
from .quasi import core, is_quasi_ideal, quasi_ideals


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_algebra(path) -> LeibnizAlgebra:
    return LeibnizAlgebra(table_from_json(_load_json(path)))


def _load_table(path):
    return table_from_json(_load_json(path))


def _load_subspace(alg, path):
    gens = _load_json(path)
    vectors = [tuple(alg.field.decode(s) for s in row) for row in gens]
    return echelonize(alg.field, alg.dim, vectors)


def _emit(obj, out_path):
    text = json.dumps(obj, indent=1, sort_keys=True)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _cmd_validate(args):
    table = _load_table(args.algebra)
    result = validate(table, args.mode)
    _emit(result.to_json(), args.out)
    return 0 if result.ok else 1


def _cmd_info(args):
    alg = _load_algebra(args.algebra)
    lower = [s.dim for s in series(alg, kind="lower_central")]
    derived = [s.dim for s in series(alg, kind="derived")]
    _emit(
        {
            "dim": alg.dim,
            "field": alg.field.to_json(),
            "basis_names": list(alg.basis_names),
            "is_lie": is_lie(alg),
            "is_symmetric": is_symmetric(alg),
            "is_nilpotent": is_nilpotent(alg),
            "is_solvable": is_solvable(alg),
            "dim_squares_ideal": squares_ideal(alg).dim,
            "dim_center": center(alg).dim,
            "lower_central_dims": lower,
            "derived_dims": derived,
        },
        args.out,
    )
    return 0


def _cmd_quasi(args):
    alg = _load_algebra(args.algebra)
    if args.action == "check":
        h = _load_subspace(alg, args.subspace)
        verdict = is_quasi_ideal(alg, h)
        _emit(verdict.to_json(), args.out)
        return 0 if verdict.holds else 1
    found = quasi_ideals(alg, budget=args.budget)
    _emit({"count": len(found), "quasi_ideals": [s.to_json() for s in found]}, args.out)
    return 0


def _cmd_core(args):
    alg = _load_algebra(args.algebra)
    h = _load_subspace(alg, args.subspace)
    result = core(alg, h)
    _emit({"dim": result.dim, "basis": result.to_json()}, args.out)
    return 0


def _cmd_series(args):
    alg = _load_algebra(args.algebra)
    h = _load_subspace(alg, args.subspace) if args.subspace else None
    chain = series(alg, h, args.kind)
    _emit(
        {
            "kind": args.kind,
            "dims": [s.dim for s in chain],
            "terms": [s.to_json() for s in chain],
        },
        args.out,
    )
    return 0


def _cmd_classify(args):
    alg = _load_algebra(args.algebra)
    result = census_mod.classify_q_member(alg, budget=args.budget)
    in_q = None
    if alg.field.is_finite:
        in_q, _ = census_mod.in_class_q(alg, budget=args.budget)
    out = result.to_json()
    out["in_q"] = in_q
    _emit(out, args.out)
    return 0


def _cmd_family(args):
    field = parse_field(args.field)
    params = {}
    if args.dim is not None:
        params["dim"] = args.dim
    if args.dim_i is not None:
        params["dim_i"] = args.dim_i
    if args.dim_z is not None:
        params["dim_z"] = args.dim_z
    if args.lam is not None:
        lam = parse_scalar(field, args.lam)
        params["lam"] = lam
        params["lambdas"] = (lam,)
    if args.rank is not None:
        params["gram"] = families_mod.default_anisotropic_gram(field, args.rank)
    spec = families_mod.FamilySpec(args.name, field, params)
    alg = families_mod.build(spec)
    _emit(alg.table.to_json(), args.out)
    return 0


def _cmd_census(args):
    field = parse_field(args.field)
    mode = "sample" if args.sample else "exhaustive"
    report = census_mod.sweep_tables(
        field,
        args.dim,
        mode=mode,
        sample_size=args.sample or 0,
        seed=args.seed,
        workers=args.workers,
        budget=args.budget,
        run_lemmas=args.lemmas,
    )
    _emit(report.to_json(), args.out)
    return 1 if report.lemma_failures else 0


def _cmd_lemmas(args):
    alg = _load_algebra(args.algebra)
    report = census_mod.lemma_harness([("algebra", alg)], budget=args.budget)
    _emit(report.to_json(), args.out)
    return 0 if report.ok() else 1


def _cmd_isomorphic(args):
    a = _load_algebra(args.first)
    b = _load_algebra(args.second)
    result = census_mod.are_isomorphic(a, b, budget=args.budget)
    _emit({"isomorphic": result}, args.out)
    return 0 if result else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasileib",
        description="Exact quasi-ideal analysis of finite-dimensional "
        "Leibniz algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write the JSON report here instead of stdout")
        p.add_argument(
            "--budget",
            type=int,
            default=DEFAULT_BUDGET,
            help="enumeration cap (default %(default)s)",
        )
        p.add_argument("--seed", type=int, default=0, help="sampling seed")

    p = sub.add_parser("validate", help="check a multiplication table identity")
    p.add_argument("algebra", help="algebra JSON file")
    p.add_argument("--mode", choices=("right", "left", "lie"), default="right")
    common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("info", help="print structural invariants")
    p.add_argument("algebra")
    common(p)
    p.set_defaults(func=_cmd_info)

    p = sub.add_parser("quasi", help="quasi-ideal verdicts")
    p.add_argument("action", choices=("check", "list"))
    p.add_argument("--algebra", required=True)
    p.add_argument("--subspace", help="generator file (needed for check)")
    common(p)
    p.set_defaults(func=_cmd_quasi)

    p = sub.add_parser("core", help="largest ideal inside a subspace")
    p.add_argument("--algebra", required=True)
    p.add_argument("--subspace", required=True)
    common(p)
    p.set_defaults(func=_cmd_core)

    p = sub.add_parser("series", help="descending series of a subalgebra")
    p.add_argument("--algebra", required=True)
    p.add_argument("--subspace")
    p.add_argument(
        "--kind",
        choices=("lower_central", "derived", "omega_of_square"),
        default="lower_central",
    )
    common(p)
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("classify", help="match against the catalogue")
    p.add_argument("--algebra", required=True)
    common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("family", help="build a named family instance")
    p.add_argument("name", choices=families_mod.FAMILY_NAMES)
    p.add_argument("--field", default="q", help="gf2, gf3, q, gf2(t), ...")
    p.add_argument("--dim", type=int)
    p.add_argument("--dim-i", dest="dim_i", type=int)
    p.add_argument("--dim-z", dest="dim_z", type=int)
    p.add_argument("--lambda", dest="lam", help="family coefficient, e.g. t")
    p.add_argument("--rank", type=int, help="rank of the shipped default form")
    common(p)
    p.set_defaults(func=_cmd_family)

    p = sub.add_parser("census", help="sweep small multiplication tables")
    p.add_argument("--field", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true", default=False)
    p.add_argument("--sample", type=int, help="sample this many tables instead")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--lemmas", action="store_true", help="also run the lemma harness")
    common(p)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("lemmas", help="run the lemma harness on one algebra")
    p.add_argument("--algebra", required=True)
    common(p)
    p.set_defaults(func=_cmd_lemmas)

    p = sub.add_parser("isomorphic", help="exhaustive isomorphism test")
    p.add_argument("first")
    p.add_argument("second")
    common(p)
    p.set_defaults(func=_cmd_isomorphic)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QuasileibError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
