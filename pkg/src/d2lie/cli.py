"""Command-line front end.

Subcommands: verify, cohomology, rigidity, integrability.  Exit codes:
0 = expected structure reproduced, 1 = usage error, 2 = mathematical
discrepancy (reported, never silently reconciled).
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import (
    Subspace,
    build_chevalley_D,
    center,
    check_jacobi,
    check_weight_additivity,
    expected_center_generators,
    format_label,
)
from .cohomology import cohomology_dim, h2_survey_rows
from .deformation import (
    VERDICT_NONTRIVIAL,
    VERDICT_ZERO,
    build_even_cocycle,
    deform_bracket,
    integrability_scan,
    rigidity_scan,
    scan_to_json,
    verify_deformation,
)
from .exterior import build_quotient_model
from .gf2 import GF2Matrix, bit_indices
from .roots import build_root_system, express_in_simple_roots, wzero

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DISCREPANCY = 2

DEFAULT_L_CAP = 10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # Usage problems exit 1; code 2 is reserved for mathematical findings.
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="d2lie", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn in (
        ("verify", cmd_verify),
        ("cohomology", cmd_cohomology),
        ("rigidity", cmd_rigidity),
        ("integrability", cmd_integrability),
    ):
        sp = sub.add_parser(name)
        sp.add_argument("--l", type=int, required=True, help="rank (3..max-l)")
        sp.add_argument(
            "--model",
            choices=("chevalley", "exterior"),
            default="chevalley",
            help="chevalley: structure-constant algebra; exterior: wedge-square model (odd rank)",
        )
        sp.add_argument("--out", default=None, help="write a JSON report here")
        sp.add_argument("--jobs", type=int, default=1, help="worker threads for weight blocks")
        sp.add_argument(
            "--max-l",
            type=int,
            default=DEFAULT_L_CAP,
            help=f"raise the rank cap past {DEFAULT_L_CAP} (expect long runtimes)",
        )
        sp.set_defaults(func=fn)
    return p


def _validate(args) -> None:
    if args.l < 3:
        raise UsageError(f"rank must be at least 3, got {args.l}")
    if args.l > args.max_l:
        raise UsageError(
            f"rank {args.l} above the cap {args.max_l}; pass --max-l to override"
        )
    if args.l > DEFAULT_L_CAP:
        print(
            f"warning: rank {args.l} exceeds the default cap; runtimes grow steeply",
            file=sys.stderr,
        )
    if args.model == "exterior" and args.l % 2 == 0:
        raise UsageError("the exterior model exists only at odd rank")
    if args.command == "rigidity" and (args.l % 2 == 0 or args.l < 5):
        raise UsageError("rigidity applies at odd rank >= 5")
    if args.command == "integrability" and args.l % 2:
        raise UsageError("integrability applies at even rank")


def _write_json(path: str, doc: dict) -> None:
    with open(path, "w") as f:
        json.dump(doc, f, indent=2, sort_keys=True)
        f.write("\n")


def _build(args):
    if args.model == "exterior":
        return build_quotient_model(args.l).algebra
    return build_chevalley_D(args.l)


def _weight_row(system, w) -> dict:
    coeffs = express_in_simple_roots(w, system)
    return {
        "eps_coords": list(w),
        "simple_root_coords": list(coeffs) if coeffs is not None else None,
    }


def cmd_verify(args) -> int:
    L = _build(args)
    jr = check_jacobi(L)
    additive = check_weight_additivity(L)
    Z = center(L)
    gens = [
        "+".join(format_label(L.labels[i]) for i in bit_indices(r))
        for r in Z.canonical().rows
    ]
    print(f"dim {L.dim}")
    print(f"jacobi {'PASS' if jr.ok else f'FAIL at {jr.triple}'}")
    print(f"weight additivity {'PASS' if additive else 'FAIL'}")
    print(f"centre dim {Z.dim}" + (f": {{{', '.join(gens)}}}" if gens else ""))

    ok = jr.ok and additive
    if args.model == "chevalley":
        expected = Subspace(
            L.dim, GF2Matrix.from_rows(expected_center_generators(args.l))
        )
        if not Z.same_space(expected):
            print("centre differs from the expected generators", file=sys.stderr)
            ok = False
    else:
        if Z.dim != 0:
            print("exterior model should be centreless", file=sys.stderr)
            ok = False
    if args.out:
        _write_json(
            args.out,
            {
                "command": "verify",
                "l": args.l,
                "model": args.model,
                "dim": L.dim,
                "jacobi": jr.ok,
                "weight_additivity": additive,
                "centre_dim": Z.dim,
                "centre_generators": gens,
                "pass": ok,
            },
        )
    return EXIT_OK if ok else EXIT_DISCREPANCY


def cmd_cohomology(args) -> int:
    L = _build(args)
    system = build_root_system(args.l)
    rows = h2_survey_rows(L, jobs=args.jobs)
    total = sum(r["dim_h2"] for r in rows)
    h2_zero = cohomology_dim(L, wzero(args.l))
    print(f"dim H^2 = {total} over {len(rows)} weights; at weight 0: {h2_zero}")
    for r in rows:
        coeffs = express_in_simple_roots(r["weight"], system)
        print(
            f"  weight {list(r['weight'])} ~ simple-root coords {list(coeffs) if coeffs else '?'}"
            f" : dim {r['dim_h2']}"
        )

    expected: int | None = None
    if args.model == "exterior":
        expected = 2 * args.l
    elif args.l % 2 == 0:
        expected = 24 if args.l == 4 else 2 * args.l
    ok = h2_zero == 0 and (expected is None or total == expected)
    if expected is not None and total != expected:
        print(f"expected total {expected}, computed {total}", file=sys.stderr)
    if args.out:
        _write_json(
            args.out,
            {
                "command": "cohomology",
                "l": args.l,
                "model": args.model,
                "total_dim_h2": total,
                "dim_h2_at_zero": h2_zero,
                "expected_total": expected,
                "weights": [
                    {
                        **_weight_row(system, r["weight"]),
                        "dim_c2": r["dim_c2"],
                        "dim_z2": r["dim_z2"],
                        "dim_b2": r["dim_b2"],
                        "dim_h2": r["dim_h2"],
                    }
                    for r in rows
                ],
                "pass": ok,
            },
        )
    return EXIT_OK if ok else EXIT_DISCREPANCY


def cmd_rigidity(args) -> int:
    model = build_quotient_model(args.l)
    reports = rigidity_scan(model, jobs=args.jobs)
    ok = bool(reports) and all(r.verdict == VERDICT_NONTRIVIAL for r in reports)
    for r in reports:
        print(f"  weight {list(r.weight)}: {r.verdict}")
    print(
        f"{len(reports)} classes; "
        + ("all obstructed: rigid" if ok else "unobstructed classes found")
    )
    if args.out:
        doc = scan_to_json(args.l, "rigidity", reports)
        doc["pass"] = ok
        _write_json(args.out, doc)
    return EXIT_OK if ok else EXIT_DISCREPANCY


def cmd_integrability(args) -> int:
    L = _build(args)
    reports = integrability_scan(L, jobs=args.jobs)
    deform_ok = True
    for r in reports:
        psi = build_even_cocycle(L, r.weight)
        vr = verify_deformation(deform_bracket(L, psi))
        deform_ok = deform_ok and vr.ok
        print(
            f"  weight {list(r.weight)}: {r.verdict}"
            f" deformation {'PASS' if vr.ok else 'FAIL'}"
        )
    ok = (
        bool(reports)
        and all(r.verdict == VERDICT_ZERO for r in reports)
        and deform_ok
    )
    print(
        f"{len(reports)} classes; "
        + ("all integrable" if ok else "obstructions or deformation failures found")
    )
    if args.out:
        doc = scan_to_json(args.l, "integrability", reports)
        doc["deformations_verified"] = deform_ok
        doc["pass"] = ok
        _write_json(args.out, doc)
    return EXIT_OK if ok else EXIT_DISCREPANCY


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
