"""entroqubit command line.

Usage:
    entroqubit gen splus --phi 0.5
    entroqubit gen composed4 --phi 0.3,1.1,-0.4,2.0
    entroqubit entropy-scan --alpha 0.5,1,2 --grid 60 --n-states 200 --seed 7
    entroqubit verify all --seed 42 --out report.json

Exit codes: 0 pass, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from entroqubit import dynamics3, dynamics4, entropy, states
from entroqubit.core import (
    DEFAULT_TOLERANCES,
    Tolerances,
    bistochastic_residual,
    matrix_to_dict,
    orthogonality_residual,
)
from entroqubit.suites import SUITES, run_suite

SCHEMA_VERSION = 1
SCAN_COLUMNS = ("alpha", "phi", "max_deviation")
CLAIM_COLUMNS = ("suite", "claim", "ref", "measured", "relation", "bound", "passed")


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def parse_floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse number list {text!r}") from exc


def tolerances_from(args) -> Tolerances:
    d = DEFAULT_TOLERANCES
    return Tolerances(
        sum=args.tol_sum if args.tol_sum is not None else d.sum,
        orth=args.tol_orth if args.tol_orth is not None else d.orth,
        pos=args.tol_pos if args.tol_pos is not None else d.pos,
        ent=args.tol_ent if args.tol_ent is not None else d.ent,
    )


def to_csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(row[c]) for c in columns])
    return buf.getvalue()


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_matrix(family: str, phi: list[float], axis: int | None) -> np.ndarray:
    if family in ("splus", "sminus"):
        if len(phi) != 1:
            raise UsageError(f"{family} takes one angle")
        return (dynamics3.make_splus if family == "splus" else dynamics3.make_sminus)(phi[0])
    if family == "elem4":
        if len(phi) != 1 or axis is None:
            raise UsageError("elem4 takes one angle and --axis")
        try:
            return dynamics4.make_elementary(axis, phi[0])
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if len(phi) != 4:
        raise UsageError("composed4 takes four comma-separated angles")
    return dynamics4.make_composed(phi)


def cmd_gen(args) -> int:
    phi = parse_floats(args.phi)
    m = build_matrix(args.family, phi, args.axis)
    record = {
        "schema_version": SCHEMA_VERSION,
        "family": args.family,
        "params": {"phi": phi, **({"axis": args.axis} if args.family == "elem4" else {})},
        "matrix": matrix_to_dict(m),
        "det": float(np.linalg.det(m)),
        "orthogonality_residual": orthogonality_residual(m),
        "bistochastic_residual": bistochastic_residual(m),
        "unphysical": args.family == "sminus",
    }
    if args.format == "csv":
        text = "".join(",".join(fmt(float(x)) for x in row) + "\n" for row in m)
    else:
        text = to_json(record)
    emit(text, args.out)
    return 0


def entropy_scan(alphas, phis, n_states: int, seed: int, tol: Tolerances) -> list[dict]:
    """Max ``|H_a(S+(phi) p) - H_a(p)|`` over trine-domain states, per (alpha, phi)."""
    for a in alphas:
        if a < 0:
            raise UsageError(f"Renyi order must be >= 0, got {a}")
    rng = np.random.default_rng(seed)
    frame = states.default_frame(3)
    r = np.sqrt(rng.uniform(0, 1, n_states))
    th = rng.uniform(0, 2 * np.pi, n_states)
    pts = np.stack([r * np.sin(th), r * np.cos(th)], axis=1)
    # the extremal state on the first frame axis is always scanned
    pts = np.vstack([[0.0, 1.0], pts])
    ps = [states.bloch_to_state(b, frame, tol).entries for b in pts]
    rows = []
    for a in alphas:
        base = [entropy.renyi_entropy(p, a, tol=tol) for p in ps]
        for phi in phis:
            S = dynamics3.make_splus(phi)
            dev = max(abs(entropy.renyi_entropy(S @ p, a, tol=tol) - h)
                      for p, h in zip(ps, base))
            rows.append({"alpha": float(a), "phi": float(phi), "max_deviation": float(dev)})
    return rows


def cmd_entropy_scan(args) -> int:
    alphas = parse_floats(args.alpha)
    if args.phi:
        phis = parse_floats(args.phi)
    else:
        phis = list(np.arange(args.grid) * (2 * np.pi / args.grid))
    rows = entropy_scan(alphas, phis, args.n_states, args.seed, tolerances_from(args))
    if args.format == "json":
        text = to_json({"schema_version": SCHEMA_VERSION, "seed": args.seed,
                        "columns": list(SCAN_COLUMNS), "rows": rows})
    else:
        text = to_csv(SCAN_COLUMNS, rows)
    emit(text, args.out)
    return 0


def cmd_verify(args) -> int:
    tol = tolerances_from(args)
    claims = run_suite(args.suite, seed=args.seed, grid=args.grid, tol=tol)
    rows = [c.as_dict() for c in claims]
    passed = all(c.passed for c in claims)
    if args.format == "csv":
        text = to_csv(CLAIM_COLUMNS, rows)
    else:
        text = to_json({
            "schema_version": SCHEMA_VERSION,
            "suite": args.suite,
            "seed": args.seed,
            "grid": args.grid,
            "tolerances": {"sum": tol.sum, "orth": tol.orth, "pos": tol.pos, "ent": tol.ent},
            "passed": passed,
            "claims": rows,
        })
    emit(text, args.out)
    for c in claims:
        if not c.passed:
            print(f"FAIL [{c.suite}] {c.claim}: measured {fmt(c.measured)} "
                  f"{c.relation} {fmt(c.bound)} violated", file=sys.stderr)
    return 0 if passed else 1


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--grid", type=int, default=100)
    for name in ("sum", "orth", "pos", "ent"):
        p.add_argument(f"--tol-{name}", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entroqubit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit a dynamics matrix as JSON")
    gen.add_argument("family", choices=("splus", "sminus", "elem4", "composed4"))
    gen.add_argument("--phi", required=True, help="angle, or four comma-separated angles")
    gen.add_argument("--axis", type=int, default=None, help="fixed site 1..4 for elem4")
    _add_common(gen)
    gen.set_defaults(func=cmd_gen, default_format="json")

    scan = sub.add_parser("entropy-scan", help="Renyi entropy change under S+(phi)")
    scan.add_argument("--alpha", default="2")
    scan.add_argument("--phi", default=None, help="explicit comma-separated angles")
    scan.add_argument("--n-states", type=int, default=200)
    _add_common(scan)
    scan.set_defaults(func=cmd_entropy_scan, default_format="csv")

    ver = sub.add_parser("verify", help="run verification suites")
    ver.add_argument("suite", choices=SUITES + ("all",))
    _add_common(ver)
    ver.set_defaults(func=cmd_verify, default_format="json")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    if args.grid < 1:
        parser.error("--grid must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"entroqubit: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
