"""Command-line interface.

Subcommands: analyze, coeff, table1, scan, validate, channel.
Exit codes: 0 success, 2 input error, 3 unphysical state, 4 output I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .angular import (EulerAngles, clebsch_gordan_exact, wigner_6j_exact,
                      wigner_9j, wigner_d)
from .channel import (channel_squeezing, correlations, correlations_oracle,
                      couple_spin1, verify_correlations)
from .density import (check_positivity, classify_orientation, load_state_file,
                      purity_residual)
from .errors import (AngularMomentumError, HermiticityError,
                     LakinFrameUndefined, NoAlignment, SchemaError,
                     UnphysicalStateError)
from .halfint import HalfInt
from .scan import (ScanConfig, rows_as_dicts, run_scan, scan_backend,
                   write_csv)
from .squeezing import analyze
from .table1 import evaluate_table

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNPHYSICAL = 3
EXIT_IO = 4


def _angle(value: float, degrees: bool) -> float:
    return math.radians(value) if degrees else value


def _parse_axis(spec: str, default_step: float, scale=lambda x: x) -> np.ndarray:
    """Parse 'value' or 'start:stop[:step]' into a grid array."""
    parts = spec.split(":")
    if len(parts) == 1:
        return np.array([scale(float(parts[0]))])
    if len(parts) not in (2, 3):
        raise SchemaError(f"bad range {spec!r}; expected START:STOP[:STEP]")
    start, stop = float(parts[0]), float(parts[1])
    step = float(parts[2]) if len(parts) == 3 else default_step
    if step <= 0:
        raise SchemaError(f"step must be positive in {spec!r}")
    if stop < start:
        raise SchemaError(f"empty range {spec!r}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return scale(start + step * np.arange(count))


def cmd_analyze(args) -> int:
    _, rho = load_state_file(args.state)
    report = analyze(rho)
    json.dump(report.as_dict(phi_points=args.phi_points), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def _format_exact(sign: int, square) -> str:
    if sign == 0:
        return "0"
    prefix = "-" if sign < 0 else ""
    if square.denominator == 1 and math.isqrt(square.numerator) ** 2 == square.numerator:
        return f"{prefix}{math.isqrt(square.numerator)}"
    return f"{prefix}sqrt({square.numerator}/{square.denominator})"


def cmd_coeff(args) -> int:
    kind = args.kind
    vals = args.values
    counts = {"cg": 6, "6j": 6, "9j": 9, "d": 6}
    if len(vals) != counts[kind]:
        raise SchemaError(f"{kind} expects {counts[kind]} arguments, got {len(vals)}")
    if kind == "cg":
        nums = [HalfInt.of(v) for v in vals]
        sign, square = clebsch_gordan_exact(*nums)
        print(f"{sign * math.sqrt(square):.15g}")
        print(f"exact: {_format_exact(sign, square)}")
    elif kind == "6j":
        nums = [HalfInt.of(v) for v in vals]
        sign, square = wigner_6j_exact(*nums)
        print(f"{sign * math.sqrt(square):.15g}")
        print(f"exact: {_format_exact(sign, square)}")
    elif kind == "9j":
        nums = [HalfInt.of(v) for v in vals]
        print(f"{wigner_9j(*nums):.15g}")
    else:  # d
        k, qp, q = (HalfInt.of(v) for v in vals[:3])
        a, b, g = (_angle(float(v), args.degrees) for v in vals[3:])
        val = wigner_d(k, qp, q, EulerAngles(a, b, g))
        print(f"{val.real:.15g}{val.imag:+.15g}j")
    return EXIT_OK


def cmd_table1(args) -> int:
    results = evaluate_table()
    labels = ("Var_x0", "Var_y0", "Sz0/2")
    print(f"{'spin':>4} {'t2_0':>6} {'t2_2':>6} {'t1_0':>6}  "
          + "  ".join(f"{lab:>22}" for lab in labels))
    discrepant = 0
    for res in results:
        cells = []
        for i in range(3):
            flag = "match" if res.matches[i] else "DISCREPANT"
            cells.append(f"{res.computed[i]:8.4f} vs {res.row.printed[i]:>6} {flag:<10}")
            if not res.matches[i]:
                discrepant += 1
        print(f"{res.row.spin:>4} {res.row.t20:6.2f} {res.row.t22:6.2f} "
              f"{res.row.t10:6.2f}  " + "  ".join(cells))
    print(f"{discrepant} discrepant cell(s); closed-form expressions are "
          "authoritative, printed values kept for the record")
    return EXIT_OK


def cmd_scan(args) -> int:
    config = ScanConfig(
        p1=_parse_axis(args.p1, args.grid_step_p),
        p2=_parse_axis(args.p2, args.grid_step_p),
        theta=_parse_axis(args.theta, args.grid_step,
                          scale=lambda x: np.radians(x) if args.degrees else x),
        phi=_parse_axis(args.phi, args.grid_step,
                        scale=lambda x: np.radians(x) if args.degrees else x),
    )
    result = run_scan(config, jobs=args.jobs, backend=args.backend)
    if args.output == "-":
        _write_scan(result, sys.stdout, args.format)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            _write_scan(result, fh, args.format)
    return EXIT_OK


def _write_scan(result, fh, fmt: str) -> None:
    if fmt == "csv":
        write_csv(result, fh)
    else:
        json.dump(rows_as_dicts(result), fh, indent=2)
        fh.write("\n")


def cmd_validate(args) -> int:
    params, rho = load_state_file(args.state)
    pos = check_positivity(rho)
    orient = classify_orientation(rho)
    report = {
        "spin": str(rho.spin),
        "trace": rho.trace,
        "eigenvalues": [float(x) for x in pos.eigenvalues],
        "psd": pos.psd,
        "purity_residual": purity_residual(params),
        "oriented": orient.oriented,
        "orientation_axis": None if orient.axis is None else [float(x) for x in orient.axis],
        "populations": None if orient.populations is None else [float(x) for x in orient.populations],
    }
    if pos.spin1_bounds is not None:
        report["spin1_bounds"] = [
            {"name": b.name, "value": b.value, "lower": b.lower,
             "upper": b.upper, "satisfied": b.satisfied}
            for b in pos.spin1_bounds
        ]
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def cmd_channel(args) -> int:
    theta = _angle(args.theta, args.degrees)
    phi = _angle(args.phi, args.degrees)
    p1 = args.p1 * np.array([0.0, 0.0, 1.0])
    p2 = args.p2 * np.array([math.sin(theta), 0.0, math.cos(theta)])
    state = couple_spin1(p1, p2)
    sq = channel_squeezing(p1, p2, phi)
    closed = correlations(p1, p2, phi)
    oracle = correlations_oracle(p1, p2, phi)
    mismatches = verify_correlations(p1, p2, phi)
    report = {
        "p1_mag": args.p1, "p2_mag": args.p2,
        "theta_rad": theta, "phi_rad": phi,
        "weight": state.weight,
        "triplet_probability": state.triplet_probability,
        "tensors": {f"t{k}_{q}": [v.real, v.imag]
                    for (k, q), v in state.params.items()},
        "variance_perp": sq.variance_perp,
        "sz_expect": sq.sz_expect,
        "q_value": sq.q_value,
        "squeezed": sq.squeezed,
        "correlations_closed_form": closed.as_dict(),
        "correlations_oracle": oracle.as_dict(),
        "correlation_mismatches": [str(m) for m in mismatches],
    }
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinsqueeze",
        description="Squeezing analysis of mixed spin states and coupled "
                    "spin-1/2 pairs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="squeezing report for a state file")
    p.add_argument("state", help="JSON state file")
    p.add_argument("--phi-points", type=int, default=73,
                   help="samples of the transverse variance curve")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("coeff", help="coupling coefficients and rotation elements")
    p.add_argument("kind", choices=["cg", "6j", "9j", "d"])
    p.add_argument("values", nargs="+",
                   help="half-integers as '3/2' or '1.5'; for d: k q' q alpha beta gamma")
    p.add_argument("--degrees", action="store_true", help="angles in degrees")
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("table1", help="regression against the tabulated reference states")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("scan", help="channel-pair sweep to CSV/JSON")
    p.add_argument("--p1", default="0.9", help="magnitude or START:STOP[:STEP]")
    p.add_argument("--p2", default="0.85", help="magnitude or START:STOP[:STEP]")
    p.add_argument("--theta", default="0:180:1", help="angle or range between the polarizations")
    p.add_argument("--phi", default="0", help="transverse azimuth or range")
    p.add_argument("--degrees", action="store_true", help="angles in degrees")
    p.add_argument("--grid-step", type=float, default=1.0,
                   help="default angle step for ranges without one")
    p.add_argument("--grid-step-p", type=float, default=0.005,
                   help="default magnitude step for ranges without one")
    p.add_argument("--output", default="-", help="output path ('-' = stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--jobs", type=int, default=1, help="parallel chunks")
    p.add_argument("--backend", choices=["python", "cython"], default=None,
                   help=f"kernel override (default: {scan_backend()})")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("validate", help="positivity/purity/orientation report")
    p.add_argument("state", help="JSON state file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("channel", help="single-point channel squeezing + correlations")
    p.add_argument("--p1", type=float, required=True, help="|p1| in [0, 1]")
    p.add_argument("--p2", type=float, required=True, help="|p2| in [0, 1]")
    p.add_argument("--theta", type=float, required=True,
                   help="angle between the polarizations")
    p.add_argument("--phi", type=float, default=0.0, help="transverse azimuth")
    p.add_argument("--degrees", action="store_true", help="angles in degrees")
    p.set_defaults(func=cmd_channel)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnphysicalStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.eigenvalues is not None:
            print("eigenvalues: "
                  + " ".join(f"{x:.12g}" for x in exc.eigenvalues), file=sys.stderr)
        return EXIT_UNPHYSICAL
    except (SchemaError, AngularMomentumError, HermiticityError,
            LakinFrameUndefined, NoAlignment, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
