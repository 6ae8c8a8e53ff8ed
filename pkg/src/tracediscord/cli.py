"""Command line entry point: ``tdd compute``, ``tdd spin-chain`` and ``tdd make``.

Exit codes: 0 success, 1 unreadable input or bad parameters, 2 the input is
not a valid state (or violates a constructor constraint), 3 the requested
closed form does not apply, 4 a ``--verify`` cross-check failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import oracle, spinchain, state, tdd
from .errors import InvalidConfig, NotApplicable, ValidationError

EXIT_OK, EXIT_INPUT, EXIT_INVALID, EXIT_NOT_APPLICABLE, EXIT_VERIFY = 0, 1, 2, 3, 4
VERIFY_NUMERIC_TOL = 1e-8
VERIFY_ORACLE_TOL = 1e-6


class InputError(Exception):
    """Unreadable or malformed input; the message says where."""


def _vector(text: str) -> np.ndarray:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    return np.array(values)


def _vector3(text: str) -> np.ndarray:
    v = _vector(text)
    if v.shape != (3,):
        raise argparse.ArgumentTypeError(f"expected 3 comma-separated numbers, got {text!r}")
    return v


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number such as 0.1 or 0.1+0.05j, got {text!r}") from None


def minimizer_config(verify: bool = False) -> tdd.MinimizerConfig:
    """Default minimizer settings, with the grid overridable through ``TDD_GRID=64x128``."""
    raw = os.environ.get("TDD_GRID")
    if not raw:
        return tdd.MinimizerConfig(verify=verify)
    try:
        n_theta, n_phi = (int(v) for v in raw.lower().split("x"))
    except ValueError:
        raise InvalidConfig(f"TDD_GRID must look like 64x128, got {raw!r}") from None
    return tdd.MinimizerConfig(grid=(n_theta, n_phi), verify=verify)


def read_state(path: str) -> state.DensityMatrix:
    """Load the state JSON; :class:`InputError` for I/O and syntax, ValidationError for physics."""
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: cannot read: {exc.strerror or exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    try:
        m = state.matrix_from_json_obj(obj)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None
    return state.validate(m)


def _oracle_result(rho) -> tdd.TddResult:
    value, axis = oracle.definition_minimum(rho)
    return tdd.TddResult(value=value, method=tdd.Method.ORACLE, axis=axis)


def _clean(v: float) -> float:
    # keep "-0.000000000" out of the text report
    return 0.0 if abs(v) < 5e-10 else float(v)


def _report(res: tdd.TddResult, checks: dict, as_json: bool) -> str:
    if as_json:
        d = res.direction
        out = {
            "value": res.value,
            "method": res.method.value,
            "h_min": res.h_min,
            "direction": None if d is None else {"theta": d.theta, "phi": d.phi},
            "axis": None if res.axis is None else [float(v) for v in res.axis],
        }
        if checks:
            out["verify"] = checks
        return json.dumps(out, indent=2)
    parts = [f"{res.value:.9f}", f"method={res.method.value}"]
    if res.direction is not None:
        parts.append(f"theta={res.direction.theta:.9f} phi={res.direction.phi:.9f}")
    if res.axis is not None:
        parts.append("axis=" + ",".join(f"{_clean(v):.9f}" for v in res.axis))
    for key, val in checks.items():
        parts.append(f"{key}={val:.3e}" if isinstance(val, float) else f"{key}={val}")
    return " ".join(parts)


def cmd_compute(args) -> int:
    cfg = minimizer_config()
    rho = read_state(args.input)
    if args.method == "auto":
        res = tdd.tdd(rho, cfg)
    elif args.method == "closed":
        res = tdd.closed_form(rho)
    elif args.method == "numeric":
        res = tdd.tdd_numeric(state.to_bloch(rho), cfg)
    else:
        res = _oracle_result(rho)

    checks: dict = {}
    status = EXIT_OK
    if args.verify:
        numeric = res.value if res.method is tdd.Method.NUMERIC else tdd.tdd_numeric(state.to_bloch(rho), cfg).value
        reference = res.value if res.method is tdd.Method.ORACLE else oracle.tdd_definition(rho)
        checks["numeric_residual"] = abs(res.value - numeric)
        checks["oracle_residual"] = abs(res.value - reference)
        ok = checks["numeric_residual"] <= VERIFY_NUMERIC_TOL and checks["oracle_residual"] <= VERIFY_ORACLE_TOL
        checks["verified"] = "yes" if ok else "no"
        if not ok:
            status = EXIT_VERIFY
    print(_report(res, checks, args.json))
    return status


def _format(v: float) -> str:
    return format(v, ".12g")


def cmd_spin_chain(args) -> int:
    cfg = spinchain.ChainConfig.uniform(args.n, args.j, args.t_max, args.steps)
    samples = spinchain.run_series(cfg, minimizer_config())
    header = ["t", "abs_f", "d_closed", "d_xstate", "d_numeric"]
    rows = [[s.t, s.abs_f, s.d, s.d_xstate, s.d_numeric] for s in samples]
    t_peak, f_peak, d_peak = spinchain.series_peak(samples)
    summary = f"peak abs_f={_format(f_peak)} D={_format(d_peak)} at t={_format(t_peak)}"
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="ascii", newline="") as fh:
            _write_csv(fh, header, rows)
        print(summary)
    else:
        _write_csv(sys.stdout, header, rows)
        print(summary, file=sys.stderr)
    return EXIT_OK


def _write_csv(fh, header, rows) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_format(v) for v in row])


def cmd_make(args) -> int:
    if args.family == "qc":
        rho = state.make_quantum_classical(args.p, args.s0, args.s1)
    elif args.family == "x":
        if args.diag.shape != (4,):
            raise InputError("--diag needs 4 comma-separated numbers")
        rho = state.make_x_state(args.diag, args.rho32, args.rho41)
    else:
        rho = state.make_bell_diagonal(*args.c)
    text = json.dumps(state.to_json_obj(rho)) + "\n"
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tdd", description="One-sided trace distance discord of two-qubit states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="discord of a state given as JSON")
    p.add_argument("--input", required=True, help="state JSON file, or - for stdin")
    p.add_argument("--method", choices=["auto", "numeric", "oracle", "closed"], default="auto")
    p.add_argument("--verify", action="store_true", help="cross-check against the minimizer and the brute-force oracle")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="machine-readable output")
    fmt.add_argument("--text", dest="json", action="store_false", help="one-line output (default)")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("spin-chain", help="discord transferred along an XX chain, as CSV")
    p.add_argument("--n", type=int, default=3, help="chain length")
    p.add_argument("--j", type=float, default=1.0, help="coupling")
    p.add_argument("--t-max", type=float, default=5.0)
    p.add_argument("--steps", type=int, default=500)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_spin_chain)

    p = sub.add_parser("make", help="write a named family state as JSON")
    fam = p.add_subparsers(dest="family", required=True)
    q = fam.add_parser("qc", help="p rho0 (x) |0><0| + (1-p) rho1 (x) |1><1|")
    q.add_argument("--p", type=float, required=True)
    q.add_argument("--s0", type=_vector3, required=True, help="Bloch vector, e.g. 0,0,1")
    q.add_argument("--s1", type=_vector3, required=True)
    x = fam.add_parser("x", help="X-shaped state")
    x.add_argument("--diag", type=_vector, required=True, help="rho11,rho22,rho33,rho44")
    x.add_argument("--rho32", type=_complex, default=0j)
    x.add_argument("--rho41", type=_complex, default=0j)
    b = fam.add_parser("bell-diagonal", help="Bell-diagonal state with Gamma = diag(c)")
    b.add_argument("--c", type=_vector3, required=True, help="c1,c2,c3 (write --c=-1,-1,-1 for negatives)")
    for sp in (q, x, b):
        sp.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_make)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, InvalidConfig) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValidationError as exc:
        print(f"invalid state: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NotApplicable as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return EXIT_NOT_APPLICABLE


if __name__ == "__main__":
    sys.exit(main())
