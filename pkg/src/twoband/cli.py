"""Command-line front end: sweeps, verification suites, and point diagnostics.

Exit codes: 0 success, 1 verification failure, 2 bad configuration,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Dict, List, Optional

from .bloch import (BlochVector, GlobalReference, PiecewiseBlochReference,
                    ReferenceState)
from .bounds_duality import (bound_check, complexity_duality_check,
                             fs_duality_check, ratio_R, self_dual_constraint)
from .errors import SpecError, TwoBandError
from .models import (DualSSHParams, MassiveDiracParams, SSHParams,
                     massive_dirac_model, ssh_model)
from .quadrature import BZQuadratureConfig
from .sweeps import (MODEL_NAMES, QUANTITIES, SweepSpec, records_to_csv,
                     records_to_json, run_sweep, write_records)
from .topology import dual_windings, winding_cross_product, winding_log_derivative
from .verification import SUITES, run_suite

import numpy as np

PI = math.pi

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_SPEC_ERROR = 2
EXIT_NUMERICAL = 3


def _parse_set(items: Optional[List[str]]) -> Dict[str, float]:
    out: Dict[str, float] = {}
    for item in items or []:
        if "=" not in item:
            raise SpecError(f"--set expects key=value, got {item!r}")
        key, _, val = item.partition("=")
        try:
            out[key.strip()] = float(val)
        except ValueError as exc:
            raise SpecError(f"--set value for {key!r} is not a number: {val!r}") from exc
    return out


def _parse_sweep(text: str):
    parts = text.split(":")
    if len(parts) != 4:
        raise SpecError("--sweep expects name:start:stop:points")
    name, start, stop, points = parts
    try:
        return name, float(start), float(stop), int(points)
    except ValueError as exc:
        raise SpecError(f"bad --sweep specification {text!r}") from exc


def _read_config(path: str) -> Dict[str, str]:
    values: Dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise SpecError(f"config line must be key = value: {raw.rstrip()!r}")
            key, _, val = line.partition("=")
            values[key.strip()] = val.strip()
    return values


def _read_piecewise(path: str) -> PiecewiseBlochReference:
    pieces = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if len(fields) != 5:
                raise SpecError("piecewise reference lines are: k_lo k_hi nx ny nz")
            lo, hi, nx, ny, nz = map(float, fields)
            pieces.append((lo, hi, BlochVector(nx, ny, nz)))
    return PiecewiseBlochReference(tuple(pieces))


def _reference(args) -> ReferenceState:
    if getattr(args, "ref_piecewise", None):
        return _read_piecewise(args.ref_piecewise)
    theta, phi = args.theta, args.phi
    if getattr(args, "degrees", False):
        theta, phi = math.radians(theta), math.radians(phi)
    return GlobalReference(theta, phi)


def _quad_config(args) -> BZQuadratureConfig:
    return BZQuadratureConfig(abs_tol=args.abs_tol, rel_tol=args.rel_tol)


def _add_tolerance_options(p):
    p.add_argument("--abs-tol", type=float, default=1e-10,
                   help="absolute quadrature tolerance")
    p.add_argument("--rel-tol", type=float, default=1e-10,
                   help="relative quadrature tolerance")


def _add_reference_options(p):
    p.add_argument("--theta", type=float, default=0.5 * PI,
                   help="reference polar angle (radians unless --degrees)")
    p.add_argument("--phi", type=float, default=PI,
                   help="reference azimuthal angle (radians unless --degrees)")
    p.add_argument("--degrees", action="store_true",
                   help="interpret --theta/--phi in degrees")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twoband",
        description="Spread complexity, fidelity susceptibility, winding numbers "
                    "and duality maps for two-band Bloch Hamiltonians.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run a parameter sweep and emit CSV/JSON")
    p.add_argument("--model", choices=MODEL_NAMES, help="model family")
    p.add_argument("--set", action="append", metavar="KEY=VAL",
                   help="fix a model parameter (repeatable)")
    p.add_argument("--sweep", metavar="NAME:START:STOP:POINTS",
                   help="swept parameter and grid")
    p.add_argument("--quantities", default="complexity",
                   help="comma list from: " + ",".join(QUANTITIES))
    p.add_argument("--ref-piecewise", metavar="FILE",
                   help="piecewise reference file (k_lo k_hi nx ny nz per line)")
    p.add_argument("--config", metavar="FILE",
                   help="flat key = value config file; flags override it")
    p.add_argument("--out", metavar="PATH",
                   help="output file (.csv or .json); default prints CSV")
    p.add_argument("--jobs", type=int, default=1, help="worker threads")
    _add_reference_options(p)
    _add_tolerance_options(p)

    p = sub.add_parser("nh-sweep", help="sweep the lossy chain (complexity + derivative)")
    p.add_argument("--set", action="append", metavar="KEY=VAL")
    p.add_argument("--sweep", metavar="NAME:START:STOP:POINTS", required=True)
    p.add_argument("--quantities", default="complexity,dcomplexity")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--jobs", type=int, default=1)
    _add_reference_options(p)
    _add_tolerance_options(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])

    p = sub.add_parser("winding", help="winding numbers of a model")
    p.add_argument("--model", choices=("ssh", "massive-dirac", "dual-ssh"), required=True)
    p.add_argument("--set", action="append", metavar="KEY=VAL")
    p.add_argument("--grid-size", type=int, default=1024)

    p = sub.add_parser("duality", help="susceptibility/complexity duality residuals")
    p.add_argument("--set", action="append", metavar="KEY=VAL")
    _add_reference_options(p)
    _add_tolerance_options(p)

    p = sub.add_parser("bound", help="check the derivative-susceptibility bound at one point")
    p.add_argument("--model", choices=("ssh", "massive-dirac"), required=True)
    p.add_argument("--set", action="append", metavar="KEY=VAL")
    p.add_argument("--lam", type=float, required=True, help="parameter value")
    _add_reference_options(p)
    _add_tolerance_options(p)

    p = sub.add_parser("ratio", help="saturation ratio R at one parameter value")
    p.add_argument("--model", choices=("ssh", "massive-dirac"), required=True)
    p.add_argument("--set", action="append", metavar="KEY=VAL")
    p.add_argument("--lam", type=float, required=True)
    _add_reference_options(p)
    _add_tolerance_options(p)

    return parser


def _apply_config(args) -> None:
    if not getattr(args, "config", None):
        return
    conf = _read_config(args.config)
    defaults = build_parser().parse_args(["sweep"])
    sets = _parse_set(getattr(args, "set", None))
    for key, val in conf.items():
        if key.startswith("set."):
            sets.setdefault(key[4:], float(val))
        elif key == "model" and args.model is None:
            args.model = val
        elif key == "sweep" and args.sweep is None:
            args.sweep = val
        elif key == "quantities" and args.quantities == defaults.quantities:
            args.quantities = val
        elif key == "theta" and args.theta == defaults.theta:
            args.theta = float(val)
        elif key == "phi" and args.phi == defaults.phi:
            args.phi = float(val)
        elif key == "degrees" and not args.degrees:
            args.degrees = val.lower() in ("1", "true", "yes")
        elif key == "out" and args.out is None:
            args.out = val
        elif key in ("abs-tol", "abs_tol") and args.abs_tol == defaults.abs_tol:
            args.abs_tol = float(val)
        elif key in ("rel-tol", "rel_tol") and args.rel_tol == defaults.rel_tol:
            args.rel_tol = float(val)
        elif key == "jobs" and args.jobs == defaults.jobs:
            args.jobs = int(val)
    args.set = [f"{k}={v}" for k, v in sets.items()]


def _cmd_sweep(args, model_override: Optional[str] = None) -> int:
    if model_override is None:
        _apply_config(args)
        model = args.model
    else:
        model = model_override
    if model is None:
        raise SpecError("a sweep needs --model (or a config file providing it)")
    if args.sweep is None:
        raise SpecError("a sweep needs --sweep name:start:stop:points")
    spec = SweepSpec(
        model=model,
        sweep=_parse_sweep(args.sweep),
        fixed=_parse_set(args.set),
        reference=_reference(args),
        quantities=tuple(q.strip() for q in args.quantities.split(",") if q.strip()),
    )
    records = run_sweep(spec, _quad_config(args), jobs=args.jobs)
    if args.out:
        write_records(spec, records, args.out)
    else:
        sys.stdout.write(records_to_csv(spec, records))
    return EXIT_OK


def _cmd_verify(args) -> int:
    results = run_suite(args.suite)
    failures = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        failures += 0 if res.passed else 1
        print(f"[{status}] {res.name}: residual={res.residual:.3e} tolerance={res.tolerance:.3e}")
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return EXIT_OK if failures == 0 else EXIT_VERIFY_FAILED


def _cmd_winding(args) -> int:
    sets = _parse_set(args.set)
    if args.model == "ssh":
        t1 = sets.get("t1", 1.0)
        t2 = sets.get("t2", 1.0)
        nu = winding_log_derivative(lambda k: t1 - t2 * np.exp(1j * k), args.grid_size)
        planar = winding_cross_product(ssh_model(SSHParams(t1, t2)), max(args.grid_size, 4096))
        print(f"winding(contour) = {nu}")
        print(f"winding(planar)  = {planar:.12f}")
    elif args.model == "massive-dirac":
        mu = sets.get("mu", 1.0)
        planar = winding_cross_product(massive_dirac_model(MassiveDiracParams(mu=mu)),
                                       max(args.grid_size, 1024))
        print(f"winding(planar) = {planar:.12e}")
    else:
        nu_i, nu_ii = dual_windings(DualSSHParams(sets.get("t", 1.0), sets.get("r", 2.0)),
                                    args.grid_size)
        print(f"winding(I)  = {nu_i}")
        print(f"winding(II) = {nu_ii}")
    return EXIT_OK


def _cmd_duality(args) -> int:
    sets = _parse_set(args.set)
    params = DualSSHParams(t=sets.get("t", 1.0), r=sets.get("r", 2.0))
    ref = _reference(args)
    if not isinstance(ref, GlobalReference):
        raise SpecError("duality checks need a global reference state")
    cfg = _quad_config(args)
    lhs, rhs, resid = fs_duality_check(params, cfg)
    print(f"susceptibility: chiF_II(1/r)={lhs:.12e} r^4*chiF_I(r)={rhs:.12e} "
          f"relative residual={resid:.3e}")
    lhs, rhs, resid = complexity_duality_check(params, ref, cfg)
    print(f"complexity: C(1/r)={lhs:.12f} mapped={rhs:.12f} residual={resid:.3e}")
    constraint, c_at_r = self_dual_constraint(params, ref)
    print(f"self-dual constraint: 2C'(r)-H'(r)={constraint:.12f} C(r)={c_at_r:.12f}")
    return EXIT_OK


def _point_model(args):
    sets = _parse_set(args.set)
    if args.model == "ssh":
        return ssh_model(SSHParams(sets.get("t1", 1.0), sets.get("t2", 1.0)))
    return massive_dirac_model(MassiveDiracParams(t=sets.get("t", 1.0),
                                                  mu=sets.get("mu", 1.0)))


def _cmd_bound(args) -> int:
    ref = _reference(args)
    if not isinstance(ref, GlobalReference):
        raise SpecError("the bound is defined for momentum-independent references only")
    report = bound_check(_point_model(args), ref, args.lam, _quad_config(args))
    print(f"lambda={report.lam:.12g}")
    print(f"lhs=|dC/dlambda|={report.lhs:.12e}")
    print(f"rhs=4*pi*sum|Q_i|sqrt(chiF_i)={report.rhs:.12e}")
    print(f"satisfied={report.satisfied} ratio={report.ratio:.12f}")
    return EXIT_OK


def _cmd_ratio(args) -> int:
    ref = _reference(args)
    if not isinstance(ref, GlobalReference):
        raise SpecError("the ratio is defined for momentum-independent references only")
    value = ratio_R(_point_model(args), ref, args.lam, _quad_config(args))
    print(f"R({args.lam:g}) = {value:.12f}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "nh-sweep":
            return _cmd_sweep(args, model_override="nh-ssh")
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "winding":
            return _cmd_winding(args)
        if args.command == "duality":
            return _cmd_duality(args)
        if args.command == "bound":
            return _cmd_bound(args)
        if args.command == "ratio":
            return _cmd_ratio(args)
        raise SpecError(f"unknown command {args.command!r}")
    except SpecError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_SPEC_ERROR
    except (TwoBandError, FileNotFoundError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
