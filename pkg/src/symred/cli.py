"""Command-line interface.

Subcommands:

* ``check-polytope <spec>``  -- validate the polytope block, find an
  interior point, echo facet slacks;
* ``build <spec>``           -- echo all derived reduction data;
* ``verify <spec>``          -- run verification suites (exit 0 all pass,
  1 suite failure, 2 invalid input);
* ``flow <spec>``            -- integrate a named contact Hamiltonian;
* ``report <spec>``          -- run every suite and emit the full JSON
  report.

A spec argument is either a built-in name (cp1, cp2, cp1xcp1, hirzebruch1,
gr2c4, gr2c4xcp2) or a path to a JSON document.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import contact
from .errors import SymredError
from .moment import ReductionSpec, in_level_set, sample_level
from .report import (
    BUILTIN_SPECS,
    Report,
    RunConfig,
    SUITE_NAMES,
    Tolerances,
    builtin_spec,
    derived_data,
    load_spec,
    random_sphere_preserving_generator,
    run_suites,
    scaled_config,
)
from .toric import find_interior_point


def _resolve_spec(arg: str) -> ReductionSpec:
    if arg in BUILTIN_SPECS:
        return builtin_spec(arg)
    path = Path(arg)
    if not path.exists():
        raise SymredError(
            f"{arg!r} is neither a built-in spec ({', '.join(sorted(BUILTIN_SPECS))}) "
            "nor an existing file"
        )
    return load_spec(path.read_text())


def _emit(payload: dict, as_json: bool, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    if as_json or not out:
        print(text if as_json else _pretty(payload))


def _pretty(payload: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key, value in payload.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_pretty(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.append(_pretty(item, indent + 1))
                lines.append("")
            while lines and lines[-1] == "":
                lines.pop()
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(lines)


def _cmd_check_polytope(args) -> int:
    spec = _resolve_spec(args.spec)
    payload: dict = {
        "spec": spec.name,
        "dim": spec.polytope.dim,
        "facets": spec.d,
    }
    if spec.d:
        pt = spec.interior if spec.interior is not None else find_interior_point(
            spec.polytope
        )
        payload["interior_point"] = [[x.numerator, x.denominator] for x in pt.x]
        payload["slacks"] = [[s.numerator, s.denominator] for s in pt.slacks]
        payload["min_slack"] = float(min(pt.slacks))
        payload["unbounded"] = pt.unbounded
    payload["even"] = spec.delzant.even
    _emit(payload, args.json, None)
    return 0


def _cmd_build(args) -> int:
    spec = _resolve_spec(args.spec)
    payload = {"spec": spec.name, "derived": derived_data(spec)}
    _emit(payload, args.json, getattr(args, "out", None))
    return 0


def _make_config(args, spec: ReductionSpec, suites) -> RunConfig:
    tol = Tolerances(
        level=args.tol_level,
        contact=args.tol_contact,
        legendrian=args.tol_legendrian,
        unitary=args.tol_unitary,
        flow=args.tol_flow,
    )
    config = RunConfig(
        spec=spec, seed=args.seed, suites=tuple(suites), tolerances=tol,
        flow_count=args.flows,
    )
    if args.samples is not None:
        config = scaled_config(config, args.samples)
    return config


def _print_report(report: Report, args) -> None:
    if args.json:
        text = report.to_json(timing=True)
        print(text)
    else:
        for suite in report.suites:
            status = "pass" if suite.passed else "FAIL"
            print(
                f"[{status}] {suite.name:<13} max residual {suite.max_residual:.3e}"
                f"  samples {suite.samples}  ({suite.seconds:.2f}s)"
            )
            for failure in suite.failures:
                print(f"         failure: {failure}")
        print(f"overall: {'pass' if report.passed else 'FAIL'}")
    if args.out:
        Path(args.out).write_text(report.to_json(timing=True) + "\n")


def _cmd_verify(args) -> int:
    spec = _resolve_spec(args.spec)
    suites = args.suite or list(SUITE_NAMES)
    report = run_suites(_make_config(args, spec, suites))
    _print_report(report, args)
    return 0 if report.passed else 1


def _cmd_report(args) -> int:
    args.suite = list(SUITE_NAMES)
    return _cmd_verify(args)


def _cmd_flow(args) -> int:
    spec = _resolve_spec(args.spec)
    start = sample_level(spec, seed=(args.seed, 7, 0))
    if args.hamiltonian == "reeb":
        h = contact.ConstantHamiltonian(1.0)
    elif args.hamiltonian == "linear":
        rng = np.random.default_rng((args.seed, 7, 1))
        h = contact.LinearHamiltonian(
            random_sphere_preserving_generator(spec, rng)
        )
    else:
        raise SymredError(
            f"unknown hamiltonian {args.hamiltonian!r}; choose 'reeb' or 'linear'"
        )
    state = contact.flow(h, start, spec, t_final=args.t, step=args.step)
    _, level_residual = in_level_set(state.point, spec, tol=1e-8)
    payload = {
        "spec": spec.name,
        "hamiltonian": args.hamiltonian,
        "t": state.time,
        "step": state.step,
        "method": state.method,
        "sphere_drift": state.sphere_drift,
        "endpoint_level_residual": level_residual,
        "endpoint_distance_from_start": float(
            np.abs(state.point.flatten() - start.flatten()).max()
        ),
        "reeb_period": contact.reeb_period(spec),
    }
    _emit(payload, args.json, None)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symred",
        description="Construct and verify toric/Grassmannian reduction data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("spec", help="built-in spec name or path to a JSON document")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("check-polytope", help="validate the polytope block")
    add_common(p)
    p.set_defaults(func=_cmd_check_polytope)

    p = sub.add_parser("build", help="echo derived reduction data")
    add_common(p)
    p.add_argument("--out", help="also write the JSON payload to this path")
    p.set_defaults(func=_cmd_build)

    for name, help_text in (
        ("verify", "run verification suites"),
        ("report", "run all suites and emit the full report"),
    ):
        p = sub.add_parser(name, help=help_text)
        add_common(p)
        if name == "verify":
            p.add_argument(
                "--suite",
                action="append",
                choices=SUITE_NAMES,
                help="run only this suite (repeatable)",
            )
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=None,
                       help="override per-suite sample counts")
        p.add_argument("--flows", type=int, default=20)
        p.add_argument("--tol-level", type=float, default=1e-10)
        p.add_argument("--tol-contact", type=float, default=1e-8)
        p.add_argument("--tol-legendrian", type=float, default=1e-9)
        p.add_argument("--tol-unitary", type=float, default=1e-12)
        p.add_argument("--tol-flow", type=float, default=1e-6)
        p.add_argument("--out", help="write the JSON report to this path")
        p.set_defaults(func=_cmd_verify if name == "verify" else _cmd_report)

    p = sub.add_parser("flow", help="integrate a named contact Hamiltonian")
    add_common(p)
    p.add_argument("--hamiltonian", required=True, help="'reeb' or 'linear'")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_flow)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SymredError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
