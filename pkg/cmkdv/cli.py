"""
Command line front end. Every command prints (or writes under ``--out``) a canonical report that echoes the
resolved configuration and the coefficient cases.

Exit codes: 0 when every expected identity or criterion holds, 1 when one fails, 2 on a package error.
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np
import pandas as pd
from loguru import logger
from pydantic import ValidationError

from .errors import CmkdvError, InstabilityError, NonFiniteDensity, SigmaInconsistent, SigmaUndefined
from .method import (
    Evolution,
    QuantityTable,
    Scope,
    SymbolicVerification,
    TableOne,
    closed_form,
    pde_pointwise_residual,
    wave_error,
)
from .method.conservation import TABLE_QUANTITIES, entry
from .method.equation import classify_report, normalize, sigma
from .models import (
    DEFAULT_DT,
    DEFAULT_HALF_WIDTH,
    DEFAULT_POINTS,
    Grid,
    OutputFormat,
    RunConfig,
    SolutionSpec,
    SolverOptions,
)
from .utils import format_fraction, parse_complex, residual_nodes, seed_from_env, to_canonical_json
from .utils.sampling import RESIDUAL_HALF_WIDTH, RESIDUAL_POINTS, SINGULAR_EXCLUSION

RESIDUAL_TOLERANCE = 1e-9
SPEC_FIELDS = ("c", "phi", "theta", "Theta", "k", "A", "xi0")
COEFFICIENT_OPTIONS = ("--alpha", "--beta", "--gamma")


def coefficient(text: str) -> str:
    """Coefficient text checked by ``parse_complex``; kept verbatim for the report."""
    try:
        parse_complex(text)
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"invalid coefficient {text!r}") from error
    return text


def attach_signed_values(argv: List[str]) -> List[str]:
    """
    Rewrite ``--beta -1+2i`` as ``--beta=-1+2i``.

    argparse reads a separate value with a leading minus as an option unless it is a plain negative number.
    """
    result = []
    values = iter(argv)
    for item in values:
        if item in COEFFICIENT_OPTIONS:
            value = next(values, None)
            if value is None:
                result.append(item)
            elif value.startswith("-") and not value.startswith("--"):
                result.append(f"{item}={value}")
            else:
                result.extend([item, value])
        else:
            result.append(item)
    return result


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    equation = parser.add_argument_group("equation")
    equation.add_argument(
        "--alpha", type=coefficient, default="0", help='Coefficient alpha, e.g. "2", "1/3", "1+2i" or "-1+2i"'
    )
    equation.add_argument("--beta", type=coefficient, default="0", help="Coefficient beta")
    equation.add_argument(
        "--gamma", type=coefficient, default="1", help="Positive dispersion coefficient, normalized away"
    )
    solution = parser.add_argument_group("solution")
    solution.add_argument("--family", help="Solution family, e.g. Sech, Kink2, LPSoliton")
    solution.add_argument("--c", type=float, help="Speed")
    solution.add_argument("--phi", type=float, default=0.0, help="Phase angle")
    solution.add_argument("--theta", type=float, default=0.0, help="Offset angle of Solitary1/Solitary2")
    solution.add_argument("--Theta", type=float, default=0.0, help="Shape parameter")
    solution.add_argument("--k", type=float, default=0.0, help="Wavenumber of the linear phase")
    solution.add_argument("--A", type=float, default=1.0, help="Peakon amplitude")
    solution.add_argument("--xi0", type=float, default=0.0, help="Translation")
    numerics = parser.add_argument_group("grid and solver")
    numerics.add_argument("--L", type=float, default=DEFAULT_HALF_WIDTH, help="Half width of the periodic grid")
    numerics.add_argument("--N", type=int, default=DEFAULT_POINTS, help="Number of grid points, a power of two")
    numerics.add_argument("--dt", type=float, default=DEFAULT_DT, help="Time step")
    numerics.add_argument("--t-end", type=float, default=1.0, help="Final time")
    numerics.add_argument("--record-every", type=int, default=100, help="Steps between recorded states")
    numerics.add_argument("--no-dealias", action="store_true", help="Switch off the 2/3 rule")
    output = parser.add_argument_group("output")
    output.add_argument("--out", type=Path, help="Output directory; reports go to stdout when missing")
    output.add_argument("--format", choices=[item.value for item in OutputFormat], default=OutputFormat.JSON.value)
    output.add_argument("-v", "--verbose", action="store_true", help="Log progress to stderr")
    return parser


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="cmkdv", description="Verification lab for complex mKdV equations")
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("classify", parents=[common], help="Coefficient cases")
    verify = commands.add_parser("verify-symbolic", parents=[common], help="Exact catalog identities")
    verify.add_argument("--scope", choices=[item.value for item in Scope], default=Scope.ALL.value)
    verify.add_argument("--exact", action="store_true", help="Print non-zero residuals in full")
    for name, text in (("eval", "Values and jets of a solution"), ("residual", "Pointwise residual of a solution")):
        command = commands.add_parser(name, parents=[common], help=text)
        command.add_argument("--t", type=float, default=0.0, help="Time")
        command.add_argument("--x", type=float, nargs="+", help="Points; residual defaults to clustered nodes")
        command.add_argument("--side", type=int, choices=[-1, 1], help="Side of the crest for cusped waves")
    commands.choices["eval"].add_argument("--order", type=int, default=3, help="Highest jet order")
    commands.choices["residual"].add_argument("--tolerance", type=float, default=RESIDUAL_TOLERANCE)
    sample = commands.add_parser("sample", parents=[common], help="Samples of a solution on the grid")
    sample.add_argument("--t", type=float, default=0.0, help="Time")
    commands.add_parser("evolve", parents=[common], help="Time evolution with drift report")
    commands.add_parser("quantities", parents=[common], help="Conserved quantities, quadrature against closed form")
    table = commands.add_parser("table1", parents=[common], help="Conservation and finiteness verdicts")
    table.add_argument("--evolve", action="store_true", help="Confirm conserved trials by evolution")
    return parser


def resolve_config(args: argparse.Namespace) -> tuple[RunConfig, dict]:
    """RunConfig of the parsed arguments and the normalization record."""
    coefficients, scale = normalize(args.alpha, args.beta, args.gamma)
    spec = None
    if args.family is not None:
        if args.c is None:
            raise CmkdvError("--family needs --c")
        params = {name: getattr(args, name) for name in SPEC_FIELDS}
        spec = SolutionSpec(family=args.family, **params)
    config = RunConfig(
        coefficients=coefficients,
        spec=spec,
        grid=Grid(half_width=args.L, points=args.N),
        options=SolverOptions(
            dt=args.dt, t_end=args.t_end, record_every=args.record_every, dealias=not args.no_dealias
        ),
        out=args.out,
        format=OutputFormat(args.format),
    )
    record = {"scale": scale, "alpha": args.alpha, "beta": args.beta, "seed": seed_from_env()}
    return config, record


def _require_spec(config: RunConfig) -> SolutionSpec:
    if config.spec is None:
        raise CmkdvError("This command needs --family and --c")
    return config.spec


def _report(command: str, config: RunConfig, record: dict, result) -> dict:
    return {
        "command": command,
        "config": config,
        "input": record,
        "case_flags": classify_report(config.coefficients),
        "result": result,
    }


def _emit(command: str, report: dict, config: RunConfig, frame: pd.DataFrame | None = None) -> None:
    if config.format is OutputFormat.CSV and frame is not None:
        text = frame.to_csv(index=False, float_format="%.17g")
        suffix = "csv"
    else:
        text = to_canonical_json(report) + "\n"
        suffix = "json"
    if config.out is None:
        sys.stdout.write(text)
        return
    config.out.mkdir(parents=True, exist_ok=True)
    path = config.out / f"{command.replace('-', '_')}.{suffix}"
    path.write_text(text)
    if frame is not None and suffix == "csv":
        (config.out / f"{command.replace('-', '_')}.json").write_text(to_canonical_json(report) + "\n")


def cmd_classify(config: RunConfig, record: dict, args) -> int:
    try:
        value = format_fraction(sigma(config.coefficients).value)
    except (SigmaUndefined, SigmaInconsistent) as error:
        value = str(error)
    _emit("classify", _report("classify", config, record, {"sigma": value}), config)
    return 0


def cmd_verify_symbolic(config: RunConfig, record: dict, args) -> int:
    runner = SymbolicVerification(coefficients=config.coefficients, verbose=args.verbose, exact=args.exact)
    reports = runner.calculate(Scope(args.scope))
    entries = [{**report.model_dump(), "passed": report.passed} for report in reports]
    frame = pd.DataFrame(
        [
            {
                "id": report.id,
                "kind": report.kind.value,
                "skipped": report.skipped,
                "passed": report.passed,
                "checks": len(report.checks),
                "failing": ";".join(name for name, check in report.checks.items() if not check.zero),
            }
            for report in reports
        ]
    )
    passed = all(report.passed for report in reports)
    result = {"scope": args.scope, "passed": passed, "entries": entries}
    _emit("verify-symbolic", _report("verify-symbolic", config, record, result), config, frame)
    return 0 if passed else 1


def _points(args, spec: SolutionSpec) -> np.ndarray:
    if args.x:
        return np.array(args.x, dtype=float)
    crest = spec.c * args.t + spec.xi0
    return residual_nodes(RESIDUAL_POINTS, RESIDUAL_HALF_WIDTH, SINGULAR_EXCLUSION, center=crest)


def cmd_eval(config: RunConfig, record: dict, args) -> int:
    spec = _require_spec(config)
    x = np.array(args.x if args.x else [0.0], dtype=float)
    jets = closed_form.jets(spec, config.coefficients, args.t, x, args.order, args.side)
    frame = pd.DataFrame({"x": x})
    for order, values in enumerate(jets):
        frame[f"re_u{order}"] = values.real
        frame[f"im_u{order}"] = values.imag
    result = {"t": args.t, "x": x, "jets": jets.T}
    _emit("eval", _report("eval", config, record, result), config, frame)
    return 0


def cmd_residual(config: RunConfig, record: dict, args) -> int:
    spec = _require_spec(config)
    x = _points(args, spec)
    if spec.family.has_cusp and args.side is None:
        crest = spec.c * args.t + spec.xi0
        residual = np.where(
            x >= crest,
            pde_pointwise_residual(spec, config.coefficients, args.t, x, side=1),
            pde_pointwise_residual(spec, config.coefficients, args.t, x, side=-1),
        )
    else:
        residual = pde_pointwise_residual(spec, config.coefficients, args.t, x, args.side)
    magnitude = np.abs(residual)
    frame = pd.DataFrame({"x": x, "re_residual": residual.real, "im_residual": residual.imag})
    passed = bool(np.max(magnitude) < args.tolerance)
    result = {"t": args.t, "points": len(x), "max_abs": float(np.max(magnitude)), "passed": passed}
    _emit("residual", _report("residual", config, record, result), config, frame)
    return 0 if passed else 1


def cmd_sample(config: RunConfig, record: dict, args) -> int:
    spec = _require_spec(config)
    state = closed_form.sample_grid(spec, config.coefficients, config.grid, args.t)
    frame = state.to_frame()
    result = {
        "t": args.t,
        "spacing": config.grid.spacing,
        "max_abs": float(frame["abs_u"].max()),
        "asymptotics": closed_form.asymptotics(spec, config.coefficients),
        "samples": frame[["x", "re_u", "im_u"]].to_dict(orient="list"),
    }
    _emit("sample", _report("sample", config, record, result), config, frame)
    return 0


def _monitored(config: RunConfig) -> list:
    # admitted quantities only; finiteness is decided by the drift report itself
    return [q for q in TABLE_QUANTITIES if entry(q.entry_id, config.coefficients).admitted]


def cmd_evolve(config: RunConfig, record: dict, args) -> int:
    spec = _require_spec(config)
    runner = Evolution(coefficients=config.coefficients, verbose=args.verbose)
    initial = closed_form.sample_grid(spec, config.coefficients, config.grid)
    try:
        trajectory = runner.calculate(initial, config.options)
    except InstabilityError as error:
        _emit("evolve", _report("evolve", config, record, {"instability": str(error)}), config)
        return 1
    drift = {}
    for quantity in _monitored(config):
        try:
            drift.update(runner.drift(trajectory, [quantity]))
        except NonFiniteDensity:
            logger.warning(f"{quantity.value} is not finite on the grid")
    linf, l2 = wave_error(spec, config.coefficients, trajectory.final)
    result = {"times": trajectory.times, "drift": drift, "wave_error": {"linf": linf, "l2": l2}}
    if config.out is not None:
        trajectory.write(config.out / "trajectory", manifest={"drift": drift, "config": config})
    _emit("evolve", _report("evolve", config, record, result), config)
    return 0


def cmd_quantities(config: RunConfig, record: dict, args) -> int:
    spec = _require_spec(config)
    state = closed_form.sample_grid(spec, config.coefficients, config.grid)
    frame = QuantityTable(coefficients=config.coefficients, verbose=args.verbose).calculate(state)
    result = frame.to_dict(orient="records")
    _emit("quantities", _report("quantities", config, record, result), config, frame)
    return 0


def cmd_table1(config: RunConfig, record: dict, args) -> int:
    runner = TableOne(verbose=args.verbose)
    frame = runner.calculate(evolve=args.evolve)
    mismatched = frame[~frame["matches"]]
    result = {
        "passed": mismatched.empty,
        "cells": [cell.model_dump() for cell in runner.cells],
        "mismatched": mismatched[["family", "quantity"]].to_dict(orient="records"),
    }
    _emit("table1", _report("table1", config, record, result), config, frame)
    return 0 if mismatched.empty else 1


COMMANDS = {
    "classify": cmd_classify,
    "verify-symbolic": cmd_verify_symbolic,
    "eval": cmd_eval,
    "residual": cmd_residual,
    "sample": cmd_sample,
    "evolve": cmd_evolve,
    "quantities": cmd_quantities,
    "table1": cmd_table1,
}


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    args = build_parser().parse_args(attach_signed_values(argv))
    logger.remove()
    if args.verbose:
        logger.add(sys.stderr, level="INFO")
    try:
        config, record = resolve_config(args)
        return COMMANDS[args.command](config, record, args)
    except (CmkdvError, ValidationError) as error:
        message = str(error).splitlines()[0]
        sys.stderr.write(f"cmkdv {args.command}: {type(error).__name__}: {message}\n")
        return 2
