"""

cli.py
Command line front end: table reproduction, Levinson sweeps, operator checks and curve export

"""
import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass, field, replace

import numpy as np
import pandas as pd

from .boundary import SideId, full_loop
from .levinson import (DEFAULT_SAMPLES, DEFAULT_TOLERANCE, check_tolerance, default_parameter_grid, reproduce_table,
                       sweep)
from .models import ExtendedReal, ModelKind, model_factory, parse_kind
from .symbols import Direction
from .waveop import QuadratureSettings, operator_battery, random_parameters, time_delay_w2
from .winding import refine_loop, side_winding

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

TIME_DELAY_TOLERANCE = 1e-4
VALUE_FLAGS = ("--range", "--params", "--param")
FORMATS = ("json", "csv")


def parse_params(text):
    """ Comma separated extended reals, e.g. '-1,0,1,inf' """
    tokens = [token for token in text.split(",") if token.strip()]
    if not tokens:
        raise ValueError("Empty parameter list")
    return [ExtendedReal.parse(token) for token in tokens]


def parse_range(text):
    """ 'lo:hi:n', n evenly spaced values including both ends """
    try:
        lo, hi, n = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise ValueError(f"Range '{text}' is not of the form lo:hi:n")
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError(f"Range '{text}' has a non-finite end")
    if n < 1:
        raise ValueError(f"Range '{text}' is empty")
    return [ExtendedReal.finite(x) for x in np.linspace(lo, hi, n)]


@dataclass
class RunConfig():
    """
    Validated settings of one CLI invocation
    """
    command: str
    model: ModelKind
    params: tuple = ()
    samples: int = DEFAULT_SAMPLES
    tolerance: float = DEFAULT_TOLERANCE
    out: str = None
    fmt: str = "json"
    jobs: int = 1
    seed: int = 0
    count: int = 10
    enable_delta2_kernel: bool = False
    direction: Direction = Direction.MINUS
    parity: str = None
    settings: QuadratureSettings = field(default_factory=QuadratureSettings)

    def __post_init__(self):
        self.model = parse_kind(self.model)
        self.direction = Direction(self.direction)
        self.tolerance = check_tolerance(self.tolerance)
        self.params = tuple(ExtendedReal.parse(p) for p in self.params)
        for param in self.params:
            model_factory(self.model, param)
        if self.samples < 2:
            raise ValueError(f"--samples {self.samples}: need at least 2")
        if self.jobs < 1:
            raise ValueError(f"--jobs {self.jobs}: need at least 1")
        if self.count < 1:
            raise ValueError(f"--count {self.count}: need at least 1")
        if self.fmt not in FORMATS:
            raise ValueError(f"Unknown format '{self.fmt}'")
        if self.command == "curve" and len(self.params) != 1:
            raise ValueError("curve takes exactly one --param")
        if self.command == "verify-waveop":
            if self.model is ModelKind.DELTA2 and not self.enable_delta2_kernel:
                raise ValueError("The delta2 kernel check needs --enable-delta2-kernel")
            sector = model_factory(self.model, 0.0).parity
            allowed = ("radial",) if sector == "radial" else ("even", "odd")
            if self.parity is not None and self.parity not in allowed:
                raise ValueError(f"--parity {self.parity} is not a sector of {self.model.value}")

    @classmethod
    def from_args(cls, args):
        params = ()
        if getattr(args, "params", None):
            params = parse_params(args.params)
        elif getattr(args, "range", None):
            params = parse_range(args.range)
        elif getattr(args, "param", None) is not None:
            params = (ExtendedReal.parse(args.param),)

        settings = QuadratureSettings()
        overrides = {name: getattr(args, name) for name in ("n_t", "R_cutoff", "gl_nodes")
                     if getattr(args, name, None) is not None}
        if overrides:
            settings = replace(settings, **overrides)

        return cls(command=args.command,
                   model=args.model,
                   params=params,
                   samples=getattr(args, "samples", DEFAULT_SAMPLES),
                   tolerance=getattr(args, "tol", DEFAULT_TOLERANCE),
                   out=getattr(args, "out", None),
                   fmt=getattr(args, "format", "json"),
                   jobs=getattr(args, "jobs", 1),
                   seed=getattr(args, "seed", 0),
                   count=getattr(args, "count", 10),
                   enable_delta2_kernel=getattr(args, "enable_delta2_kernel", False),
                   direction=getattr(args, "direction", Direction.MINUS.value),
                   parity=getattr(args, "parity", None),
                   settings=settings)


def _plain(value):
    """ JSON-safe copy: numpy scalars to Python, non-finite floats to strings """
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    return value


def write_report(config, record, rows):
    """
    Writes the JSON record or the CSV rows to config.out, stdout when None

    Returns
    -------
    code: int
        EXIT_USAGE when the file cannot be written
    """
    if config.fmt == "json":
        text = json.dumps(_plain(record), indent=2, sort_keys=True) + "\n"
    else:
        text = pd.DataFrame(rows).to_csv(index=False, lineterminator="\n")
    if config.out is None:
        sys.stdout.write(text)
        return EXIT_PASS
    try:
        with open(config.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except OSError as err:
        logger.error("Cannot write %s: %s", config.out, err)
        return EXIT_USAGE
    logger.info("Report written to %s", config.out)
    return EXIT_PASS


def _finish(config, record, rows, passed):
    code = write_report(config, record, rows)
    if code != EXIT_PASS:
        return code
    return EXIT_PASS if passed else EXIT_FAILURE


def cmd_table(config):
    """ Reproduces the reference table of one model family """
    rows = reproduce_table(config.model, config.tolerance, config.samples)
    passed = all(row.passed for row in rows)
    record = {"model": config.model.value, "rows": [row.to_dict() for row in rows], "pass": passed}
    return _finish(config, record, [row.to_row() for row in rows], passed)


def cmd_levinson(config):
    """ Sweeps verify_levinson over the configured or default parameters """
    params = list(config.params) or default_parameter_grid(config.model)
    result = sweep(config.model, params, config.tolerance, config.jobs, config.samples, config.direction)
    record = result.to_dict()
    record["direction"] = config.direction.value
    return _finish(config, record, result.rows(), result.all_passed)


def cmd_verify_waveop(config):
    """
    Operator identity and isometry battery, plus the time-delay check of w2
    """
    params = list(config.params) or random_parameters(config.model, config.count, config.seed)
    checks = operator_battery(config.model, params, config.settings, config.parity, config.jobs)

    delays = []
    for param in params:
        model = model_factory(config.model, param)
        w2 = time_delay_w2(model)
        winding = side_winding(model, SideId.B2, config.samples)
        delays.append({"param": str(model.param), "time_delay_w2": w2, "side_winding_w2": winding,
                       "pass": abs(w2 - winding) < TIME_DELAY_TOLERANCE})

    passed = all(c.passed for c in checks) and all(d["pass"] for d in delays)
    record = {"model": config.model.value,
              "seed": config.seed,
              "params": [str(ExtendedReal.parse(p)) for p in params],
              "settings": config.settings.to_dict(),
              "cases": [c.to_dict() for c in checks],
              "time_delay": delays,
              "pass": passed}
    rows = [dict(c.to_dict(), seed=config.seed) for c in checks]
    return _finish(config, record, rows, passed)


def cmd_curve(config):
    """ Samples of Gamma along the refined boundary loop, for plotting """
    model = model_factory(config.model, config.params[0])
    loop = refine_loop(full_loop(model, config.samples, config.direction))
    rows = []
    for arc in loop.arcs:
        eps, a = arc.coordinates()
        for t, e, x, value in zip(arc.t, eps, a, arc.values):
            rows.append({"side": arc.side.label, "t": float(t), "eps": float(e), "a": float(x),
                         "re": float(value.real), "im": float(value.imag)})
    record = {"model": model.descriptor(), "direction": config.direction.value, "samples": rows}
    return _finish(config, record, rows, True)


COMMANDS = {"table": cmd_table,
            "levinson": cmd_levinson,
            "verify-waveop": cmd_verify_waveop,
            "curve": cmd_curve}


def merge_negative_values(argv):
    """
    Joins '--range -5:5:11' into '--range=-5:5:11' so argparse does not read the value as a flag
    """
    merged = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            merged.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        merged.append(token)
        i += 1
    return merged


def _add_output(parser, default_format="json"):
    parser.add_argument("--out", default=None, help="Report path, stdout when omitted")
    parser.add_argument("--format", choices=FORMATS, default=default_format)


def build_parser():
    kinds = [k.value for k in ModelKind]
    parser = argparse.ArgumentParser(prog="pointlev",
                                     description="Topological Levinson theorem for point interactions")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="Reproduce a reference table")
    p_table.add_argument("model", choices=kinds)
    p_table.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p_table.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    _add_output(p_table)

    p_lev = sub.add_parser("levinson", help="Check w(Gamma) = -#bound states over parameters")
    p_lev.add_argument("--model", choices=kinds, required=True)
    group = p_lev.add_mutually_exclusive_group()
    group.add_argument("--params", help="Comma separated values, 'inf' allowed")
    group.add_argument("--range", help="lo:hi:n")
    p_lev.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p_lev.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    p_lev.add_argument("--jobs", type=int, default=1)
    p_lev.add_argument("--direction", choices=[d.value for d in Direction], default=Direction.MINUS.value)
    _add_output(p_lev)

    p_op = sub.add_parser("verify-waveop", help="Kernel vs factorized form, isometry and time delay")
    p_op.add_argument("--model", choices=kinds, required=True)
    group = p_op.add_mutually_exclusive_group()
    group.add_argument("--params", help="Comma separated values, random battery when omitted")
    group.add_argument("--range", help="lo:hi:n")
    p_op.add_argument("--count", type=int, default=10, help="Size of the random battery")
    p_op.add_argument("--seed", type=int, default=0)
    p_op.add_argument("--parity", choices=["radial", "even", "odd"], default=None,
                      help="Sector of the test functions")
    p_op.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p_op.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    p_op.add_argument("--jobs", type=int, default=1)
    p_op.add_argument("--n-t", dest="n_t", type=int, default=None)
    p_op.add_argument("--cutoff", dest="R_cutoff", type=float, default=None)
    p_op.add_argument("--gl-nodes", dest="gl_nodes", type=int, default=None)
    p_op.add_argument("--enable-delta2-kernel", action="store_true")
    _add_output(p_op)

    p_curve = sub.add_parser("curve", help="Export the Gamma loop for plotting")
    p_curve.add_argument("--model", choices=kinds, required=True)
    p_curve.add_argument("--param", required=True)
    p_curve.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p_curve.add_argument("--direction", choices=[d.value for d in Direction], default=Direction.MINUS.value)
    _add_output(p_curve, default_format="csv")
    return parser


def configure_logging(verbosity):
    level = logging.WARNING if verbosity <= 0 else (logging.INFO if verbosity == 1 else logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv=None):
    """
    Entry point

    Returns
    -------
    code: int
        0 when every check passes, 1 on a verification failure, 2 on usage or validation errors
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(merge_negative_values(argv))
    except SystemExit as exit_:
        return EXIT_PASS if exit_.code in (0, None) else EXIT_USAGE
    configure_logging(args.verbose)

    try:
        config = RunConfig.from_args(args)
        return COMMANDS[config.command](config)
    except ValueError as err:
        sys.stderr.write(f"pointlev: error: {err}\n")
        return EXIT_USAGE
    except (ArithmeticError, RuntimeError) as err:
        logger.error("%s: %s", type(err).__name__, err)
        return EXIT_FAILURE
