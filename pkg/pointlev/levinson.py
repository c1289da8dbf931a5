"""

levinson.py
Checks w(Gamma) = -#bound states for single models, sweeps and the reference tables

"""
import logging
import os
from dataclasses import asdict, dataclass, field
from multiprocessing import Pool

import numpy as np
import yaml

from .boundary import SIDES, classify_side, full_loop
from .models import ExtendedReal, ModelKind, model_factory, parse_kind
from .symbols import Direction
from .winding import snap_half, winding_number

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-6
DEFAULT_SAMPLES = 64
ROW_SIDES = (1, 2, 3, 4)
GOLDEN_TABLES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data", "golden_tables.yaml")

#log10 of the smallest and largest |param| in the default sweeps
SWEEP_DECADES = {ModelKind.DELTA3: (-3.0, 3.0),
                 ModelKind.DELTA2: (-2.0, 1.0),
                 ModelKind.DELTA1: (-3.0, 3.0),
                 ModelKind.DELTAPRIME1: (-3.0, 3.0)}


class EmptySweepError(ValueError):
    pass


def check_tolerance(tolerance):
    if not 0.0 < tolerance <= 0.1:
        raise ValueError(f"Tolerance {tolerance} outside (0, 0.1]")
    return float(tolerance)


@dataclass
class LevinsonVerdict():
    model: dict
    w_total: float = float("nan")
    snapped_w: int = None
    bound_count: int = None
    passed: bool = False
    residual: float = float("nan")
    w_sides: tuple = ()
    snapped_sides: tuple = ()
    bound_state_energies: list = None
    energy_provenance: str = None
    direction: str = Direction.MINUS.value
    error: str = None

    def to_dict(self):
        record = asdict(self)
        record["w_sides"] = list(self.w_sides)
        record["snapped_sides"] = list(self.snapped_sides)
        record["pass"] = record.pop("passed")
        return record

    def to_row(self):
        """ Flat record for CSV output; the same columns for every model family and for error rows """
        param = next((value for key, value in self.model.items() if key != "model"), None)
        row = {"model": self.model.get("model"), "param": param}
        w_sides = list(self.w_sides) + [float("nan")] * (len(ROW_SIDES) - len(self.w_sides))
        for i, w in zip(ROW_SIDES, w_sides):
            row[f"w{i}"] = w
        row.update({"w_total": self.w_total, "count": self.bound_count, "pass": self.passed,
                    "direction": self.direction, "snapped_w": self.snapped_w, "residual": self.residual,
                    "error": self.error})
        return row


def verify_levinson(model, tolerance=DEFAULT_TOLERANCE, n_per_side=DEFAULT_SAMPLES, direction=Direction.MINUS):
    """
    Compares the winding of the boundary loop with the bound state count

    Parameters
    ----------
    model: pointlev.Model

    tolerance: float
        Allowed distance of w_total from its integer, in (0, 0.1]

    n_per_side: int
        Initial samples per side before refinement

    direction: Direction
        MINUS uses Omega_-, PLUS the Omega_+ factorization

    Returns
    -------
    verdict: LevinsonVerdict
    """
    tolerance = check_tolerance(tolerance)
    direction = Direction(direction)
    report = winding_number(full_loop(model, n_per_side, direction))

    snapped = int(round(report.w_total))
    residual = abs(report.w_total - snapped)
    count = model.bound_state_count()
    facts = model.spectral_facts()
    energies = None if facts.bound_state_energies is None else list(facts.bound_state_energies)

    verdict = LevinsonVerdict(model=model.descriptor(),
                              w_total=report.w_total,
                              snapped_w=snapped,
                              bound_count=count,
                              passed=(snapped == -count and residual < tolerance),
                              residual=residual,
                              w_sides=report.w_sides,
                              snapped_sides=report.snapped,
                              bound_state_energies=energies,
                              energy_provenance=facts.provenance,
                              direction=direction.value)
    logger.info("%r: w = %.9f, bound states = %d, %s", model, report.w_total, count,
                "pass" if verdict.passed else "FAIL")
    return verdict


def _sweep_item(args):
    kind, param, tolerance, n_per_side, direction = args
    try:
        model = model_factory(kind, param)
        return verify_levinson(model, tolerance, n_per_side, direction)
    except Exception as err:
        logger.warning("Sweep item %s=%s failed: %s", kind, param, err)
        return LevinsonVerdict(model={"model": parse_kind(kind).value, "param": str(param)},
                               direction=Direction(direction).value,
                               error=f"{type(err).__name__}: {err}")


@dataclass
class SweepResult():
    kind: str
    verdicts: list = field(default_factory=list)

    @property
    def passes(self):
        return sum(1 for v in self.verdicts if v.passed)

    @property
    def failures(self):
        return sum(1 for v in self.verdicts if not v.passed and v.error is None)

    @property
    def errors(self):
        return sum(1 for v in self.verdicts if v.error is not None)

    @property
    def all_passed(self):
        return self.passes == len(self.verdicts)

    def summary(self):
        return {"model": self.kind, "cases": len(self.verdicts), "passes": self.passes,
                "failures": self.failures, "errors": self.errors}

    def to_dict(self):
        return {"summary": self.summary(), "verdicts": [v.to_dict() for v in self.verdicts]}

    def rows(self):
        return [v.to_row() for v in self.verdicts]


def sweep(kind, params, tolerance=DEFAULT_TOLERANCE, jobs=1, n_per_side=DEFAULT_SAMPLES,
          direction=Direction.MINUS):
    """
    Runs verify_levinson over a list of parameters

    Parameters
    ----------
    kind: str or ModelKind

    params: list
        Floats, strings or ExtendedReal values

    tolerance: float

    jobs: int
        Worker processes; results keep the order of params

    Returns
    -------
    result: SweepResult
        Per-item errors are recorded in the verdicts, not raised
    """
    kind = parse_kind(kind)
    params = list(params)
    if not params:
        raise EmptySweepError(f"No parameters to sweep for {kind.value}")
    tolerance = check_tolerance(tolerance)
    direction = Direction(direction)

    items = [(kind, p, tolerance, n_per_side, direction) for p in params]
    if jobs > 1:
        with Pool(jobs) as pool:
            verdicts = pool.map(_sweep_item, items)
    else:
        verdicts = [_sweep_item(item) for item in items]

    result = SweepResult(kind=kind.value, verdicts=verdicts)
    logger.info("Sweep %s: %d/%d passed", kind.value, result.passes, len(verdicts))
    return result


def default_parameter_grid(kind, per_region=50):
    """
    Log-spaced magnitudes in each sign region plus the special points 0 and inf
    """
    kind = parse_kind(kind)
    lo, hi = SWEEP_DECADES[kind]
    magnitudes = np.logspace(lo, hi, per_region)
    return [float(-m) for m in magnitudes[::-1]] + [0.0] + [float(m) for m in magnitudes] + [np.inf]


def load_golden_tables(path=GOLDEN_TABLES):
    """
    Reads the reference tables

    Returns
    -------
    tables: dict
        kind name -> list of rows with 'region', 'params', 'gamma', 'w', 'total'
    """
    with open(path, "r", encoding="utf-8") as handle:
        data = yaml.safe_load(handle)
    return data["tables"]


@dataclass
class TableRow():
    model: dict
    region: str
    gamma: tuple
    w_sides: tuple
    w_total: float
    expected_gamma: tuple
    expected_w: tuple
    expected_total: float
    passed: bool

    def to_dict(self):
        record = asdict(self)
        for key in ("gamma", "w_sides", "expected_gamma", "expected_w"):
            record[key] = list(record[key])
        record["snapped"] = [snap_half(w) for w in self.w_sides]
        record["pass"] = record.pop("passed")
        return record

    def to_row(self):
        row = dict(self.model)
        row["region"] = self.region
        for i in range(4):
            row[f"Gamma{i + 1}"] = self.gamma[i]
        for i in range(4):
            row[f"w{i + 1}"] = self.w_sides[i]
        row.update({"w_total": self.w_total, "pass": self.passed})
        return row


def reproduce_table(kind, tolerance=DEFAULT_TOLERANCE, n_per_side=DEFAULT_SAMPLES, tables=None):
    """
    Recomputes every row of a reference table at its sample parameters

    Parameters
    ----------
    kind: str or ModelKind

    tolerance: float
        Allowed deviation of each winding from the reference value

    tables: dict, optional
        Preloaded reference tables

    Returns
    -------
    rows: list of TableRow
    """
    kind = parse_kind(kind)
    tolerance = check_tolerance(tolerance)
    tables = load_golden_tables() if tables is None else tables

    rows = []
    for entry in tables[kind.value]:
        expected_w = tuple(float(w) for w in entry["w"])
        expected_gamma = tuple(str(g) for g in entry["gamma"])
        for param in entry["params"]:
            model = model_factory(kind, ExtendedReal.parse(str(param)))
            report = winding_number(full_loop(model, n_per_side))
            gamma = tuple(classify_side(model, SIDES[side_id]) for side_id in sorted(SIDES, key=lambda s: s.value))
            passed = (gamma == expected_gamma
                      and all(abs(w - e) < tolerance for w, e in zip(report.w_sides, expected_w))
                      and abs(report.w_total - float(entry["total"])) < tolerance)
            rows.append(TableRow(model=model.descriptor(), region=entry["region"], gamma=gamma,
                                 w_sides=report.w_sides, w_total=report.w_total, expected_gamma=expected_gamma,
                                 expected_w=expected_w, expected_total=float(entry["total"]), passed=passed))
            if not passed:
                logger.warning("Table %s row '%s' at %s does not match: Gamma %s, w %s", kind.value,
                               entry["region"], model.param, gamma, report.w_sides)
    return rows
