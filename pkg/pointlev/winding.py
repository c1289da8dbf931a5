"""

winding.py
Winding numbers of sampled boundary loops by phase unwrapping

"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from .boundary import (GUARD_THRESHOLD, TRAVERSAL_ORDER, LoopSamples, SideId, ZeroModulusError, get_side,
                       side_curve, side_values)
from .symbols import Direction

logger = logging.getLogger(__name__)

MAX_PHASE_STEP = np.pi / 2
MAX_DOUBLINGS = 20
SNAP_TOLERANCE = 1e-6
CLOSURE_ATOL = 1e-12


class NotClosedError(ValueError):
    pass


class RefinementExhausted(RuntimeError):
    pass


def phase_steps(values):
    """
    Principal-value argument differences between consecutive samples, in [-pi, pi]
    """
    theta = np.angle(values)
    d = np.diff(theta)
    return d - 2.0 * np.pi * np.round(d / (2.0 * np.pi))


def snap_half(x, tolerance=SNAP_TOLERANCE):
    """ Nearest half-integer when within tolerance, otherwise None """
    nearest = round(2.0 * x) / 2.0
    if abs(x - nearest) < tolerance:
        return nearest + 0.0
    return None


def snap_integer(x, tolerance=SNAP_TOLERANCE):
    nearest = round(x)
    if abs(x - nearest) < tolerance:
        return int(nearest)
    return None


@dataclass(frozen=True)
class WindingReport():
    """
    Per-side windings w1..w4 (side order B1..B4), their total and sampling diagnostics
    """
    w_sides: tuple
    w_total: float
    refined_samples_used: tuple
    max_phase_step: float

    @property
    def snapped(self):
        return tuple(snap_half(w) for w in self.w_sides)

    @property
    def snapped_total(self):
        return snap_integer(self.w_total)

    def to_dict(self):
        record = {f"w{i + 1}": w for i, w in enumerate(self.w_sides)}
        record.update({"w_total": self.w_total,
                       "snapped": list(self.snapped),
                       "samples": list(self.refined_samples_used),
                       "max_phase_step": self.max_phase_step})
        return record


def refine_arc(arc, max_step=MAX_PHASE_STEP, max_doublings=MAX_DOUBLINGS):
    """
    Inserts midpoints until every phase step of the arc is below max_step

    Parameters
    ----------
    arc: pointlev.boundary.SideCurve

    max_step: float
        Phase bound in radians

    max_doublings: int
        Number of bisection rounds allowed

    Returns
    -------
    arc: SideCurve
        Refined copy
    """
    t, values = arc.t, arc.values
    for rounds in range(max_doublings + 1):
        bad = np.abs(phase_steps(values)) >= max_step
        if not bad.any():
            if rounds:
                logger.debug("Side %s refined in %d rounds to %d samples", arc.side.label, rounds, len(t))
            return arc.with_samples(t, values)
        if not arc.refinable:
            raise RefinementExhausted(f"Phase step of {np.abs(phase_steps(values)).max():.3f} rad on a loop "
                                      "without a generating function")
        if rounds == max_doublings:
            break
        mids = 0.5 * (t[:-1][bad] + t[1:][bad])
        t = np.concatenate([t, mids])
        values = np.concatenate([values, arc.evaluate(mids)])
        order = np.argsort(t, kind="stable")
        t, values = t[order], values[order]

    raise RefinementExhausted(f"Side {arc.side.label}: phase step bound not met after {max_doublings} doublings "
                              f"({len(t)} samples), Gamma passes too close to zero")


def refine_loop(loop, max_step=MAX_PHASE_STEP, max_doublings=MAX_DOUBLINGS):
    arcs = tuple(refine_arc(arc, max_step, max_doublings) for arc in loop.arcs)
    return LoopSamples(arcs=arcs, params=dict(loop.params))


def _check_closed(points):
    if not np.isclose(points[0], points[-1], rtol=0.0, atol=CLOSURE_ATOL):
        raise NotClosedError(f"Loop starts at {points[0]} and ends at {points[-1]}")
    modulus = np.abs(points)
    if (modulus < GUARD_THRESHOLD).any():
        raise ZeroModulusError(f"|Gamma| = {modulus.min():.3e} on the loop")


def _side_order(arcs):
    ids = [arc.side.id for arc in arcs]
    if len(arcs) == 4 and len(set(ids)) == 4:
        return [ids.index(side_id) for side_id in SideId]
    return list(range(len(arcs)))


def winding_number(loop, refine=True):
    """
    Winding number of a closed loop around zero

    Parameters
    ----------
    loop: LoopSamples
        Closed loop, first point equal to the last

    refine: bool
        Apply adaptive refinement so every step stays below pi/2.
        The dense oracle turns this off.

    Returns
    -------
    report: WindingReport
    """
    _check_closed(loop.points)
    if refine:
        loop = refine_loop(loop)

    increments = [phase_steps(arc.values) for arc in loop.arcs]
    two_pi = 2.0 * np.pi
    per_arc = [math.fsum(inc) / two_pi for inc in increments]
    total = math.fsum(np.concatenate(increments)) / two_pi
    order = _side_order(loop.arcs)
    max_step = max(float(np.abs(inc).max()) if len(inc) else 0.0 for inc in increments)

    report = WindingReport(w_sides=tuple(per_arc[i] for i in order),
                           w_total=total,
                           refined_samples_used=tuple(len(loop.arcs[i].values) for i in order),
                           max_phase_step=max_step)
    logger.debug("Winding %.12f with sides %s", total, report.w_sides)
    return report


def side_winding(model, side, n0=64, direction=Direction.MINUS):
    """
    Phase increment of Gamma_i along one side divided by 2 pi

    Parameters
    ----------
    model: pointlev.Model

    side: BoundarySide, SideId or str

    n0: int
        Initial samples before refinement

    direction: Direction

    Returns
    -------
    w: float
    """
    arc = refine_arc(side_curve(model, get_side(side), n0, direction))
    return math.fsum(phase_steps(arc.values)) / (2.0 * np.pi)


def dense_winding(model, n_total=10**6, direction=Direction.MINUS):
    """
    Brute-force winding: uniform samples on every side, no refinement
    """
    n_side = max(n_total // 4, 2)
    t = np.linspace(0.0, 1.0, n_side)
    arcs = []
    for side in TRAVERSAL_ORDER:
        curve = side_curve(model, side, 2, direction)
        arcs.append(curve.with_samples(t, side_values(model, side, t, direction)))
    loop = LoopSamples(arcs=tuple(arcs), params={"n_per_side": n_side})
    return winding_number(loop, refine=False)
