"""

boundary.py
Gamma = phi(a) eta(eps) + 1 on the boundary of the compactified spectral square

"""
import enum
import logging
from dataclasses import dataclass, field, replace

import numpy as np

from .models import ExtendedReal, ModelKind
from .symbols import (Axis, AxisPoint, Direction, eta_from_log_energy, eta_function, phi_function, r_function,
                      s_from_log_energy)

logger = logging.getLogger(__name__)

GUARD_THRESHOLD = 1e-9


class BoundaryError(ValueError):
    pass


class ZeroModulusError(ArithmeticError):
    pass


class SideId(enum.Enum):
    B1 = 1
    B2 = 2
    B3 = 3
    B4 = 4


@dataclass(frozen=True)
class BoundarySide():
    """
    One side of the square with its frozen coordinate and orientation.

    ascending is True when the running coordinate increases with t.
    """
    id: SideId
    frozen_axis_value: ExtendedReal
    running_axis: Axis
    ascending: bool

    @property
    def label(self):
        return self.id.name


B1 = BoundarySide(SideId.B1, ExtendedReal.finite(0.0), Axis.DILATION, True)
B2 = BoundarySide(SideId.B2, ExtendedReal.plus_infinity(), Axis.ENERGY, True)
B3 = BoundarySide(SideId.B3, ExtendedReal.plus_infinity(), Axis.DILATION, False)
B4 = BoundarySide(SideId.B4, ExtendedReal.minus_infinity(), Axis.ENERGY, False)

SIDES = {SideId.B1: B1, SideId.B2: B2, SideId.B3: B3, SideId.B4: B4}

#Counterclockwise in the sense fixed by B2 running along increasing energy
TRAVERSAL_ORDER = (B2, B3, B4, B1)


def get_side(side):
    if isinstance(side, BoundarySide):
        return side
    if isinstance(side, SideId):
        return SIDES[side]
    try:
        return SIDES[SideId[str(side).upper()]]
    except KeyError:
        raise BoundaryError(f"Unknown side '{side}'")


def dilation_of_t(t):
    """
    a(t) = tan(pi (t - 1/2)) with a(0) = -inf, a(1) = +inf exactly
    """
    t = np.asarray(t, dtype=float)
    a = np.tan(np.pi * (t - 0.5))
    a = np.where(t <= 0.0, -np.inf, a)
    return np.where(t >= 1.0, np.inf, a)


def log_energy_of_t(model, t):
    """
    ln(eps) along the energy compactification, scaled by the model's characteristic energy.

    sqrt(eps) = sqrt(eps0) tan(pi t / 2) in general; for Delta2 the logarithm
    ln(sqrt(eps / eps0)) = tan(pi (t - 1/2)) is the natural variable.
    t = 0 gives -inf and t = 1 gives +inf exactly.
    """
    t = np.asarray(t, dtype=float)
    log_eps0 = model.characteristic_log_energy()
    inner = (t > 0.0) & (t < 1.0)
    ts = np.where(inner, t, 0.5)
    if model.kind is ModelKind.DELTA2:
        log_eps = log_eps0 + 2.0 * np.tan(np.pi * (ts - 0.5))
    else:
        log_eps = log_eps0 + 2.0 * np.log(np.tan(np.pi * ts / 2.0))
    log_eps = np.where(t <= 0.0, -np.inf, log_eps)
    return np.where(t >= 1.0, np.inf, log_eps)


def energy_of_t(model, t):
    """
    Energy compactification, eps(0) = 0 and eps(1) = +inf exactly.
    Energies beyond the float range saturate; evaluate s through log_energy_of_t.
    """
    with np.errstate(over="ignore", under="ignore"):
        return np.exp(log_energy_of_t(model, t))


def side_coordinates(model, side, t):
    """
    (eps, a) arrays along a side for parameters t in [0, 1]
    """
    side = get_side(side)
    t = np.asarray(t, dtype=float)
    s = t if side.ascending else 1.0 - t
    frozen = np.full(t.shape, side.frozen_axis_value.to_float())
    if side.running_axis is Axis.ENERGY:
        return energy_of_t(model, s), frozen
    return frozen, dilation_of_t(s)


def gamma_values(model, eps, a, direction=Direction.MINUS):
    """ Vectorized phi(a) eta(eps) + 1, no domain check """
    return phi_function(model, a, direction) * eta_function(model, eps, direction) + 1.0


def _on_boundary(eps, a):
    return eps == 0.0 or np.isinf(eps) or np.isinf(a)


def gamma_at(model, eps, a, direction=Direction.MINUS):
    """
    Gamma at a boundary point of the square

    Parameters
    ----------
    model: pointlev.Model

    eps: float or AxisPoint
        Energy in [0, +inf]

    a: float or AxisPoint
        Dilation coordinate in [-inf, +inf]

    direction: Direction
        MINUS for Omega_-, PLUS for Omega_+

    Returns
    -------
    gamma: complex
    """
    e = eps.to_float() if isinstance(eps, AxisPoint) else float(eps)
    x = a.to_float() if isinstance(a, AxisPoint) else float(a)
    if not _on_boundary(e, x):
        raise BoundaryError(f"({e}, {x}) is an interior point of the square")
    return complex(gamma_values(model, eps, a, direction))


def corner_value(model, eps, a, direction=Direction.MINUS):
    """ Gamma at a corner, shared by both adjacent sides """
    return complex(gamma_values(model, float(eps), float(a), direction))


def _guard(values, side):
    modulus = np.abs(values)
    if (modulus < GUARD_THRESHOLD).any():
        index = int(np.argmin(modulus))
        raise ZeroModulusError(f"|Gamma| = {modulus[index]:.3e} on side {side.label} at sample {index}")


def side_log_energy(model, side, t):
    """ ln(eps) along an energy side, following the side's orientation """
    side = get_side(side)
    t = np.asarray(t, dtype=float)
    return log_energy_of_t(model, t if side.ascending else 1.0 - t)


def side_values(model, side, t, direction=Direction.MINUS):
    """
    Gamma along a side at parameters t, with exact corner values at t = 0 and t = 1
    """
    side = get_side(side)
    t = np.asarray(t, dtype=float)
    eps, a = side_coordinates(model, side, t)
    if side.running_axis is Axis.ENERGY:
        eta = eta_from_log_energy(model, side_log_energy(model, side, t), direction)
        values = np.asarray(phi_function(model, a, direction) * eta + 1.0, dtype=complex)
    else:
        values = np.asarray(gamma_values(model, eps, a, direction), dtype=complex)
    for end in (0.0, 1.0):
        mask = t == end
        if mask.any():
            e_end, a_end = side_coordinates(model, side, np.array([end]))
            values[mask] = corner_value(model, e_end[0], a_end[0], direction)
    _guard(values, side)
    return values


@dataclass
class SideCurve():
    """
    Samples of Gamma along one arc.

    model is None for arcs cut from raw points; such arcs cannot be refined.
    reverse marks an arc traversed against the side's orientation.
    """
    side: BoundarySide
    t: np.ndarray
    values: np.ndarray
    model: object = None
    direction: Direction = Direction.MINUS
    reverse: bool = False

    @property
    def refinable(self):
        return self.model is not None

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        s = 1.0 - t if self.reverse else t
        return side_values(self.model, self.side, s, self.direction)

    def coordinates(self):
        s = 1.0 - self.t if self.reverse else self.t
        return side_coordinates(self.model, self.side, s)

    def reversed(self):
        return replace(self, t=1.0 - self.t[::-1], values=self.values[::-1].copy(), reverse=not self.reverse)

    def with_samples(self, t, values):
        return replace(self, t=np.asarray(t, dtype=float), values=np.asarray(values, dtype=complex))


def side_curve(model, side, n_samples, direction=Direction.MINUS):
    """
    Samples Gamma_i on t = 0, 1/(n-1), ..., 1 along a side's traversal

    Parameters
    ----------
    model: pointlev.Model

    side: BoundarySide, SideId or str

    n_samples: int
        At least 2

    direction: Direction

    Returns
    -------
    curve: SideCurve
    """
    if n_samples < 2:
        raise BoundaryError(f"n_samples = {n_samples}, need at least 2")
    side = get_side(side)
    direction = Direction(direction)
    t = np.linspace(0.0, 1.0, n_samples)
    values = side_values(model, side, t, direction)
    return SideCurve(side=side, t=t, values=values, model=model, direction=direction)


@dataclass
class LoopSamples():
    """
    A closed curve stored as consecutive arcs; the last point of each arc is the first
    point of the next one.

    points: the concatenated samples, shared corners kept once
    side_boundaries: index in points where each arc starts, plus the final index
    """
    arcs: tuple
    params: dict = field(default_factory=dict)

    @property
    def points(self):
        pieces = [self.arcs[0].values] + [arc.values[1:] for arc in self.arcs[1:]]
        return np.concatenate(pieces)

    @property
    def side_boundaries(self):
        marks = [0]
        for arc in self.arcs:
            marks.append(marks[-1] + len(arc.values) - 1)
        return tuple(marks)

    @property
    def refinable(self):
        return all(arc.refinable for arc in self.arcs)

    def reversed(self):
        return LoopSamples(arcs=tuple(arc.reversed() for arc in reversed(self.arcs)), params=dict(self.params))

    @classmethod
    def from_points(cls, points, n_arcs=4):
        """
        Wraps a sampled closed curve, cutting it into n_arcs consecutive arcs
        """
        points = np.asarray(points, dtype=complex)
        if len(points) < n_arcs + 1:
            raise BoundaryError(f"Need at least {n_arcs + 1} points, got {len(points)}")
        cuts = np.linspace(0, len(points) - 1, n_arcs + 1).round().astype(int)
        arcs = []
        for i in range(n_arcs):
            chunk = points[cuts[i]:cuts[i + 1] + 1]
            side = TRAVERSAL_ORDER[i % 4]
            arcs.append(SideCurve(side=side, t=np.linspace(0.0, 1.0, len(chunk)), values=chunk))
        return cls(arcs=tuple(arcs), params={"n_points": len(points)})


def full_loop(model, n_per_side, direction=Direction.MINUS):
    """
    The closed boundary loop B2 -> B3 -> B4 -> B1

    Parameters
    ----------
    model: pointlev.Model

    n_per_side: int
        Samples per side, corners included

    direction: Direction

    Returns
    -------
    loop: LoopSamples
    """
    if n_per_side < 2:
        raise BoundaryError(f"n_per_side = {n_per_side}, need at least 2")
    arcs = tuple(side_curve(model, side, n_per_side, direction) for side in TRAVERSAL_ORDER)
    logger.debug("Built loop for %r with %d samples per side", model, n_per_side)
    return LoopSamples(arcs=arcs, params={"n_per_side": n_per_side, "direction": Direction(direction).value})


def _matches(values, reference, atol):
    return np.allclose(values, reference, rtol=0.0, atol=atol)


def classify_side(model, side, direction=Direction.MINUS, n_samples=65, atol=1e-12):
    """
    Symbolic class of Gamma_i: '1', '-1', 'r', '-r', 's', 's*' or 'other'.
    Constants are tested first.
    """
    side = get_side(side)
    direction = Direction(direction)
    t = np.linspace(0.0, 1.0, n_samples)
    values = side_values(model, side, t, direction)
    if _matches(values, 1.0, atol):
        return "1"
    if _matches(values, -1.0, atol):
        return "-1"
    eps, a = side_coordinates(model, side, t)
    if side.running_axis is Axis.DILATION:
        r = r_function(model, a)
        if _matches(values, r, atol):
            return "r"
        if _matches(values, -r, atol):
            return "-r"
    else:
        s = s_from_log_energy(model, side_log_energy(model, side, t))
        if _matches(values, s, atol):
            return "s"
        if _matches(values, np.conj(s), atol):
            return "s*"
    return "other"
