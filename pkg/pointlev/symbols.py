"""

symbols.py
Scalar functions r, s, phi and eta on the compactified axes

"""
import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from .models import ExtendedReal, ModelKind, PSI_1, Tag

logger = logging.getLogger(__name__)


class AxisError(ValueError):
    pass


class Axis(enum.Enum):
    ENERGY = "energy"
    DILATION = "dilation"


class Direction(enum.Enum):
    MINUS = "minus"
    PLUS = "plus"


@dataclass(frozen=True)
class AxisPoint():
    """
    A coordinate of the spectral square: energy in [0, +inf], dilation in [-inf, +inf]
    """
    axis: Axis
    point: ExtendedReal

    def __post_init__(self):
        if self.axis is Axis.ENERGY:
            if self.point.tag is Tag.MINUS_INFINITY:
                raise AxisError("Energy axis does not contain -inf")
            if self.point.is_finite and self.point.value < 0.0:
                raise AxisError(f"Energy {self.point.value} is negative")

    @classmethod
    def energy(cls, value):
        return cls(Axis.ENERGY, ExtendedReal.parse(value))

    @classmethod
    def dilation(cls, value):
        return cls(Axis.DILATION, ExtendedReal.parse(value))

    def to_float(self):
        return self.point.to_float()


def _axis_values(x, axis):
    """
    Turns scalars, AxisPoints or arrays into a float array, checking the axis domain.
    Returns the array and whether the input was a scalar.
    """
    if isinstance(x, AxisPoint):
        if x.axis is not axis:
            raise AxisError(f"Expected a point of the {axis.value} axis, got {x.axis.value}")
        return np.asarray(x.to_float(), dtype=float), True
    if isinstance(x, ExtendedReal):
        x = x.to_float()
    values = np.asarray(x, dtype=float)
    if np.isnan(values).any():
        raise AxisError("NaN coordinate")
    if axis is Axis.ENERGY and (values < 0.0).any():
        raise AxisError("Energies must lie in [0, +inf]")
    return values, values.ndim == 0


def _output(values, scalar):
    if scalar:
        return complex(values)
    return values


def _sech(x):
    #cosh saturates to inf, so the sech term vanishes exactly at the endpoints
    with np.errstate(over="ignore"):
        return 1.0 / np.cosh(x)


def _r_values(kind, a):
    if kind is ModelKind.DELTA2:
        return -np.tanh(np.pi * a / 2.0) + 0.0j
    if kind is ModelKind.DELTA1:
        return -np.tanh(np.pi * a) - 1.0j * _sech(np.pi * a)
    return -np.tanh(np.pi * a) + 1.0j * _sech(np.pi * a)


def _constant(log_eps, value):
    return np.full(log_eps.shape, value, dtype=complex)


def _log_energy(eps):
    with np.errstate(divide="ignore"):
        return np.log(eps)


def _scaled_momentum(log_eps, log_scale):
    """ sqrt(eps) / exp(log_scale), formed from ln(eps) so that eps itself never over- or underflows """
    with np.errstate(over="ignore", under="ignore"):
        return np.exp(0.5 * log_eps - log_scale)


def _cayley(x, sign):
    """ (sign + i x)/(sign - i x); x = +inf gives -1 """
    finite = np.isfinite(x)
    xs = np.where(finite, x, 0.0)
    s = (sign + 1.0j * xs) / (sign - 1.0j * xs)
    return np.where(finite, s, -1.0 + 0.0j)


def _s_delta3(model, log_eps):
    if model.is_infinite:
        return _constant(log_eps, 1.0)
    if model.is_zero:
        return _constant(log_eps, -1.0)
    #(c + iq)/(c - iq), c = 4 pi alpha, scaled by |c|
    x = _scaled_momentum(log_eps, math.log(4.0 * np.pi) + math.log(abs(model.value)))
    return _cayley(x, math.copysign(1.0, model.value))


def _s_delta2(model, log_eps):
    if model.is_infinite:
        return _constant(log_eps, 1.0)
    endpoint = np.isinf(log_eps)
    safe = np.where(endpoint, 0.0, log_eps)
    #real logarithm, sqrt(xi) > 0
    L = 2.0 * np.pi * model.value - PSI_1 - np.log(2.0) + 0.5 * safe
    s = (L + 0.5j * np.pi) / (L - 0.5j * np.pi)
    return np.where(endpoint, 1.0 + 0.0j, s)


def _s_delta1(model, log_eps):
    if model.is_infinite:
        return _constant(log_eps, -1.0)
    if model.is_zero:
        return _constant(log_eps, 1.0)
    #(2q - i alpha)/(2q + i alpha) = -(sign + ix)/(sign - ix), x = 2q/|alpha|
    x = _scaled_momentum(log_eps, math.log(abs(model.value)) - math.log(2.0))
    return -_cayley(x, math.copysign(1.0, model.value))


def _s_deltaprime1(model, log_eps):
    if model.is_infinite:
        return _constant(log_eps, -1.0)
    if model.is_zero:
        return _constant(log_eps, 1.0)
    #(2 + i beta q)/(2 - i beta q) = (sign + ix)/(sign - ix), x = |beta| q/2
    x = _scaled_momentum(log_eps, math.log(2.0) - math.log(abs(model.value)))
    return _cayley(x, math.copysign(1.0, model.value))


_S_FUNCTIONS = {ModelKind.DELTA3: _s_delta3,
                ModelKind.DELTA2: _s_delta2,
                ModelKind.DELTA1: _s_delta1,
                ModelKind.DELTAPRIME1: _s_deltaprime1}


def r_function(model, a):
    """
    The dilation-side function r of the model

    Parameters
    ----------
    model: pointlev.Model

    a: float, array or AxisPoint
        Dilation coordinate(s), +-inf allowed

    Returns
    -------
    r: complex or complex array
        -tanh(pi a) + i sech(pi a) for Delta3 and DeltaPrime1,
        -tanh(pi a) - i sech(pi a) for Delta1, -tanh(pi a / 2) for Delta2
    """
    a, scalar = _axis_values(a, Axis.DILATION)
    return _output(_r_values(model.kind, a), scalar)


def _s_of_log(model, log_eps):
    log_eps = np.asarray(log_eps, dtype=float)
    return _S_FUNCTIONS[model.kind](model, np.atleast_1d(log_eps)).reshape(log_eps.shape)


def s_function(model, eps):
    """
    The scattering function s of the model

    Parameters
    ----------
    model: pointlev.Model

    eps: float, array or AxisPoint
        Energies in [0, +inf]

    Returns
    -------
    s: complex or complex array
        Unimodular; endpoint values are the closed-form limits
    """
    eps, scalar = _axis_values(eps, Axis.ENERGY)
    return _output(_s_of_log(model, _log_energy(eps)), scalar)


def s_from_log_energy(model, log_eps):
    """
    s as a function of ln(eps), -inf and +inf standing for the endpoints.

    Energy scales of extreme parameters (Delta2 with |alpha| > ~56, Delta3 with
    |alpha| > ~1e153) do not fit a float; their logarithms do.
    """
    log_eps = np.asarray(log_eps, dtype=float)
    if np.isnan(log_eps).any():
        raise AxisError("NaN coordinate")
    return _output(_s_of_log(model, log_eps), log_eps.ndim == 0)


def scattering_operator(model, eps):
    """ The scattering operator on the active sector is multiplication by s """
    return s_function(model, eps)


def phi_function(model, a, direction=Direction.MINUS):
    """
    phi = (1 - r)/2 for Omega_-, (1 + r)/2 for Omega_+
    """
    a, scalar = _axis_values(a, Axis.DILATION)
    r = _r_values(model.kind, a)
    if Direction(direction) is Direction.MINUS:
        phi = 0.5 * (1.0 - r)
    else:
        phi = 0.5 * (1.0 + r)
    return _output(phi, scalar)


def _eta(s, direction):
    eta = s - 1.0
    if Direction(direction) is Direction.PLUS:
        eta = np.conj(eta)
    return eta


def eta_function(model, eps, direction=Direction.MINUS):
    """
    eta = s - 1 for Omega_-, its complex conjugate for Omega_+
    """
    eps, scalar = _axis_values(eps, Axis.ENERGY)
    return _output(_eta(_s_of_log(model, _log_energy(eps)), direction), scalar)


def eta_from_log_energy(model, log_eps, direction=Direction.MINUS):
    """ eta_function with the energy given by its logarithm """
    log_eps = np.asarray(log_eps, dtype=float)
    if np.isnan(log_eps).any():
        raise AxisError("NaN coordinate")
    return _output(_eta(_s_of_log(model, log_eps), direction), log_eps.ndim == 0)


def continued_denominator(model, kappa):
    """
    Denominator of s continued to xi = -kappa^2 (sqrt(xi) = i kappa), divided by i where
    that makes it real. A positive root kappa gives the bound state energy -kappa^2.

    Parameters
    ----------
    model: pointlev.Model
        Finite, nonzero parameter
    kappa: float or array

    Returns
    -------
    d: float or array
    """
    kappa = np.asarray(kappa, dtype=float)
    kind = model.kind
    if kind is ModelKind.DELTA3:
        #4 pi alpha - i (i kappa)
        return 4.0 * np.pi * model.value + kappa
    if kind is ModelKind.DELTA1:
        #(2 i kappa + i alpha) / i
        return 2.0 * kappa + model.value
    if kind is ModelKind.DELTAPRIME1:
        #2 - i beta (i kappa)
        return 2.0 + model.value * kappa
    #ln(i kappa / 2) - i pi/2 = ln(kappa/2)
    return 2.0 * np.pi * model.value - PSI_1 + np.log(kappa / 2.0)
