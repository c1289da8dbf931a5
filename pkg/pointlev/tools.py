"""
tools.py

Grid and quadrature helpers shared by the operator checks
"""
import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from opt_einsum import contract

logger = logging.getLogger(__name__)

#Largest |exponent| treated as a power-law tail; steeper ends are taken as decayed
MAX_TAIL_EXPONENT = 20.0


def geometric_grid(r_min, r_max, n_points):
    """
    Geometric radial grid, uniform in t = ln r

    Parameters
    ----------
    r_min, r_max: float
        Grid ends, included

    n_points: int

    Returns
    -------
    t: numpy array
        Logarithmic coordinates
    r: numpy array
        Radii exp(t)
    """
    t = np.linspace(np.log(r_min), np.log(r_max), n_points)
    return t, np.exp(t)


@lru_cache(maxsize=None)
def _gauss_legendre(order):
    return np.polynomial.legendre.leggauss(order)


def _panel_rule(edges, order):
    x, w = _gauss_legendre(order)
    left, width = edges[:-1], np.diff(edges)
    nodes = (left[:, None] + 0.5 * width[:, None] * (x[None, :] + 1.0)).ravel()
    weights = (0.5 * width[:, None] * w[None, :]).ravel()
    return nodes, weights


def graded_panels(r_first, r_end, max_width, growth, order):
    """
    Composite Gauss-Legendre rule on [0, r_end] with panels [0, r_first], then
    widths min(max_width, growth * left edge)

    Parameters
    ----------
    r_first: float
        Right edge of the first panel

    r_end: float

    max_width: float
        Widest panel, set by the fastest oscillation of the integrand

    growth: float
        Largest width over left edge, resolves structure near the origin

    order: int
        Nodes per panel

    Returns
    -------
    nodes, weights: numpy arrays
    """
    edges = [0.0, min(r_first, r_end)]
    while edges[-1] < r_end:
        edges.append(min(edges[-1] + min(max_width, growth * edges[-1]), r_end))
    return _panel_rule(np.asarray(edges), order)


def gauss_legendre_panels(n_panels, width, order):
    """
    Composite Gauss-Legendre rule on [0, n_panels * width]

    Returns
    -------
    nodes, weights: numpy arrays
    """
    return _panel_rule(width * np.arange(n_panels + 1), order)


def chunked_contract(build_kernel, rows, vector, chunk=256):
    """
    Computes sum_j K(rows_i, j) vector_j chunk by chunk over rows

    build_kernel maps a slice of rows to a (len(slice), len(vector)) matrix.
    The summation order is fixed, so results are reproducible.
    """
    out = np.zeros(len(rows), dtype=complex)
    if len(vector) == 0:
        return out
    for start in range(0, len(rows), chunk):
        stop = min(start + chunk, len(rows))
        out[start:stop] = contract('ij,j->i', build_kernel(rows[start:stop]), vector)
    return out


@dataclass(frozen=True)
class PowerTail():
    """
    u(t) ~ exp(q t) (A + B exp(sign (t - T))) beyond a grid end T,
    sign = -1 on the right end and +1 on the left end
    """
    q: float
    A: complex
    B: complex
    T: float
    sign: int

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        x = t - self.T
        return np.exp(self.q * x) * (self.A + self.B * np.exp(self.sign * x))

    def norm_squared(self):
        """ int |u|^2 dt over the tail """
        q = self.sign * self.q
        a2 = abs(self.A)**2
        ab = 2.0 * (self.A * np.conj(self.B)).real
        b2 = abs(self.B)**2
        return a2 / (2.0 * q) + ab / (2.0 * q + 1.0) + b2 / (2.0 * q + 2.0)


def fit_power_tail(t, u, side, window=1.0):
    """
    Fits the power-law tail of a density sampled on a uniform t-grid

    The exponent is the mean log-slope over the window snapped to a multiple
    of 1/2; amplitudes of the leading and next order are least squares.

    Parameters
    ----------
    t, u: numpy arrays
        Grid and complex samples

    side: str
        'left' or 'right'

    window: float
        Width in t of the fitted region

    Returns
    -------
    tail: PowerTail or None
        None when the end has already decayed or does not decay
    """
    dt = t[1] - t[0]
    m = int(min(max(window / dt, 2), len(t) - 1))
    if side == "right":
        tt, uu, sign = t[-m - 1:], u[-m - 1:], -1
    else:
        tt, uu, sign = t[:m + 1], u[:m + 1], 1
    modulus = np.abs(uu)
    if not np.all(np.isfinite(modulus)) or (modulus == 0.0).any():
        return None

    slope = (np.log(modulus[-1]) - np.log(modulus[0])) / (tt[-1] - tt[0])
    q = round(2.0 * slope) / 2.0
    if sign * q <= 0.0 or abs(q) > MAX_TAIL_EXPONENT:
        return None

    T = t[-1] if side == "right" else t[0]
    x = tt - T
    basis = np.stack([np.exp(q * x), np.exp(q * x) * np.exp(sign * x)], axis=1)
    (A, B), *_ = np.linalg.lstsq(basis.astype(complex), uu, rcond=None)
    return PowerTail(q=float(q), A=complex(A), B=complex(B), T=float(T), sign=sign)
