"""

waveop.py
Numerical checks of the wave operators: kernel form against phi(A) eta(-Delta) P,
isometry and the time-delay integral for w2

"""
import logging
import math
import warnings
from dataclasses import asdict, dataclass, replace
from multiprocessing import Pool

import numpy as np
from scipy import fft
from scipy.integrate import simpson, trapezoid
from scipy.interpolate import make_interp_spline
from scipy.special import hankel1, j0, spherical_jn

from .boundary import log_energy_of_t
from .models import PSI_1, ModelKind, model_factory, parse_kind
from .symbols import Direction, eta_function, phi_function, s_from_log_energy
from .tools import chunked_contract, fit_power_tail, gauss_legendre_panels, geometric_grid, graded_panels
from .winding import phase_steps

logger = logging.getLogger(__name__)

#A acts as +tau, tau the variable dual to t = ln r in the FFT convention
DILATION_SIGN = 1
DECAY_THRESHOLD = 1e-8
#Forward transform: Gauss-Legendre panels in r spanning 4 pi of phase at the largest momentum
RADIAL_PANEL_NODES = 16
RADIAL_PANEL_PHASE = 4.0 * math.pi
RADIAL_PANEL_GROWTH = 0.5
SPLINE_DEGREE = 5
#|f| r^(n-1) below this fraction of its peak counts as outside the support
SUPPORT_FLOOR = 1e-18
#Rounding bound of a transformed sample over machine epsilon times its absolute sum
FLOOR_FACTOR = 4.0
SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
TIME_DELAY_NODES = 20001
MAX_DELAY_STEP = 0.1

#(center, width) of the Gaussian test functions
BATTERY = ((0.0, 1.0), (2.0, 0.5), (0.0, 3.0))

#|param| windows of the random batteries; Delta2 is sampled uniformly in alpha
PARAMETER_WINDOWS = {ModelKind.DELTA3: (0.1, 1.5),
                     ModelKind.DELTA2: (-0.4, 0.1),
                     ModelKind.DELTA1: (1.0, 20.0),
                     ModelKind.DELTAPRIME1: (0.1, 3.0)}

PARITIES = ("radial", "even", "odd")


class GridCoverageError(ValueError):
    pass


class GridTooCoarseError(ValueError):
    pass


class CutoffSensitivityWarning(UserWarning):
    pass


class DerivativeGridWarning(UserWarning):
    pass


@dataclass(frozen=True)
class QuadratureSettings():
    """
    Numerics of the operator checks

    Parameters
    ----------
    r_min, r_max: float
        Ends of the geometric radial grid
    n_t: int
        Points of the t = ln r grid carrying the samples, shared with the dilation multiplier
    pad_factor: int
        FFT length over n_t
    R_cutoff: float
        Momentum cutoff of the kernel integrals, checked against 2 R_cutoff
    panel_target: float
        Largest Gauss-Legendre panel width, pi / (2 r_max) when None
    gl_nodes: int
        Nodes per panel
    cutoff_tolerance, identity_tolerance, isometry_tolerance: float
        Limits for the cutoff delta, kernel vs factorized distance and |norm ratio - 1|
    nyquist_ratio: float
        Largest spectrum fraction allowed near the Nyquist frequency of the t-grid
    chunk: int
        Output radii per contraction block
    """
    r_min: float = 1e-3
    r_max: float = 1e2
    n_t: int = 2**14
    pad_factor: int = 4
    R_cutoff: float = 60.0
    panel_target: float = None
    gl_nodes: int = 6
    cutoff_tolerance: float = 1e-3
    identity_tolerance: float = 1e-3
    isometry_tolerance: float = 1e-4
    nyquist_ratio: float = 1e-4
    chunk: int = 256

    def __post_init__(self):
        if not 0.0 < self.r_min < self.r_max:
            raise ValueError(f"Need 0 < r_min < r_max, got {self.r_min}, {self.r_max}")
        if self.n_t < 16:
            raise ValueError(f"n_t = {self.n_t} is too small")
        if self.pad_factor < 2:
            raise ValueError("pad_factor must be at least 2")
        if not self.R_cutoff > 0.0 or not math.isfinite(self.R_cutoff):
            raise ValueError(f"R_cutoff = {self.R_cutoff} must be finite and positive")
        if self.gl_nodes < 1:
            raise ValueError("gl_nodes must be at least 1")

    @property
    def target_width(self):
        return self.panel_target if self.panel_target is not None else np.pi / (2.0 * self.r_max)

    @property
    def panel_width(self):
        """ Widest panel not above the target that tiles [0, R_cutoff] """
        return self.R_cutoff / math.ceil(self.R_cutoff / self.target_width - 1e-9)

    def refined(self):
        """ Halves the t step and the panel width """
        return replace(self, n_t=2 * self.n_t - 1, panel_target=self.target_width / 2.0)

    def coarsened(self):
        return replace(self, n_t=(self.n_t + 1) // 2, panel_target=2.0 * self.target_width)

    def to_dict(self):
        record = asdict(self)
        record["panel_width"] = self.panel_width
        return record


def log_grid(settings=None):
    """
    Radii of the geometric grid, uniform in t = ln r
    """
    settings = settings or QuadratureSettings()
    return geometric_grid(settings.r_min, settings.r_max, settings.n_t)[1]


def momentum_nodes(settings=None, cutoff=None):
    """
    Composite Gauss-Legendre nodes on [0, cutoff]

    The panel width is fixed by R_cutoff, so the nodes for 2 R_cutoff start with
    the nodes for R_cutoff.
    """
    settings = settings or QuadratureSettings()
    cutoff = settings.R_cutoff if cutoff is None else cutoff
    width = settings.panel_width
    n_panels = max(int(round(cutoff / width)), 1)
    return gauss_legendre_panels(n_panels, width, settings.gl_nodes)


@dataclass
class RadialFunction():
    """
    Samples of a function in one symmetry sector on a geometric grid

    grid: radii, uniform in ln r
    values: complex samples
    dimension: 1, 2 or 3
    parity: 'radial' for n = 2, 3; 'even' or 'odd' (half-line data of an even or
    odd function) for n = 1
    """
    grid: np.ndarray
    values: np.ndarray
    dimension: int
    parity: str = "radial"

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=complex)
        if self.grid.shape != self.values.shape or self.grid.ndim != 1 or len(self.grid) < 3:
            raise ValueError("grid and values must be 1D arrays of equal length, at least 3")
        if self.grid[0] <= 0.0 or not np.all(np.diff(self.grid) > 0.0):
            raise ValueError("grid must be positive and strictly increasing")
        if self.parity not in PARITIES:
            raise ValueError(f"Unknown parity '{self.parity}'")
        if (self.dimension == 1) == (self.parity == "radial"):
            raise ValueError(f"Parity '{self.parity}' does not fit dimension {self.dimension}")

    @classmethod
    def from_callable(cls, func, dimension, parity="radial", settings=None):
        r = log_grid(settings)
        return cls(r, func(r), dimension, parity)

    @property
    def t(self):
        return np.log(self.grid)

    @property
    def dt(self):
        t = self.t
        return t[1] - t[0]

    @property
    def is_zero(self):
        return not np.any(self.values)

    def density(self):
        """ u(t) = e^{nt/2} f(e^t), unitary image on L2(R, dt) """
        return self.grid**(self.dimension / 2.0) * self.values

    def with_values(self, values):
        return RadialFunction(self.grid, values, self.dimension, self.parity)

    def support_radius(self):
        """ Grid radius beyond which |f| r^(n-1) stays below SUPPORT_FLOOR of its peak """
        weight = np.abs(self.values) * self.grid**(self.dimension - 1)
        above = np.flatnonzero(weight > SUPPORT_FLOOR * weight.max())
        return self.grid[min(above[-1] + 1, len(self.grid) - 1)]

    def interpolate(self, r):
        """
        f at arbitrary radii: quintic spline in t = ln r on the grid, zero beyond it.
        Below the grid f = r^p (a + b r^2), p = 1 in the odd sector and 0 otherwise,
        through the first two samples.
        """
        r = np.asarray(r, dtype=float)
        out = np.zeros(r.shape, dtype=complex)
        inside = (r >= self.grid[0]) & (r <= self.grid[-1])
        t = np.log(r[inside])
        real = make_interp_spline(self.t, self.values.real, k=SPLINE_DEGREE)
        imag = make_interp_spline(self.t, self.values.imag, k=SPLINE_DEGREE)
        out[inside] = real(t) + 1.0j * imag(t)
        below = r < self.grid[0]
        power = 1.0 if self.parity == "odd" else 0.0
        (r0, r1), (f0, f1) = self.grid[:2], self.values[:2]
        c0, c1 = f0 / r0**power, f1 / r1**power
        b = (c1 - c0) / (r1**2 - r0**2)
        out[below] = (c0 + b * (r[below]**2 - r0**2)) * r[below]**power
        return out

    def norm(self):
        """
        L2 norm for the radial measure r^(n-1) dr, with power-law tails beyond both grid ends
        """
        t, u = self.t, self.density()
        total = trapezoid(np.abs(u)**2, t)
        for side in ("left", "right"):
            tail = fit_power_tail(t, u, side)
            if tail is not None:
                total += tail.norm_squared()
        return math.sqrt(max(total, 0.0))

    def check_coverage(self, settings=None):
        settings = settings or QuadratureSettings()
        if self.grid[0] > settings.r_min * (1.0 + 1e-9) or self.grid[-1] < settings.r_max * (1.0 - 1e-9):
            raise GridCoverageError(f"Grid [{self.grid[0]:.3g}, {self.grid[-1]:.3g}] does not cover "
                                    f"[{settings.r_min:.3g}, {settings.r_max:.3g}]")
        peak = np.abs(self.values).max()
        if peak > 0.0 and abs(self.values[-1]) >= DECAY_THRESHOLD * peak:
            raise GridCoverageError(f"|f(r_max)| = {abs(self.values[-1]):.3e} has not decayed")


@dataclass
class MomentumFunction():
    """
    Sector-reduced Fourier transform on quadrature nodes; weights integrate dk.
    floor bounds the rounding error of each sample; smaller values are noise.
    """
    grid: np.ndarray
    values: np.ndarray
    dimension: int
    parity: str = "radial"
    weights: np.ndarray = None
    floor: float = 0.0

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=complex)
        if self.weights is None:
            self.weights = np.ones_like(self.grid)
        if self.grid.shape != self.values.shape:
            raise ValueError("grid and values must have equal length")
        if (self.grid <= 0.0).any():
            raise ValueError("Momenta must be positive")

    def with_values(self, values, floor=None):
        floor = self.floor if floor is None else floor
        return MomentumFunction(self.grid, values, self.dimension, self.parity, self.weights, floor)

    def truncated(self, cutoff):
        """ The nodes below cutoff """
        keep = self.grid < cutoff
        return MomentumFunction(self.grid[keep], self.values[keep], self.dimension, self.parity,
                                self.weights[keep], self.floor)

    def significant_extent(self):
        """ Number of leading nodes past which every sample is at or below the floor """
        above = np.flatnonzero(np.abs(self.values) > self.floor)
        return int(above[-1]) + 1 if len(above) else 0

    def is_decayed(self):
        peak = np.abs(self.values).max()
        return abs(self.values[-1]) <= max(DECAY_THRESHOLD * peak, self.floor)


def _transform_factors(dimension, parity):
    """ normalization, radial function, forward phase, inverse phase """
    if dimension == 3:
        return SQRT_2_OVER_PI, lambda x: spherical_jn(0, x), 1.0, 1.0
    if dimension == 2:
        return 1.0, j0, 1.0, 1.0
    if parity == "odd":
        return SQRT_2_OVER_PI, np.sin, -1.0j, 1.0j
    return SQRT_2_OVER_PI, np.cos, 1.0, 1.0


def radial_fourier(f, settings=None, cutoff=None):
    """
    Fourier transform restricted to the symmetry sector of f

    n = 3: sqrt(2/pi) int r^2 j0(kr) f dr; n = 2: int r J0(kr) f dr;
    n = 1 even: sqrt(2/pi) int cos(kr) f dr; n = 1 odd: -i sqrt(2/pi) int sin(kr) f dr

    The r-integral runs over graded Gauss-Legendre panels up to the support of f,
    with f interpolated onto the nodes, so cos(kr) stays resolved up to the cutoff.

    Parameters
    ----------
    f: RadialFunction
        Must cover the settings grid and decay at r_max

    settings: QuadratureSettings

    cutoff: float
        Largest momentum, R_cutoff by default

    Returns
    -------
    psi_hat: MomentumFunction
    """
    settings = settings or QuadratureSettings()
    f.check_coverage(settings)
    k, weights = momentum_nodes(settings, cutoff)
    if f.is_zero:
        return MomentumFunction(k, np.zeros_like(k, dtype=complex), f.dimension, f.parity, weights)

    norm, radial, phase, _ = _transform_factors(f.dimension, f.parity)
    k_max = k[-1]
    r, w = graded_panels(f.grid[0], f.support_radius(), RADIAL_PANEL_PHASE / k_max, RADIAL_PANEL_GROWTH,
                         RADIAL_PANEL_NODES)
    vector = f.interpolate(r) * r**(f.dimension - 1) * w
    values = chunked_contract(lambda rows: radial(np.outer(rows, r)), k, vector, settings.chunk)
    #rounding of the sum and of the phase k r
    floor = FLOOR_FACTOR * np.finfo(float).eps * norm * np.sum(np.abs(vector) * (1.0 + k_max * r))
    logger.debug("Forward transform on %d radii and %d momenta, floor %.2e", len(r), len(k), floor)
    return MomentumFunction(k, norm * phase * values, f.dimension, f.parity, weights, floor)


def inverse_radial_fourier(mf, grid=None, settings=None):
    """
    Inverse of radial_fourier, evaluated on the given radii

    Samples past the last one above the floor are left out of the sum.
    """
    settings = settings or QuadratureSettings()
    grid = log_grid(settings) if grid is None else np.asarray(grid, dtype=float)
    zero = RadialFunction(grid, np.zeros_like(grid, dtype=complex), mf.dimension, mf.parity)
    if not np.any(mf.values):
        return zero
    if not mf.is_decayed():
        raise GridCoverageError(f"Momentum function has not decayed at k = {mf.grid[-1]:.3g}: "
                                f"{abs(mf.values[-1]):.3e} against a floor of {mf.floor:.3e}")
    n = mf.significant_extent()
    if n == 0:
        return zero

    norm, radial, _, phase = _transform_factors(mf.dimension, mf.parity)
    k = mf.grid[:n]
    vector = mf.values[:n] * k**(mf.dimension - 1) * mf.weights[:n]
    values = chunked_contract(lambda rows: radial(np.outer(rows, k)), grid, vector, settings.chunk)
    return RadialFunction(grid, norm * phase * values, mf.dimension, mf.parity)


def apply_eta(mf, model, direction=Direction.MINUS):
    """ Multiplication by eta(k^2) """
    eta = eta_function(model, mf.grid**2, direction)
    bound = np.abs(eta).max() if len(eta) else 0.0
    return mf.with_values(eta * mf.values, floor=mf.floor * bound)


def _check_nyquist(spectrum, tau, ratio):
    peak = np.abs(spectrum).max()
    if peak == 0.0:
        return
    high = np.abs(tau) > 0.75 * np.abs(tau).max()
    fraction = np.abs(spectrum[high]).max() / peak
    if fraction > ratio:
        raise GridTooCoarseError(f"Spectrum near the Nyquist frequency is {fraction:.2e} of its peak")


def apply_dilation_multiplier(f, multiplier, pad_factor=4, nyquist_ratio=1e-4):
    """
    Applies m(A) for the dilation generator A

    With u(t) = e^{nt/2} f(e^t), A is diagonal in the Fourier variable tau of t.
    The t-grid is padded on both sides with the power-law tails fitted at each end,
    then m(DILATION_SIGN * tau) multiplies the FFT of u.

    Parameters
    ----------
    f: RadialFunction

    multiplier: callable
        Vectorized m(tau)

    pad_factor: int

    nyquist_ratio: float

    Returns
    -------
    g: RadialFunction
    """
    if f.is_zero:
        return f.with_values(np.zeros_like(f.values))
    t, dt = f.t, f.dt
    u = f.density()
    n = len(u)
    size = pad_factor * n
    left = (size - n) // 2
    right = size - n - left

    padded = np.zeros(size, dtype=complex)
    padded[left:left + n] = u
    tail = fit_power_tail(t, u, "left")
    if tail is not None:
        padded[:left] = tail.evaluate(t[0] - dt * np.arange(left, 0, -1))
    tail = fit_power_tail(t, u, "right")
    if tail is not None:
        padded[left + n:] = tail.evaluate(t[-1] + dt * np.arange(1, right + 1))

    spectrum = fft.fft(padded)
    tau = DILATION_SIGN * 2.0 * np.pi * fft.fftfreq(size, dt)
    _check_nyquist(spectrum, tau, nyquist_ratio)
    out = fft.ifft(spectrum * multiplier(tau))[left:left + n]
    return f.with_values(out / f.grid**(f.dimension / 2.0))


def apply_phi_dilation(f, model, direction=Direction.MINUS, settings=None):
    """ phi(A) with phi = (1 -+ r)/2 of the model """
    settings = settings or QuadratureSettings()
    direction = Direction(direction)
    return apply_dilation_multiplier(f, lambda tau: phi_function(model, tau, direction),
                                     settings.pad_factor, settings.nyquist_ratio)


def dilate(f, theta, settings=None):
    """ U(theta) f = e^{n theta/2} f(e^theta r), through the multiplier e^{i theta tau} """
    settings = settings or QuadratureSettings()
    return apply_dilation_multiplier(f, lambda tau: np.exp(1.0j * theta * tau),
                                     settings.pad_factor, settings.nyquist_ratio)


def sector_projection(f, model):
    """
    P0 or P1: keeps f in the model's active sector, zero otherwise
    """
    if f.dimension != model.dimension:
        raise ValueError(f"{model!r} acts in dimension {model.dimension}, f has dimension {f.dimension}")
    if model.parity == "radial" or f.parity == model.parity:
        return f
    return f.with_values(np.zeros_like(f.values))


def _transform_up_to(f, settings, psi_hat, cutoff):
    if psi_hat is None:
        return radial_fourier(f, settings, cutoff)
    return psi_hat.truncated(cutoff)


def factorized_apply(f, model, direction=Direction.MINUS, settings=None, psi_hat=None):
    """
    phi(A) eta(-Delta) P f, the functional-calculus form of Omega_-+ - 1

    Parameters
    ----------
    f: RadialFunction

    model: pointlev.Model

    direction: Direction
        MINUS for Omega_-, PLUS for Omega_+

    settings: QuadratureSettings

    psi_hat: MomentumFunction, optional
        radial_fourier(f) on nodes reaching at least R_cutoff, reused instead of recomputed

    Returns
    -------
    g: RadialFunction
    """
    settings = settings or QuadratureSettings()
    direction = Direction(direction)
    projected = sector_projection(f, model)
    if projected.is_zero:
        return projected
    mf = apply_eta(_transform_up_to(projected, settings, psi_hat, settings.R_cutoff), model, direction)
    if not np.any(mf.values):
        return projected.with_values(np.zeros_like(projected.values))
    g = inverse_radial_fourier(mf, f.grid, settings)
    return apply_phi_dilation(g, model, direction, settings)


def _angular_factor(model, parity):
    """ Angular sum of the kernel: sum over omega of psi_hat(k omega), or of omega psi_hat(k omega) """
    if model.parity == "radial":
        return 1.0
    sign = 1.0 if parity == "even" else -1.0
    if model.kind is ModelKind.DELTA1:
        return 1.0 + sign
    return 1.0 - sign


def _kernel_vanishes(model):
    if model.kind in (ModelKind.DELTA3, ModelKind.DELTA2):
        return model.is_infinite
    return model.is_zero


def _kernel_prefactor(model, k):
    kind = model.kind
    if kind is ModelKind.DELTA3:
        return SQRT_2_OVER_PI * k**2 / (4.0 * np.pi * model.value - 1.0j * k)
    if kind is ModelKind.DELTA2:
        L = 2.0 * np.pi * model.value - PSI_1 + np.log(k / 2.0)
        return k * (0.5j * np.pi) / (L - 0.5j * np.pi)
    if model.is_infinite:
        return np.full(k.shape, -1.0 / math.sqrt(2.0 * np.pi), dtype=complex)
    if kind is ModelKind.DELTA1:
        alpha = model.value
        return (-1.0j * alpha / (2.0 * k + 1.0j * alpha)) / math.sqrt(2.0 * np.pi)
    beta = model.value
    return (1.0j * beta * k / (2.0 - 1.0j * beta * k)) / math.sqrt(2.0 * np.pi)


def _outgoing_wave(model):
    if model.kind is ModelKind.DELTA2:
        return lambda x: hankel1(0, x)
    return lambda x: np.exp(1.0j * x)


@dataclass
class KernelResult():
    """
    Kernel form of Omega_- - 1 truncated at R_cutoff and at 2 R_cutoff
    """
    output: RadialFunction
    output_doubled: RadialFunction
    cutoff_delta: float
    R_cutoff: float

    @property
    def R_cutoff_doubled(self):
        return 2.0 * self.R_cutoff


def kernel_apply(f, model, settings=None, R_cutoff=None, psi_hat=None):
    """
    Evaluates the integral kernel of Omega_- - 1 on f

    The angular integral is done in the symmetry sector; the k-integral is truncated
    at R_cutoff and again at 2 R_cutoff, and the relative L2 change is reported.
    Momenta past the last transform sample above the quadrature floor are skipped.

    Parameters
    ----------
    f: RadialFunction

    model: pointlev.Model

    settings: QuadratureSettings

    R_cutoff: float, optional
        Overrides settings.R_cutoff

    psi_hat: MomentumFunction, optional
        radial_fourier(f) up to 2 R_cutoff, reused instead of recomputed

    Returns
    -------
    result: KernelResult
    """
    settings = settings or QuadratureSettings()
    if R_cutoff is not None:
        settings = replace(settings, R_cutoff=float(R_cutoff))
    if f.dimension != model.dimension:
        raise ValueError(f"{model!r} acts in dimension {model.dimension}, f has dimension {f.dimension}")

    angular = _angular_factor(model, f.parity)
    if angular == 0.0 or _kernel_vanishes(model) or f.is_zero:
        zero = f.with_values(np.zeros_like(f.values))
        return KernelResult(zero, zero, 0.0, settings.R_cutoff)

    psi_hat = _transform_up_to(f, settings, psi_hat, 2.0 * settings.R_cutoff)
    n_used = psi_hat.significant_extent()
    k = psi_hat.grid[:n_used]
    amplitude = _kernel_prefactor(model, k) * angular * psi_hat.values[:n_used] * psi_hat.weights[:n_used]
    n_inner = min(int(round(settings.R_cutoff / settings.panel_width)) * settings.gl_nodes, n_used)

    wave = _outgoing_wave(model)
    r = f.grid
    inner = chunked_contract(lambda rows: wave(np.outer(rows, k[:n_inner])), r, amplitude[:n_inner],
                             settings.chunk)
    outer = chunked_contract(lambda rows: wave(np.outer(rows, k[n_inner:])), r, amplitude[n_inner:],
                             settings.chunk)
    scale = 1.0 / r if model.kind is ModelKind.DELTA3 else 1.0

    output = f.with_values(scale * inner)
    doubled = f.with_values(scale * (inner + outer))
    delta = relative_l2_distance(output, doubled)
    if delta > settings.cutoff_tolerance:
        message = f"{model!r}: doubling R_cutoff = {settings.R_cutoff:g} moves the kernel output by {delta:.2e}"
        logger.warning(message)
        warnings.warn(message, CutoffSensitivityWarning)
    return KernelResult(output, doubled, delta, settings.R_cutoff)


def relative_l2_distance(f, g):
    """ ||f - g|| / ||g||, 0 when both vanish """
    difference = f.with_values(f.values - g.values).norm()
    reference = g.norm()
    if reference == 0.0:
        return 0.0 if difference == 0.0 else math.inf
    return difference / reference


def isometry_check(model, f, direction=Direction.MINUS, settings=None, psi_hat=None):
    """
    ||(1 + phi(A) eta(-Delta) P) f|| / ||f||
    """
    reference = f.norm()
    if reference == 0.0:
        raise ValueError("isometry_check needs a nonzero function")
    image = f.values + factorized_apply(f, model, direction, settings, psi_hat).values
    return f.with_values(image).norm() / reference


def time_delay_w2(model, n_nodes=TIME_DELAY_NODES):
    """
    (1/2 pi i) int conj(s) ds over the energy half-line

    ds/dt is taken by second order differences on the compactified energy grid
    of the boundary module and integrated with Simpson's rule.

    Parameters
    ----------
    model: pointlev.Model

    n_nodes: int
        Uniform nodes in t in [0, 1]

    Returns
    -------
    w2: float
    """
    t = np.linspace(0.0, 1.0, n_nodes)
    s = s_from_log_energy(model, log_energy_of_t(model, t))
    step = np.abs(phase_steps(s)).max()
    if step > MAX_DELAY_STEP:
        message = f"{model!r}: phase of s moves {step:.3f} rad between derivative nodes"
        logger.warning(message)
        warnings.warn(message, DerivativeGridWarning)
    ds = np.gradient(s, t, edge_order=2)
    integral = simpson(np.conj(s) * ds, x=t)
    return float((integral / (2.0j * np.pi)).real)


def gaussian_battery(model, settings=None, parity=None):
    """
    Normalized Gaussian test functions in a symmetry sector

    Even and radial sectors use exp(-(r-c)^2/2s^2) + exp(-(r+c)^2/2s^2); the odd sector
    uses r exp(-r^2/2s^2) for c = 0 and the difference of the shifted pair otherwise.

    Returns
    -------
    battery: list of (name, RadialFunction)
    """
    parity = parity or model.parity
    r = log_grid(settings)
    battery = []
    for center, width in BATTERY:
        plus = np.exp(-(r - center)**2 / (2.0 * width**2))
        minus = np.exp(-(r + center)**2 / (2.0 * width**2))
        if parity == "odd":
            values = r * np.exp(-r**2 / (2.0 * width**2)) if center == 0.0 else plus - minus
        else:
            values = plus + minus
        f = RadialFunction(r, values, model.dimension, parity)
        battery.append((f"gauss(c={center:g},sigma={width:g})", f.with_values(f.values / f.norm())))
    return battery


def random_parameters(kind, count=10, seed=0):
    """
    Random battery parameters: log-uniform magnitudes with random signs inside the
    model's window, uniform alpha for Delta2
    """
    kind = parse_kind(kind)
    rng = np.random.default_rng(seed)
    lo, hi = PARAMETER_WINDOWS[kind]
    if kind is ModelKind.DELTA2:
        return [float(x) for x in rng.uniform(lo, hi, count)]
    magnitudes = np.exp(rng.uniform(np.log(lo), np.log(hi), count))
    signs = rng.choice([-1.0, 1.0], count)
    return [float(s * m) for s, m in zip(signs, magnitudes)]


@dataclass
class OperatorCheck():
    model: dict
    test_fn: str
    rel_L2_error: float
    norm_ratio: float
    norm_ratio_plus: float
    R_cutoff: float
    R_cutoff_doubled_delta: float
    passed: bool
    error: str = None

    def to_dict(self):
        param = [value for key, value in self.model.items() if key != "model"]
        record = {"model": self.model["model"], "param": param[0] if param else None}
        record.update({"test_fn": self.test_fn, "rel_L2_error": self.rel_L2_error,
                       "norm_ratio": self.norm_ratio, "norm_ratio_plus": self.norm_ratio_plus,
                       "R_cutoff": self.R_cutoff, "R_cutoff_doubled_delta": self.R_cutoff_doubled_delta,
                       "pass": self.passed})
        if self.error is not None:
            record["error"] = self.error
        return record


def check_operator_identity(model, f, settings=None, test_fn="f"):
    """
    Compares the kernel form with phi(A) eta(-Delta) P and checks both isometries

    Parameters
    ----------
    model: pointlev.Model

    f: RadialFunction
        Normalized test function

    settings: QuadratureSettings

    test_fn: str
        Label for the report

    Returns
    -------
    check: OperatorCheck
    """
    settings = settings or QuadratureSettings()
    psi_hat = radial_fourier(f, settings, cutoff=2.0 * settings.R_cutoff)
    kernel = kernel_apply(f, model, settings, psi_hat=psi_hat)
    factorized = factorized_apply(f, model, Direction.MINUS, settings, psi_hat)
    error = relative_l2_distance(kernel.output, factorized)
    ratio = f.with_values(f.values + factorized.values).norm() / f.norm()
    ratio_plus = isometry_check(model, f, Direction.PLUS, settings, psi_hat)

    passed = (error < settings.identity_tolerance
              and abs(ratio - 1.0) < settings.isometry_tolerance
              and abs(ratio_plus - 1.0) < settings.isometry_tolerance)
    logger.info("%r %s: rel L2 %.2e, norm ratios %.8f / %.8f, %s", model, test_fn, error, ratio, ratio_plus,
                "pass" if passed else "FAIL")
    return OperatorCheck(model=model.descriptor(), test_fn=test_fn, rel_L2_error=error, norm_ratio=ratio,
                         norm_ratio_plus=ratio_plus, R_cutoff=kernel.R_cutoff,
                         R_cutoff_doubled_delta=kernel.cutoff_delta, passed=passed)


def _battery_item(args):
    kind, param, settings, parity = args
    model = model_factory(kind, param)
    checks = []
    for name, f in gaussian_battery(model, settings, parity):
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", CutoffSensitivityWarning)
                checks.append(check_operator_identity(model, f, settings, name))
        except (ValueError, ArithmeticError) as err:
            logger.warning("%r %s failed: %s", model, name, err)
            checks.append(OperatorCheck(model=model.descriptor(), test_fn=name, rel_L2_error=math.nan,
                                        norm_ratio=math.nan, norm_ratio_plus=math.nan,
                                        R_cutoff=settings.R_cutoff, R_cutoff_doubled_delta=math.nan,
                                        passed=False, error=f"{type(err).__name__}: {err}"))
    return checks


def operator_battery(kind, params, settings=None, parity=None, jobs=1):
    """
    Runs check_operator_identity for every parameter and Gaussian test function

    Parameters
    ----------
    kind: str or ModelKind

    params: list

    settings: QuadratureSettings

    parity: str, optional
        Sector of the test functions, the model's own sector by default

    jobs: int
        Worker processes; the order of params is kept

    Returns
    -------
    checks: list of OperatorCheck
    """
    kind = parse_kind(kind)
    settings = settings or QuadratureSettings()
    items = [(kind, p, settings, parity) for p in params]
    if jobs > 1:
        with Pool(jobs) as pool:
            nested = pool.map(_battery_item, items)
    else:
        nested = [_battery_item(item) for item in items]
    checks = [check for group in nested for check in group]
    logger.info("Operator battery %s: %d/%d passed", kind.value, sum(c.passed for c in checks), len(checks))
    return checks
