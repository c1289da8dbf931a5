"""

models.py
Point-interaction Hamiltonians and their spectral facts

"""
import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)

#Euler-Mascheroni constant, Psi(1) = -gamma
EULER_GAMMA = 0.577215664901532860606512090082
PSI_1 = -EULER_GAMMA


class ParameterError(ValueError):
    pass


class Tag(enum.Enum):
    FINITE = "finite"
    PLUS_INFINITY = "+inf"
    MINUS_INFINITY = "-inf"


@dataclass(frozen=True)
class ExtendedReal():
    """
    A point of the extended real line with explicit infinity tags

    Parameters
    ----------
    tag: Tag
        Finite or one of the two infinities
    value: float
        Meaningful only when tag is FINITE
    """
    tag: Tag
    value: float = 0.0

    def __post_init__(self):
        if self.tag is Tag.FINITE:
            if math.isnan(self.value):
                raise ParameterError("NaN is not a point of the extended real line")
            if math.isinf(self.value):
                raise ParameterError("Use an infinity tag instead of an infinite finite value")

    @classmethod
    def finite(cls, value):
        return cls(Tag.FINITE, float(value))

    @classmethod
    def plus_infinity(cls):
        return cls(Tag.PLUS_INFINITY, math.inf)

    @classmethod
    def minus_infinity(cls):
        return cls(Tag.MINUS_INFINITY, -math.inf)

    @classmethod
    def from_float(cls, value):
        value = float(value)
        if math.isnan(value):
            raise ParameterError("NaN is not a point of the extended real line")
        if value == math.inf:
            return cls.plus_infinity()
        if value == -math.inf:
            return cls.minus_infinity()
        return cls.finite(value)

    @classmethod
    def parse(cls, text):
        """
        Reads decimal text or one of 'inf', '+inf', '∞', '-inf'
        """
        if isinstance(text, ExtendedReal):
            return text
        if not isinstance(text, str):
            return cls.from_float(text)
        token = text.strip().lower()
        if token in ("inf", "+inf", "infinity", "+infinity", "∞", "+∞"):
            return cls.plus_infinity()
        if token in ("-inf", "-infinity", "-∞"):
            return cls.minus_infinity()
        try:
            value = float(token)
        except ValueError:
            raise ParameterError(f"Cannot read '{text}' as an extended real")
        if math.isinf(value):
            #only the spelled-out infinities above may stand for the points at infinity
            raise ParameterError(f"'{text}' overflows double precision")
        return cls.from_float(value)

    @property
    def is_finite(self):
        return self.tag is Tag.FINITE

    def to_float(self):
        """ Finite value, or +-inf """
        return self.value

    def __str__(self):
        if self.tag is Tag.PLUS_INFINITY:
            return "inf"
        if self.tag is Tag.MINUS_INFINITY:
            return "-inf"
        return repr(self.value)


class ModelKind(enum.Enum):
    DELTA3 = "delta3"
    DELTA2 = "delta2"
    DELTA1 = "delta1"
    DELTAPRIME1 = "deltaprime1"


@dataclass(frozen=True)
class SpectralFacts():
    """
    Spectral data of one extension

    bound_state_energies is None when only the count is known.
    provenance is one of 'stated', 'derived' or 'count-only'.
    """
    essential_spectrum: tuple
    bound_state_count: int
    bound_state_energies: tuple
    provenance: str

    def to_dict(self):
        energies = None if self.bound_state_energies is None else list(self.bound_state_energies)
        return {"essential_spectrum": list(self.essential_spectrum),
                "bound_state_count": self.bound_state_count,
                "bound_state_energies": energies,
                "energy_provenance": self.provenance}


COUNT_ONLY = "count-only"


class Model():
    """
    Base class for the four point-interaction families.

    Parameters
    ----------
    param: float, str or ExtendedReal
        alpha for the delta models, beta for delta prime. 'inf' selects the
        free (or decoupled) extension.
    """
    kind = None
    dimension = None
    projection = None
    parity = None
    param_name = "alpha"

    def __init__(self, param):

        #Basics
        self.param = ExtendedReal.parse(param)
        if self.param.tag is Tag.MINUS_INFINITY:
            raise ParameterError(f"{self.param_name} = -inf is not an extension parameter")
        self.value = self.param.to_float()

    @property
    def is_infinite(self):
        return self.param.tag is Tag.PLUS_INFINITY

    @property
    def is_zero(self):
        return self.param.is_finite and self.value == 0.0

    def __repr__(self):
        return f"{self.__class__.__name__}({self.param_name}={self.param})"

    def __eq__(self, other):
        return isinstance(other, Model) and self.kind is other.kind and self.param == other.param

    def __hash__(self):
        return hash((self.kind, self.param))

    def descriptor(self):
        return {"model": self.kind.value, self.param_name: str(self.param)}

    def _has_bound_state(self):
        return self.param.is_finite and self.value < 0.0

    def _bound_state_energy(self):
        raise NotImplementedError

    def bound_state_count(self):
        return 1 if self._has_bound_state() else 0

    def bound_state_energies(self):
        """
        Negative eigenvalues, or COUNT_ONLY when the value is not known in closed form
        """
        if not self._has_bound_state():
            return []
        return [self._bound_state_energy()]

    def energy_provenance(self):
        return "stated"

    def characteristic_log_energy(self):
        """
        Logarithm of the energy scale on which s varies
        """
        if self.is_infinite or self.is_zero:
            return 0.0
        return self._characteristic_log_energy()

    def _characteristic_log_energy(self):
        raise NotImplementedError

    def spectral_facts(self):
        energies = self.bound_state_energies()
        if energies == COUNT_ONLY:
            energies, provenance = None, COUNT_ONLY
        else:
            energies = tuple(energies)
            provenance = self.energy_provenance() if energies else "stated"
        return SpectralFacts(essential_spectrum=(0.0, math.inf),
                             bound_state_count=self.bound_state_count(),
                             bound_state_energies=energies,
                             provenance=provenance)


class Delta3(Model):
    """ delta interaction at the origin of R^3 """
    kind = ModelKind.DELTA3
    dimension = 3
    projection = "P0"
    parity = "radial"

    def _bound_state_energy(self):
        with np.errstate(over="ignore"):
            return float(-np.square(4.0 * np.pi * np.float64(self.value)))

    def _characteristic_log_energy(self):
        return 2.0 * (math.log(4.0 * np.pi) + math.log(abs(self.value)))


class Delta2(Model):
    """ delta interaction at the origin of R^2 """
    kind = ModelKind.DELTA2
    dimension = 2
    projection = "P0"
    parity = "radial"

    def _has_bound_state(self):
        return self.param.is_finite

    def bound_state_energies(self):
        if not self._has_bound_state():
            return []
        return COUNT_ONLY

    def energy_provenance(self):
        return COUNT_ONLY

    def characteristic_log_energy(self):
        #ln(4) - 2(2 pi alpha - Psi(1)); kept in log form, exp overflows for |alpha| > ~56
        if self.is_infinite:
            return 0.0
        return math.log(4.0) - 2.0 * (2.0 * np.pi * self.value - PSI_1)


class Delta1(Model):
    """ delta interaction at the origin of R """
    kind = ModelKind.DELTA1
    dimension = 1
    projection = "P0"
    parity = "even"

    def _bound_state_energy(self):
        #pole of s continued to xi = -kappa^2: kappa = -alpha/2
        with np.errstate(over="ignore"):
            return float(-np.square(np.float64(self.value)) / 4.0)

    def energy_provenance(self):
        return "derived"

    def _characteristic_log_energy(self):
        return 2.0 * (math.log(abs(self.value)) - math.log(2.0))


class DeltaPrime1(Model):
    """ delta prime interaction at the origin of R """
    kind = ModelKind.DELTAPRIME1
    dimension = 1
    projection = "P1"
    parity = "odd"
    param_name = "beta"

    def _bound_state_energy(self):
        with np.errstate(under="ignore", divide="ignore"):
            return float(-4.0 / np.square(np.float64(self.value)))

    def _characteristic_log_energy(self):
        return math.log(4.0) - 2.0 * math.log(abs(self.value))


MODEL_CLASSES = {ModelKind.DELTA3: Delta3,
                 ModelKind.DELTA2: Delta2,
                 ModelKind.DELTA1: Delta1,
                 ModelKind.DELTAPRIME1: DeltaPrime1}


def parse_kind(kind):
    if isinstance(kind, ModelKind):
        return kind
    try:
        return ModelKind(str(kind).strip().lower())
    except ValueError:
        names = ", ".join(k.value for k in ModelKind)
        raise ParameterError(f"Unknown model kind '{kind}', expected one of {names}")


def model_factory(kind, param):
    """
    Builds the model of a given family

    Parameters
    ----------
    kind: str or ModelKind
        'delta3', 'delta2', 'delta1' or 'deltaprime1'
    param: float, str or ExtendedReal
        Extension parameter, 'inf' allowed

    Returns
    -------
    model: Model
    """
    return MODEL_CLASSES[parse_kind(kind)](param)


def bound_state_count(model):
    return model.bound_state_count()


def bound_state_energies(model):
    return model.bound_state_energies()


def characteristic_energy(model):
    """
    Energy scale of the model's scattering function. May overflow to inf for Delta2.
    """
    with np.errstate(over="ignore"):
        return float(np.exp(model.characteristic_log_energy()))
