"""

Tests for the model families and their spectral facts

"""

import numpy as np
import pytest
from scipy.optimize import brentq
from scipy.special import digamma

import pointlev
from pointlev.models import COUNT_ONLY, PSI_1, ExtendedReal, ParameterError, Tag


@pytest.fixture()
def delta3_bound():
    return pointlev.Delta3(-1.0)


def test_psi_of_one():
    assert np.isclose(digamma(1.0), PSI_1, rtol=0.0, atol=1e-15)


@pytest.mark.parametrize("text, tag", [("inf", Tag.PLUS_INFINITY), ("+inf", Tag.PLUS_INFINITY),
                                       ("∞", Tag.PLUS_INFINITY), ("-inf", Tag.MINUS_INFINITY),
                                       ("-2.5", Tag.FINITE), ("0", Tag.FINITE)])
def test_parse_extended_real(text, tag):
    assert ExtendedReal.parse(text).tag is tag


def test_parse_rejects_nan():
    with pytest.raises(ParameterError):
        ExtendedReal.parse("nan")
    with pytest.raises(ParameterError):
        ExtendedReal.from_float(float("nan"))


@pytest.mark.parametrize("text", ["1e400", "-1e400", "  2e308 "])
def test_parse_rejects_overflowed_text(text):
    with pytest.raises(ParameterError):
        ExtendedReal.parse(text)


def test_minus_infinity_is_not_a_parameter():
    with pytest.raises(ParameterError):
        pointlev.Delta3("-inf")


def test_unknown_kind():
    with pytest.raises(ParameterError):
        pointlev.model_factory("bogus", 1.0)


def test_factory_and_repr():
    model = pointlev.model_factory("deltaprime1", "inf")
    assert isinstance(model, pointlev.DeltaPrime1)
    assert repr(model) == "DeltaPrime1(beta=inf)"
    assert model.descriptor() == {"model": "deltaprime1", "beta": "inf"}
    assert model == pointlev.DeltaPrime1(np.inf)


def test_delta3_bound_state(delta3_bound):
    assert delta3_bound.bound_state_count() == 1
    assert np.isclose(delta3_bound.bound_state_energies()[0], -(4.0 * np.pi)**2, rtol=1e-14)
    assert delta3_bound.spectral_facts().provenance == "stated"


@pytest.mark.parametrize("param", [0.0, 0.5, "inf"])
def test_delta3_no_bound_state(param):
    model = pointlev.Delta3(param)
    assert model.bound_state_count() == 0
    assert model.bound_state_energies() == []


@pytest.mark.parametrize("param", [-3.0, 0.0, 3.0])
def test_delta2_always_binds(param):
    model = pointlev.Delta2(param)
    assert model.bound_state_count() == 1
    assert model.bound_state_energies() == COUNT_ONLY
    facts = model.spectral_facts()
    assert facts.bound_state_energies is None
    assert facts.provenance == COUNT_ONLY


def test_delta2_decoupled():
    assert pointlev.Delta2("inf").bound_state_count() == 0


def test_delta1_energy_is_derived():
    model = pointlev.Delta1(-2.0)
    assert np.isclose(model.bound_state_energies()[0], -1.0)
    assert model.spectral_facts().provenance == "derived"
    assert pointlev.Delta1(2.0).bound_state_count() == 0
    assert pointlev.Delta1("inf").bound_state_count() == 0


def test_deltaprime1_energy():
    model = pointlev.DeltaPrime1(-1.0)
    assert np.isclose(model.bound_state_energies()[0], -4.0)
    assert pointlev.DeltaPrime1(0.0).bound_state_count() == 0


@pytest.mark.parametrize("kind, param", [("delta3", -1.0), ("delta3", -0.01), ("delta1", -2.0), ("delta1", -0.3),
                                         ("deltaprime1", -1.0), ("deltaprime1", -7.0)])
def test_energy_matches_root_of_continued_denominator(kind, param):
    model = pointlev.model_factory(kind, param)
    kappa = brentq(lambda k: pointlev.continued_denominator(model, k), 1e-12, 1e4, xtol=1e-14)
    assert np.isclose(-kappa**2, model.bound_state_energies()[0], rtol=1e-10)


@pytest.mark.parametrize("alpha", [-1.0, 0.0, 1.0])
def test_delta2_root_sets_energy_scale(alpha):
    model = pointlev.Delta2(alpha)
    kappa = brentq(lambda k: pointlev.continued_denominator(model, k), 1e-8, 1e8, xtol=1e-16, rtol=1e-14)
    assert np.isclose(np.log(kappa**2), model.characteristic_log_energy(), rtol=0.0, atol=1e-9)


@pytest.mark.parametrize("kind, param, expected", [("delta3", -1.0, (4.0 * np.pi)**2),
                                                   ("delta1", 4.0, 4.0),
                                                   ("deltaprime1", 0.5, 16.0),
                                                   ("delta3", "inf", 1.0),
                                                   ("delta1", 0.0, 1.0)])
def test_characteristic_energy(kind, param, expected):
    model = pointlev.model_factory(kind, param)
    assert np.isclose(pointlev.characteristic_energy(model), expected, rtol=1e-12)


def test_spectral_facts_to_dict(delta3_bound):
    record = delta3_bound.spectral_facts().to_dict()
    assert record["bound_state_count"] == 1
    assert record["essential_spectrum"] == [0.0, np.inf]
    assert record["energy_provenance"] == "stated"


@pytest.mark.parametrize("cls, dimension, parity", [(pointlev.Delta3, 3, "radial"), (pointlev.Delta2, 2, "radial"),
                                                    (pointlev.Delta1, 1, "even"), (pointlev.DeltaPrime1, 1, "odd")])
def test_sectors(cls, dimension, parity):
    model = cls(1.0)
    assert model.dimension == dimension
    assert model.parity == parity


@pytest.mark.parametrize("kind, param, expected", [("delta3", 1e-170, 2.0 * (np.log(4.0 * np.pi) - 170.0 * np.log(10.0))),
                                                   ("delta3", -1e200, 2.0 * (np.log(4.0 * np.pi) + 200.0 * np.log(10.0))),
                                                   ("delta1", 1e-200, 2.0 * (-200.0 * np.log(10.0) - np.log(2.0))),
                                                   ("delta1", -1e300, 2.0 * (300.0 * np.log(10.0) - np.log(2.0))),
                                                   ("deltaprime1", 1e200, np.log(4.0) - 400.0 * np.log(10.0)),
                                                   ("deltaprime1", -1e-200, np.log(4.0) + 400.0 * np.log(10.0)),
                                                   ("delta2", 100.0, np.log(4.0) - 2.0 * (200.0 * np.pi - PSI_1))])
def test_characteristic_log_energy_far_from_unity(kind, param, expected):
    model = pointlev.model_factory(kind, param)
    assert np.isclose(model.characteristic_log_energy(), expected, rtol=1e-12)


@pytest.mark.parametrize("kind, param", [("delta3", -1e200), ("delta1", -1e200), ("deltaprime1", -1e-200)])
def test_huge_bound_state_energy_saturates(kind, param):
    energies = pointlev.model_factory(kind, param).bound_state_energies()
    assert energies[0] == -np.inf
