import json

import pytest
from hypothesis import given, strategies as st

from lambkit.errors import DomainError
from lambkit.ratio import (ComparisonReport, compare, inverse_ratio_factor, load_reference_values,
                           predict_muonium, pull, ratio_factor, reduced_mass)
from lambkit.units import EV, MHZ, Measurement, load_constants


def test_ratio_factor_value(constants):
    assert ratio_factor(constants) == pytest.approx(0.98724, abs=1e-5)


def test_ratio_factor_equals_reduced_mass_cube(constants):
    mr_mu = reduced_mass(constants.m_e, constants.m_mu)
    mr_h = reduced_mass(constants.m_e, constants.M_p)
    assert ratio_factor(constants) == pytest.approx((mr_mu / mr_h) ** 3, rel=1e-14)


def test_inverse_factor_direct_evaluation(constants):
    direct = ((1 + constants.m_e / constants.m_mu) / (1 + constants.m_e / constants.M_p)) ** 3
    assert inverse_ratio_factor(constants) == direct
    assert inverse_ratio_factor(constants) * ratio_factor(constants) == pytest.approx(1.0, rel=1e-15)


def test_degenerate_masses_give_exactly_one():
    c = load_constants("M_p_eV = 105658375.5")
    assert ratio_factor(c) == 1.0


def test_prediction(constants):
    ref = load_reference_values()
    pred = predict_muonium(ref.hydrogen, constants)
    assert pred.unit == MHZ
    assert pred.value == pytest.approx(1044.365, abs=0.01)
    assert pred.sigma == pytest.approx(0.020 * ratio_factor(constants), rel=1e-14)


def test_prediction_rejects_bad_input(constants):
    with pytest.raises(DomainError):
        predict_muonium(Measurement(1.0, 0.0, EV), constants)
    with pytest.raises(DomainError):
        predict_muonium(Measurement(-1.0, 0.0, MHZ), constants)


def test_compare_pulls(constants):
    ref = load_reference_values()
    report = compare(predict_muonium(ref.hydrogen, constants), ref)
    assert report.pull_predicted == pytest.approx((1044.365 - 1042) / 22.0, abs=1e-4)
    assert report.pull_competing == pytest.approx(0.25, rel=1e-12)
    assert abs(report.pull_predicted) < 1


def test_report_round_trip(constants):
    report = compare(predict_muonium(load_reference_values().hydrogen, constants))
    again = ComparisonReport.from_dict(json.loads(report.to_json()))
    assert again == report


def test_pull_needs_uncertainty():
    with pytest.raises(DomainError):
        pull(Measurement(1.0, 0.0, MHZ), Measurement(2.0, 0.0, MHZ))
    assert pull(Measurement(1.0, 0.0, MHZ), Measurement(1.0, 0.0, MHZ)) == 0.0


def test_reference_overlay():
    ref = load_reference_values("muonium_obs_MHz = 1050")
    assert ref.muonium.value == 1050 and ref.hydrogen.value == 1057.862


@given(mu=st.floats(1.001, 1e4), p=st.floats(1.001, 1e4))
def test_ratio_below_one_when_muon_lighter(mu, p):
    base = load_constants()
    lo, hi = sorted((mu, p))
    c = load_constants(f"m_mu_eV = {lo * base.m_e!r}\nM_p_eV = {hi * base.m_e!r}")
    assert ratio_factor(c) <= 1.0
