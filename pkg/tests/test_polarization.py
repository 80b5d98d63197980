import numpy as np
import pytest

from cvteleport.fock import number_state, tensor_product
from cvteleport.polarization import (
    DualModeMeasurement,
    polarization_budget,
    polarization_budget_numerical,
    polarized_output,
    two_mode_total_probability,
)
from cvteleport.statistics import loss_gain_split


def test_budget_values_at_half():
    budget = polarization_budget(0.5)
    assert np.allclose(
        budget.as_tuple(),
        (0.3515625, 0.03515625, 0.140625, 0.47265625),
        atol=1e-15,
    )
    assert np.isclose(budget.total(), 1.0, atol=1e-15)


@pytest.mark.parametrize("q", np.arange(0.0, 0.995, 0.01))
def test_budget_sums_to_one(q):
    assert np.isclose(polarization_budget(float(q)).total(), 1.0, atol=1e-12)


@pytest.mark.parametrize("q", [0.0, 0.2, 0.5, 0.8, 0.95])
def test_budget_factorizes_over_channels(q):
    # each class is (photon-channel probability) x (vacuum-channel probability):
    # the vacuum channel emits n photons with weight ((1+q)/2)((1-q)/2)^n
    budget = polarization_budget(q)
    split = loss_gain_split(q)
    vac0 = 0.5 * (1.0 + q)
    vac1 = 0.25 * (1.0 - q * q)
    assert np.isclose(budget.p_trans, split.p_success * vac0, atol=1e-15)
    assert np.isclose(budget.p_flip, split.p_loss * vac1, atol=1e-15)
    assert np.isclose(budget.p_zero, split.p_loss * vac0, atol=1e-15)


@pytest.mark.parametrize("q", [0.33, 0.5, 0.82])
def test_numerical_budget_matches_closed_form(q):
    num = polarization_budget_numerical(q, 48)
    closed = polarization_budget(q)
    for a, b in zip(num.as_tuple(), closed.as_tuple()):
        assert np.isclose(a, b, atol=1e-6)


def test_transfer_probability_thresholds():
    assert polarization_budget(0.7).p_trans > 0.5
    assert polarization_budget(0.8).p_trans > 0.66
    # the two-thirds mark falls just past q = 0.8
    assert polarization_budget(0.81).p_trans > 2.0 / 3.0


def test_transfer_probability_increases_with_q():
    values = [polarization_budget(float(q)).p_trans for q in np.arange(0.0, 0.995, 0.01)]
    assert all(a < b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("q", np.arange(0.01, 0.995, 0.07))
def test_flip_is_strictly_smallest(q):
    budget = polarization_budget(float(q))
    others = (budget.p_trans, budget.p_zero, budget.p_multi)
    assert all(budget.p_flip < other for other in others)


def test_polarized_output_amplitude_at_zero_outcomes():
    out = polarized_output(0.5, DualModeMeasurement(0j, 0j), 16)
    assert out.labels == ("H", "V")
    # (1,0) amplitude: both channels diagonal, q from the photon, 1 from vacuum
    expect = (0.75 / np.pi) * 0.5
    assert np.isclose(out.amplitudes[1, 0], expect, atol=1e-15)
    assert np.count_nonzero(out.amplitudes) == 1


def test_polarized_output_flip_symmetry():
    # swapping which channel carries the photon transposes the output tensor
    q, cutoff = 0.5, 24
    meas = DualModeMeasurement(0.4 + 0.2j, -0.3 + 0.6j)
    swapped = DualModeMeasurement(meas.beta_v, meas.beta_h)
    v_input = tensor_product([("H", number_state(0, cutoff)), ("V", number_state(1, cutoff))])
    out_h = polarized_output(q, meas, cutoff)
    out_v = polarized_output(q, swapped, cutoff, state=v_input)
    assert np.max(np.abs(out_h.amplitudes - out_v.amplitudes.T)) < 1e-10


def test_polarized_output_rejects_wrong_labels():
    bad = tensor_product([("A", number_state(1, 8)), ("V", number_state(0, 8))])
    with pytest.raises(ValueError):
        polarized_output(0.5, DualModeMeasurement(0j, 0j), 8, state=bad)


@pytest.mark.parametrize("q", [0.33, 0.5])
def test_joint_outcome_probability_is_normalized(q):
    assert np.isclose(two_mode_total_probability(q, 32), 1.0, atol=1e-6)
