import pytest

from energy_transfer.services.predictors import alpha, beta, eta, potential_links, predict_phi, predict_psi
from energy_transfer.services.property_checks import check_chasles, check_potential_links, check_predictions
from energy_transfer.services.transfer import phi, psi
from energy_transfer.utils.exceptions import InputError
from energy_transfer.utils.file_utils import parse_partition
from energy_transfer.utils.models import IndexDecomposition, Side


def test_phi_table(overline_energy, worked, worked_lambda):
    prediction = predict_phi(overline_energy, worked_lambda)
    assert prediction.rows == tuple(worked["phi"]["rows"])
    assert prediction.cols == tuple(worked["phi"]["cols"])
    assert prediction.table.tolist() == worked["phi"]["table"]
    assert list(prediction.positions.sigma) == worked["phi"]["positions"]
    assert set(prediction.pairs) == {tuple(pair) for pair in worked["phi"]["pairs"]}
    assert prediction.crossings == 4
    assert prediction.value(1, 3) == 0
    assert prediction.value(12, 10) == 0


def test_psi_table(overline_energy, worked, worked_nu):
    prediction = predict_psi(overline_energy, worked_nu)
    assert prediction.rows == tuple(worked["psi"]["rows"])
    assert prediction.cols == tuple(worked["psi"]["cols"])
    assert prediction.table.tolist() == worked["psi"]["table"]
    assert list(prediction.positions.sigma) == worked["psi"]["positions"]
    assert set(prediction.pairs) == {tuple(pair) for pair in worked["psi"]["pairs"]}
    assert prediction.crossings == 4


def test_predictions_agree_with_runs(overline_energy, worked_lambda, worked_nu):
    forward = phi(overline_energy, worked_lambda)
    predicted = predict_phi(overline_energy, worked_lambda)
    assert predicted.positions == forward.positions
    assert set(predicted.pairs) == set(forward.crossing_pairs)
    backward = psi(overline_energy, worked_nu)
    predicted = predict_psi(overline_energy, worked_nu)
    assert predicted.positions == backward.positions
    assert set(predicted.pairs) == set(backward.crossing_pairs)


def test_no_secondaries_means_no_crossings(overline_energy):
    lam = parse_partition(overline_energy, "7:a 4:b 1:abar", Side.O)
    prediction = predict_phi(overline_energy, lam)
    assert prediction.cols == ()
    assert prediction.table.shape == (3, 0)
    assert prediction.crossings == 0
    assert list(prediction.positions.sigma) == [1, 2, 3]
    nu = parse_partition(overline_energy, "7:a 4:b 1:abar", Side.E)
    assert predict_psi(overline_energy, nu).crossings == 0


def test_index_counters(worked):
    d = IndexDecomposition.from_degrees([1, 1, 2, 1, 2, 2, 2, 1])
    assert d.pure == tuple(worked["phi"]["rows"])
    assert d.upper == tuple(worked["phi"]["cols"])
    for k, (a, b) in enumerate(zip(worked["alpha_steps"], worked["beta_steps"]), start=1):
        assert alpha(d, k, k + 1) == a
        assert beta(d, k, k + 1) == b
    assert alpha(d, 12, 1) == -alpha(d, 1, 12)
    assert alpha(d, 4, 4) == beta(d, 4, 4) == 0


def test_eta_on_e_side_decomposition(worked, worked_nu):
    d = IndexDecomposition.from_degrees(worked_nu.degrees)
    assert d.pure == tuple(worked["psi"]["rows"])
    assert [eta(d, k, k + 1) for k in range(1, 12)] == worked["eta_steps"]


def test_counter_range():
    d = IndexDecomposition.from_degrees([1, 2])
    with pytest.raises(InputError):
        alpha(d, 0, 2)
    with pytest.raises(InputError):
        beta(d, 1, 4)


def test_decomposition_must_cover():
    with pytest.raises(InputError):
        IndexDecomposition((1,), (2,), 3)


def test_potential_links_hold(overline_energy, worked_nu):
    assert potential_links(overline_energy, worked_nu) == []


def test_randomized_predictions(rng):
    assert check_chasles(rng, 300).passed
    assert check_predictions(rng, 15).passed
    assert check_potential_links(rng, 15).passed
