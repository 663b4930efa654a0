import itertools

import pytest

from energy_transfer.services.partition_space import enumerate_partitions, validate
from energy_transfer.services.transfer import lambda_cross, phi, phi_dual, phi_step1, psi, psi_dual, split_levels
from energy_transfer.utils.exceptions import InputError, InvalidPartitionError, MixedDegreeError
from energy_transfer.utils.file_utils import parse_partition
from energy_transfer.utils.models import BoundSpec, CrossingStrategy, PrimaryParticle, SecondaryParticle, Side
from energy_transfer.utils.particle_utils import gamma, mu, potential, rel_gg, rel_succ

STRATEGIES = [CrossingStrategy("leftmost"), CrossingStrategy("rightmost")] + \
    [CrossingStrategy("random", seed) for seed in range(100)]


def test_lambda_cross_examples(overline_energy):
    e = overline_energy
    p = PrimaryParticle(11, e.states.index("bbar"))
    s = SecondaryParticle(5, e.states.index("b"), e.states.index("a"))
    s2, p2 = lambda_cross(e, p, s)
    # bbar.b has half potential 5 + eps(b, a) = 5, then 11 - eps(bbar, b) - eps(b, a) = 10
    assert s2 == SecondaryParticle(5, e.states.index("bbar"), e.states.index("b"))
    assert p2 == PrimaryParticle(10, e.states.index("a"))
    assert potential(e, p) + potential(e, s) == potential(e, s2) + potential(e, p2)
    assert lambda_cross(e, s2, p2) == (p, s)


def test_lambda_cross_needs_mixed_degrees(overline_energy):
    with pytest.raises(MixedDegreeError):
        lambda_cross(overline_energy, PrimaryParticle(1, 0), PrimaryParticle(0, 1))
    with pytest.raises(InputError):
        lambda_cross(overline_energy, SecondaryParticle(1, 0, 0), SecondaryParticle(0, 1, 1))


def test_crossing_flips_the_order_exhaustively(overline_energy):
    e = overline_energy
    window = range(-6, 7)
    failures = []
    for k, k2, (c, c2, c3) in itertools.product(window, window, itertools.product(range(e.size), repeat=3)):
        p, s = PrimaryParticle(k, c), SecondaryParticle(k2, c2, c3)
        s2, p2 = lambda_cross(e, p, s)
        if (not rel_gg(e, p, s)) != rel_gg(e, s2, p2):
            failures.append(("gg", p, s))
        if (not rel_succ(e, p, gamma(e, s))) != rel_gg(e, mu(s2), p2):
            failures.append(("succ", p, s))
    assert not failures, failures[:5]


def test_phi_on_worked_example(overline_energy, worked, worked_lambda, worked_nu):
    result = phi(overline_energy, worked_lambda, trace=True)
    assert result.partition == worked_nu
    assert result.crossings == 4
    assert set(result.crossing_pairs) == {tuple(pair) for pair in worked["phi"]["pairs"]}
    assert list(result.positions.sigma) == worked["phi"]["positions"]
    assert result.decomposition.pure == tuple(worked["phi"]["rows"])
    assert result.decomposition.upper == tuple(worked["phi"]["cols"])
    assert len(result.trace) == 4


def test_psi_on_worked_example(overline_energy, worked, worked_lambda, worked_nu):
    result = psi(overline_energy, worked_nu, trace=True)
    assert result.partition == worked_lambda
    assert result.crossings == 4
    assert set(result.crossing_pairs) == {tuple(pair) for pair in worked["psi"]["pairs"]}
    assert list(result.positions.sigma) == worked["psi"]["positions"]
    assert split_levels(overline_energy, worked_nu.particles) == worked["levels"]


def test_strategy_independence(overline_energy, worked_lambda, worked_nu):
    reference = phi(overline_energy, worked_lambda)
    for strategy in STRATEGIES:
        forward = phi(overline_energy, worked_lambda, strategy)
        assert forward.partition == worked_nu
        assert forward.positions == reference.positions
        assert forward.crossings == 4
        backward = psi(overline_energy, worked_nu, strategy)
        assert backward.partition == worked_lambda
        assert backward.crossings == 4


def test_trace_events_conserve_pairs(overline_energy, worked_lambda):
    result = phi(overline_energy, worked_lambda, trace=True)
    for step, event in enumerate(result.trace.events, start=1):
        assert event.step == step
        (x, y), (x2, y2) = event.before, event.after
        assert x.states + y.states == x2.states + y2.states
        assert potential(overline_energy, x) + potential(overline_energy, y) == \
            potential(overline_energy, x2) + potential(overline_energy, y2)
    assert [event.origins for event in result.trace.events] == list(result.crossing_pairs)


def test_step1_scan_direction(overline_energy, worked_lambda, worked_nu):
    e = overline_energy
    _, d_right = phi_step1(e, worked_lambda)
    _, d_left = phi_step1(e, worked_lambda, "left-to-right")
    assert d_right.upper == (3, 6, 8, 10)
    assert d_left.upper == (2, 6, 8, 10)
    assert phi(e, worked_lambda, step1="left-to-right").partition == worked_nu
    with pytest.raises(InputError):
        phi_step1(e, worked_lambda, "middle-out")


def test_step1_on_a_troublesome_run(overline_energy):
    e = overline_energy
    lam = parse_partition(e, "5:a 5:a 5:a", Side.O)
    _, d_right = phi_step1(e, lam)
    _, d_left = phi_step1(e, lam, "left-to-right")
    assert d_right.upper == (2,) and d_right.pure == (1,)
    assert d_left.upper == (1,) and d_left.pure == (3,)
    assert phi(e, lam).partition == phi(e, lam, step1="left-to-right").partition


def test_phi_rejects_invalid_input(overline_energy, worked_nu):
    with pytest.raises(InvalidPartitionError):
        phi(overline_energy, worked_nu)
    with pytest.raises(InvalidPartitionError):
        phi(overline_energy, parse_partition(overline_energy, "1:a 5:a", Side.O))
    with pytest.raises(InvalidPartitionError):
        psi(overline_energy, parse_partition(overline_energy, "5:a 5:b", Side.E))


def test_empty_partition(overline_energy):
    empty = parse_partition(overline_energy, "", Side.O)
    result = phi(overline_energy, empty)
    assert result.partition.particles == ()
    assert result.crossings == 0
    assert psi(overline_energy, result.partition).partition.particles == ()


@pytest.mark.parametrize("bound", ["0+", "1+", "0-", "1-"])
def test_bijection_on_reference_word(overline_energy, bound):
    e = overline_energy
    word = e.states.parse_word("bbar,abar,b,a")
    spec = BoundSpec.parse(bound)
    for n in (-8, 10):
        o_side = enumerate_partitions(e, Side.O, word, n, spec)
        e_side = {nu.particles for nu in enumerate_partitions(e, Side.E, word, n, spec)}
        assert {phi(e, lam).partition.particles for lam in o_side} == e_side
        for lam in o_side:
            nu = phi(e, lam).partition
            assert validate(nu, spec)
            assert psi(e, nu).partition == lam


def test_dual_bijection(overline_energy):
    e = overline_energy
    word = e.states.parse_word("bbar,abar,b,a")
    bound = BoundSpec.parse("0+")
    o_side = enumerate_partitions(e, Side.O, word, 10, bound)
    dual_side = {nu.particles for nu in enumerate_partitions(e, Side.E_DUAL, word, 10, bound)}
    assert len(o_side) == len(dual_side)
    for lam in o_side:
        nu = phi_dual(e, lam).partition
        assert nu.side is Side.E_DUAL
        assert nu.particles in dual_side
        assert validate(nu, bound)
        assert psi_dual(e, nu).partition == lam
