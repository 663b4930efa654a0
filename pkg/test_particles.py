import pytest

from energy_transfer.services.property_checks import check_duality, check_relation_reformulation
from energy_transfer.utils.constants import OVERPARTITION_PARITY_CLASSES
from energy_transfer.utils.energy_utils import transpose
from energy_transfer.utils.exceptions import NotConsecutiveError
from energy_transfer.utils.models import PrimaryParticle, SecondaryParticle
from energy_transfer.utils.particle_utils import (gamma, is_troublesome, make_particle, make_secondary, mu,
                                                  potential, reflect, rel_gg, rel_gg_dual, rel_succ)


def P(e, k, label):
    return PrimaryParticle(k, e.states.index(label))


def S(e, k, upper, lower):
    return SecondaryParticle(k, e.states.index(upper), e.states.index(lower))


def test_make_secondary(overline_energy):
    e = overline_energy
    assert make_secondary(e, P(e, 5, "b"), P(e, 5, "a")) == S(e, 5, "b", "a")
    assert make_secondary(e, P(e, 1, "abar"), P(e, 0, "a")) == S(e, 0, "abar", "a")
    assert potential(e, S(e, 0, "abar", "a")) == 1
    with pytest.raises(NotConsecutiveError):
        make_secondary(e, P(e, 6, "b"), P(e, 5, "a"))


def test_halves(overline_energy):
    e = overline_energy
    s = S(e, -1, "bbar", "bbar")
    assert potential(e, s) == -1
    assert gamma(e, s) == P(e, 0, "bbar")
    assert mu(s) == P(e, -1, "bbar")
    assert make_secondary(e, gamma(e, s), mu(s)) == s


def test_make_particle_parity(overline_energy):
    e = overline_energy
    assert make_particle(e, (e.states.index("b"), e.states.index("a")), 10) == S(e, 5, "b", "a")
    with pytest.raises(NotConsecutiveError):
        make_particle(e, (e.states.index("b"), e.states.index("a")), 9)


def test_rel_succ_and_troublesome(overline_energy):
    e = overline_energy
    assert rel_succ(e, P(e, 5, "a"), P(e, 5, "a"))
    assert not rel_succ(e, P(e, 5, "a"), P(e, 5, "b"))
    assert is_troublesome(e, P(e, 5, "b"), P(e, 5, "a"))
    assert is_troublesome(e, P(e, 1, "b"), P(e, 1, "abar"))
    assert not is_troublesome(e, P(e, 3, "a"), P(e, 1, "b"))


def test_troublesome_means_related_but_not_strictly(overline_energy):
    e = overline_energy
    for c in range(e.size):
        for c2 in range(e.size):
            for gap in range(-2, 4):
                x, y = PrimaryParticle(gap, c), PrimaryParticle(0, c2)
                assert is_troublesome(e, x, y) == (rel_succ(e, x, y) and not rel_gg(e, x, y))


def test_rel_gg_mixed_pairs(overline_energy):
    e = overline_energy
    assert rel_gg(e, S(e, 0, "abar", "a"), P(e, -1, "bbar"))
    assert rel_gg(e, P(e, 11, "bbar"), S(e, 5, "b", "a"))
    assert not rel_gg_dual(e, P(e, 11, "bbar"), S(e, 5, "b", "a"))
    # the weak inequality holds with equality
    assert rel_gg(e, P(e, 3, "a"), S(e, 1, "b", "a"))
    assert not rel_gg_dual(e, P(e, 3, "a"), S(e, 1, "b", "a"))
    assert not rel_gg(e, S(e, 1, "b", "a"), P(e, 2, "a"))
    assert rel_gg_dual(e, S(e, 1, "b", "a"), P(e, 2, "a"))


def test_rel_gg_secondary_pairs(overline_energy):
    e = overline_energy
    assert rel_gg(e, S(e, 5, "b", "a"), S(e, 3, "a", "abar"))
    assert not rel_gg(e, S(e, 3, "a", "abar"), S(e, 3, "a", "abar"))
    assert rel_gg_dual(e, S(e, 5, "b", "a"), S(e, 3, "a", "abar"))


def test_overline_secondary_parities(overline_energy):
    e = overline_energy
    assert len(OVERPARTITION_PARITY_CLASSES) == 16
    for (upper, lower), (_, parity, _) in OVERPARTITION_PARITY_CLASSES.items():
        for k in range(-10, 11):
            assert potential(e, S(e, k, upper, lower)) % 2 == parity


def test_reflect(overline_energy):
    e = overline_energy
    dual = transpose(e)
    s = S(e, 5, "b", "a")
    image = reflect(e, s)
    assert image == S(e, -5, "a", "b")
    assert potential(dual, image) == -potential(e, s)
    assert reflect(dual, image) == s
    assert reflect(e, P(e, 3, "abar")) == P(e, -3, "abar")


def test_duality_and_reformulation(rng):
    assert check_duality(rng, 500).passed
    assert check_relation_reformulation(rng, 500).passed
