"""
Particle algebra: secondary fusion, halves, the energy relations and the duality reflection
"""
import logging
from typing import Callable, Dict, Tuple

from .exceptions import NotConsecutiveError, RelationMismatchError
from .models import MinimalEnergy, Particle, ParticleKind, PrimaryParticle, SecondaryParticle, Side

logger = logging.getLogger(__name__)

Relation = Callable[[MinimalEnergy, Particle, Particle], bool]


def potential(e: MinimalEnergy, x: Particle) -> int:
    if x.degree == 1:
        return x.potential
    return 2 * x.half_potential + e(x.upper_state, x.lower_state)


def make_particle(e: MinimalEnergy, kind: ParticleKind, total: int) -> Particle:
    """Particle of the given kind with the given total potential (parity must fit)"""
    if len(kind) == 1:
        return PrimaryParticle(total, kind[0])
    half, odd = divmod(total - e(kind[0], kind[1]), 2)
    if odd:
        raise NotConsecutiveError(f"potential {total} has the wrong parity for a secondary of kind {kind}")
    return SecondaryParticle(half, kind[0], kind[1])


def make_secondary(e: MinimalEnergy, upper: PrimaryParticle, lower: PrimaryParticle) -> SecondaryParticle:
    if upper.potential - lower.potential != e(upper.state, lower.state):
        raise NotConsecutiveError(
            f"not a troublesome/consecutive pair: {upper.potential}_{upper.state}, {lower.potential}_{lower.state}")
    return SecondaryParticle(lower.potential, upper.state, lower.state)


def gamma(e: MinimalEnergy, s: SecondaryParticle) -> PrimaryParticle:
    """Upper half (k + eps(c, c'), c)"""
    return PrimaryParticle(s.half_potential + e(s.upper_state, s.lower_state), s.upper_state)


def mu(s: SecondaryParticle) -> PrimaryParticle:
    """Lower half (k, c')"""
    return PrimaryParticle(s.half_potential, s.lower_state)


def split(e: MinimalEnergy, s: SecondaryParticle) -> Tuple[PrimaryParticle, PrimaryParticle]:
    return gamma(e, s), mu(s)


def rel_succ(e: MinimalEnergy, p: PrimaryParticle, p2: PrimaryParticle) -> bool:
    return p.potential - p2.potential >= e(p.state, p2.state)


def is_troublesome(e: MinimalEnergy, p: PrimaryParticle, p2: PrimaryParticle) -> bool:
    return p.potential - p2.potential == e(p.state, p2.state)


def _secondary_pair_holds(e: MinimalEnergy, x: SecondaryParticle, y: SecondaryParticle) -> bool:
    by_halves = rel_succ(e, mu(x), gamma(e, y))
    by_difference = (x.half_potential - y.half_potential
                     >= e(x.lower_state, y.upper_state) + e(y.upper_state, y.lower_state))
    if by_halves != by_difference:
        logger.error(f"Secondary relation mismatch for {x} and {y} under {e}")
        raise RelationMismatchError(f"lower-half form and difference form disagree for {x}, {y}")
    return by_halves


def rel_gg(e: MinimalEnergy, x: Particle, y: Particle) -> bool:
    """Difference-condition relation on mixed primary/secondary sequences"""
    if x.degree == 1 and y.degree == 1:
        return x.potential - y.potential > e(x.state, y.state)
    if x.degree == 1:
        gap = e(x.state, y.upper_state) + e(y.upper_state, y.lower_state)
        return x.potential - potential(e, y) >= gap
    if y.degree == 1:
        gap = e(x.upper_state, x.lower_state) + e(x.lower_state, y.state)
        return potential(e, x) - y.potential > gap
    return _secondary_pair_holds(e, x, y)


def rel_gg_dual(e: MinimalEnergy, x: Particle, y: Particle) -> bool:
    """Dual relation: mixed pairs swap strict and weak inequalities"""
    if x.degree == y.degree:
        return rel_gg(e, x, y)
    if x.degree == 1:
        gap = e(x.state, y.upper_state) + e(y.upper_state, y.lower_state)
        return x.potential - potential(e, y) > gap
    gap = e(x.upper_state, x.lower_state) + e(x.lower_state, y.state)
    return potential(e, x) - y.potential >= gap


def reflect(e: MinimalEnergy, x: Particle) -> Particle:
    """Negate the potential and reverse the states; the image lives under the transposed energy"""
    if x.degree == 1:
        return PrimaryParticle(-x.potential, x.state)
    return SecondaryParticle(-x.half_potential - e(x.upper_state, x.lower_state), x.lower_state, x.upper_state)


_RELATIONS: Dict[Side, Relation] = {
    Side.O: rel_succ,
    Side.E: rel_gg,
    Side.E_DUAL: rel_gg_dual,
}


def relation_for(side: Side) -> Relation:
    return _RELATIONS[side]


def particle_kind(x: Particle) -> ParticleKind:
    return x.states
