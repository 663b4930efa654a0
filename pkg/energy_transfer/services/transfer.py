"""
Energy transfer between O-side and E-side partitions: the crossing map and the bijections built on it
"""
import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from ..utils.constants import STEP1_MODES
from ..utils.energy_utils import TransferProfile, transpose
from ..utils.exceptions import CrossingLimitError, InputError, MixedDegreeError, TransferInvariantError
from ..utils.models import (ColoredPartition, CrossingStrategy, IndexDecomposition, MinimalEnergy, Particle,
                            PositionMap, PrimaryParticle, SecondaryParticle, Side, TransferEvent,
                            TransferTrace)
from ..utils.particle_utils import gamma, is_troublesome, make_secondary, mu, potential, rel_gg, rel_succ
from .crossing_strategies import create_chooser
from .partition_space import reflect_partition, require_valid

logger = logging.getLogger(__name__)

# A particle together with the 1-based index it started from (upper index for secondaries)
Slot = Tuple[Particle, int]


@dataclass(frozen=True)
class TransferResult:
    partition: ColoredPartition
    positions: PositionMap
    decomposition: IndexDecomposition
    crossing_pairs: Tuple[Tuple[int, int], ...]
    trace: Optional[TransferTrace] = None

    @property
    def crossings(self) -> int:
        return len(self.crossing_pairs)


def lambda_cross(e: MinimalEnergy, x: Particle, y: Particle) -> Tuple[Particle, Particle]:
    """Cross a primary and a secondary particle; conserves the total potential and the 3-letter word"""
    if x.degree == y.degree:
        raise MixedDegreeError("Λ requires mixed degrees")
    if x.degree == 1:
        k, c = x.potential, x.state
        k2, c2, c3 = y.half_potential, y.upper_state, y.lower_state
        return SecondaryParticle(k2 + e(c2, c3), c, c2), PrimaryParticle(k - e(c, c2) - e(c2, c3), c3)
    k, c, c2 = x.half_potential, x.upper_state, x.lower_state
    k2, c3 = y.potential, y.state
    return PrimaryParticle(k2 + e(c, c2) + e(c2, c3), c), SecondaryParticle(k - e(c2, c3), c2, c3)


def split_levels(e: MinimalEnergy, particles: Sequence[Particle]) -> List[int]:
    """Potentials at primary granularity; a secondary contributes its two halves"""
    levels = []
    for x in particles:
        if x.degree == 1:
            levels.append(x.potential)
        else:
            levels.extend((gamma(e, x).potential, mu(x).potential))
    return levels


def _slots_from(particles: Sequence[Particle]) -> List[Slot]:
    slots, position = [], 1
    for x in particles:
        slots.append((x, position))
        position += x.degree
    return slots


def phi_step1(e: MinimalEnergy, lam: ColoredPartition,
              mode: str = "right-to-left") -> Tuple[Tuple[Particle, ...], IndexDecomposition]:
    """Fuse disjoint troublesome pairs; greedy from the smallest potentials unless mode says otherwise"""
    if mode not in STEP1_MODES:
        raise InputError(f"unknown step-1 mode '{mode}', expected one of {list(STEP1_MODES)}")
    parts = lam.particles
    s = len(parts)
    upper: List[int] = []
    if mode == "right-to-left":
        t = s - 1
        while t >= 1:
            if is_troublesome(e, parts[t - 1], parts[t]):
                upper.append(t)
                t -= 2
            else:
                t -= 1
    else:
        t = 0
        while t + 1 < s:
            if is_troublesome(e, parts[t], parts[t + 1]):
                upper.append(t + 1)
                t += 2
            else:
                t += 1
    fused = set(upper)
    mixed: List[Particle] = []
    pure: List[int] = []
    k = 1
    while k <= s:
        if k in fused:
            mixed.append(make_secondary(e, parts[k - 1], parts[k]))
            k += 2
        else:
            mixed.append(parts[k - 1])
            pure.append(k)
            k += 1
    return tuple(mixed), IndexDecomposition(tuple(upper), tuple(pure), s)


def _phi_violation(e: MinimalEnergy, x: Particle, y: Particle) -> bool:
    return x.degree != y.degree and not rel_gg(e, x, y)


def _psi_violation(e: MinimalEnergy, x: Particle, y: Particle) -> bool:
    if x.degree == y.degree:
        return False
    if x.degree == 1:
        return not rel_succ(e, x, gamma(e, y))
    return not rel_gg(e, mu(x), y)


def _check_positions(e: MinimalEnergy, profile: TransferProfile, levels: Sequence[int],
                     slots: Sequence[Slot]) -> None:
    """Every particle sits on the conserved word with potential l_o + Δ(pos, o)"""
    position = 1
    for x, origin in slots:
        if x.states != profile.word[position - 1:position - 1 + x.degree]:
            raise TransferInvariantError(f"particle from {origin} at {position} does not carry the word's states")
        if x.degree == 1:
            expected = [levels[origin - 1] + profile.delta(position, origin)]
            found = [x.potential]
        else:
            expected = [levels[origin - 1] + profile.delta(position, origin),
                        levels[origin] + profile.delta(position + 1, origin + 1)]
            found = [gamma(e, x).potential, mu(x).potential]
        if expected != found:
            logger.error(f"Position invariant broken for particle from {origin} at {position}: "
                         f"expected {expected}, found {found}")
            raise TransferInvariantError(f"potential of the particle from {origin} at {position} is {found}, "
                                         f"expected {expected}")
        position += x.degree


def _run_crossings(e: MinimalEnergy, slots: List[Slot], violates: Callable[[MinimalEnergy, Particle, Particle], bool],
                   strategy: CrossingStrategy, levels: Sequence[int], word: Sequence[int],
                   trace: bool) -> Tuple[List[Slot], List[Tuple[int, int]], Optional[TransferTrace]]:
    """Cross violating adjacent mixed pairs until none is left"""
    chooser = create_chooser(strategy)
    s = len(levels)
    profile = TransferProfile(e, word) if s else None
    events = TransferTrace() if trace else None
    pairs: List[Tuple[int, int]] = []
    if trace and s:
        _check_positions(e, profile, levels, slots)
    while True:
        candidates = [t for t in range(len(slots) - 1) if violates(e, slots[t][0], slots[t + 1][0])]
        if not candidates:
            break
        if len(pairs) >= s * s:
            logger.error(f"Crossing cap {s * s} exceeded with {len(candidates)} violations left")
            raise CrossingLimitError(f"more than {s * s} crossings on a sequence of length {s}")
        t = chooser.choose(candidates)
        (x, ox), (y, oy) = slots[t], slots[t + 1]
        x2, y2 = lambda_cross(e, x, y)
        origins = (ox, oy) if x.degree == 1 else (oy, ox)
        # the primary keeps its origin and moves right or left with it
        slots[t], slots[t + 1] = (x2, oy), (y2, ox)
        pairs.append(origins)
        if events is not None:
            events.append(TransferEvent(len(pairs), t, (x, y), (x2, y2), origins))
            _check_positions(e, profile, levels, slots)
    return slots, pairs, events


def _positions(slots: Sequence[Slot], s: int) -> PositionMap:
    sigma = [0] * s
    position = 1
    for x, origin in slots:
        for offset in range(x.degree):
            sigma[origin - 1 + offset] = position + offset
        position += x.degree
    return PositionMap(tuple(sigma))


def phi(e: MinimalEnergy, lam: ColoredPartition, strategy: CrossingStrategy = CrossingStrategy(),
        trace: bool = False, step1: str = "right-to-left") -> TransferResult:
    """Map an O-side partition to the E-side partition with the same energy and color word"""
    require_valid(lam, side=Side.O)
    if lam.epsilon != e:
        raise InputError("partition does not live under the given energy matrix")
    mixed, decomposition = phi_step1(e, lam, step1)
    levels = [x.potential for x in lam.particles]
    word = [x.state for x in lam.particles]
    slots, pairs, events = _run_crossings(e, _slots_from(mixed), _phi_violation, strategy, levels, word, trace)
    nu = ColoredPartition(e, tuple(x for x, _ in slots), Side.E)
    logger.debug(f"Φ finished after {len(pairs)} crossings")
    return TransferResult(nu, _positions(slots, len(levels)), decomposition, tuple(pairs), events)


def psi(e: MinimalEnergy, nu: ColoredPartition, strategy: CrossingStrategy = CrossingStrategy(),
        trace: bool = False) -> TransferResult:
    """Map an E-side partition back to its O-side partition"""
    require_valid(nu, side=Side.E)
    if nu.epsilon != e:
        raise InputError("partition does not live under the given energy matrix")
    levels = split_levels(e, nu.particles)
    word = [c for x in nu.particles for c in x.states]
    slots, pairs, events = _run_crossings(e, _slots_from(nu.particles), _psi_violation, strategy, levels, word, trace)
    particles: List[Particle] = []
    for x, _ in slots:
        particles.extend((x,) if x.degree == 1 else (gamma(e, x), mu(x)))
    lam = ColoredPartition(e, tuple(particles), Side.O)
    logger.debug(f"Ψ finished after {len(pairs)} crossings")
    return TransferResult(lam, _positions(slots, len(levels)),
                          IndexDecomposition.from_degrees(nu.degrees), tuple(pairs), events)


def _mirror(result: TransferResult, partition: ColoredPartition) -> TransferResult:
    """Carry a result computed on the reflected partition back through the reflection"""
    s = result.positions.size
    sigma = tuple(s + 1 - result.positions(s + 1 - k) for k in range(1, s + 1))
    d = result.decomposition
    decomposition = IndexDecomposition(tuple(s - i for i in d.upper), tuple(s + 1 - j for j in d.pure), s)
    pairs = tuple((s + 1 - j, s - i) for j, i in result.crossing_pairs)
    return TransferResult(partition, PositionMap(sigma), decomposition, pairs, result.trace)


def phi_dual(e: MinimalEnergy, lam: ColoredPartition, strategy: CrossingStrategy = CrossingStrategy(),
             trace: bool = False) -> TransferResult:
    """O-side to E*-side: Φ for the transposed energy, conjugated by the reflection; the trace is the conjugated run"""
    require_valid(lam, side=Side.O)
    reflected = reflect_partition(lam)
    result = phi(transpose(e), reflected, strategy, trace)
    return _mirror(result, reflect_partition(result.partition))


def psi_dual(e: MinimalEnergy, nu: ColoredPartition, strategy: CrossingStrategy = CrossingStrategy(),
             trace: bool = False) -> TransferResult:
    require_valid(nu, side=Side.E_DUAL)
    reflected = reflect_partition(nu)
    result = psi(transpose(e), reflected, strategy, trace)
    return _mirror(result, reflect_partition(result.partition))
