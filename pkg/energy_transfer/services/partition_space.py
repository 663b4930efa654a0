"""
Generalized colored partitions: validation, bounded enumeration and difference matrices
"""
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..utils.constants import STATE_SEPARATOR, THRESHOLD_SCAN_RADIUS
from ..utils.energy_utils import transpose
from ..utils.exceptions import (InvalidPartitionError, RelationMismatchError, UnboundedEnumerationError,
                                UnsupportedRequestError)
from ..utils.models import (BoundKind, BoundSpec, ColorWord, ColoredPartition, MinimalEnergy, Particle,
                            ParticleKind, PrimaryParticle, SecondaryParticle, Side)
from ..utils.particle_utils import make_particle, potential, reflect, relation_for

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Validation:
    ok: bool
    reason: str = ""
    position: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


def energy(p: ColoredPartition) -> int:
    return sum(potential(p.epsilon, x) for x in p.particles)


def color_word(p: ColoredPartition) -> ColorWord:
    return tuple(c for x in p.particles for c in x.states)


def admits(e: MinimalEnergy, bound: BoundSpec, x: Particle) -> bool:
    transfer = e(*x.states) if x.degree == 2 else 0
    lo, hi = bound.potential_window(x.degree, transfer)
    value = potential(e, x)
    return (lo is None or value >= lo) and (hi is None or value <= hi)


def validate(p: ColoredPartition, bound: BoundSpec = BoundSpec()) -> Validation:
    """Check side, relation between neighbours and the bound; reports the first violation"""
    e = p.epsilon
    size = len(e.states)
    for position, x in enumerate(p.particles):
        if not all(0 <= c < size for c in x.states):
            return Validation(False, f"particle {position + 1} has an invalid state", position)
        if p.side is Side.O and x.degree != 1:
            return Validation(False, f"particle {position + 1} is secondary in an O-side partition", position)
        if not admits(e, bound, x):
            return Validation(False, f"particle {position + 1} violates bound {bound}", position)
    relation = relation_for(p.side)
    for position, (x, y) in enumerate(zip(p.particles, p.particles[1:])):
        if not relation(e, x, y):
            return Validation(False, f"particles {position + 1} and {position + 2} are not related", position)
    return Validation(True)


def kind_label(e: MinimalEnergy, kind: ParticleKind) -> str:
    return STATE_SEPARATOR.join(e.states.label(c) for c in kind)


def particle_kinds(e: MinimalEnergy, side: Side) -> List[ParticleKind]:
    """Primary kinds in state order, then secondary kinds row by row"""
    n = len(e.states)
    kinds: List[ParticleKind] = [(c,) for c in range(n)]
    if side is not Side.O:
        kinds += [(c, c2) for c in range(n) for c2 in range(n)]
    return kinds


def _scan_threshold(e: MinimalEnergy, side: Side, left: ParticleKind, right: ParticleKind) -> int:
    """Smallest achievable potential difference for which the relation holds; checks monotonicity"""
    relation = relation_for(side)
    # a primary anchor takes both parities so every achievable difference is seen
    totals = (0, 1) if len(right) == 1 else (e(*right),)
    outcomes = []
    for total in totals:
        anchor = make_particle(e, right, total)
        for half in range(-THRESHOLD_SCAN_RADIUS, THRESHOLD_SCAN_RADIUS + 1):
            x = PrimaryParticle(half, left[0]) if len(left) == 1 else SecondaryParticle(half, left[0], left[1])
            outcomes.append((potential(e, x) - total, relation(e, x, anchor)))
    outcomes.sort()
    holding = [difference for difference, holds in outcomes if holds]
    if not holding:
        raise RelationMismatchError(f"relation never holds for kinds {left}, {right} inside the scan window")
    threshold = holding[0]
    if any(holds != (difference >= threshold) for difference, holds in outcomes):
        logger.error(f"Relation for {side.value} is not monotone on kinds {left}, {right}")
        raise RelationMismatchError(f"relation is not monotone in the potential difference for {left}, {right}")
    return threshold


@lru_cache(maxsize=64)
def relation_thresholds(e: MinimalEnergy, side: Side) -> Dict[Tuple[ParticleKind, ParticleKind], int]:
    """Minimal difference condition for every (left kind, right kind) pair of the side"""
    kinds = particle_kinds(e, side)
    return {(left, right): _scan_threshold(e, side, left, right) for left in kinds for right in kinds}


@dataclass(frozen=True, eq=False)
class DifferenceMatrix:
    labels: Tuple[str, ...]
    values: np.ndarray
    parity: Dict[str, int] = field(default_factory=dict)

    def entry(self, left: str, right: str) -> int:
        return int(self.values[self.labels.index(left), self.labels.index(right)])

    def to_dict(self) -> Dict:
        return {
            "labels": list(self.labels),
            "matrix": self.values.tolist(),
            "parity": dict(self.parity),
        }


def difference_matrix(e: MinimalEnergy, side: Side = Side.E) -> DifferenceMatrix:
    """Minimal difference conditions over primary and secondary states, with secondary parities"""
    kinds = particle_kinds(e, side)
    thresholds = relation_thresholds(e, side)
    values = np.array([[thresholds[(left, right)] for right in kinds] for left in kinds], dtype=np.int64)
    values.setflags(write=False)
    parity = {kind_label(e, kind): e(*kind) % 2 for kind in kinds if len(kind) == 2}
    return DifferenceMatrix(tuple(kind_label(e, kind) for kind in kinds), values, parity)


def segmentations(length: int) -> Iterator[Tuple[int, ...]]:
    """Degree masks covering a word of the given length with blocks of 1 and 2, lexicographic"""
    if length == 0:
        yield ()
        return
    for first in (1, 2):
        if first <= length:
            for rest in segmentations(length - first):
                yield (first,) + rest


def _blocks(word: ColorWord, mask: Sequence[int]) -> List[ParticleKind]:
    blocks, position = [], 0
    for degree in mask:
        blocks.append(tuple(word[position:position + degree]))
        position += degree
    return blocks


def _search(e: MinimalEnergy, side: Side, blocks: List[ParticleKind], n: int,
            bound: BoundSpec) -> Iterator[Tuple[Particle, ...]]:
    """Backtrack over potentials, left to right, from the largest feasible value down"""
    thresholds = relation_thresholds(e, side)
    windows = [bound.potential_window(len(kind), e(*kind) if len(kind) == 2 else 0) for kind in blocks]
    lows = [window[0] for window in windows]
    highs = [window[1] for window in windows]
    m = len(blocks)
    # suffix sums of the lower bounds; None once any is unbounded
    rest_low: List[Optional[int]] = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        rest_low[i] = None if lows[i] is None or rest_low[i + 1] is None else lows[i] + rest_low[i + 1]

    chosen: List[Particle] = []

    def extend(i: int, remaining: int, previous: Optional[Tuple[ParticleKind, int]]) -> Iterator[Tuple[Particle, ...]]:
        if i == m:
            if remaining == 0:
                yield tuple(chosen)
            return
        kind = blocks[i]
        step = len(kind)
        transfer = e(*kind) if step == 2 else 0
        top = highs[i]
        if previous is not None:
            cap = previous[1] - thresholds[(previous[0], kind)]
            top = cap if top is None else min(top, cap)
        if rest_low[i + 1] is not None:
            cap = remaining - rest_low[i + 1]
            top = cap if top is None else min(top, cap)
        if top is None:
            raise UnboundedEnumerationError("enumeration requires a ρ± bound")
        if i == m - 1:
            candidates = [remaining] if remaining <= top else []
        else:
            candidates = itertools.count(top, -1)
        for value in candidates:
            if lows[i] is not None and value < lows[i]:
                break
            if (value - transfer) % step:
                continue
            rest = remaining - value
            # later potentials never exceed this one
            if i < m - 1 and rest > sum(value if hi is None else min(value, hi) for hi in highs[i + 1:]):
                break
            chosen.append(make_particle(e, kind, value))
            yield from extend(i + 1, rest, (kind, value))
            chosen.pop()

    yield from extend(0, n, None)


def _enumerate_mask(e: MinimalEnergy, side: Side, word: ColorWord, mask: Tuple[int, ...], n: int,
                    bound: BoundSpec) -> List[Tuple[Tuple[int, ...], Tuple[Particle, ...]]]:
    return [(mask, particles) for particles in _search(e, side, _blocks(word, mask), n, bound)]


def enumerate_partitions(e: MinimalEnergy, side: Side, word: Sequence[int], n: int, bound: BoundSpec,
                         workers: int = 1) -> List[ColoredPartition]:
    """All partitions of the side with the given color word, energy n and bound"""
    if not bound.bounded:
        raise UnboundedEnumerationError("enumeration requires a ρ± bound")
    word = e.states.check_word(word)
    masks = [tuple([1] * len(word))] if side is Side.O else list(segmentations(len(word)))
    if workers > 1 and len(masks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda mask: _enumerate_mask(e, side, word, mask, n, bound), masks))
    else:
        chunks = [_enumerate_mask(e, side, word, mask, n, bound) for mask in masks]
    found = [item for chunk in chunks for item in chunk]
    found.sort(key=lambda item: (item[0], tuple(potential(e, x) for x in item[1])))
    logger.debug(f"Enumerated {len(found)} {side.value}-side partitions of "
                 f"{','.join(e.states.format_word(word))} with energy {n} and bound {bound}")
    return [ColoredPartition(e, particles, side) for _, particles in found]


def iter_partitions(e: MinimalEnergy, side: Side, bound: BoundSpec, max_energy: int,
                    max_length: Optional[int] = None) -> Iterator[ColoredPartition]:
    """Every partition of any word with energy <= max_energy under a rho+ bound, built right to left"""
    if bound.kind is not BoundKind.RHO_PLUS:
        raise UnsupportedRequestError("series enumeration requires a ρ+ bound")
    if bound.rho == 0 and max_length is None:
        raise UnsupportedRequestError("ρ=0 series enumeration needs a word-length cap")
    thresholds = relation_thresholds(e, side)
    kinds = particle_kinds(e, side)
    floors = {kind: bound.potential_window(len(kind), e(*kind) if len(kind) == 2 else 0)[0] for kind in kinds}
    limit = max_length if max_length is not None else max_energy * 2 + 2

    def grow(suffix: Tuple[Particle, ...], head: Optional[Tuple[ParticleKind, int]], total: int,
             length: int) -> Iterator[ColoredPartition]:
        yield ColoredPartition(e, suffix, side)
        for kind in kinds:
            step = len(kind)
            if length + step > limit:
                continue
            start = floors[kind]
            if head is not None:
                start = max(start, head[1] + thresholds[(kind, head[0])])
            transfer = e(*kind) if step == 2 else 0
            if (start - transfer) % step:
                start += 1
            for value in range(start, max_energy - total + 1, step):
                particle = make_particle(e, kind, value)
                yield from grow((particle,) + suffix, (kind, value), total + value, length + step)

    yield from grow((), None, 0, 0)


def reflect_partition(p: ColoredPartition) -> ColoredPartition:
    """Reverse and reflect every particle; lands under the transposed energy, E and E* swapped"""
    side = {Side.O: Side.O, Side.E: Side.E_DUAL, Side.E_DUAL: Side.E}[p.side]
    particles = tuple(reflect(p.epsilon, x) for x in reversed(p.particles))
    return ColoredPartition(transpose(p.epsilon), particles, side)


def require_valid(p: ColoredPartition, bound: BoundSpec = BoundSpec(), side: Optional[Side] = None) -> None:
    if side is not None and p.side is not side:
        raise InvalidPartitionError(f"expected a {side.value}-side partition, got {p.side.value}")
    result = validate(p, bound)
    if not result:
        raise InvalidPartitionError(f"invalid partition: {result.reason}")
