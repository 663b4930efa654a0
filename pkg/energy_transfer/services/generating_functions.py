"""
Generating functions of bounded partition families: the base function of constant-potential chains,
its infinite product, and series summed from enumeration
"""
import logging
from typing import Callable, Dict, Optional, Sequence

import numpy as np

from ..utils.constants import DOUBLE_WEIGHT_CLASSES, OVERLINE_SUFFIX, OVERPARTITION_PARITY_CLASSES
from ..utils.exceptions import ConvergenceError, InputError, UnsupportedRequestError
from ..utils.models import BoundKind, BoundSpec, ColoredPartition, MinimalEnergy, Particle, Side
from ..utils.particle_utils import potential
from .partition_space import energy, iter_partitions
from .qseries import SeriesSpace, TruncatedSeries, series_add, series_mul

logger = logging.getLogger(__name__)

Weights = Callable[[MinimalEnergy, ColoredPartition], Dict[str, int]]


def base_function_F(e: MinimalEnergy, x_order: int, color_order: Optional[int] = None) -> TruncatedSeries:
    """Chains of potential-1 primaries (consecutive energies 0), x marking the length"""
    labels = e.states.labels
    space = SeriesSpace(labels, 0, x_order, color_order)
    n = len(labels)
    ends = [space.monomial(1, 0, 1, {labels[c]: 1}) for c in range(n)]
    total = space.one()
    for _ in range(x_order):
        for chain in ends:
            total = series_add(total, chain)
        ends = [
            series_mul(
                sum((ends[c] for c in range(n) if e(c, c2) == 0), space.zero()),
                space.monomial(1, 0, 1, {labels[c2]: 1}))
            for c2 in range(n)
        ]
    return total


def has_zero_energy_cycle(e: MinimalEnergy) -> bool:
    adjacency = (e.matrix == 0).astype(np.int64)
    walk = np.linalg.matrix_power(adjacency, e.size)
    return bool(walk.any())


def euler_product(e: MinimalEnergy, rho: int, q_order: int, color_order: Optional[int] = None) -> TruncatedSeries:
    """prod over m >= rho of the base function at x = q^m"""
    if rho not in (0, 1):
        raise InputError(f"rho must be 0 or 1, got {rho}")
    space = SeriesSpace(e.states.labels, q_order, 0, color_order)
    base = base_function_F(e, q_order, color_order)
    result = space.one()
    if rho == 0:
        if has_zero_energy_cycle(e):
            logger.error("Zero-energy states form a cycle; the m=0 factor diverges")
            raise ConvergenceError("non-convergent at m=0")
        # acyclic: chains have at most |C| letters
        result = series_mul(result, base_function_F(e, e.size, color_order).substitute_x(0, space))
    for m in range(1, q_order + 1):
        result = series_mul(result, base.substitute_x(m, space))
    return result


def letter_weights(e: MinimalEnergy, p: ColoredPartition) -> Dict[str, int]:
    counts: Dict[str, int] = {}
    for x in p.particles:
        for c in x.states:
            label = e.states.label(c)
            counts[label] = counts.get(label, 0) + 1
    return counts


def overline_weight(e: MinimalEnergy, x: Particle) -> int:
    """Number of overlined letters a particle stands for, read from the secondary parity classes"""
    labels = [e.states.label(c) for c in x.states]
    if x.degree == 1:
        return int(labels[0].endswith(OVERLINE_SUFFIX))
    try:
        color, parity, overlined = OVERPARTITION_PARITY_CLASSES[tuple(labels)]
    except KeyError:
        raise InputError(f"no parity class for secondary state {'.'.join(labels)}") from None
    if potential(e, x) % 2 != parity:
        raise InputError(f"secondary {'.'.join(labels)} of potential {potential(e, x)} "
                         f"does not have parity {parity}")
    if overlined:
        return 1
    return 2 if (color, parity) in DOUBLE_WEIGHT_CLASSES else 0


def overpartition_statistics(e: MinimalEnergy, p: ColoredPartition) -> Dict[str, int]:
    """a/b letter counts and the overline statistic, as exponents of a, b, c"""
    stats = {"a": 0, "b": 0, "c": 0}
    for x in p.particles:
        for c in x.states:
            label = e.states.label(c)
            base = label[:-len(OVERLINE_SUFFIX)] if label.endswith(OVERLINE_SUFFIX) else label
            if base not in ("a", "b"):
                raise InputError(f"state '{label}' is not one of the overpartition colors")
            stats[base] += 1
        stats["c"] += overline_weight(e, x)
    return stats


def series_from_enumeration(e: MinimalEnergy, side: Side, bound: BoundSpec, q_order: int,
                            max_length: Optional[int] = None, weights: Optional[Weights] = None,
                            symbols: Optional[Sequence[str]] = None,
                            color_order: Optional[int] = None) -> TruncatedSeries:
    """Sum of color monomials times q^energy over every partition with energy <= q_order"""
    if bound.kind is not BoundKind.RHO_PLUS:
        raise UnsupportedRequestError("series enumeration requires a ρ+ bound")
    space = SeriesSpace(tuple(symbols) if symbols else e.states.labels, q_order, 0, color_order)
    weigh = weights or letter_weights
    terms: Dict = {}
    seen = 0
    for p in iter_partitions(e, side, bound, q_order, max_length):
        key = space.key(energy(p), 0, weigh(e, p))
        if space.admits(key):
            terms[key] = terms.get(key, 0) + 1
        seen += 1
    logger.debug(f"Summed {seen} {side.value}-side partitions up to q^{q_order}")
    return TruncatedSeries(space, terms)

