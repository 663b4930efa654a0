"""
Closed-form predictors for the final positions and crossings of the energy transfer
"""
import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..utils.energy_utils import TransferProfile
from ..utils.exceptions import InputError
from ..utils.models import ColoredPartition, IndexDecomposition, MinimalEnergy, PositionMap, Side
from .partition_space import require_valid
from .transfer import phi_step1, split_levels

logger = logging.getLogger(__name__)


def _check_range(d: IndexDecomposition, k: int, k2: int) -> None:
    if not (1 <= k <= d.size and 1 <= k2 <= d.size):
        raise InputError(f"indices ({k}, {k2}) out of range 1..{d.size}")


def alpha(d: IndexDecomposition, k: int, k2: int) -> int:
    """Signed count of J in (k, k2]"""
    _check_range(d, k, k2)
    return d.pure_count(k2) - d.pure_count(k)


def beta(d: IndexDecomposition, k: int, k2: int) -> int:
    """Signed count of J in [k, k2)"""
    _check_range(d, k, k2)
    return d.pure_count(k2 - 1) - d.pure_count(k - 1)


def eta(d: IndexDecomposition, k: int, k2: int) -> int:
    """alpha on the decomposition of an E-side partition"""
    return alpha(d, k, k2)


@dataclass(frozen=True, eq=False)
class Prediction:
    rows: Tuple[int, ...]                   # J
    cols: Tuple[int, ...]                   # I
    table: np.ndarray
    positions: PositionMap
    pairs: Tuple[Tuple[int, int], ...]

    @property
    def crossings(self) -> int:
        return len(self.pairs)

    def value(self, j: int, i: int) -> int:
        return int(self.table[self.rows.index(j), self.cols.index(i)])


def _assemble(d: IndexDecomposition, table: np.ndarray) -> Prediction:
    """Final positions and crossing pairs from the sign pattern of the table"""
    rows, cols = d.pure, d.upper
    ahead = table >= 0                      # True where j ends left of the pair i, i+1
    sigma = [0] * d.size
    for r, j in enumerate(rows):
        sigma[j - 1] = 1 + r + 2 * int(np.count_nonzero(~ahead[r, :]))
    for c, i in enumerate(cols):
        sigma[i - 1] = 1 + 2 * c + int(np.count_nonzero(ahead[:, c]))
        sigma[i] = sigma[i - 1] + 1
    pairs = [(j, i) for r, j in enumerate(rows) for c, i in enumerate(cols)
             if (j > i and ahead[r, c]) or (j < i and not ahead[r, c])]
    table.setflags(write=False)
    return Prediction(rows, cols, table, PositionMap(tuple(sigma)), tuple(pairs))


def predict_phi(e: MinimalEnergy, lam: ColoredPartition) -> Prediction:
    require_valid(lam, side=Side.O)
    _, d = phi_step1(e, lam)
    levels = [x.potential for x in lam.particles]
    profile = TransferProfile(e, [x.state for x in lam.particles]) if levels else None
    table = np.zeros((len(d.pure), len(d.upper)), dtype=np.int64)
    for r, j in enumerate(d.pure):
        for c, i in enumerate(d.upper):
            table[r, c] = (levels[j - 1] - 2 * levels[i] - profile.delta(j, i + 1)
                           - profile.delta(i + 1 - beta(d, j, i), i + 1))
    prediction = _assemble(d, table)
    logger.debug(f"Predicted {prediction.crossings} crossings for Φ")
    return prediction


def predict_psi(e: MinimalEnergy, nu: ColoredPartition) -> Prediction:
    require_valid(nu, side=Side.E)
    d = IndexDecomposition.from_degrees(nu.degrees)
    levels = split_levels(e, nu.particles)
    profile = TransferProfile(e, [c for x in nu.particles for c in x.states]) if levels else None
    table = np.zeros((len(d.pure), len(d.upper)), dtype=np.int64)
    for r, j in enumerate(d.pure):
        for c, i in enumerate(d.upper):
            table[r, c] = levels[j - 1] - levels[i - 1] - profile.delta(j, i)
    prediction = _assemble(d, table)
    logger.debug(f"Predicted {prediction.crossings} crossings for Ψ")
    return prediction


def potential_links(e: MinimalEnergy, nu: ColoredPartition) -> List[Tuple[int, int]]:
    """Index pairs (k, k2), k < k2, breaking the potential link inequalities of an E-side partition"""
    d = IndexDecomposition.from_degrees(nu.degrees)
    levels = split_levels(e, nu.particles)
    if not levels:
        return []
    profile = TransferProfile(e, [c for x in nu.particles for c in x.states])
    paired = set(d.upper) | set(d.lower)
    weighted = [levels[k - 1] * (2 if k in paired else 1) for k in range(1, d.size + 1)]
    broken = []
    for k in range(1, d.size + 1):
        for k2 in range(k + 1, d.size + 1):
            if weighted[k - 1] - weighted[k2 - 1] < eta(d, k, k2) + profile.delta(k, k2):
                broken.append((k, k2))
            elif k in paired and k2 in paired and levels[k - 1] - levels[k2 - 1] < profile.delta(k, k2):
                broken.append((k, k2))
    return broken
