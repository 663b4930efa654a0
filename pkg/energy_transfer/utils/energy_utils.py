"""
Minimal-energy matrices: transitivity, transposition, transfer energies and the formal transfer function
"""
import logging
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from .constants import OVERLINE_SUFFIX
from .exceptions import EmptyPathError, InputError
from .models import MinimalEnergy, StateSet

logger = logging.getLogger(__name__)


def is_transitive(e: MinimalEnergy) -> bool:
    """eps(c, c'') <= eps(c, c') + eps(c', c'') for every triple"""
    m = e.matrix.astype(np.int64)
    # axes: (c, c', c'')
    return bool(np.all(m[:, None, :] <= m[:, :, None] + m[None, :, :]))


def transpose(e: MinimalEnergy) -> MinimalEnergy:
    return MinimalEnergy(e.states, e.matrix.T)


def transfer_energy(e: MinimalEnergy, word: Sequence[int]) -> int:
    """Sum of the minimal energies along consecutive states of the word"""
    word = e.states.check_word(word)
    if not word:
        raise EmptyPathError("empty transfer path")
    return sum(e(c, c2) for c, c2 in zip(word, word[1:]))


class TransferProfile:
    """Prefix sums of eps along a fixed color word; delta(k, k2) in O(1)"""

    def __init__(self, e: MinimalEnergy, word: Sequence[int]):
        self.word = e.states.check_word(word)
        prefix = [0]
        for c, c2 in zip(self.word, self.word[1:]):
            prefix.append(prefix[-1] + e(c, c2))
        # prefix[k-1] = transfer energy of c_1..c_k
        self._prefix = prefix

    def __len__(self) -> int:
        return len(self.word)

    def delta(self, k: int, k2: int) -> int:
        s = len(self.word)
        if not (1 <= k <= s and 1 <= k2 <= s):
            raise InputError(f"delta indices ({k}, {k2}) out of range 1..{s}")
        return self._prefix[k2 - 1] - self._prefix[k - 1]


def delta(e: MinimalEnergy, word: Sequence[int], k: int, k2: int) -> int:
    """Formal transfer energy between positions k and k2 (1-based, signed, Chasles)"""
    return TransferProfile(e, word).delta(k, k2)


# Named matrices

def constant_energy(labels: Sequence[str], value: int) -> MinimalEnergy:
    n = len(labels)
    return MinimalEnergy(StateSet(tuple(labels)), np.full((n, n), value, dtype=np.int8))


def distinct_energy(labels: Sequence[str]) -> MinimalEnergy:
    """eps(c_i, c_j) = [i != j]"""
    n = len(labels)
    return MinimalEnergy(StateSet(tuple(labels)), 1 - np.eye(n, dtype=np.int8))


def chain_energy(labels: Sequence[str], strict: bool = False) -> MinimalEnergy:
    """eps(c_i, c_j) = [i < j], or [i <= j] when strict (no repeated parts)"""
    n = len(labels)
    i, j = np.indices((n, n))
    matrix = (i <= j) if strict else (i < j)
    return MinimalEnergy(StateSet(tuple(labels)), matrix.astype(np.int8))


def overpartition_energy(labels: Sequence[str] = ("a", "b")) -> MinimalEnergy:
    """Overline construction over c_1 < ... < c_n; states ordered c̄_n..c̄_1, c_1..c_n"""
    n = len(labels)
    overlined = [f"{label}{OVERLINE_SUFFIX}" for label in reversed(labels)]
    states = StateSet(tuple(overlined) + tuple(labels))
    # (is_overlined, 1-based color index) for every state
    keys = [(True, n - t) for t in range(n)] + [(False, t + 1) for t in range(n)]
    matrix = np.zeros((2 * n, 2 * n), dtype=np.int8)
    for r, (bar_r, i) in enumerate(keys):
        for s, (bar_s, j) in enumerate(keys):
            if not bar_r and not bar_s:
                matrix[r, s] = i < j
            elif not bar_r and bar_s:
                matrix[r, s] = 0
            elif bar_r and not bar_s:
                matrix[r, s] = 1
            else:
                matrix[r, s] = i >= j
    return MinimalEnergy(states, matrix)


def twister_energy() -> MinimalEnergy:
    return MinimalEnergy.from_labels(("a", "b"), [[1, 0], [0, 1]])


def random_energy(rng: np.random.Generator, size: int, prefix: str = "c") -> MinimalEnergy:
    labels = tuple(f"{prefix}{t + 1}" for t in range(size))
    return MinimalEnergy(StateSet(labels), rng.integers(0, 2, size=(size, size)))


_ENERGY_PRESETS: Dict[str, Callable[[Sequence[str]], MinimalEnergy]] = {
    "zero": lambda labels: constant_energy(labels, 0),
    "one": lambda labels: constant_energy(labels, 1),
    "distinct": distinct_energy,
    "chain": lambda labels: chain_energy(labels, strict=False),
    "strict-chain": lambda labels: chain_energy(labels, strict=True),
    "overpartition": overpartition_energy,
    "twister": lambda labels: twister_energy(),
}


def preset_names() -> List[str]:
    return sorted(_ENERGY_PRESETS)


def named_energy(name: str, labels: Optional[Sequence[str]] = None) -> MinimalEnergy:
    """Build a preset matrix; labels default to a, b"""
    try:
        factory = _ENERGY_PRESETS[name]
    except KeyError:
        raise InputError(f"unknown energy preset '{name}', expected one of {preset_names()}") from None
    energy = factory(tuple(labels) if labels else ("a", "b"))
    logger.debug(f"Built preset '{name}' over {list(energy.states.labels)}")
    return energy


def parse_preset(spec: str) -> MinimalEnergy:
    """'overpartition' or 'chain:a,b,c'"""
    name, _, labels = spec.partition(':')
    label_list = [label.strip() for label in labels.split(',') if label.strip()] if labels else None
    return named_energy(name.strip(), label_list)
