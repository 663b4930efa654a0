"""
Choosers deciding which violating adjacent pair is crossed next
"""
import logging
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from ..utils.exceptions import InputError
from ..utils.models import CrossingStrategy

logger = logging.getLogger(__name__)

# Global chooser registry: strategy kind -> factory
_CHOOSER_REGISTRY: Dict[str, Callable[[Optional[int]], 'CrossingChooser']] = {}

class CrossingChooser:
    """Base class; picks one slot among the currently violating ones"""

    kind = "base"

    def choose(self, candidates: Sequence[int]) -> int:
        """Pick a slot - override in subclasses"""
        raise NotImplementedError


class LeftmostChooser(CrossingChooser):
    kind = "leftmost"

    def choose(self, candidates: Sequence[int]) -> int:
        return min(candidates)


class RightmostChooser(CrossingChooser):
    kind = "rightmost"

    def choose(self, candidates: Sequence[int]) -> int:
        return max(candidates)


class SeededRandomChooser(CrossingChooser):
    """Uniform choice driven by a seeded numpy generator; same seed, same sequence of choices"""

    kind = "random"

    def __init__(self, seed: int):
        self.rng = np.random.default_rng(seed)

    def choose(self, candidates: Sequence[int]) -> int:
        ordered = sorted(candidates)
        return ordered[int(self.rng.integers(len(ordered)))]


def register_chooser(kind: str, factory: Callable[[Optional[int]], CrossingChooser]) -> None:
    """Register a chooser factory"""
    _CHOOSER_REGISTRY[kind] = factory

def chooser_kinds() -> List[str]:
    return sorted(_CHOOSER_REGISTRY)

def create_chooser(strategy: CrossingStrategy) -> CrossingChooser:
    """Fresh chooser for one run of the strategy"""
    try:
        factory = _CHOOSER_REGISTRY[strategy.kind]
    except KeyError:
        raise InputError(f"unknown crossing strategy '{strategy.kind}', expected one of {chooser_kinds()}") from None
    return factory(strategy.seed)

def register_default_choosers() -> None:
    register_chooser(LeftmostChooser.kind, lambda seed: LeftmostChooser())
    register_chooser(RightmostChooser.kind, lambda seed: RightmostChooser())
    register_chooser(SeededRandomChooser.kind, lambda seed: SeededRandomChooser(seed))

register_default_choosers()
