"""
Data models for states, minimal energies, particles and partitions
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import ClassVar, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .exceptions import InputError

ColorWord = Tuple[int, ...]
ParticleKind = Tuple[int, ...]

# Characters reserved by the particle shorthand "11:bbar" / "5*b.a"
_RESERVED_LABEL_CHARS = set(",:*. \t")


@dataclass(frozen=True)
class StateSet:
    """Ordered alphabet of states; labels outside, dense 0-based indices inside"""
    labels: Tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(label) for label in self.labels)
        if not labels:
            raise InputError("state set must contain at least one label")
        for label in labels:
            if not label or _RESERVED_LABEL_CHARS & set(label):
                raise InputError(f"invalid state label '{label}'")
        if len(set(labels)) != len(labels):
            duplicates = sorted({label for label in labels if labels.count(label) > 1})
            raise InputError(f"duplicate state labels: {duplicates}")
        object.__setattr__(self, 'labels', labels)
        object.__setattr__(self, '_index', {label: i for i, label in enumerate(labels)})

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown state '{label}'") from None

    def label(self, index: int) -> str:
        if not 0 <= index < len(self.labels):
            raise InputError(f"state index {index} out of range for {len(self.labels)} states")
        return self.labels[index]

    def parse_word(self, word: Union[str, Sequence[str]]) -> ColorWord:
        """Parse a comma-separated label list (or a label sequence) into a color word"""
        if isinstance(word, str):
            word = [part.strip() for part in word.split(',') if part.strip()]
        return tuple(self.index(label) for label in word)

    def format_word(self, word: Iterable[int]) -> List[str]:
        return [self.label(c) for c in word]

    def check_word(self, word: Iterable[int]) -> ColorWord:
        word = tuple(word)
        for c in word:
            if not isinstance(c, (int, np.integer)) or not 0 <= c < len(self.labels):
                raise InputError(f"invalid state index {c!r} in color word")
        return tuple(int(c) for c in word)


@dataclass(frozen=True, eq=False)
class MinimalEnergy:
    """A 0/1 minimal-energy matrix over an ordered state set"""
    states: StateSet
    matrix: np.ndarray

    def __post_init__(self):
        try:
            raw = np.asarray(self.matrix)
        except ValueError as e:
            raise InputError(f"energy matrix is not rectangular: {e}") from e
        size = len(self.states)
        if raw.ndim != 2 or raw.shape != (size, size):
            raise InputError(f"energy matrix must be {size}x{size}, got shape {raw.shape}")
        if raw.dtype == object or not np.isin(raw, (0, 1)).all():
            raise InputError("energy matrix entries must be 0 or 1")
        matrix = raw.astype(np.int8)
        matrix.setflags(write=False)
        object.__setattr__(self, 'matrix', matrix)
        # plain tuples for the hot loops; numpy scalar indexing is slow
        object.__setattr__(self, '_rows', tuple(tuple(int(v) for v in row) for row in matrix))

    def __call__(self, c: int, c2: int) -> int:
        return self._rows[c][c2]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MinimalEnergy):
            return NotImplemented
        return self.states == other.states and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.states, self._rows))

    def __repr__(self) -> str:
        return f"MinimalEnergy(states={list(self.states.labels)}, matrix={[list(r) for r in self._rows]})"

    @property
    def size(self) -> int:
        return len(self.states)

    @property
    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        return self._rows

    @classmethod
    def from_labels(cls, labels: Sequence[str], rows: Sequence[Sequence[int]]) -> 'MinimalEnergy':
        return cls(StateSet(tuple(labels)), np.asarray(rows))

    @classmethod
    def from_dict(cls, data: Dict) -> 'MinimalEnergy':
        """Create MinimalEnergy from the JSON layout {"states": [...], "matrix": [[...]]}"""
        if not isinstance(data, dict) or 'states' not in data or 'matrix' not in data:
            raise InputError("energy file must contain 'states' and 'matrix'")
        return cls.from_labels(data['states'], data['matrix'])

    def to_dict(self) -> Dict:
        return {"states": list(self.states.labels), "matrix": [list(row) for row in self._rows]}


@dataclass(frozen=True)
class PrimaryParticle:
    """Colored part k_c"""
    potential: int
    state: int
    degree: ClassVar[int] = 1

    @property
    def states(self) -> ParticleKind:
        return (self.state,)


@dataclass(frozen=True)
class SecondaryParticle:
    """Fusion (k, c, c') of two consecutive primaries; the potential 2k + eps(c, c') is derived"""
    half_potential: int
    upper_state: int
    lower_state: int
    degree: ClassVar[int] = 2

    @property
    def states(self) -> ParticleKind:
        return (self.upper_state, self.lower_state)


Particle = Union[PrimaryParticle, SecondaryParticle]


class Side(Enum):
    """Which family a partition belongs to"""
    O = "O"
    E = "E"
    E_DUAL = "E*"

    @classmethod
    def parse(cls, text: str) -> 'Side':
        aliases = {"o": cls.O, "e": cls.E, "e*": cls.E_DUAL, "edual": cls.E_DUAL, "dual": cls.E_DUAL}
        try:
            return aliases[str(text).strip().lower()]
        except KeyError:
            raise InputError(f"unknown side '{text}', expected O, E or E*") from None


class BoundKind(Enum):
    UNBOUNDED = "none"
    RHO_PLUS = "+"
    RHO_MINUS = "-"


@dataclass(frozen=True)
class BoundSpec:
    """Potential bound: k >= rho (rho+) or k <= rho (rho-), rho in {0, 1}"""
    kind: BoundKind = BoundKind.UNBOUNDED
    rho: int = 0

    def __post_init__(self):
        if self.kind is not BoundKind.UNBOUNDED and self.rho not in (0, 1):
            raise InputError(f"rho must be 0 or 1, got {self.rho}")

    @classmethod
    def parse(cls, text: str) -> 'BoundSpec':
        text = str(text).strip()
        if text.lower() in ("none", "unbounded", ""):
            return cls()
        if len(text) == 2 and text[0] in "01" and text[1] in "+-":
            kind = BoundKind.RHO_PLUS if text[1] == "+" else BoundKind.RHO_MINUS
            return cls(kind, int(text[0]))
        raise InputError(f"invalid bound '{text}', expected 0+, 1+, 0-, 1- or none")

    def __str__(self) -> str:
        if self.kind is BoundKind.UNBOUNDED:
            return "none"
        return f"{self.rho}{self.kind.value}"

    @property
    def bounded(self) -> bool:
        return self.kind is not BoundKind.UNBOUNDED

    def potential_window(self, degree: int, transfer: int = 0) -> Tuple[Optional[int], Optional[int]]:
        """Admissible potentials (lo, hi) of a particle; transfer is eps(c, c') for secondaries"""
        if self.kind is BoundKind.RHO_PLUS:
            return (self.rho if degree == 1 else 2 * self.rho + transfer), None
        if self.kind is BoundKind.RHO_MINUS:
            return None, (self.rho if degree == 1 else 2 * self.rho - transfer)
        return None, None


@dataclass(frozen=True)
class ColoredPartition:
    """Finite particle sequence of one side, together with the energy matrix it lives under"""
    epsilon: MinimalEnergy
    particles: Tuple[Particle, ...]
    side: Side = Side.O

    def __post_init__(self):
        object.__setattr__(self, 'particles', tuple(self.particles))

    def __len__(self) -> int:
        return len(self.particles)

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(x.degree for x in self.particles)


@dataclass(frozen=True)
class IndexDecomposition:
    """Set partition of {1..size} into upper halves I, lower halves I+1 and pure primaries J"""
    upper: Tuple[int, ...]
    pure: Tuple[int, ...]
    size: int

    def __post_init__(self):
        upper = tuple(sorted(self.upper))
        pure = tuple(sorted(self.pure))
        covered = sorted(upper + tuple(i + 1 for i in upper) + pure)
        if covered != list(range(1, self.size + 1)):
            raise InputError(f"I={upper}, I+1 and J={pure} do not partition 1..{self.size}")
        object.__setattr__(self, 'upper', upper)
        object.__setattr__(self, 'pure', pure)
        prefix = [0] * (self.size + 1)
        members = set(pure)
        for t in range(1, self.size + 1):
            prefix[t] = prefix[t - 1] + (t in members)
        object.__setattr__(self, '_pure_prefix', tuple(prefix))

    @classmethod
    def from_degrees(cls, degrees: Sequence[int]) -> 'IndexDecomposition':
        upper, pure, position = [], [], 1
        for degree in degrees:
            (upper if degree == 2 else pure).append(position)
            position += degree
        return cls(tuple(upper), tuple(pure), position - 1)

    @property
    def lower(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i in self.upper)

    def pure_count(self, t: int) -> int:
        """|J ∩ [1, t]| for 0 <= t <= size"""
        if not 0 <= t <= self.size:
            raise InputError(f"index {t} out of range 0..{self.size}")
        return self._pure_prefix[t]


@dataclass(frozen=True)
class PositionMap:
    """Permutation sigma of {1..s}; sigma[k-1] is the final position of index k"""
    sigma: Tuple[int, ...]

    def __post_init__(self):
        sigma = tuple(int(v) for v in self.sigma)
        if sorted(sigma) != list(range(1, len(sigma) + 1)):
            raise InputError(f"{sigma} is not a permutation of 1..{len(sigma)}")
        object.__setattr__(self, 'sigma', sigma)

    def __call__(self, k: int) -> int:
        if not 1 <= k <= len(self.sigma):
            raise InputError(f"index {k} out of range 1..{len(self.sigma)}")
        return self.sigma[k - 1]

    @property
    def size(self) -> int:
        return len(self.sigma)

    @classmethod
    def identity(cls, size: int) -> 'PositionMap':
        return cls(tuple(range(1, size + 1)))

    def is_increasing_on(self, indices: Sequence[int]) -> bool:
        values = [self(k) for k in sorted(indices)]
        return all(a < b for a, b in zip(values, values[1:]))


@dataclass(frozen=True)
class CrossingStrategy:
    """Order in which violating adjacent pairs are crossed"""
    kind: str = "leftmost"
    seed: Optional[int] = None

    def __post_init__(self):
        if self.kind == "random":
            if self.seed is None:
                raise InputError("random crossing strategy needs a seed")
            if not 0 <= int(self.seed) < 2 ** 64:
                raise InputError(f"seed {self.seed} is not a 64-bit unsigned integer")
        elif self.seed is not None:
            raise InputError(f"strategy '{self.kind}' does not take a seed")


@dataclass(frozen=True)
class TransferEvent:
    """One application of the crossing map"""
    step: int
    position: int                           # 0-based slot of the left particle in the mixed sequence
    before: Tuple[Particle, Particle]
    after: Tuple[Particle, Particle]
    origins: Tuple[int, int]                # (j, i): source index of the primary and of the secondary


@dataclass
class TransferTrace:
    events: List[TransferEvent] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.events)

    def append(self, event: TransferEvent) -> None:
        self.events.append(event)
