"""
Truncated multivariate power series in q, x and commuting color symbols, with Pochhammer products
and specializations
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..utils.exceptions import ConvergenceError, IncompatibleSeriesError, InputError, NegativeExponentError

logger = logging.getLogger(__name__)

# Exponent vector (q, x, *colors)
Key = Tuple[int, ...]


@dataclass(frozen=True)
class SeriesSpace:
    """The truncated ring a series lives in; None leaves a degree unbounded"""
    symbols: Tuple[str, ...] = ()
    q_order: int = 10
    x_order: Optional[int] = None
    color_order: Optional[int] = None

    def __post_init__(self):
        symbols = tuple(self.symbols)
        if len(set(symbols)) != len(symbols) or any(s in ("q", "x") for s in symbols):
            raise InputError(f"invalid color symbols {symbols}")
        if self.q_order < 0:
            raise InputError(f"q_order must be non-negative, got {self.q_order}")
        object.__setattr__(self, 'symbols', symbols)

    @property
    def width(self) -> int:
        return 2 + len(self.symbols)

    def admits(self, key: Key) -> bool:
        if key[0] > self.q_order:
            return False
        if self.x_order is not None and key[1] > self.x_order:
            return False
        return self.color_order is None or sum(key[2:]) <= self.color_order

    def key(self, q: int = 0, x: int = 0, colors: Optional[Mapping[str, int]] = None) -> Key:
        exponents = [0] * len(self.symbols)
        for symbol, power in (colors or {}).items():
            if symbol not in self.symbols:
                raise InputError(f"unknown color symbol '{symbol}', series has {list(self.symbols)}")
            exponents[self.symbols.index(symbol)] += power
        return (q, x) + tuple(exponents)

    def zero(self) -> 'TruncatedSeries':
        return TruncatedSeries(self, {})

    def one(self) -> 'TruncatedSeries':
        return self.monomial(1)

    def monomial(self, coefficient: int = 1, q: int = 0, x: int = 0,
                 colors: Optional[Mapping[str, int]] = None) -> 'TruncatedSeries':
        return TruncatedSeries(self, {self.key(q, x, colors): coefficient})

    def from_q_coefficients(self, coefficients: Sequence[int]) -> 'TruncatedSeries':
        return TruncatedSeries(self, {self.key(n): c for n, c in enumerate(coefficients)})


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    space: SeriesSpace
    terms: Dict[Key, int] = field(default_factory=dict)

    def __post_init__(self):
        clean: Dict[Key, int] = {}
        for key, coefficient in self.terms.items():
            key = tuple(int(v) for v in key)
            if len(key) != self.space.width:
                raise InputError(f"exponent vector {key} does not fit symbols {list(self.space.symbols)}")
            if key[0] < 0:
                raise NegativeExponentError(f"monomial {self._format_key(key)} has a negative power of q")
            if coefficient and self.space.admits(key):
                clean[key] = clean.get(key, 0) + int(coefficient)
        object.__setattr__(self, 'terms', {k: v for k, v in clean.items() if v})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __add__(self, other: 'TruncatedSeries') -> 'TruncatedSeries':
        return series_add(self, other)

    def __sub__(self, other: 'TruncatedSeries') -> 'TruncatedSeries':
        return series_add(self, -other)

    def __neg__(self) -> 'TruncatedSeries':
        return TruncatedSeries(self.space, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other) -> 'TruncatedSeries':
        if isinstance(other, int):
            return TruncatedSeries(self.space, {k: v * other for k, v in self.terms.items()})
        return series_mul(self, other)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.format()}, q_order={self.space.q_order})"

    def _format_key(self, key: Key) -> str:
        factors = []
        for name, power in zip(("q", "x") + self.space.symbols, key):
            if power:
                factors.append(name if power == 1 else f"{name}^{power}")
        return "*".join(factors) or "1"

    def format(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for key in sorted(self.terms):
            coefficient = self.terms[key]
            monomial = self._format_key(key)
            if monomial == "1":
                pieces.append(str(coefficient))
            elif coefficient == 1:
                pieces.append(monomial)
            else:
                pieces.append(f"{coefficient}*{monomial}")
        return " + ".join(pieces).replace("+ -", "- ")

    def coefficient(self, q: int = 0, x: int = 0, **colors: int) -> int:
        return self.terms.get(self.space.key(q, x, colors), 0)

    def q_coefficients(self) -> List[int]:
        """Coefficients of q^0..q^q_order with x and the colors set to 1"""
        counts = [0] * (self.space.q_order + 1)
        for key, coefficient in self.terms.items():
            counts[key[0]] += coefficient
        return counts

    def with_space(self, space: SeriesSpace) -> 'TruncatedSeries':
        """Re-truncate into another space over the same symbols"""
        if space.symbols != self.space.symbols:
            raise IncompatibleSeriesError(f"symbols {space.symbols} differ from {self.space.symbols}")
        return TruncatedSeries(space, self.terms)

    def substitute_x(self, power: int, space: Optional[SeriesSpace] = None) -> 'TruncatedSeries':
        """x -> q^power; the x degree collapses to 0"""
        space = space or SeriesSpace(self.space.symbols, self.space.q_order, 0, self.space.color_order)
        terms: Dict[Key, int] = {}
        for key, coefficient in self.terms.items():
            target = (key[0] + power * key[1], 0) + key[2:]
            terms[target] = terms.get(target, 0) + coefficient
        return TruncatedSeries(space, terms)


def _require_compatible(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.space != b.space:
        raise IncompatibleSeriesError(f"incompatible series spaces {a.space} and {b.space}")


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _require_compatible(a, b)
    terms = dict(a.terms)
    for key, coefficient in b.terms.items():
        terms[key] = terms.get(key, 0) + coefficient
    return TruncatedSeries(a.space, terms)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _require_compatible(a, b)
    space = a.space
    right = sorted(b.terms.items())
    terms: Dict[Key, int] = {}
    for key, coefficient in a.terms.items():
        for key2, coefficient2 in right:
            if key[0] + key2[0] > space.q_order:
                break
            target = tuple(u + v for u, v in zip(key, key2))
            if space.admits(target):
                terms[target] = terms.get(target, 0) + coefficient * coefficient2
    return TruncatedSeries(space, terms)


def series_product(items: Iterable[TruncatedSeries], space: SeriesSpace) -> TruncatedSeries:
    result = space.one()
    for item in items:
        result = series_mul(result, item)
    return result


@dataclass(frozen=True)
class Monomial:
    """coefficient * q^q * x^x * prod(color^power)"""
    coefficient: int = 1
    q: int = 0
    x: int = 0
    colors: Tuple[Tuple[str, int], ...] = ()

    @classmethod
    def of(cls, coefficient: int = 1, q: int = 0, x: int = 0, **colors: int) -> 'Monomial':
        return cls(coefficient, q, x, tuple(sorted((s, p) for s, p in colors.items() if p)))

    def key_in(self, space: SeriesSpace) -> Key:
        return space.key(self.q, self.x, dict(self.colors))


def _shift(series: TruncatedSeries, key: Key, scale: int) -> Dict[Key, int]:
    return {tuple(u + v for u, v in zip(k, key)): c * scale for k, c in series.terms.items()}


def _times_linear(series: TruncatedSeries, key: Key, coefficient: int) -> TruncatedSeries:
    """series * (1 + coefficient * m)"""
    terms = dict(series.terms)
    for k, c in _shift(series, key, coefficient).items():
        if series.space.admits(k):
            terms[k] = terms.get(k, 0) + c
    return TruncatedSeries(series.space, terms)


def _times_geometric(series: TruncatedSeries, key: Key, coefficient: int) -> TruncatedSeries:
    """series / (1 - coefficient * m)"""
    space = series.space
    if any(v < 0 for v in key):
        raise ConvergenceError(f"geometric series in a monomial with negative exponents {key}")
    bounded = key[0] > 0 or (key[1] > 0 and space.x_order is not None) or \
        (sum(key[2:]) > 0 and space.color_order is not None)
    if not bounded:
        raise ConvergenceError(f"geometric series in {key} does not truncate")
    terms = dict(series.terms)
    power, scale = key, coefficient
    while True:
        shifted = {k: c for k, c in _shift(series, power, scale).items() if space.admits(k)}
        if not shifted:
            break
        for k, c in shifted.items():
            terms[k] = terms.get(k, 0) + c
        power, scale = tuple(u + v for u, v in zip(power, key)), scale * coefficient
    return TruncatedSeries(space, terms)


@dataclass(frozen=True)
class PochhammerFactor:
    """(base; q^q_step)_count, or its reciprocal; count None means infinite"""
    base: Monomial
    q_step: int = 1
    reciprocal: bool = False
    count: Optional[int] = None


def pochhammer(base: Monomial, q_step: int, factors: Optional[int], space: SeriesSpace,
               reciprocal: bool = False) -> TruncatedSeries:
    """prod_{k < factors} (1 - base q^(k q_step)), or its reciprocal, truncated to the space"""
    if factors is not None and factors < 0:
        raise InputError(f"negative factor count {factors}")
    if factors is None and q_step <= 0:
        raise ConvergenceError(f"infinite product with q step {q_step} does not converge")
    key = base.key_in(space)
    result = space.one()
    k = 0
    while factors is None or k < factors:
        shifted = (key[0] + k * q_step,) + key[1:]
        if shifted[0] > space.q_order:
            break
        if reciprocal:
            result = _times_geometric(result, shifted, base.coefficient)
        else:
            result = _times_linear(result, shifted, -base.coefficient)
        k += 1
    return result


def expand_product(factors: Sequence[PochhammerFactor], space: SeriesSpace) -> TruncatedSeries:
    result = space.one()
    for factor in factors:
        result = series_mul(result, pochhammer(factor.base, factor.q_step, factor.count, space, factor.reciprocal))
    return result


@dataclass(frozen=True)
class Specialization:
    """q -> q^q_dilation, colors -> q^power or constants, kept symbols untouched; x_power None keeps x"""
    q_dilation: int = 1
    powers: Dict[str, int] = field(default_factory=dict)
    constants: Dict[str, int] = field(default_factory=dict)
    kept: Tuple[str, ...] = ()
    x_power: Optional[int] = None

    def __post_init__(self):
        if self.q_dilation < 1:
            raise InputError(f"q dilation must be positive, got {self.q_dilation}")
        overlap = (set(self.powers) & set(self.constants)) | ((set(self.powers) | set(self.constants)) & set(self.kept))
        if overlap:
            raise InputError(f"symbols {sorted(overlap)} are mapped twice")

    @property
    def lowers_exponents(self) -> bool:
        return any(p < 0 for p in self.powers.values()) or (self.x_power is not None and self.x_power < 0)

    def check_total(self, symbols: Sequence[str]) -> None:
        missing = [s for s in symbols if s not in self.powers and s not in self.constants and s not in self.kept]
        if missing:
            raise InputError(f"specialization does not map {missing}")

    def kept_symbols(self, symbols: Sequence[str]) -> Tuple[str, ...]:
        return tuple(s for s in symbols if s in self.kept)

    def apply(self, coefficient: int, key: Key, symbols: Sequence[str]) -> Tuple[int, Key]:
        """Specialized (coefficient, key) over the kept symbols; coefficient 0 when a constant kills it"""
        q = self.q_dilation * key[0]
        x = key[1]
        if self.x_power is not None:
            q += self.x_power * x
            x = 0
        kept = []
        for symbol, power in zip(symbols, key[2:]):
            if symbol in self.powers:
                q += self.powers[symbol] * power
            elif symbol in self.constants:
                coefficient *= self.constants[symbol] ** power
            else:
                kept.append(power)
        return coefficient, (q, x) + tuple(kept)


def specialize(s: TruncatedSeries, spec: Specialization, q_order: Optional[int] = None) -> TruncatedSeries:
    """Substitute the colors, dilate q and re-truncate"""
    symbols = s.space.symbols
    spec.check_total(symbols)
    if q_order is None:
        if spec.lowers_exponents:
            raise InputError("specialization with negative powers needs an explicit q_order")
        q_order = spec.q_dilation * s.space.q_order
    space = SeriesSpace(spec.kept_symbols(symbols), q_order, s.space.x_order, s.space.color_order)
    terms: Dict[Key, int] = {}
    for key, coefficient in s.terms.items():
        value, target = spec.apply(coefficient, key, symbols)
        if not value:
            continue
        if target[0] < 0:
            logger.error(f"Specialization sends {s._format_key(key)} to q^{target[0]}")
            raise NegativeExponentError(f"monomial {s._format_key(key)} specializes to q^{target[0]}")
        terms[target] = terms.get(target, 0) + value
    return TruncatedSeries(space, terms)


def specialize_product(factors: Sequence[PochhammerFactor], symbols: Sequence[str], spec: Specialization,
                       q_order: int, x_order: Optional[int] = None,
                       color_order: Optional[int] = None) -> TruncatedSeries:
    """Specialize a product factor by factor, then expand; exact to q_order"""
    spec.check_total(symbols)
    source = SeriesSpace(tuple(symbols), 0)
    space = SeriesSpace(spec.kept_symbols(symbols), q_order, x_order, color_order)
    specialized = []
    for factor in factors:
        value, key = spec.apply(factor.base.coefficient, factor.base.key_in(source), source.symbols)
        if not value:
            continue
        if key[0] < 0:
            raise NegativeExponentError(f"factor base {factor.base} specializes to q^{key[0]}")
        colors = dict(zip(space.symbols, key[2:]))
        specialized.append(PochhammerFactor(Monomial.of(value, key[0], key[1], **colors),
                                            factor.q_step * spec.q_dilation, factor.reciprocal, factor.count))
    return expand_product(specialized, space)


def overpartition_factors() -> List[PochhammerFactor]:
    """(-acq;q)(-bcq;q) / ((adq;q)(bdq;q)), infinite products"""
    return [
        PochhammerFactor(Monomial.of(-1, 1, a=1, c=1)),
        PochhammerFactor(Monomial.of(-1, 1, b=1, c=1)),
        PochhammerFactor(Monomial.of(1, 1, a=1, d=1), reciprocal=True),
        PochhammerFactor(Monomial.of(1, 1, b=1, d=1), reciprocal=True),
    ]


OVERPARTITION_SYMBOLS = ("a", "b", "c", "d")


def overpartition_product(q_order: int, color_order: Optional[int] = None) -> TruncatedSeries:
    return expand_product(overpartition_factors(), SeriesSpace(OVERPARTITION_SYMBOLS, q_order, None, color_order))
