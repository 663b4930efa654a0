"""
Coefficient-level checks of partition identities: product sides against direct counts
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from ..utils.constants import (DISTINCT_ODD_FORBIDDEN_PARTS, DISTINCT_ODD_MIN_GAP, DISTINCT_ODD_RULES, ODD_MIN_GAP,
                               ODD_RULES, SILADIC_VARIANTS)
from ..utils.energy_utils import overpartition_energy
from ..utils.exceptions import InputError
from ..utils.models import BoundKind, BoundSpec, MinimalEnergy, Side
from .generating_functions import euler_product, overpartition_statistics, series_from_enumeration
from .qseries import (Monomial, OVERPARTITION_SYMBOLS, PochhammerFactor, SeriesSpace, Specialization,
                      TruncatedSeries, overpartition_factors, overpartition_product, pochhammer, specialize,
                      specialize_product)

logger = logging.getLogger(__name__)

Parts = Tuple[int, ...]

DISTINCT_ODD_SPECIALIZATION = Specialization(4, {"a": -1, "b": -3}, {"c": 1, "d": 0})
ODD_SPECIALIZATION = Specialization(4, {"a": -3, "b": -1}, {"c": 0, "d": 1})


@dataclass(frozen=True)
class CountRow:
    n: int
    lhs: int
    rhs: int
    refined_equal: bool = True

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs and self.refined_equal


@dataclass
class TheoremReport:
    name: str
    rows: List[CountRow] = field(default_factory=list)
    extra: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(row.equal for row in self.rows) and all(self.extra.values())

    @property
    def first_failure(self) -> Optional[CountRow]:
        return next((row for row in self.rows if not row.equal), None)


def _rows(lhs: List[int], rhs: List[int], start: int = 1) -> List[CountRow]:
    return [CountRow(n, lhs[n], rhs[n]) for n in range(start, min(len(lhs), len(rhs)))]


def distinct_odd_series(q_order: int) -> TruncatedSeries:
    """(-q;q^2) infinite"""
    return pochhammer(Monomial.of(-1, 1), 2, None, SeriesSpace((), q_order))


def odd_parts_series(q_order: int) -> TruncatedSeries:
    """1/(q;q^2) infinite"""
    return pochhammer(Monomial.of(1, 1), 2, None, SeriesSpace((), q_order), reciprocal=True)


def _gap_rule(min_gap: int, rules: Dict[int, frozenset]) -> Callable[[int, int], bool]:
    def allowed(upper: int, lower: int) -> bool:
        gap = upper - lower
        if gap < min_gap:
            return False
        return gap not in rules or (upper + lower) % 16 in rules[gap]
    return allowed


def _siladic_rule(variant: str) -> Tuple[Callable[[int, int], bool], frozenset]:
    if variant == "distinct-odd":
        return _gap_rule(DISTINCT_ODD_MIN_GAP, DISTINCT_ODD_RULES), DISTINCT_ODD_FORBIDDEN_PARTS
    if variant == "odd":
        return _gap_rule(ODD_MIN_GAP, ODD_RULES), frozenset()
    raise InputError(f"unknown variant '{variant}', expected one of {list(SILADIC_VARIANTS)}")


def _gap_partitions(n_max: int, allowed: Callable[[int, int], bool],
                    forbidden: frozenset = frozenset()) -> Iterator[Parts]:
    """Non-increasing positive parts with sum <= n_max whose neighbours pass the rule, empty one included"""
    def extend(parts: List[int], total: int) -> Iterator[Parts]:
        yield tuple(parts)
        last = parts[-1] if parts else n_max
        for part in range(1, min(last, n_max - total) + 1):
            if part in forbidden or (parts and not allowed(parts[-1], part)):
                continue
            parts.append(part)
            yield from extend(parts, total + part)
            parts.pop()

    yield from extend([], 0)


def siladic_partitions(variant: str, n: int) -> List[Parts]:
    """Partitions of n satisfying the difference and mod-16 conditions of the variant"""
    allowed, forbidden = _siladic_rule(variant)
    return sorted((p for p in _gap_partitions(n, allowed, forbidden) if sum(p) == n), reverse=True)


def _count_by_size(partitions: Iterator[Parts], n_max: int) -> List[int]:
    counts = [0] * (n_max + 1)
    for parts in partitions:
        counts[sum(parts)] += 1
    return counts


def check_siladic(variant: str, n_max: int) -> TheoremReport:
    """Product side against the direct count of partitions with the variant's conditions"""
    if n_max < 1:
        raise InputError(f"n_max must be at least 1, got {n_max}")
    allowed, forbidden = _siladic_rule(variant)
    product = distinct_odd_series(n_max) if variant == "distinct-odd" else odd_parts_series(n_max)
    counts = _count_by_size(_gap_partitions(n_max, allowed, forbidden), n_max)
    report = TheoremReport(f"siladic-{variant}", _rows(product.q_coefficients(), counts))
    logger.info(f"Checked the {variant} identity up to n={n_max}: {'pass' if report.passed else 'FAIL'}")
    return report


def check_euler_identity(q_order: int) -> TheoremReport:
    """(-q;q) = 1/(q;q^2), coefficientwise"""
    distinct = pochhammer(Monomial.of(-1, 1), 1, None, SeriesSpace((), q_order))
    return TheoremReport("euler", _rows(distinct.q_coefficients(), odd_parts_series(q_order).q_coefficients()))


def _schur_rule(upper: int, lower: int) -> bool:
    gap = upper - lower
    return gap > 3 or (gap == 3 and lower % 3 != 0)


def check_schur(n_max: int) -> TheoremReport:
    """Dilated two-color product against partitions with gaps >= 3, strict between multiples of 3"""
    factors = [PochhammerFactor(Monomial.of(-1, 1, a=1)), PochhammerFactor(Monomial.of(-1, 1, b=1))]
    product = specialize_product(factors, ("a", "b"), Specialization(3, {"a": -2, "b": -1}), n_max)
    counts = _count_by_size(_gap_partitions(n_max, _schur_rule), n_max)
    return TheoremReport("schur", _rows(product.q_coefficients(), counts))


def check_overpartition_specializations(q_order: int) -> TheoremReport:
    """The two dilations of the overpartition product give the distinct-odd and odd-part series"""
    rows = []
    for spec, target in ((DISTINCT_ODD_SPECIALIZATION, distinct_odd_series(q_order)),
                         (ODD_SPECIALIZATION, odd_parts_series(q_order))):
        specialized = specialize_product(overpartition_factors(), OVERPARTITION_SYMBOLS, spec, q_order)
        rows.append(specialized == target)
    return TheoremReport("overpartition-specializations", [], {"distinct-odd": rows[0], "odd": rows[1]})


def _refined(series: TruncatedSeries, n: int, u_max: Optional[int], v_max: Optional[int]) -> Dict[Tuple, int]:
    """(u, v, w) -> count at q^n"""
    out = {}
    for key, coefficient in series.terms.items():
        q, _, u, v, w = key
        if q == n and (u_max is None or u <= u_max) and (v_max is None or v <= v_max):
            out[(u, v, w)] = coefficient
    return out


def check_overpartition_corollary(n_max: int, u_max: Optional[int] = None,
                                  v_max: Optional[int] = None) -> TheoremReport:
    """Colored overpartitions against E-side partitions of the overline matrix, refined by (u, v, w)"""
    if n_max < 0:
        raise InputError(f"n_max must be non-negative, got {n_max}")
    e = overpartition_energy()
    bound = BoundSpec(BoundKind.RHO_PLUS, 1)
    symbols = ("a", "b", "c")
    a_side = series_from_enumeration(e, Side.O, bound, n_max, weights=overpartition_statistics, symbols=symbols)
    b_side = series_from_enumeration(e, Side.E, bound, n_max, weights=overpartition_statistics, symbols=symbols)
    rows = []
    for n in range(n_max + 1):
        lhs, rhs = _refined(a_side, n, u_max, v_max), _refined(b_side, n, u_max, v_max)
        rows.append(CountRow(n, sum(lhs.values()), sum(rhs.values()), lhs == rhs))
    product = specialize(overpartition_product(n_max), Specialization(1, {}, {"d": 1}, symbols))
    report = TheoremReport("overpartition", rows, {"product": product.terms == a_side.terms})
    logger.info(f"Checked colored overpartitions up to n={n_max}: {'pass' if report.passed else 'FAIL'}")
    return report


def check_generating_function(e: MinimalEnergy, rho: int, q_order: int,
                              color_order: Optional[int] = None) -> TheoremReport:
    """Both enumerated sides against the infinite product of the base function"""
    bound = BoundSpec(BoundKind.RHO_PLUS, rho)
    max_length = q_order + e.size if rho == 0 else None
    product = euler_product(e, rho, q_order, color_order)
    o_side = series_from_enumeration(e, Side.O, bound, q_order, max_length, color_order=color_order)
    e_side = series_from_enumeration(e, Side.E, bound, q_order, max_length, color_order=color_order)
    rows = []
    for n in range(q_order + 1):
        lhs = {k: v for k, v in o_side.terms.items() if k[0] == n}
        rhs = {k: v for k, v in product.terms.items() if k[0] == n}
        rows.append(CountRow(n, sum(lhs.values()), sum(rhs.values()), lhs == rhs))
    return TheoremReport("series", rows, {"bijection": o_side == e_side})
