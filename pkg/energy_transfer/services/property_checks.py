"""
Randomized property harness shared by the test suite and the selfcheck command
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np

from ..utils.energy_utils import TransferProfile, is_transitive, random_energy, transpose
from ..utils.exceptions import TransferInvariantError
from ..utils.models import (BoundKind, BoundSpec, ColoredPartition, CrossingStrategy, IndexDecomposition,
                            MinimalEnergy, Particle, PrimaryParticle, SecondaryParticle, Side)
from ..utils.particle_utils import gamma, mu, potential, reflect, rel_gg, rel_gg_dual, rel_succ
from .partition_space import enumerate_partitions, validate
from .predictors import alpha, beta, potential_links, predict_phi, predict_psi
from .transfer import lambda_cross, phi, phi_dual, psi, psi_dual

logger = logging.getLogger(__name__)

BOUNDS = tuple(BoundSpec(kind, rho) for kind in (BoundKind.RHO_PLUS, BoundKind.RHO_MINUS) for rho in (0, 1))


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    counterexample: Optional[Dict] = None


def _primary(rng: np.random.Generator, size: int, radius: int = 6) -> PrimaryParticle:
    return PrimaryParticle(int(rng.integers(-radius, radius + 1)), int(rng.integers(size)))


def _secondary(rng: np.random.Generator, size: int, radius: int = 6) -> SecondaryParticle:
    return SecondaryParticle(int(rng.integers(-radius, radius + 1)), int(rng.integers(size)), int(rng.integers(size)))


def _particle(rng: np.random.Generator, size: int, radius: int = 6) -> Particle:
    return _primary(rng, size, radius) if rng.integers(2) == 0 else _secondary(rng, size, radius)


def _energy(rng: np.random.Generator, max_size: int = 4) -> MinimalEnergy:
    return random_energy(rng, int(rng.integers(1, max_size + 1)))


def _describe(e: MinimalEnergy, **items) -> Dict:
    described = {"energy": e.to_dict()}
    for name, value in items.items():
        described[name] = str(value) if not isinstance(value, (int, list, dict)) else value
    return described


def _bounded_case(rng: np.random.Generator, max_size: int = 3,
                  max_length: int = 4) -> Tuple[MinimalEnergy, Tuple[int, ...], int, BoundSpec]:
    """Energy, word, n and bound with n drawn from a width-20 window around the feasible energies"""
    e = _energy(rng, max_size)
    word = tuple(int(c) for c in rng.integers(e.size, size=int(rng.integers(1, max_length + 1))))
    bound = BOUNDS[int(rng.integers(len(BOUNDS)))]
    edge = bound.rho * len(word)
    if bound.kind is BoundKind.RHO_PLUS:
        n = edge + int(rng.integers(-2, 18))
    else:
        n = edge - int(rng.integers(-2, 18))
    return e, word, n, bound


def check_lambda_involution(rng: np.random.Generator, trials: int) -> CheckResult:
    for case in range(trials):
        e = _energy(rng)
        x, y = _primary(rng, e.size), _secondary(rng, e.size)
        if rng.integers(2):
            x, y = y, x
        x2, y2 = lambda_cross(e, x, y)
        conserved = (potential(e, x) + potential(e, y) == potential(e, x2) + potential(e, y2)
                     and x.states + y.states == x2.states + y2.states)
        if not conserved or lambda_cross(e, x2, y2) != (x, y):
            return CheckResult("lambda-involution", False, case + 1, _describe(e, x=x, y=y))
    return CheckResult("lambda-involution", True, trials)


def check_crossing_order(rng: np.random.Generator, trials: int) -> CheckResult:
    """A primary/secondary pair is ill-ordered exactly when its crossed image is well ordered"""
    for case in range(trials):
        e = _energy(rng)
        p, s = _primary(rng, e.size), _secondary(rng, e.size)
        s2, p2 = lambda_cross(e, p, s)
        first = (not rel_gg(e, p, s)) == rel_gg(e, s2, p2)
        second = (not rel_succ(e, p, gamma(e, s))) == rel_gg(e, mu(s2), p2)
        if not (first and second):
            return CheckResult("crossing-order", False, case + 1, _describe(e, p=p, s=s))
    return CheckResult("crossing-order", True, trials)


def check_duality(rng: np.random.Generator, trials: int) -> CheckResult:
    for case in range(trials):
        e = _energy(rng)
        x, y = _particle(rng, e.size, 10), _particle(rng, e.size, 10)
        dual = transpose(e)
        mirrored = rel_gg(dual, reflect(e, y), reflect(e, x))
        back = reflect(dual, reflect(e, x)) == x
        transitivity = is_transitive(e) == is_transitive(dual)
        if rel_gg_dual(e, x, y) != mirrored or not back or not transitivity:
            return CheckResult("duality", False, case + 1, _describe(e, x=x, y=y))
    return CheckResult("duality", True, trials)


def check_relation_reformulation(rng: np.random.Generator, trials: int) -> CheckResult:
    """rel_gg on two secondaries raises when its two readings disagree"""
    for case in range(trials):
        e = _energy(rng)
        x, y = _secondary(rng, e.size), _secondary(rng, e.size)
        try:
            rel_gg(e, x, y)
        except TransferInvariantError:
            return CheckResult("relation-reformulation", False, case + 1, _describe(e, x=x, y=y))
    return CheckResult("relation-reformulation", True, trials)


def check_chasles(rng: np.random.Generator, trials: int) -> CheckResult:
    for case in range(trials):
        e = _energy(rng)
        length = int(rng.integers(1, 9))
        word = tuple(int(c) for c in rng.integers(e.size, size=length))
        profile = TransferProfile(e, word)
        degrees = []
        while sum(degrees) < length:
            degrees.append(1 if sum(degrees) == length - 1 else int(rng.integers(1, 3)))
        d = IndexDecomposition.from_degrees(degrees)
        k, k2, k3 = (int(v) for v in rng.integers(1, length + 1, size=3))
        ok = profile.delta(k, k2) + profile.delta(k2, k3) == profile.delta(k, k3)
        ok = ok and alpha(d, k, k2) + alpha(d, k2, k3) == alpha(d, k, k3)
        ok = ok and beta(d, k, k2) + beta(d, k2, k3) == beta(d, k, k3)
        low, high = min(k, k2), max(k, k2)
        ok = ok and 0 <= profile.delta(low, high) <= high - low
        if not ok:
            return CheckResult("chasles", False, case + 1, _describe(e, word=list(word), indices=[k, k2, k3]))
    return CheckResult("chasles", True, trials)


def _word_case(rng: np.random.Generator, trials: int, name: str,
               body: Callable[[MinimalEnergy, Tuple[int, ...], int, BoundSpec], Optional[Dict]]) -> CheckResult:
    for case in range(trials):
        e, word, n, bound = _bounded_case(rng)
        failure = body(e, word, n, bound)
        if failure is not None:
            failure.update(_describe(e, word=list(e.states.format_word(word)), n=n, bound=bound))
            return CheckResult(name, False, case + 1, failure)
    return CheckResult(name, True, trials)


def word_sweep(e: MinimalEnergy, max_length: int, width: int = 10,
               min_length: int = 1) -> Iterator[Tuple[Tuple[int, ...], int, BoundSpec]]:
    """Every word of the given lengths, every bound, and n within width of the bound's edge"""
    for length in range(min_length, max_length + 1):
        for word in itertools.product(range(e.size), repeat=length):
            for bound in BOUNDS:
                edge = bound.rho * length
                for n in range(edge - width, edge + width + 1):
                    yield word, n, bound


def sweep_energy(e: MinimalEnergy, name: str,
                 body: Callable[[MinimalEnergy, Tuple[int, ...], int, BoundSpec], Optional[Dict]],
                 max_length: int, width: int = 10, min_length: int = 1) -> CheckResult:
    """Run body on every case of word_sweep; stops at the first failure"""
    cases = 0
    for word, n, bound in word_sweep(e, max_length, width, min_length):
        cases += 1
        failure = body(e, word, n, bound)
        if failure is not None:
            failure.update(_describe(e, word=list(e.states.format_word(word)), n=n, bound=str(bound)))
            return CheckResult(name, False, cases, failure)
    logger.debug(f"{name}: {cases} cases over {list(e.states.labels)}")
    return CheckResult(name, True, cases)


def count_mismatch(e: MinimalEnergy, word: Tuple[int, ...], n: int, bound: BoundSpec) -> Optional[Dict]:
    o_count = len(enumerate_partitions(e, Side.O, word, n, bound))
    e_count = len(enumerate_partitions(e, Side.E, word, n, bound))
    return None if o_count == e_count else {"counts": [o_count, e_count]}


def check_count_symmetry(rng: np.random.Generator, trials: int) -> CheckResult:
    return _word_case(rng, trials, "count-symmetry", count_mismatch)


def check_dual_count_symmetry(rng: np.random.Generator, trials: int) -> CheckResult:
    def body(e, word, n, bound):
        o_side = enumerate_partitions(e, Side.O, word, n, bound)
        dual_side = enumerate_partitions(e, Side.E_DUAL, word, n, bound)
        if len(o_side) != len(dual_side):
            return {"counts": [len(o_side), len(dual_side)]}
        images = {phi_dual(e, lam).partition.particles for lam in o_side}
        if images != {nu.particles for nu in dual_side}:
            return {"reason": "dual images differ from the dual set"}
        for nu in dual_side:
            if psi_dual(e, nu).partition.particles not in {lam.particles for lam in o_side}:
                return {"partition": str(nu.particles)}
        return None
    return _word_case(rng, trials, "dual-count-symmetry", body)


def roundtrip_failure(e: MinimalEnergy, word: Tuple[int, ...], n: int, bound: BoundSpec,
                      seed: int = 0) -> Optional[Dict]:
    """Φ maps the O-side set onto the E-side set, keeps the bound, and Ψ inverts it for every strategy"""
    e_side = {nu.particles for nu in enumerate_partitions(e, Side.E, word, n, bound)}
    for lam in enumerate_partitions(e, Side.O, word, n, bound):
        result = phi(e, lam)
        nu = result.partition
        if nu.particles not in e_side or not validate(nu, bound):
            return {"partition": str(lam.particles), "reason": "image outside the E-side set"}
        for strategy in (CrossingStrategy("rightmost"), CrossingStrategy("random", seed)):
            if phi(e, lam, strategy).partition != nu:
                return {"partition": str(lam.particles), "strategy": strategy.kind}
        if phi(e, lam, step1="left-to-right").partition != nu:
            return {"partition": str(lam.particles), "reason": "step-1 modes disagree"}
        if psi(e, nu).partition != lam:
            return {"partition": str(lam.particles), "reason": "Ψ does not invert Φ"}
    return None


def check_bijection_roundtrip(rng: np.random.Generator, trials: int) -> CheckResult:
    return _word_case(rng, trials, "bijection-roundtrip",
                      lambda e, word, n, bound: roundtrip_failure(e, word, n, bound, int(rng.integers(2 ** 32))))


def _monotone(table: np.ndarray) -> bool:
    if table.size == 0:
        return True
    return bool(np.all(np.diff(table, axis=0) <= 0) and np.all(np.diff(table, axis=1) >= 0))


def check_predictions(rng: np.random.Generator, trials: int) -> CheckResult:
    """Predicted crossings and final positions match traced runs of Φ and Ψ"""
    def body(e, word, n, bound):
        for lam in enumerate_partitions(e, Side.O, word, n, bound):
            forward = phi(e, lam, trace=True)
            predicted = predict_phi(e, lam)
            if set(predicted.pairs) != set(forward.crossing_pairs) or predicted.positions != forward.positions:
                return {"partition": str(lam.particles), "reason": "Φ prediction differs"}
            if not _monotone(predicted.table):
                return {"partition": str(lam.particles), "reason": "φ table is not monotone"}
            backward = psi(e, forward.partition, trace=True)
            predicted = predict_psi(e, forward.partition)
            if set(predicted.pairs) != set(backward.crossing_pairs) or predicted.positions != backward.positions:
                return {"partition": str(forward.partition.particles), "reason": "Ψ prediction differs"}
        return None
    return _word_case(rng, trials, "predictions", body)


def check_potential_links(rng: np.random.Generator, trials: int) -> CheckResult:
    def body(e, word, n, bound):
        for nu in enumerate_partitions(e, Side.E, word, n, bound):
            broken = potential_links(e, nu)
            if broken:
                return {"partition": str(nu.particles), "pairs": [list(pair) for pair in broken]}
        return None
    return _word_case(rng, trials, "potential-links", body)


# (check, share of the trial budget); enumeration-backed checks run fewer cases
SELFCHECKS: List[Tuple[Callable[[np.random.Generator, int], CheckResult], int]] = [
    (check_lambda_involution, 1),
    (check_crossing_order, 1),
    (check_duality, 1),
    (check_relation_reformulation, 1),
    (check_chasles, 1),
    (check_count_symmetry, 20),
    (check_dual_count_symmetry, 20),
    (check_bijection_roundtrip, 20),
    (check_predictions, 20),
    (check_potential_links, 20),
]


def run_selfcheck(seed: int, trials: int) -> List[CheckResult]:
    """Every property check with its own generator derived from the seed, in a fixed order"""
    results = []
    for index, (check, divisor) in enumerate(SELFCHECKS):
        rng = np.random.default_rng([seed, index])
        result = check(rng, max(1, trials // divisor))
        logger.info(f"{result.name}: {'pass' if result.passed else 'FAIL'} after {result.cases} cases")
        results.append(result)
    return results
