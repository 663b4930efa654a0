"""
Verification suites behind `verify <suite>`
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..config import RunConfig
from ..services.partition_space import difference_matrix, enumerate_partitions
from ..services.property_checks import run_selfcheck
from ..services.theorem_checks import (CountRow, TheoremReport, check_euler_identity, check_generating_function,
                                       check_overpartition_corollary, check_overpartition_specializations,
                                       check_schur, check_siladic)
from ..services.transfer import phi, phi_dual, psi, psi_dual
from ..utils.exceptions import InputError
from ..utils.file_utils import format_partition, load_json, parse_n_range
from ..utils.models import BoundSpec, MinimalEnergy, Side

logger = logging.getLogger(__name__)

COUNT_HEADER = ("n", "lhs", "rhs", "equal")

# Global suite registry
_SUITE_REGISTRY: Dict[str, 'VerificationSuite'] = {}


@dataclass
class SuiteResult:
    name: str
    passed: bool
    header: Tuple[str, ...] = COUNT_HEADER
    rows: List[Tuple[Any, ...]] = field(default_factory=list)
    extra: Dict[str, bool] = field(default_factory=dict)
    counterexample: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.name,
            "passed": self.passed,
            "header": list(self.header),
            "rows": [list(row) for row in self.rows],
            "extra": dict(self.extra),
            "counterexample": self.counterexample,
        }


def _count_rows(rows: Sequence[CountRow]) -> List[Tuple[Any, ...]]:
    return [(row.n, row.lhs, row.rhs, row.equal) for row in rows]


def _from_report(report: TheoremReport, context: Dict[str, Any]) -> SuiteResult:
    """Turn a theorem report into a suite result; the first failing row becomes the counterexample"""
    counterexample = None
    if not report.passed:
        failure = report.first_failure
        counterexample = dict(context)
        if failure is not None:
            counterexample.update({"n": failure.n, "lhs": failure.lhs, "rhs": failure.rhs})
        else:
            counterexample["failed"] = sorted(name for name, ok in report.extra.items() if not ok)
    return SuiteResult(report.name, report.passed, COUNT_HEADER, _count_rows(report.rows),
                       dict(report.extra), counterexample)


class VerificationSuite:
    """Base class for a named check run from the command line"""
    needs_energy = False

    def __init__(self, name: str, description: str):
        self.name = name
        self.description = description

    def run(self, run: RunConfig, energy: Optional[MinimalEnergy]) -> SuiteResult:
        raise NotImplementedError

    @staticmethod
    def flag(run: RunConfig, key: str, default: Any = None) -> Any:
        value = run.flags.get(key)
        if value is None:
            value = run.settings.get(key, default)
        return value


class BijectionSuite(VerificationSuite):
    """Per-n counts of both sides for one word, with Φ and Ψ checked on every partition"""
    needs_energy = True

    def __init__(self):
        super().__init__("bijection", "O-side and E-side counts agree and Φ/Ψ are inverse bijections")

    def run(self, run: RunConfig, energy: Optional[MinimalEnergy]) -> SuiteResult:
        e = energy
        if not run.flags.get("word") or not run.flags.get("n_range"):
            raise InputError("verify bijection needs --word and --n-range")
        word = e.states.parse_word(run.flags["word"])
        bound = BoundSpec.parse(run.flags.get("bound") or "none")
        dual = bool(run.flags.get("dual"))
        target_side = Side.E_DUAL if dual else Side.E
        forward, backward = (phi_dual, psi_dual) if dual else (phi, psi)
        workers = int(self.flag(run, "workers", 1))
        context = {"energy": e.to_dict(), "word": run.flags["word"], "bound": str(bound)}
        rows, counterexample = [], None
        for n in parse_n_range(run.flags["n_range"]):
            o_side = enumerate_partitions(e, Side.O, word, n, bound, workers)
            e_side = enumerate_partitions(e, target_side, word, n, bound, workers)
            mapped = len(o_side) == len(e_side)
            targets = {nu.particles for nu in e_side}
            for lam in o_side if mapped else ():
                nu = forward(e, lam).partition
                if nu.particles not in targets or backward(e, nu).partition != lam:
                    mapped = False
                    if counterexample is None:
                        counterexample = dict(context, n=n, partition=format_partition(lam))
                    break
            if len(o_side) != len(e_side) and counterexample is None:
                counterexample = dict(context, n=n, counts=[len(o_side), len(e_side)])
            rows.append((n, len(o_side), len(e_side), mapped))
            logger.debug(f"n={n}: {len(o_side)} O-side, {len(e_side)} {target_side.value}-side")
        return SuiteResult("bijection", all(row[3] for row in rows), COUNT_HEADER, rows, {}, counterexample)


class SeriesSuite(VerificationSuite):
    needs_energy = True

    def __init__(self):
        super().__init__("series", "enumerated generating function against the infinite product")

    def run(self, run: RunConfig, energy: Optional[MinimalEnergy]) -> SuiteResult:
        rho = int(run.flags.get("rho") if run.flags.get("rho") is not None else 1)
        q_order = int(self.flag(run, "q_order", 10))
        color_order = self.flag(run, "color_order")
        report = check_generating_function(energy, rho, q_order, color_order)
        return _from_report(report, {"energy": energy.to_dict(), "rho": rho, "q_order": q_order})


class SiladicSuite(VerificationSuite):
    def __init__(self):
        super().__init__("siladic", "mod-16 difference conditions against the product side")

    def run(self, run: RunConfig, energy: Optional[MinimalEnergy]) -> SuiteResult:
        variant = run.flags.get("variant") or "distinct-odd"
        n_max = int(self.flag(run, "n_max", 40))
        return _from_report(check_siladic(variant, n_max), {"variant": variant})


class OverpartitionSuite(VerificationSuite):
    def __init__(self):
        super().__init__("overpartition", "colored overpartitions against the E-side partitions, refined by (u, v, w)")

    def run(self, run: RunConfig, energy: Optional[MinimalEnergy]) -> SuiteResult:
        # the refined enumeration grows quickly; its own default stays small
        n_max = int(run.flags.get("n_max") or 12)
        report = check_overpartition_corollary(n_max, run.flags.get("u_max"), run.flags.get("v_max"))
        specializations = check_overpartition_specializations(int(run.settings.get("n_max", 40)))
        report.extra.update(specializations.extra)
        return _from_report(report, {"n_max": n_max})


class SchurSuite(VerificationSuite):
    def __init__(self):
        super().__init__("schur", "dilated two-color product against gap conditions modulo 3")

    def run(self, run: RunConfig, energy: Optional[MinimalEnergy]) -> SuiteResult:
        n_max = int(self.flag(run, "n_max", 40))
        return _from_report(check_schur(n_max), {"n_max": n_max})


class EulerSuite(VerificationSuite):
    def __init__(self):
        super().__init__("euler", "distinct parts against odd parts")

    def run(self, run: RunConfig, energy: Optional[MinimalEnergy]) -> SuiteResult:
        q_order = int(self.flag(run, "q_order", 10))
        return _from_report(check_euler_identity(q_order), {"q_order": q_order})


class DiffMatrixSuite(VerificationSuite):
    """Derived difference matrix, optionally compared with an expected one"""
    needs_energy = True

    def __init__(self):
        super().__init__("diffmatrix", "minimal difference conditions over primary and secondary states")

    def run(self, run: RunConfig, energy: Optional[MinimalEnergy]) -> SuiteResult:
        side = Side.parse(run.flags.get("side") or "E")
        derived = difference_matrix(energy, side)
        expect_path = run.flags.get("expect")
        if not expect_path:
            rows = [(label,) + tuple(int(v) for v in values)
                    for label, values in zip(derived.labels, derived.values)]
            return SuiteResult("diffmatrix", True, ("state",) + derived.labels, rows)
        expected = load_json(expect_path)
        if not isinstance(expected, dict) or "labels" not in expected or "matrix" not in expected:
            raise InputError(f"{expect_path} must contain 'labels' and 'matrix'")
        if tuple(expected["labels"]) != derived.labels:
            raise InputError(f"expected labels {expected['labels']} differ from {list(derived.labels)}")
        rows = []
        for r, left in enumerate(derived.labels):
            for c, right in enumerate(derived.labels):
                got, want = int(derived.values[r, c]), int(expected["matrix"][r][c])
                if got != want:
                    rows.append((left, right, got, want))
        extra = {}
        if "parity" in expected:
            extra["parity"] = dict(expected["parity"]) == derived.parity
        passed = not rows and all(extra.values())
        counterexample = None
        if not passed:
            counterexample = {"energy": energy.to_dict(), "mismatches": [list(row) for row in rows[:5]]}
        return SuiteResult("diffmatrix", passed, ("left", "right", "derived", "expected"), rows, extra,
                           counterexample)


class SelfcheckSuite(VerificationSuite):
    def __init__(self):
        super().__init__("selfcheck", "randomized structural property checks")

    def run(self, run: RunConfig, energy: Optional[MinimalEnergy]) -> SuiteResult:
        seed = run.seed if run.seed is not None else 0
        trials = int(self.flag(run, "trials", run.settings.get("selfcheck_trials", 200)))
        results = run_selfcheck(seed, trials)
        rows = [(result.name, result.cases, result.passed) for result in results]
        failed = next((result for result in results if not result.passed), None)
        counterexample = None
        if failed is not None:
            counterexample = dict(failed.counterexample or {}, check=failed.name, seed=seed)
        return SuiteResult("selfcheck", failed is None, ("check", "cases", "passed"), rows, {}, counterexample)


def register_suite(suite: VerificationSuite) -> None:
    """Register a verification suite"""
    _SUITE_REGISTRY[suite.name] = suite


def get_suite(name: str) -> VerificationSuite:
    try:
        return _SUITE_REGISTRY[name]
    except KeyError:
        raise InputError(f"unknown suite '{name}', expected one of {suite_names()}") from None


def suite_names() -> List[str]:
    return sorted(_SUITE_REGISTRY)


def register_default_suites() -> None:
    """Register all built-in suites"""
    suites = [
        BijectionSuite(),
        SeriesSuite(),
        SiladicSuite(),
        OverpartitionSuite(),
        SchurSuite(),
        EulerSuite(),
        DiffMatrixSuite(),
        SelfcheckSuite(),
    ]
    for suite in suites:
        register_suite(suite)


register_default_suites()
