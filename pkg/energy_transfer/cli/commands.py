"""
Subcommand handlers: each takes the frozen RunConfig and an Output and returns an exit code
"""
import json
import logging
from typing import Any, Dict, List, Optional

from ..config import RunConfig
from ..services.partition_space import enumerate_partitions
from ..services.predictors import Prediction, predict_phi, predict_psi
from ..services.transfer import TransferResult, phi, phi_dual, psi, psi_dual
from ..utils.constants import EXIT_CHECK_FAILED, EXIT_OK, STEP1_MODES
from ..utils.energy_utils import parse_preset
from ..utils.exceptions import InputError, UnsupportedRequestError
from ..utils.file_utils import (energy_from_file, format_partition, format_particle, parse_partition,
                                partition_from_file, partition_to_dict)
from ..utils.models import BoundSpec, ColoredPartition, CrossingStrategy, MinimalEnergy, Side, TransferEvent
from .output import Output, render_report
from .suites import get_suite

logger = logging.getLogger(__name__)


def resolve_energy(run: RunConfig, required: bool = True) -> Optional[MinimalEnergy]:
    """--energy PATH wins over --preset NAME[:labels]"""
    path, preset = run.flags.get("energy"), run.flags.get("preset")
    if path:
        return energy_from_file(path)
    if preset:
        return parse_preset(preset)
    if required:
        raise InputError(f"'{run.command}' needs --energy PATH or --preset NAME")
    return None


def cmd_enumerate(run: RunConfig, out: Output) -> int:
    """Stream every partition of one side with the given word, energy and bound"""
    e = resolve_energy(run)
    flags = run.flags
    if flags.get("word") is None or flags.get("n") is None:
        raise InputError("enumerate needs --word and --n")
    side = Side.parse(flags.get("side") or "O")
    word = e.states.parse_word(flags["word"])
    bound = BoundSpec.parse(flags.get("bound") or "none")
    workers = int(flags.get("workers") or run.settings.get("workers", 1))
    partitions = enumerate_partitions(e, side, word, int(flags["n"]), bound, workers)
    logger.info(f"Found {len(partitions)} {side.value}-side partitions")
    if out.is_json:
        payload: Dict[str, Any] = {"run": run.to_dict(), "count": len(partitions)}
        if not flags.get("count_only"):
            payload["partitions"] = [partition_to_dict(p) for p in partitions]
        out.json(payload)
    elif flags.get("count_only"):
        out.line(str(len(partitions)))
    else:
        for p in partitions:
            out.line(format_partition(p))
    return EXIT_OK


def _event_to_dict(e: MinimalEnergy, event: TransferEvent) -> Dict[str, Any]:
    return {
        "step": event.step,
        "position": event.position,
        "before": [format_particle(e.states, x) for x in event.before],
        "after": [format_particle(e.states, x) for x in event.after],
        "origins": list(event.origins),
    }


def _load_partition(run: RunConfig, e: MinimalEnergy, side: Side) -> ColoredPartition:
    if run.flags.get("input"):
        return partition_from_file(e, run.flags["input"])
    if run.flags.get("partition"):
        return parse_partition(e, run.flags["partition"], side)
    raise InputError("map needs --input PATH or --partition TEXT")


def _strategy(run: RunConfig) -> CrossingStrategy:
    kind = run.flags.get("strategy") or run.settings.get("strategy", "leftmost")
    return CrossingStrategy(kind, (run.seed if run.seed is not None else 0) if kind == "random" else None)


def _prediction_rows(prediction: Prediction) -> List[List[Any]]:
    rows = [["table", ""] + list(prediction.cols)]
    for j, values in zip(prediction.rows, prediction.table.tolist()):
        rows.append(["table", j] + values)
    return rows


def cmd_map(run: RunConfig, out: Output) -> int:
    """Apply Φ or Ψ to one partition; optionally trace each crossing and compare with the predictors"""
    e = resolve_energy(run)
    direction = run.flags.get("direction")
    dual = bool(run.flags.get("dual"))
    step1 = run.flags.get("step1") or STEP1_MODES[0]
    if direction not in ("phi", "psi"):
        raise InputError(f"unknown direction '{direction}', expected phi or psi")
    if dual and (run.flags.get("predict") or step1 != STEP1_MODES[0]):
        raise UnsupportedRequestError("--predict and --step1 are not available with --dual")
    source_side = Side.O if direction == "phi" else (Side.E_DUAL if dual else Side.E)
    partition = _load_partition(run, e, source_side)
    strategy = _strategy(run)
    trace = bool(run.flags.get("trace"))
    if direction == "phi":
        result: TransferResult = (phi_dual(e, partition, strategy, trace) if dual
                                  else phi(e, partition, strategy, trace, step1))
    else:
        result = psi_dual(e, partition, strategy, trace) if dual else psi(e, partition, strategy, trace)

    prediction, agrees = None, True
    if run.flags.get("predict"):
        prediction = predict_phi(e, partition) if direction == "phi" else predict_psi(e, partition)
        agrees = (prediction.positions == result.positions
                  and set(prediction.pairs) == set(result.crossing_pairs))
        if not agrees:
            logger.error(f"Prediction disagrees with the realized run on {format_partition(partition)}")

    events = [_event_to_dict(e, event) for event in result.trace.events] if result.trace else []
    pairs = [list(pair) for pair in result.crossing_pairs]
    if out.is_json:
        payload: Dict[str, Any] = {
            "run": run.to_dict(),
            "partition": partition_to_dict(result.partition),
            "crossings": result.crossings,
            "pairs": pairs,
            "positions": list(result.positions.sigma),
        }
        if trace:
            payload["trace"] = events
        if prediction is not None:
            payload["prediction"] = {
                "rows": list(prediction.rows),
                "cols": list(prediction.cols),
                "table": prediction.table.tolist(),
                "crossings": prediction.crossings,
                "agrees": agrees,
            }
        out.json(payload)
    else:
        for event in events:
            out.json_line(event)
        out.row(["partition", format_partition(result.partition)])
        out.row(["crossings", result.crossings])
        out.row(["pairs"] + [f"{j},{i}" for j, i in result.crossing_pairs])
        out.row(["positions"] + list(result.positions.sigma))
        if prediction is not None:
            out.rows(_prediction_rows(prediction))
            out.row(["predicted", prediction.crossings])
            out.row(["agreement", agrees])
    if not agrees:
        out.row(["counterexample", format_partition(partition)])
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_verify(run: RunConfig, out: Output) -> int:
    """Run one suite; exit 0 iff every check passes"""
    suite = get_suite(run.flags.get("suite"))
    energy = resolve_energy(run, required=suite.needs_energy)
    result = suite.run(run, energy)
    logger.info(f"Suite {suite.name}: {'pass' if result.passed else 'FAIL'}")
    if out.is_json:
        out.json(dict(result.to_dict(), run=run.to_dict()))
    else:
        out.row(result.header)
        out.rows(result.rows)
        for name, ok in sorted(result.extra.items()):
            out.row(["extra", name, ok])
        if result.counterexample is not None:
            out.row(["counterexample", format_counterexample(result.counterexample)])
        out.status(result.passed)
    if run.flags.get("report"):
        render_report('verify_report.html', run.flags["report"], result=result, run=run,
                      description=suite.description)
    return EXIT_OK if result.passed else EXIT_CHECK_FAILED


def format_counterexample(counterexample: Dict[str, Any]) -> str:
    """One-line replayable description"""
    return json.dumps(counterexample, ensure_ascii=False, sort_keys=True, separators=(",", ":"))
