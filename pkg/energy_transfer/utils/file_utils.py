import json
import logging
import os
from typing import Any, Dict, List, Optional, Sequence

from .constants import SECONDARY_MARK, STATE_SEPARATOR
from .exceptions import InputError
from .models import ColoredPartition, MinimalEnergy, Particle, PrimaryParticle, SecondaryParticle, Side, StateSet

logger = logging.getLogger(__name__)

def load_json(file_path: str) -> Any:
    """Read a UTF-8 JSON file"""
    if not os.path.isfile(file_path):
        raise InputError(f"file not found: {file_path}")
    try:
        with open(file_path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        logger.error(f"Error parsing JSON in {file_path}: {e}")
        raise InputError(f"{file_path} is not valid JSON: {e}") from e

def save_json(data: Any, file_path: str) -> None:
    with open(file_path, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=2)
        f.write("\n")

def energy_from_file(file_path: str) -> MinimalEnergy:
    energy = MinimalEnergy.from_dict(load_json(file_path))
    logger.debug(f"Loaded {energy.size}-state energy matrix from {file_path}")
    return energy

def particle_to_dict(states: StateSet, x: Particle) -> Dict:
    if x.degree == 1:
        return {"k": x.potential, "state": states.label(x.state)}
    return {"k": x.half_potential, "upper": states.label(x.upper_state), "lower": states.label(x.lower_state)}

def particle_from_dict(states: StateSet, data: Dict) -> Particle:
    if not isinstance(data, dict) or not isinstance(data.get("k"), int):
        raise InputError(f"invalid particle {data!r}")
    if "state" in data:
        return PrimaryParticle(data["k"], states.index(data["state"]))
    if "upper" in data and "lower" in data:
        return SecondaryParticle(data["k"], states.index(data["upper"]), states.index(data["lower"]))
    raise InputError(f"particle {data!r} needs 'state' or 'upper' and 'lower'")

def format_particle(states: StateSet, x: Particle) -> str:
    """11:bbar for a primary, 5*b.a for a secondary with half potential 5"""
    if x.degree == 1:
        return f"{x.potential}:{states.label(x.state)}"
    return f"{x.half_potential}{SECONDARY_MARK}{states.label(x.upper_state)}{STATE_SEPARATOR}{states.label(x.lower_state)}"

def parse_particle(states: StateSet, text: str) -> Particle:
    text = text.strip()
    try:
        if SECONDARY_MARK in text:
            k, _, pair = text.partition(SECONDARY_MARK)
            upper, separator, lower = pair.partition(STATE_SEPARATOR)
            if not separator:
                raise InputError(f"secondary particle '{text}' needs upper{STATE_SEPARATOR}lower states")
            return SecondaryParticle(int(k), states.index(upper), states.index(lower))
        k, separator, label = text.partition(":")
        if not separator:
            raise InputError(f"primary particle '{text}' needs the form k:state")
        return PrimaryParticle(int(k), states.index(label))
    except ValueError as e:
        if isinstance(e, InputError):
            raise
        raise InputError(f"invalid particle '{text}': {e}") from e

def format_partition(p: ColoredPartition) -> str:
    return " ".join(format_particle(p.epsilon.states, x) for x in p.particles)

def parse_partition(e: MinimalEnergy, text: str, side: Optional[Side] = None) -> ColoredPartition:
    """Whitespace or comma separated particles; the side defaults to E when a secondary appears"""
    pieces = [piece for piece in text.replace(",", " ").split() if piece]
    particles = tuple(parse_particle(e.states, piece) for piece in pieces)
    if side is None:
        side = Side.E if any(x.degree == 2 for x in particles) else Side.O
    return ColoredPartition(e, particles, side)

def partition_to_dict(p: ColoredPartition) -> Dict:
    return {"flavor": p.side.value, "particles": [particle_to_dict(p.epsilon.states, x) for x in p.particles]}

def partition_from_dict(e: MinimalEnergy, data: Dict) -> ColoredPartition:
    if not isinstance(data, dict) or "particles" not in data:
        raise InputError("partition JSON must contain 'particles'")
    side = Side.parse(data.get("flavor", "O"))
    particles: List[Particle] = [particle_from_dict(e.states, item) for item in data["particles"]]
    return ColoredPartition(e, tuple(particles), side)

def partition_from_file(e: MinimalEnergy, file_path: str) -> ColoredPartition:
    return partition_from_dict(e, load_json(file_path))

def parse_n_range(text: str) -> Sequence[int]:
    """'lo..hi' inclusive, or a single integer"""
    lo, separator, hi = str(text).partition("..")
    try:
        if not separator:
            return [int(lo)]
        low, high = int(lo), int(hi)
    except ValueError:
        raise InputError(f"invalid range '{text}', expected lo..hi") from None
    if low > high:
        raise InputError(f"empty range '{text}'")
    return list(range(low, high + 1))
