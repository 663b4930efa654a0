import os
import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)

class Config:
    """Global paths for the energy-transfer toolkit"""

    def __init__(self):
        root = os.path.dirname(os.path.dirname(__file__))
        self.templates_path = os.path.join(root, 'templates')
        self.refs_path = os.path.join(root, 'refs')

    def ref(self, name: str) -> str:
        """Path of a bundled reference fixture"""
        return os.path.join(self.refs_path, name)

@dataclass(frozen=True)
class RunConfig:
    """Everything a CLI run depends on; echoed into JSON output so runs can be replayed"""
    command: str
    output_format: str = "tsv"
    seed: Optional[int] = None
    energy_source: Optional[str] = None
    flags: Dict[str, Any] = field(default_factory=dict)
    settings: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

# Global config instance
config = Config()
