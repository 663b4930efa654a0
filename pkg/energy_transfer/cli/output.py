"""
Machine-readable emitters for the command line: TSV rows, JSON documents and rendered reports
"""
import json
import logging
import os
import sys
from typing import Any, Dict, Iterable, Optional, Sequence, TextIO

import jinja2

from ..config import config

logger = logging.getLogger(__name__)

_GREEN = "\033[32m"
_RED = "\033[31m"
_RESET = "\033[0m"


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "equal" if value else "differ"
    if isinstance(value, (list, tuple)):
        return " ".join(_cell(v) for v in value)
    return str(value)


class Output:
    """Writes results to one stream in the selected format; logs never go here"""

    def __init__(self, stream: Optional[TextIO] = None, fmt: str = "tsv", color: bool = True):
        self.stream = stream if stream is not None else sys.stdout
        self.fmt = fmt
        # colors only make sense on a terminal
        self.color = color and hasattr(self.stream, "isatty") and self.stream.isatty()

    @property
    def is_json(self) -> bool:
        return self.fmt == "json"

    def line(self, text: str = "") -> None:
        self.stream.write(text + "\n")

    def row(self, values: Iterable[Any]) -> None:
        self.line("\t".join(_cell(v) for v in values))

    def rows(self, rows: Iterable[Sequence[Any]]) -> None:
        for values in rows:
            self.row(values)

    def json(self, payload: Dict[str, Any]) -> None:
        self.line(json.dumps(payload, ensure_ascii=False, sort_keys=True))

    def json_line(self, payload: Dict[str, Any]) -> None:
        self.line(json.dumps(payload, ensure_ascii=False, sort_keys=True, separators=(",", ":")))

    def status(self, passed: bool) -> None:
        mark = "PASS" if passed else "FAIL"
        if self.color:
            mark = f"{_GREEN if passed else _RED}{mark}{_RESET}"
        self.line(mark)


_template_env = jinja2.Environment(
    loader=jinja2.FileSystemLoader(config.templates_path),
    autoescape=True
)


def render_report(template_name: str, report_path: str, **context: Any) -> None:
    """Render a jinja2 template from the templates folder into report_path"""
    try:
        template = _template_env.get_template(template_name)
        rendered = template.render(**context)
    except jinja2.TemplateError as e:
        logger.error(f"Error rendering {template_name}: {e}")
        raise
    directory = os.path.dirname(os.path.abspath(report_path))
    os.makedirs(directory, exist_ok=True)
    with open(report_path, 'w', encoding='utf-8') as f:
        f.write(rendered)
    logger.info(f"Report saved to: {report_path}")
