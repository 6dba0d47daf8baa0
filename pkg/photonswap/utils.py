"""
Utility functions
"""

import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence


def setup_logging(verbose: bool = False):
    """Setup logging configuration"""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )


def format_float(value: float, precision: int = 17) -> str:
    """Format a float with a fixed number of significant digits"""
    return f"{float(value):.{precision}g}"


def complex_pair(value: complex) -> List[float]:
    """Split a complex number into a JSON friendly [re, im] pair"""
    value = complex(value)
    return [value.real, value.imag]


def parse_complex(text: str) -> complex:
    """Parse a complex literal such as '1', '0.5j' or '0.3+0.4j'"""
    try:
        return complex(text.replace(" ", ""))
    except ValueError as e:
        raise ValueError(f"Not a complex number: {text!r}") from e


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]], precision: int = 17) -> str:
    """Render rows as CSV text with LF line endings and fixed float formatting"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([
            format_float(v, precision) if isinstance(v, float) else v
            for v in row
        ])
    return buffer.getvalue()


def render_json(payload: Dict[str, Any]) -> str:
    """Render a payload as JSON with stable key order"""
    return json.dumps(payload, indent=2) + "\n"


def write_output(text: str, path: Optional[str] = None):
    """Write text to path, or to stdout when no path is given"""
    if path is None:
        print(text, end="")
        return
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, 'w', encoding='utf-8', newline="\n") as f:
        f.write(text)
