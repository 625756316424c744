import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Optional, Union

DEFAULT_SEED = 13
SEED_ENV_VAR = "AXPLR_SEED"

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class AxplrError(Exception):
    """Base class for every error raised by this project."""


class DataError(AxplrError, ValueError):
    """Malformed or inconsistent input data."""


class CorpusFormatError(DataError):
    def __init__(self, message: str, path: Optional[Union[str, Path]] = None, line_number: Optional[int] = None):
        self.path = str(path) if path is not None else None
        self.line_number = line_number
        location = ""
        if self.path is not None:
            location = self.path
            if line_number is not None:
                location += f":{line_number}"
            location += ": "
        super().__init__(f"{location}{message}")


class ModelFormatError(DataError):
    """Malformed pattern, model or framework file."""


class ConfigError(AxplrError, ValueError):
    """Invalid hyperparameters or settings."""


class FrameworkCycleError(AxplrError):
    """Raised when strengths are requested for a framework that is not a DAG."""


def setup_logging(verbosity: int = 0) -> None:
    """Configure root logging on stderr; verbosity > 0 is DEBUG, < 0 is WARNING."""
    if verbosity > 0:
        level = logging.DEBUG
    elif verbosity < 0:
        level = logging.WARNING
    else:
        level = logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def default_seed() -> int:
    value = os.environ.get(SEED_ENV_VAR)
    if value is None or value.strip() == "":
        return DEFAULT_SEED
    try:
        return int(value)
    except ValueError as e:
        raise ConfigError(f"{SEED_ENV_VAR} must be an integer, got {value!r}") from e


def format_real(value: Any) -> str:
    """Full-precision decimal string for a real number (shortest round-trip repr)."""
    return repr(float(value))


def parse_real(text: Any, what: str = "value") -> float:
    try:
        value = float(text)
    except (TypeError, ValueError) as e:
        raise ModelFormatError(f"{what} is not a real number: {text!r}") from e
    if value != value or value in (float("inf"), float("-inf")):
        raise ModelFormatError(f"{what} must be finite, got {text!r}")
    return value


def read_json(path: Union[str, Path]) -> Any:
    """Load a JSON document, turning I/O and syntax problems into ModelFormatError."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise ModelFormatError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}") from e


def dumps_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_text(path: Union[str, Path], text: str) -> None:
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def write_json(path: Union[str, Path], payload: Any) -> None:
    write_text(path, dumps_json(payload))
