import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, Sequence

import yaml

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def load_json_file(file_path: str) -> Dict[str, Any]:
    """Load JSON file safely"""
    try:
        with open(file_path, "r", encoding="utf-8") as f:
            return json.load(f)
    except Exception as e:
        raise IOError(f"Error loading JSON file {file_path}: {e}") from e


def save_json_file(data: Dict[str, Any], file_path: str) -> bool:
    """Save JSON with sorted keys and LF line endings"""
    try:
        Path(file_path).parent.mkdir(parents=True, exist_ok=True)
        with open(file_path, "w", encoding="utf-8", newline="\n") as f:
            json.dump(data, f, indent=2, sort_keys=True, ensure_ascii=False, default=_json_default)
            f.write("\n")
        return True
    except Exception as e:
        logger.error("Error saving JSON file %s: %s", file_path, e)
        return False


def _json_default(value: Any) -> Any:
    # numpy scalars and arrays
    if hasattr(value, "tolist"):
        return value.tolist()
    if hasattr(value, "value"):
        return value.value
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def load_yaml_file(file_path: str) -> Any:
    """Load a YAML document; read failures become IOError, syntax errors stay yaml.YAMLError"""
    try:
        with open(file_path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise IOError(f"Error loading YAML file {file_path}: {e}") from e
    return yaml.safe_load(text)


def ensure_directory(path: str) -> Path:
    """Ensure directory exists"""
    path_obj = Path(path)
    path_obj.mkdir(parents=True, exist_ok=True)
    return path_obj


def format_cell(value: Any) -> str:
    """17 significant digits for floats, independent of locale"""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float) or hasattr(value, "dtype"):
        return FLOAT_FORMAT % float(value)
    return str(value)


def write_csv(file_path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Write a comma separated table with LF line endings; raises on I/O failure"""
    path = Path(file_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(format_cell(v) for v in row) + "\n")
    return path


def read_csv(file_path: str):
    """Header and float rows of a table written by ``write_csv``"""
    with open(file_path, "r", encoding="utf-8") as f:
        lines = f.read().splitlines()
    header = lines[0].split(",")
    return header, [[float(v) for v in line.split(",")] for line in lines[1:] if line]
