"""
File Utility Functions

Presentation files (.cox text and .json), generator map files and JSON helpers.

The .cox format:

    # comment
    gen s t u
    m s t = 2

Every pair that is not listed has m = infinity.
"""

import json
import logging
import re
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from config.constants import SUPPORTED_PRESENTATION_FORMATS
from src.core.errors import InputError, PresentationSyntaxError
from src.models.coxeter_data import CoxeterMatrix, matrix_from_pairs
from src.models.generator_map import GeneratorMap

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_PAIR_LINE = re.compile(rf"^m\s+({_NAME})\s+({_NAME})\s*=\s*(\S+)$")


def ensure_directory_exists(directory_path: PathLike) -> bool:
    """Ensure directory exists, create if it doesn't"""
    try:
        Path(directory_path).mkdir(parents=True, exist_ok=True)
        return True
    except OSError as e:
        logger.error("Error creating directory %s: %s", directory_path, e)
        return False


def get_file_extension(file_path: PathLike) -> str:
    """Get file extension from path"""
    return Path(file_path).suffix.lower()


def parse_presentation(text: str) -> CoxeterMatrix:
    """Parse the .cox text format"""
    labels: Optional[List[str]] = None
    pairs: Dict[Tuple[str, str], int] = {}

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue

        if line.startswith('gen ') or line == 'gen':
            if labels is not None:
                raise PresentationSyntaxError("duplicate 'gen' line", line_number)
            labels = line.split()[1:]
            if not labels:
                raise PresentationSyntaxError("'gen' line names no generators", line_number)
            bad = [name for name in labels if not re.fullmatch(_NAME, name)]
            if bad:
                raise PresentationSyntaxError(f"invalid generator name {bad[0]!r}", line_number)
            if len(set(labels)) != len(labels):
                raise PresentationSyntaxError("generator names must be distinct", line_number)
            continue

        match = _PAIR_LINE.match(line)
        if match is None:
            raise PresentationSyntaxError(f"expected 'gen ...' or 'm <a> <b> = <k>', got {line!r}", line_number)
        if labels is None:
            raise PresentationSyntaxError("'m' line before the 'gen' line", line_number)

        a, b, value = match.groups()
        for name in (a, b):
            if name not in labels:
                raise PresentationSyntaxError(f"unknown generator {name!r}", line_number)
        if a == b:
            raise PresentationSyntaxError(f"m({a},{a}) is always 1 and cannot be set", line_number)
        try:
            order = int(value)
        except ValueError:
            raise PresentationSyntaxError(f"label {value!r} is not an integer", line_number) from None
        if order < 2:
            raise PresentationSyntaxError(f"label m({a},{b}) = {order} must be at least 2", line_number)

        key = (a, b) if labels.index(a) < labels.index(b) else (b, a)
        if pairs.get(key, order) != order:
            raise PresentationSyntaxError(f"conflicting labels for m({a},{b})", line_number)
        pairs[key] = order

    if labels is None:
        raise PresentationSyntaxError("missing 'gen' line")
    return matrix_from_pairs(labels, pairs)


def format_presentation(matrix: CoxeterMatrix) -> str:
    """Render in the .cox format; only finite labels are written"""
    lines = ["gen " + " ".join(matrix.labels)]
    for i, j, label in matrix.finite_pairs():
        lines.append(f"m {matrix.labels[i]} {matrix.labels[j]} = {label}")
    return "\n".join(lines) + "\n"


def _read_text(file_path: PathLike) -> str:
    try:
        return Path(file_path).read_text(encoding='utf-8')
    except OSError as e:
        raise InputError(f"cannot read {file_path}: {e}") from e


def read_presentation(file_path: PathLike) -> CoxeterMatrix:
    """Read a presentation, choosing the format by suffix"""
    extension = get_file_extension(file_path)
    if extension == '.cox':
        matrix = parse_presentation(_read_text(file_path))
    elif extension == '.json':
        try:
            data = json.loads(_read_text(file_path))
        except ValueError as e:
            raise PresentationSyntaxError(f"{file_path} is not valid JSON: {e}") from e
        matrix = CoxeterMatrix.from_dict(data)
    else:
        raise InputError(
            f"unsupported presentation format {extension!r}; expected one of {', '.join(SUPPORTED_PRESENTATION_FORMATS)}"
        )
    logger.debug("read %s from %s", matrix, file_path)
    return matrix


def write_presentation(matrix: CoxeterMatrix, file_path: PathLike) -> bool:
    """Write a presentation, choosing the format by suffix"""
    if get_file_extension(file_path) == '.json':
        return save_json_data(matrix.to_dict(), file_path)
    try:
        ensure_directory_exists(Path(file_path).parent)
        Path(file_path).write_text(format_presentation(matrix), encoding='utf-8')
        return True
    except OSError as e:
        logger.error("Error writing presentation to %s: %s", file_path, e)
        return False


def read_generator_map(file_path: PathLike) -> GeneratorMap:
    """
    Read a generator map file. "source" and "target" are inline JSON
    presentations or paths to presentation files, relative to the map file.
    """
    try:
        data = json.loads(_read_text(file_path))
    except ValueError as e:
        raise PresentationSyntaxError(f"{file_path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise PresentationSyntaxError(f"{file_path} must hold a JSON object")

    base = Path(file_path).parent
    for key in ('source', 'target'):
        if isinstance(data.get(key), str):
            data[key] = read_presentation(base / data[key]).to_dict()
    return GeneratorMap.from_dict(data)


def write_generator_map(phi: GeneratorMap, file_path: PathLike) -> bool:
    return save_json_data(phi.to_dict(), file_path)


def dumps_json(data: Any) -> str:
    """Deterministic JSON text: sorted keys, fixed indentation"""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)


def save_json_data(data: Dict[str, Any], file_path: PathLike) -> bool:
    """Save data to JSON file"""
    try:
        ensure_directory_exists(Path(file_path).parent)
        with open(file_path, 'w', encoding='utf-8') as f:
            f.write(dumps_json(data) + "\n")
        return True
    except (OSError, TypeError) as e:
        logger.error("Error saving JSON data to %s: %s", file_path, e)
        return False

