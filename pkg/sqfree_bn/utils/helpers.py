import re
from pathlib import Path
from typing import Any, Iterable

import rapidjson

from sqfree_bn.settings.const import TEXT_MAX_VALUE
from sqfree_bn.utils.exceptions import InputFormatError

face_key_regex = re.compile(r"^\[\s*((?:\d+\s*,\s*)*\d+)?\s*\]$")
map_key_regex = re.compile(r"^(\[[^\]]*\])\s*->\s*(\[[^\]]*\])$")


def truncate(string: str, max_length: int = TEXT_MAX_VALUE) -> str:
    """Truncates a string to a max length"""
    return f"{string[: max_length - 4]} ..." if len(string) > max_length else string


def face_key(face: Iterable[int]) -> str:
    """Returns the JSON key of a face, e.g. "[1,2]" """
    return "[" + ",".join(str(v) for v in sorted(face)) + "]"


def parse_face_key(key: str) -> tuple[int, ...]:
    match = face_key_regex.match(key.strip())
    if not match:
        raise InputFormatError("face", f"expected a face like [1,2], got {key!r}")
    body = match.group(1)
    if not body:
        return ()
    face = tuple(int(v) for v in body.split(","))
    if len(set(face)) != len(face) or list(face) != sorted(face):
        raise InputFormatError("face", f"face must be a sorted list of distinct vertices: {key!r}")
    return face


def map_key(source: Iterable[int], target: Iterable[int]) -> str:
    return f"{face_key(source)}->{face_key(target)}"


def parse_map_key(key: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    match = map_key_regex.match(key.strip())
    if not match:
        raise InputFormatError("maps", f"expected a key like [1]->[1,2], got {key!r}")
    return parse_face_key(match.group(1)), parse_face_key(match.group(2))


def dump_json(data: Any) -> str:
    return rapidjson.dumps(data, indent=2, ensure_ascii=False)


def load_json(source: str | Path) -> Any:
    """Loads JSON from a path"""
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputFormatError("path", f"cannot read {path}: {e}")
    try:
        return rapidjson.loads(text)
    except ValueError as e:
        raise InputFormatError("json", f"{path}: {e}")


def render_text(data: Any, indent: int = 0) -> str:
    """Human rendering of a JSON payload"""
    pad = "  " * indent
    if not isinstance(data, dict):
        return f"{pad}{truncate(rapidjson.dumps(data))}"
    lines = list()
    for key, value in data.items():
        if isinstance(value, dict) and value and len(rapidjson.dumps(value)) > TEXT_MAX_VALUE:
            lines.append(f"{pad}{key}:")
            lines.append(render_text(value, indent + 1))
        elif isinstance(value, str):
            lines.append(f"{pad}{key}: {truncate(value)}")
        else:
            lines.append(f"{pad}{key}: {truncate(rapidjson.dumps(value))}")
    return "\n".join(lines)
