"""Small helpers shared across the workbench: bit sets, digests and report files."""

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Optional

from .validation import PathValidator, ValidationError
from .audit import get_audit_logger


@dataclass(frozen=True)
class Failure:
    """
    Failure returned as a value by operations whose outcome is partial.

    Attributes:
        reason: Short human-readable reason
        witness: Re-checkable data showing why the operation failed
    """

    reason: str
    witness: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return False

    def to_dict(self) -> Dict[str, Any]:
        return {"reason": self.reason, "witness": self.witness}


def mask_from(elements: Iterable[int]) -> int:
    """
    Pack element indices into an integer bit set.

    Example:
        >>> mask_from([0, 2])
        5
    """
    mask = 0
    for element in elements:
        mask |= 1 << element
    return mask


def bits(mask: int) -> List[int]:
    """
    Unpack an integer bit set into ascending element indices.

    Example:
        >>> bits(5)
        [0, 2]
    """
    out = []
    index = 0
    while mask:
        if mask & 1:
            out.append(index)
        mask >>= 1
        index += 1
    return out


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_subset(inner: int, outer: int) -> bool:
    return inner & ~outer == 0


def sha_digest(text: str) -> str:
    """Hex sha256 of a canonical text serialisation."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def format_duration(seconds: float) -> str:
    """
    Format a duration for console output.

    Example:
        >>> format_duration(75.5)
        '1m 15.5s'
    """
    if seconds < 60:
        return f"{seconds:.1f}s"
    minutes, rest = divmod(seconds, 60)
    if minutes < 60:
        return f"{int(minutes)}m {rest:.1f}s"
    hours, minutes = divmod(minutes, 60)
    return f"{int(hours)}h {int(minutes)}m"


def get_env_or_default(key: str, default: Optional[str] = None) -> Optional[str]:
    """
    Get environment variable or default value.

    Args:
        key: Environment variable name
        default: Default value if not set

    Returns:
        Environment variable value or default
    """
    return os.environ.get(key, default)


def ensure_directory(path: Path) -> None:
    """
    Ensure directory exists, create if it doesn't.

    Args:
        path: Directory path

    Raises:
        OSError: If directory cannot be created
    """
    path = Path(path)
    if not path.exists():
        path.mkdir(parents=True, exist_ok=True)


def write_jsonl(path: Path, records: Iterable[Dict[str, Any]]) -> Path:
    """
    Write one JSON object per line.

    The file is written to a sibling temporary file first and then moved
    into place, so a crash never leaves a half-written report behind.

    Args:
        path: Output file path
        records: JSON-serialisable dicts

    Returns:
        Path to the written file

    Raises:
        OSError: If the path is invalid or the file cannot be written
    """
    audit_logger = get_audit_logger()

    try:
        target = PathValidator.validate_output_file(str(path))
    except ValidationError as e:
        error_msg = f"Invalid output file: {e}"
        if audit_logger:
            audit_logger.log_validation_error('output_file', str(path), error_msg)
        raise OSError(error_msg)

    ensure_directory(target.parent)
    tmp = target.with_name(target.name + ".tmp")

    try:
        with open(tmp, "w", encoding="utf-8") as handle:
            for record in records:
                handle.write(json.dumps(record, sort_keys=True, default=str))
                handle.write("\n")
        os.replace(tmp, target)
    except OSError as e:
        error_msg = f"Failed to write file {target}: {e}"
        if audit_logger:
            audit_logger.log_file_error('write', str(target), error_msg)
        raise OSError(error_msg)

    return target


def read_jsonl(path: Path) -> List[Dict[str, Any]]:
    """Read a JSON-lines report back into a list of dicts."""
    records = []
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line:
                records.append(json.loads(line))
    return records
