"""
Input validation for the workbench.

This module provides validators for size caps, element lists, claim
selections and output paths so that every entry point rejects bad input
before any enumeration starts.
"""

import re
from pathlib import Path
from typing import Iterable, List, Optional, Sequence


class ValidationError(Exception):
    """Raised when validation fails."""
    pass


class CapExceededError(ValidationError):
    """Raised when an input is larger than the configured enumeration cap."""

    def __init__(self, kind: str, size: int, cap: int):
        self.kind = kind
        self.size = size
        self.cap = cap
        super().__init__(
            f"{kind} size {size} exceeds cap {cap}; raise the cap in the config "
            f"file or on the command line to go further"
        )


class CapValidator:
    """Validates enumeration caps and checks inputs against them."""

    @staticmethod
    def check(kind: str, size: int, cap: int) -> None:
        """
        Refuse an input whose size is above its cap.

        Args:
            kind: What is being capped ("ring", "poset", "ideal lattice", ...)
            size: Size of the input
            cap: Configured cap

        Raises:
            CapExceededError: If size > cap
        """
        if size > cap:
            raise CapExceededError(kind, size, cap)

    @staticmethod
    def validate_cap(name: str, value: int, minimum: int = 1, maximum: int = 4096) -> int:
        """
        Validate a cap value read from config or the command line.

        Args:
            name: Setting name, used in the error message
            value: Cap value
            minimum: Smallest accepted value
            maximum: Largest accepted value

        Returns:
            int: Validated cap

        Raises:
            ValidationError: If value is not an integer in range
        """
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValidationError(f"{name} must be an integer, got {value!r}")

        if value < minimum or value > maximum:
            raise ValidationError(
                f"{name} must be between {minimum} and {maximum}, got {value}"
            )

        return value


class ElementValidator:
    """Validates element lists given by the user."""

    @staticmethod
    def validate_elements(elements: Iterable[int], size: int) -> List[int]:
        """
        Validate a list of element indices for a ring of the given size.

        Duplicates are dropped and the result is sorted.

        Args:
            elements: Element indices
            size: Number of elements in the ring

        Returns:
            List[int]: Sorted distinct indices

        Raises:
            ValidationError: If an index is out of range
        """
        seen = set()
        for element in elements:
            if isinstance(element, bool) or not isinstance(element, int):
                raise ValidationError(f"Element {element!r} is not an integer")
            if element < 0 or element >= size:
                raise ValidationError(
                    f"Element {element} out of range 0..{size - 1}"
                )
            seen.add(element)

        return sorted(seen)


class ClaimValidator:
    """Validates claim selections."""

    CLAIM_ID_REGEX = re.compile(r'^C\d{1,2}$')

    @staticmethod
    def parse_claim_list(selection: str, known: Sequence[str]) -> List[str]:
        """
        Parse a comma separated claim list.

        Args:
            selection: "all" or a list such as "C1,C6,C19"
            known: Claim ids in catalog order

        Returns:
            List[str]: Selected ids in catalog order

        Raises:
            ValidationError: If the selection is empty or names an unknown claim
        """
        if not selection or not selection.strip():
            raise ValidationError("Claim selection cannot be empty")

        if selection.strip().lower() == "all":
            return list(known)

        requested = set()
        for token in selection.split(","):
            token = token.strip().upper()
            if not token:
                continue
            if not ClaimValidator.CLAIM_ID_REGEX.match(token):
                raise ValidationError(f"Invalid claim id: {token!r}")
            if token not in known:
                raise ValidationError(
                    f"Unknown claim id: {token}. Known ids: {', '.join(known)}"
                )
            requested.add(token)

        if not requested:
            raise ValidationError("Claim selection cannot be empty")

        return [claim_id for claim_id in known if claim_id in requested]


class PathValidator:
    """Validates file paths for reading and writing."""

    @staticmethod
    def validate_input_file(path: str) -> Path:
        """
        Validate a path that must exist and be a regular file.

        Args:
            path: File path

        Returns:
            Path: Absolute path

        Raises:
            ValidationError: If the path is empty, missing or not a file
        """
        if not path:
            raise ValidationError("Input file path cannot be empty")

        path_obj = Path(path).expanduser().resolve()
        if not path_obj.exists():
            raise ValidationError(f"Input file not found: {path}")
        if not path_obj.is_file():
            raise ValidationError(f"Input path is not a file: {path}")

        return path_obj

    @staticmethod
    def validate_output_file(path: str, base_dir: Optional[str] = None) -> Path:
        """
        Validate a report output path.

        Args:
            path: File path to write
            base_dir: Optional base directory to restrict to

        Returns:
            Path: Validated absolute path

        Raises:
            ValidationError: If path is invalid or unsafe
        """
        if not path:
            raise ValidationError("Output file path cannot be empty")

        path_obj = Path(path).expanduser()

        if ".." in path_obj.parts:
            raise ValidationError("Path cannot contain '..' (directory traversal)")

        abs_path = path_obj.resolve()

        if abs_path.exists() and abs_path.is_dir():
            raise ValidationError(f"Output path is a directory: {path}")

        if base_dir:
            base_abs = Path(base_dir).expanduser().resolve()
            try:
                abs_path.relative_to(base_abs)
            except ValueError:
                raise ValidationError(
                    f"Path {path} is outside allowed directory {base_dir}"
                )

        return abs_path
