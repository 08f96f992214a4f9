"""Text solution files::

    htp-solution v1
    shape diamond 2
    magic 62
    values 3 12 ...

UTF-8, LF line endings, no trailing whitespace, values in canonical vertex order.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Tuple, Union

from .hexgrid import Assignment, ShapeFamily, check_supported, expected_vertex_count

HEADER = "htp-solution v1"


class SolutionFormatError(ValueError):
    pass


@dataclass(frozen=True)
class SolutionFile:
    family: ShapeFamily
    order: int
    magic: int
    values: Tuple[int, ...]

    @classmethod
    def from_assignment(cls, assignment: Assignment, magic: int) -> "SolutionFile":
        return cls(assignment.family, assignment.order, magic, assignment.values)

    @property
    def assignment(self) -> Assignment:
        return Assignment(self.family, self.order, self.values)


def serialize(sol: SolutionFile) -> str:
    return (
        f"{HEADER}\n"
        f"shape {sol.family.value} {sol.order}\n"
        f"magic {sol.magic}\n"
        f"values {' '.join(str(v) for v in sol.values)}\n"
    )


def _int(token: str, what: str) -> int:
    if not token or not (token.isdigit() or (token[0] == "-" and token[1:].isdigit())):
        raise SolutionFormatError(f"{what}: expected a decimal integer, got {token!r}")
    return int(token)


def parse(text: str) -> SolutionFile:
    """Parse a solution file.

    Raises :class:`SolutionFormatError` for malformed text and
    :class:`~htp.hexgrid.UnsupportedShape` for an unknown family or order.
    """
    if "\r" in text:
        raise SolutionFormatError("CR characters are not allowed; use LF line endings")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) != 4:
        raise SolutionFormatError(f"expected 4 lines, got {len(lines)}")
    for i, line in enumerate(lines, 1):
        if line != line.rstrip() or line != line.lstrip():
            raise SolutionFormatError(f"line {i}: leading or trailing whitespace")
    if lines[0] != HEADER:
        raise SolutionFormatError(f"line 1: expected {HEADER!r}, got {lines[0]!r}")

    shape = lines[1].split(" ")
    if len(shape) != 3 or shape[0] != "shape":
        raise SolutionFormatError(f"line 2: expected 'shape <family> <order>', got {lines[1]!r}")
    if shape[1] != shape[1].lower():
        raise SolutionFormatError(f"line 2: family must be lowercase, got {shape[1]!r}")
    order = _int(shape[2], "line 2 order")
    family = check_supported(shape[1], order)

    magic = lines[2].split(" ")
    if len(magic) != 2 or magic[0] != "magic":
        raise SolutionFormatError(f"line 3: expected 'magic <M>', got {lines[2]!r}")
    m = _int(magic[1], "line 3 magic")

    tokens = lines[3].split(" ")
    if tokens[0] != "values" or len(tokens) < 2:
        raise SolutionFormatError("line 4: expected 'values <v1> ... <vn>'")
    values = tuple(_int(t, f"line 4 value {i}") for i, t in enumerate(tokens[1:], 1))
    n = expected_vertex_count(family, order)
    if len(values) != n:
        raise SolutionFormatError(f"line 4: {family.value}-{order} needs {n} values, got {len(values)}")
    return SolutionFile(family, order, m, values)


def write_solution(path: Union[str, Path], sol: SolutionFile) -> None:
    Path(path).write_bytes(serialize(sol).encode("utf-8"))


def read_solution(path: Union[str, Path]) -> SolutionFile:
    try:
        text = Path(path).read_bytes().decode("utf-8")
    except UnicodeDecodeError as exc:
        raise SolutionFormatError(f"{path}: not valid UTF-8 ({exc})") from None
    return parse(text)
