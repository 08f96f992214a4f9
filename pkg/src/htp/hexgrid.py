"""Hexagon/corner incidence graphs for the four tortoise-puzzle shape families.

Hexagons are pointy-top cells addressed by axial coordinates ``(q, r)``.
Every lattice corner is either the top (``N``) or the bottom (``S``) corner
of exactly one hexagon, so a corner is identified by that hexagon's center
plus its class; no floating point is involved in deduplication.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple


class HexCoord(NamedTuple):
    q: int
    r: int

    def distance(self, other: "HexCoord") -> int:
        dq = self.q - other.q
        dr = self.r - other.r
        return (abs(dq) + abs(dr) + abs(dq + dr)) // 2


NEIGHBOR_OFFSETS: Tuple[Tuple[int, int], ...] = (
    (1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1),
)


class VertexKey(NamedTuple):
    """A hexagon corner: the center it hangs off plus its class ("N" or "S")."""

    q: int
    r: int
    cls: str

    def sort_key(self) -> Tuple[int, int, int]:
        return (self.r, self.q, 0 if self.cls == "N" else 1)

    def owners(self) -> Tuple[HexCoord, HexCoord, HexCoord]:
        """The three lattice hexagons that meet at this corner."""
        q, r = self.q, self.r
        if self.cls == "N":
            return HexCoord(q, r), HexCoord(q, r - 1), HexCoord(q + 1, r - 1)
        return HexCoord(q, r), HexCoord(q - 1, r + 1), HexCoord(q, r + 1)


class ShapeFamily(str, enum.Enum):
    DIAMOND = "diamond"
    TRIANGULAR = "triangular"
    HEXAGONAL = "hexagonal"
    STAR = "star"

    @classmethod
    def parse(cls, name: "str | ShapeFamily") -> "ShapeFamily":
        if isinstance(name, ShapeFamily):
            return name
        try:
            return cls(name.lower())
        except ValueError:
            choices = ", ".join(f.value for f in cls)
            raise UnsupportedShape(f"unknown shape family {name!r} (expected one of {choices})") from None


class UnsupportedShape(ValueError):
    """Raised for a (family, order) pair that has no construction."""


STAR_TIPS: Tuple[HexCoord, ...] = (
    HexCoord(1, 1), HexCoord(-1, 2), HexCoord(-2, 1),
    HexCoord(-1, -1), HexCoord(1, -2), HexCoord(2, -1),
)


def hexagon_corners(center: Tuple[int, int]) -> List[VertexKey]:
    q, r = center
    return [
        VertexKey(q, r, "N"),
        VertexKey(q, r, "S"),
        VertexKey(q + 1, r - 1, "S"),
        VertexKey(q, r - 1, "S"),
        VertexKey(q, r + 1, "N"),
        VertexKey(q - 1, r + 1, "N"),
    ]


def check_supported(family: "str | ShapeFamily", order: int) -> ShapeFamily:
    family = ShapeFamily.parse(family)
    if isinstance(order, bool) or not isinstance(order, int):
        raise UnsupportedShape(f"order must be an integer, got {order!r}")
    if family is ShapeFamily.STAR:
        if order != 2:
            raise UnsupportedShape(f"star shape is only defined for order 2, got {order}")
    elif order < 1:
        raise UnsupportedShape(f"{family.value} shape needs order >= 1, got {order}")
    return family


def expected_vertex_count(family: "str | ShapeFamily", order: int) -> int:
    family = check_supported(family, order)
    n = order
    if family is ShapeFamily.DIAMOND:
        return 2 * n * n + 4 * n
    if family is ShapeFamily.TRIANGULAR:
        return n * n + 4 * n + 1
    if family is ShapeFamily.HEXAGONAL:
        return 6 * n * n
    return 42


def expected_hexagon_count(family: "str | ShapeFamily", order: int) -> int:
    family = check_supported(family, order)
    n = order
    if family is ShapeFamily.DIAMOND:
        return n * n
    if family is ShapeFamily.TRIANGULAR:
        return n * (n + 1) // 2
    if family is ShapeFamily.HEXAGONAL:
        return 3 * n * (n - 1) + 1
    return 13


def hexagon_centers(family: ShapeFamily, order: int) -> List[HexCoord]:
    n = order
    if family is ShapeFamily.DIAMOND:
        cells = [HexCoord(q, r) for q in range(n) for r in range(n)]
    elif family is ShapeFamily.TRIANGULAR:
        cells = [HexCoord(q, r) for q in range(n) for r in range(n) if q + r <= n - 1]
    elif family is ShapeFamily.HEXAGONAL:
        span = range(-(n - 1), n)
        cells = [HexCoord(q, r) for q in span for r in span if abs(q + r) <= n - 1]
    else:
        cells = [HexCoord(0, 0)]
        cells += [HexCoord(dq, dr) for dq, dr in NEIGHBOR_OFFSETS]
        cells += list(STAR_TIPS)
    return sorted(cells, key=lambda c: (c.r, c.q))


@dataclass(frozen=True)
class Shape:
    """Immutable incidence structure of a tortoise figure.

    ``hexagons[h]`` lists the six vertex indices of hexagon ``h`` in
    :func:`hexagon_corners` order; ``membership[v]`` counts the hexagons
    holding vertex ``v``.
    """

    family: ShapeFamily
    order: int
    centers: Tuple[HexCoord, ...]
    vertices: Tuple[VertexKey, ...]
    hexagons: Tuple[Tuple[int, ...], ...]
    membership: Tuple[int, ...]
    vertex_hexagons: Tuple[Tuple[int, ...], ...] = field(repr=False)
    _center_index: Dict[HexCoord, int] = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def hexagon_index(self, center: Tuple[int, int]) -> int:
        try:
            return self._center_index[HexCoord(*center)]
        except KeyError:
            raise KeyError(f"hexagon {tuple(center)} is not part of {self.label}") from None

    def vertex_set(self, centers: Iterable[Tuple[int, int]]) -> set:
        out = set()
        for c in centers:
            out.update(self.hexagons[self.hexagon_index(c)])
        return out

    def membership_within(self, hexagon_ids: Iterable[int]) -> List[int]:
        counts = [0] * self.n
        for h in hexagon_ids:
            for v in self.hexagons[h]:
                counts[v] += 1
        return counts

    @property
    def label(self) -> str:
        return f"{self.family.value}-{self.order}"

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "order": self.order,
            "vertices": [{"q": v.q, "r": v.r, "cls": v.cls} for v in self.vertices],
            "hexagons": [list(h) for h in self.hexagons],
        }


def build_shape(family: "str | ShapeFamily", order: int) -> Shape:
    family = check_supported(family, order)
    centers = hexagon_centers(family, order)
    keys = {k for c in centers for k in hexagon_corners(c)}
    vertices = tuple(sorted(keys, key=VertexKey.sort_key))
    index = {v: i for i, v in enumerate(vertices)}
    hexagons = tuple(tuple(index[k] for k in hexagon_corners(c)) for c in centers)
    incidence: List[List[int]] = [[] for _ in vertices]
    for h, corners in enumerate(hexagons):
        for v in corners:
            incidence[v].append(h)
    return Shape(
        family=family,
        order=order,
        centers=tuple(centers),
        vertices=vertices,
        hexagons=hexagons,
        membership=tuple(len(hs) for hs in incidence),
        vertex_hexagons=tuple(tuple(hs) for hs in incidence),
        _center_index={c: i for i, c in enumerate(centers)},
    )


@dataclass(frozen=True)
class Assignment:
    family: ShapeFamily
    order: int
    values: Tuple[int, ...]

    @classmethod
    def for_shape(cls, shape: Shape, values: Sequence[int]) -> "Assignment":
        return cls(shape.family, shape.order, tuple(int(v) for v in values))


class InvalidSolution(ValueError):
    """An assignment failed verification; ``violations`` lists every problem found."""

    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def hexagon_sums(shape: Shape, values: Sequence[int]) -> List[int]:
    return [sum(values[v] for v in hexagon) for hexagon in shape.hexagons]


def permutation_violations(values: Sequence[int]) -> List[str]:
    n = len(values)
    problems = []
    counts = Counter(values)
    for value in sorted(counts):
        if not 1 <= value <= n:
            problems.append(f"value {value} out of range 1..{n}")
        if counts[value] > 1:
            problems.append(f"duplicate value {value} ({counts[value]} times)")
    return problems


def find_violations(shape: Shape, assignment: Assignment) -> Tuple[Optional[int], List[str]]:
    """Return ``(magic, violations)``; ``magic`` is None unless violations is empty."""
    if (assignment.family, assignment.order) != (shape.family, shape.order):
        return None, [f"assignment is for {assignment.family.value}-{assignment.order}, shape is {shape.label}"]
    values = assignment.values
    if len(values) != shape.n:
        return None, [f"expected {shape.n} values, got {len(values)}"]
    problems = permutation_violations(values)
    sums = hexagon_sums(shape, values)
    # the majority sum is reported as the target so that a single bad hexagon stands out
    target, _ = Counter(sums).most_common(1)[0]
    for h, s in enumerate(sums):
        if s != target:
            c = shape.centers[h]
            problems.append(f"hexagon {h} at ({c.q},{c.r}) sums to {s}, expected {target}")
    if problems:
        return None, problems
    return target, []


def verify_solution(shape: Shape, assignment: Assignment) -> int:
    """Return the magic constant of ``assignment`` or raise :class:`InvalidSolution`."""
    magic, problems = find_violations(shape, assignment)
    if problems:
        raise InvalidSolution(problems)
    return magic


def complement_solution(assignment: Assignment) -> Assignment:
    """Map every value ``v`` to ``n + 1 - v``; an M-solution becomes a (6n+6-M)-solution."""
    problems = permutation_violations(assignment.values)
    if problems:
        raise InvalidSolution(problems)
    n = len(assignment.values)
    return Assignment(assignment.family, assignment.order, tuple(n + 1 - v for v in assignment.values))
