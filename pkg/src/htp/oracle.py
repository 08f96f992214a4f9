"""Brute-force reference enumeration for small shapes.

Vertices are filled hexagon by hexagon in canonical order: each hexagon
contributes its not-yet-labelled vertices as one block. A block is labelled
with every ordered choice of unused values, and a choice survives only if the
now complete hexagon sums to ``M``. Nothing else is pruned.
"""

from itertools import combinations, permutations
from typing import Iterator, List, Optional, Tuple

from .hexgrid import Assignment, Shape

MAX_ORACLE_VERTICES = 16


class OracleTooLarge(ValueError):
    pass


def _blocks(shape: Shape) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Per hexagon: (vertices labelled earlier, vertices first labelled here)."""
    seen = set()
    blocks = []
    for hexagon in shape.hexagons:
        fresh = tuple(v for v in sorted(hexagon) if v not in seen)
        old = tuple(v for v in hexagon if v in seen)
        seen.update(fresh)
        blocks.append((old, fresh))
    return blocks


def _enumerate(shape: Shape, magic: int) -> Iterator[Tuple[int, ...]]:
    if shape.n > MAX_ORACLE_VERTICES:
        raise OracleTooLarge(f"{shape.label} has {shape.n} vertices; oracle limit is {MAX_ORACLE_VERTICES}")
    blocks = _blocks(shape)
    values = [0] * shape.n

    def walk(i: int, free: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if i == len(blocks):
            yield tuple(values)
            return
        old, fresh = blocks[i]
        need = magic - sum(values[v] for v in old)
        for chosen in combinations(free, len(fresh)):
            if sum(chosen) != need:
                continue
            rest = tuple(x for x in free if x not in chosen)
            for labels in permutations(chosen):
                for v, x in zip(fresh, labels):
                    values[v] = x
                yield from walk(i + 1, rest)
        for v in fresh:
            values[v] = 0

    yield from walk(0, tuple(range(1, shape.n + 1)))


def oracle_count(shape: Shape, magic: int) -> int:
    return sum(1 for _ in _enumerate(shape, magic))


def oracle_find(shape: Shape, magic: int) -> Optional[Assignment]:
    for values in _enumerate(shape, magic):
        return Assignment.for_shape(shape, values)
    return None
