"""Propagate-and-backtrack search for magic labelings of a shape.

The search contract is fixed so runs are reproducible:

* branch on the unassigned vertex whose emptiest hexagon has the fewest
  unassigned vertices, ties broken by higher membership, then lower index;
* a hexagon with one unassigned vertex forces it to ``M - partial_sum``;
* every open hexagon must be able to reach ``M`` with the smallest and the
  largest unused values.
"""

from __future__ import annotations

import enum
import time
from itertools import combinations, islice
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx
import numpy as np

from . import _kernel
from .hexgrid import Assignment, Shape, complement_solution, verify_solution


class Mode(str, enum.Enum):
    FIRST_SOLUTION = "first"
    COUNT_ALL = "count"


class ValueOrder(str, enum.Enum):
    ASCENDING = "ascending"
    DESCENDING = "descending"
    SEEDED_SHUFFLE = "shuffle"


class Status(str, enum.Enum):
    FOUND = "found"
    UNSOLVABLE = "none"
    INCONCLUSIVE = "timeout"


class StopReason(str, enum.Enum):
    NODE_LIMIT = "node-limit"
    TIME_BUDGET = "time-budget"
    COUNT_CAP = "count-cap"


@dataclass(frozen=True)
class SolverConfig:
    seed: int = 0
    node_limit: Optional[int] = None
    time_budget: Optional[float] = None
    mode: Mode = Mode.FIRST_SOLUTION
    count_cap: Optional[int] = None
    value_order: ValueOrder = ValueOrder.ASCENDING


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    forced_assignments: int = 0
    prunes: int = 0
    elapsed: float = 0.0
    seed: Optional[int] = None


@dataclass
class SearchOutcome:
    status: Status
    stats: SearchStats
    assignment: Optional[Assignment] = None
    reason: Optional[StopReason] = None

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND


class SearchInconclusive(RuntimeError):
    """A count could not be completed within the configured limits."""

    def __init__(self, reason: StopReason, stats: SearchStats, partial_count: int):
        self.reason = reason
        self.stats = stats
        self.partial_count = partial_count
        super().__init__(f"search stopped ({reason.value}) after {stats.nodes_expanded} nodes, "
                         f"{partial_count} solutions so far")


_ORDER_CODES = {
    ValueOrder.ASCENDING: _kernel.ASCENDING,
    ValueOrder.DESCENDING: _kernel.DESCENDING,
    ValueOrder.SEEDED_SHUFFLE: _kernel.SHUFFLE,
}

# nodes per compiled chunk; the wall clock is checked between chunks
CHUNK_NODES = 2_000


def _incidence_arrays(shape: Shape):
    hexv = np.array(shape.hexagons, dtype=np.int64).reshape(-1, 6)
    vhex = np.full((shape.n, 3), -1, dtype=np.int64)
    for v, hs in enumerate(shape.vertex_hexagons):
        vhex[v, :len(hs)] = hs
    return hexv, vhex, np.array(shape.membership, dtype=np.int64)


def cover_weights(shape: Shape) -> Tuple[np.ndarray, np.ndarray]:
    """Hexagon sets used by the global prune.

    All hexagons, all but one, all but two, and every maximal set of pairwise
    vertex-disjoint hexagons. Single hexagons are covered by the per-hexagon check.
    """
    n_hex = len(shape.hexagons)
    everything = tuple(range(n_hex))
    subsets = {everything}
    for skip in combinations(everything, 1):
        subsets.add(tuple(h for h in everything if h not in skip))
    for skip in combinations(everything, 2):
        subsets.add(tuple(h for h in everything if h not in skip))
    subsets.update(_disjoint_packings(shape))
    subsets = sorted(s for s in subsets if len(s) > 1)
    weights = np.zeros((len(subsets), shape.n), dtype=np.int64)
    for k, subset in enumerate(subsets):
        for h in subset:
            weights[k, list(shape.hexagons[h])] += 1
    return weights, np.array([len(s) for s in subsets], dtype=np.int64)


def _disjoint_packings(shape: Shape, limit: int = 512) -> List[Tuple[int, ...]]:
    """Maximal sets of pairwise vertex-disjoint hexagons (at most ``limit``)."""
    disjoint = nx.Graph()
    disjoint.add_nodes_from(range(len(shape.hexagons)))
    disjoint.add_edges_from(
        (g, h) for g, h in combinations(range(len(shape.hexagons)), 2)
        if not set(shape.hexagons[g]) & set(shape.hexagons[h])
    )
    return [tuple(sorted(c)) for c in islice(nx.find_cliques(disjoint), limit)]


class _Search:
    def __init__(self, shape: Shape, magic: int, config: SolverConfig):
        self.shape = shape
        self.magic = magic
        self.config = config
        self.arrays = _incidence_arrays(shape) + cover_weights(shape)
        self.state = _kernel.new_state(shape.n, len(shape.hexagons), self.arrays[3])
        shuffled = config.value_order is ValueOrder.SEEDED_SHUFFLE
        self.stats = SearchStats(seed=config.seed if shuffled else None)
        self.solutions = 0
        self.first: Optional[Tuple[int, ...]] = None

    def run(self) -> Optional[StopReason]:
        """Search until exhaustion, a solution (first mode) or a limit; return the limit hit."""
        config, stats = self.config, self.stats
        start = time.perf_counter()
        deadline = None if config.time_budget is None else time.monotonic() + config.time_budget
        count_all = config.mode is Mode.COUNT_ALL
        cap = config.count_cap or 0
        st = self.state
        sc = st["scalars"]
        if config.value_order is ValueOrder.SEEDED_SHUFFLE:
            _kernel.seed_rng(config.seed % 2**32)
        reason = None
        try:
            if not 21 <= self.magic <= 6 * self.shape.n - 15:
                return None
            while True:
                budget = CHUNK_NODES
                if config.node_limit is not None:
                    budget = min(budget, config.node_limit - int(sc[_kernel.NODES]))
                    if budget <= 0:
                        reason = StopReason.NODE_LIMIT
                        return reason
                code = _kernel.run_chunk(
                    *self.arrays, self.magic, _ORDER_CODES[config.value_order], count_all, cap, budget,
                    sc, st["values"], st["used"], st["hex_sum"], st["hex_free"], st["trail"],
                    st["cands"], st["n_cands"], st["pos"], st["marks"], st["branch"], st["queue"],
                    st["wsum"], st["wcount"], st["prefix"],
                )
                if code == _kernel.FOUND:
                    self.first = tuple(int(x) for x in st["values"])
                    return None
                if code == _kernel.EXHAUSTED:
                    return None
                if code == _kernel.CAPPED:
                    reason = StopReason.COUNT_CAP
                    return reason
                if deadline is not None and time.monotonic() > deadline:
                    reason = StopReason.TIME_BUDGET
                    return reason
        finally:
            stats.nodes_expanded = int(sc[_kernel.NODES])
            stats.forced_assignments = int(sc[_kernel.FORCED])
            stats.prunes = int(sc[_kernel.PRUNES])
            stats.elapsed = time.perf_counter() - start
            self.solutions = int(sc[_kernel.SOLUTIONS])


def solve_one(shape: Shape, magic: int, config: Optional[SolverConfig] = None) -> SearchOutcome:
    config = config or SolverConfig()
    if config.mode is not Mode.FIRST_SOLUTION:
        config = SolverConfig(config.seed, config.node_limit, config.time_budget,
                              Mode.FIRST_SOLUTION, None, config.value_order)
    search = _Search(shape, magic, config)
    reason = search.run()
    if search.first is not None:
        assignment = Assignment.for_shape(shape, search.first)
        verify_solution(shape, assignment)
        return SearchOutcome(Status.FOUND, search.stats, assignment)
    if reason is not None:
        return SearchOutcome(Status.INCONCLUSIVE, search.stats, reason=reason)
    return SearchOutcome(Status.UNSOLVABLE, search.stats)


def count_solutions(shape: Shape, magic: int, config: Optional[SolverConfig] = None) -> int:
    """Exact number of labelings with every hexagon summing to ``magic``.

    Raises :class:`SearchInconclusive` when a limit or the count cap stops the
    enumeration early.
    """
    config = config or SolverConfig(mode=Mode.COUNT_ALL)
    if config.mode is not Mode.COUNT_ALL:
        config = SolverConfig(config.seed, config.node_limit, config.time_budget,
                              Mode.COUNT_ALL, config.count_cap, config.value_order)
    search = _Search(shape, magic, config)
    reason = search.run()
    if reason is not None:
        raise SearchInconclusive(reason, search.stats, search.solutions)
    return search.solutions


@dataclass
class SweepEntry:
    magic: int
    status: Status
    stats: SearchStats
    assignment: Optional[Assignment] = None
    reason: Optional[StopReason] = None
    via_complement: bool = False

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND

    def summary(self) -> str:
        label = self.status.value + (" (complement)" if self.via_complement else "")
        return f"{self.magic} {label} nodes={self.stats.nodes_expanded} ms={round(self.stats.elapsed * 1000)}"


def _solve_task(args):
    shape, magic, config = args
    return magic, solve_one(shape, magic, config)


def sweep(shape: Shape, magic_range: Optional[Tuple[int, int]] = None,
          config: Optional[SolverConfig] = None, jobs: int = 1) -> Dict[int, SweepEntry]:
    """Run :func:`solve_one` across a range of magic constants.

    Values at or below the average are searched first; a hit at ``M`` is
    mirrored to ``6n + 6 - M`` by complementing the labeling, so only the
    partners of failed searches are searched in the second pass. The result is
    keyed and ordered by ``M`` regardless of ``jobs``.
    """
    from .bounds import bounds_for, complement_magic

    config = config or SolverConfig()
    if magic_range is None:
        bounds, _ = bounds_for(shape.family, shape.order, shape)
        magic_range = (bounds.lower, bounds.upper)
    lo, hi = magic_range
    wanted = list(range(lo, hi + 1))
    n = shape.n
    first_pass = [m for m in wanted if m <= complement_magic(m, n) or not lo <= complement_magic(m, n) <= hi]
    results: Dict[int, SweepEntry] = {}

    def absorb(outcomes: Iterable[Tuple[int, SearchOutcome]]) -> None:
        for magic, out in outcomes:
            results[magic] = SweepEntry(magic, out.status, out.stats, out.assignment, out.reason)

    absorb(_run_batch(shape, first_pass, config, jobs))
    second_pass = []
    for m in wanted:
        if m in results:
            continue
        partner = results.get(complement_magic(m, n))
        if partner is not None and partner.found:
            image = complement_solution(partner.assignment)
            assert verify_solution(shape, image) == m
            results[m] = SweepEntry(m, Status.FOUND, SearchStats(), image, via_complement=True)
        else:
            second_pass.append(m)
    absorb(_run_batch(shape, second_pass, config, jobs))
    return {m: results[m] for m in wanted}


def _run_batch(shape: Shape, magics: List[int], config: SolverConfig, jobs: int):
    tasks = [(shape, m, config) for m in magics]
    if jobs <= 1 or len(tasks) <= 1:
        return [_solve_task(t) for t in tasks]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return sorted(pool.map(_solve_task, tasks), key=lambda item: item[0])
