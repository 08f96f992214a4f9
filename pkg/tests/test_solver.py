import pytest

from htp.bounds import complement_magic
from htp.hexgrid import build_shape, complement_solution, verify_solution
from htp.oracle import oracle_count
from htp.solver import (
    Mode,
    SearchInconclusive,
    SolverConfig,
    Status,
    StopReason,
    ValueOrder,
    count_solutions,
    solve_one,
    sweep,
)


def test_single_hexagon_found():
    shape = build_shape("diamond", 1)
    out = solve_one(shape, 21)
    assert out.found and verify_solution(shape, out.assignment) == 21


@pytest.mark.parametrize("magic", [20, 22, 1000])
def test_single_hexagon_other_constants_unsolvable(magic):
    assert solve_one(build_shape("diamond", 1), magic).status is Status.UNSOLVABLE


def test_diamond2_63_unsolvable():
    out = solve_one(build_shape("diamond", 2), 63)
    assert out.status is Status.UNSOLVABLE and out.reason is None


def test_diamond3_93_found():
    shape = build_shape("diamond", 3)
    out = solve_one(shape, 93, SolverConfig(time_budget=60))
    assert out.found and verify_solution(shape, out.assignment) == 93


def test_counts():
    assert count_solutions(build_shape("diamond", 1), 21) == 720
    assert count_solutions(build_shape("diamond", 1), 22) == 0
    tri = build_shape("triangular", 2)
    assert count_solutions(tri, 34) == oracle_count(tri, 34) == 23328


def test_count_mode_in_config_is_respected():
    cfg = SolverConfig(mode=Mode.FIRST_SOLUTION)
    assert count_solutions(build_shape("diamond", 1), 21, cfg) == 720


def test_count_cap_is_inconclusive():
    with pytest.raises(SearchInconclusive) as err:
        count_solutions(build_shape("diamond", 1), 21, SolverConfig(mode=Mode.COUNT_ALL, count_cap=10))
    assert err.value.reason is StopReason.COUNT_CAP and err.value.partial_count == 10


@pytest.mark.parametrize("order", list(ValueOrder))
def test_deterministic_per_seed(order):
    shape = build_shape("diamond", 2)
    cfg = SolverConfig(seed=7, value_order=order)
    a, b = solve_one(shape, 45, cfg), solve_one(shape, 45, cfg)
    assert a.found and a.assignment == b.assignment
    assert a.stats.nodes_expanded == b.stats.nodes_expanded
    assert a.stats.forced_assignments == b.stats.forced_assignments
    assert a.stats.prunes == b.stats.prunes


def test_seed_changes_shuffled_search():
    shape = build_shape("diamond", 3)
    seen = {solve_one(shape, 93, SolverConfig(seed=s, value_order=ValueOrder.SEEDED_SHUFFLE)).assignment
            for s in range(5)}
    assert len(seen) > 1


def test_complement_closure_on_found_solutions():
    shape = build_shape("diamond", 2)
    for magic in (40, 47, 55):
        out = solve_one(shape, magic)
        image = complement_solution(out.assignment)
        assert verify_solution(shape, image) == complement_magic(magic, shape.n)


def test_node_limit_inconclusive():
    out = solve_one(build_shape("hexagonal", 3), 140, SolverConfig(node_limit=1))
    assert out.status is Status.INCONCLUSIVE and out.reason is StopReason.NODE_LIMIT
    assert out.assignment is None


def test_time_budget_inconclusive():
    out = solve_one(build_shape("hexagonal", 3), 140, SolverConfig(time_budget=0.2))
    assert out.status is Status.INCONCLUSIVE and out.reason is StopReason.TIME_BUDGET
    assert out.stats.elapsed < 5


def test_stats_reported():
    out = solve_one(build_shape("diamond", 2), 50, SolverConfig(seed=3))
    assert out.stats.nodes_expanded > 0 and out.stats.forced_assignments > 0
    assert out.stats.seed is None and out.stats.elapsed >= 0
    shuffled = solve_one(build_shape("diamond", 2), 50, SolverConfig(seed=3, value_order=ValueOrder.SEEDED_SHUFFLE))
    assert shuffled.stats.seed == 3


def test_sweep_diamond2_default_range():
    results = sweep(build_shape("diamond", 2))
    assert list(results) == list(range(40, 63))
    assert all(e.found for e in results.values())
    assert any(e.via_complement for e in results.values())


def test_sweep_outside_bounds():
    assert sweep(build_shape("diamond", 2), (39, 39))[39].status is Status.UNSOLVABLE
    assert sweep(build_shape("diamond", 2), (62, 63))[63].status is Status.UNSOLVABLE


def test_sweep_parallel_matches_serial():
    shape = build_shape("triangular", 2)
    serial = sweep(shape, config=SolverConfig(seed=1))
    parallel = sweep(shape, config=SolverConfig(seed=1), jobs=2)
    assert list(serial) == list(parallel)
    for m in serial:
        assert serial[m].status == parallel[m].status
        assert serial[m].assignment == parallel[m].assignment
