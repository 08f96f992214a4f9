import pytest

from htp.hexgrid import build_shape, verify_solution
from htp.oracle import MAX_ORACLE_VERTICES, OracleTooLarge, oracle_count, oracle_find
from htp.solver import count_solutions

# frozen from an independent full enumeration
TRIANGULAR2_COUNTS = {34: 23328, 42: 1140480, 50: 23328}


@pytest.mark.parametrize("magic", range(18, 25))
def test_single_hexagon_counts(magic):
    assert oracle_count(build_shape("diamond", 1), magic) == (720 if magic == 21 else 0)


def test_first_witness_is_lexicographic():
    assert oracle_find(build_shape("diamond", 1), 21).values == (1, 2, 3, 4, 5, 6)
    assert oracle_find(build_shape("diamond", 1), 22) is None


@pytest.mark.parametrize("magic,expected", TRIANGULAR2_COUNTS.items())
def test_triangular2_frozen_counts(magic, expected):
    assert oracle_count(build_shape("triangular", 2), magic) == expected


@pytest.mark.parametrize("magic", [28, 33])
def test_triangular2_complement_symmetry(magic):
    shape = build_shape("triangular", 2)
    assert oracle_count(shape, magic) == oracle_count(shape, 6 * shape.n + 6 - magic)


@pytest.mark.parametrize("magic", [30, 36])
def test_triangular2_agrees_with_solver(magic):
    shape = build_shape("triangular", 2)
    assert oracle_count(shape, magic) == count_solutions(shape, magic)


def test_guard():
    shape = build_shape("diamond", 3)
    assert shape.n > MAX_ORACLE_VERTICES
    with pytest.raises(OracleTooLarge):
        oracle_count(shape, 93)
    with pytest.raises(OracleTooLarge):
        oracle_find(shape, 93)


@pytest.mark.slow
def test_diamond2_edge_constants():
    shape = build_shape("diamond", 2)
    assert oracle_find(shape, 39) is None
    found = oracle_find(shape, 40)
    assert verify_solution(shape, found) == 40


@pytest.mark.slow
def test_diamond2_count_at_40():
    shape = build_shape("diamond", 2)
    assert oracle_count(shape, 40) == count_solutions(shape, 40) == 25920
