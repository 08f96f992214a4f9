import pytest

from htp.fileio import SolutionFile, SolutionFormatError, parse, read_solution, serialize, write_solution
from htp.hexgrid import ShapeFamily, UnsupportedShape

GOOD = "htp-solution v1\nshape diamond 1\nmagic 21\nvalues 1 2 3 4 5 6\n"


def test_parse_and_serialize_round_trip():
    sol = parse(GOOD)
    assert sol == SolutionFile(ShapeFamily.DIAMOND, 1, 21, (1, 2, 3, 4, 5, 6))
    assert serialize(sol) == GOOD


def test_missing_final_newline_accepted():
    assert parse(GOOD.rstrip("\n")).magic == 21


def test_write_then_read(tmp_path):
    path = tmp_path / "a.htp"
    write_solution(path, parse(GOOD))
    assert path.read_bytes() == GOOD.encode()
    assert read_solution(path) == parse(GOOD)


@pytest.mark.parametrize("text", [
    GOOD.replace("\n", "\r\n"),
    GOOD.replace("v1", "v2"),
    GOOD.replace("shape diamond", "shape Diamond"),
    GOOD.replace("magic 21", "magic twenty-one"),
    GOOD.replace("values 1 2 3 4 5 6", "values 1 2 3 4 5"),
    GOOD.replace("values 1", "values  1"),
    GOOD.replace("magic 21", "magic 21 "),
    GOOD + "extra\n",
    "",
])
def test_malformed(text):
    with pytest.raises(SolutionFormatError):
        parse(text)


def test_unknown_shape():
    with pytest.raises(UnsupportedShape):
        parse(GOOD.replace("diamond 1", "star 3"))


def test_invalid_utf8(tmp_path):
    path = tmp_path / "bad.htp"
    path.write_bytes(b"\xff\xfe")
    with pytest.raises(SolutionFormatError):
        read_solution(path)
