from fractions import Fraction

import pytest

from htp.bounds import (
    DERIVATIONS,
    BoundKind,
    CoverCertificate,
    average_magic,
    bounds_for,
    check_cover_certificate,
    complement_magic,
    refute_diamond3_extreme,
)
from htp.hexgrid import build_shape

TABLE = {
    ("diamond", 1): (21, 21),
    ("diamond", 2): (40, 62),
    ("diamond", 3): (77, 109),
    ("triangular", 2): (34, 50),
    ("triangular", 3): (57, 81),
    ("triangular", 4): (83, 121),
    ("hexagonal", 1): (21, 21),
    ("hexagonal", 2): (65, 85),
    ("hexagonal", 3): (140, 190),
    ("star", 2): (129, 129),
}


@pytest.mark.parametrize("n,expected", [(6, 21), (16, 51), (42, 129)])
def test_average_magic(n, expected):
    assert average_magic(n) == expected


@pytest.mark.parametrize("m,n,expected", [(62, 16, 40), (93, 30, 93), (77, 30, 109)])
def test_complement_magic(m, n, expected):
    assert complement_magic(m, n) == expected
    assert complement_magic(expected, n) == m


@pytest.mark.parametrize("shape_key,expected", TABLE.items())
def test_bounds_table(shape_key, expected):
    bounds, _ = bounds_for(*shape_key)
    assert (bounds.lower, bounds.upper) == expected
    n = build_shape(*shape_key).n
    assert bounds.lower + bounds.upper == 6 * n + 6
    assert Fraction(bounds.lower + bounds.upper, 2) == average_magic(n)


def test_kinds():
    assert bounds_for("diamond", 3)[0].kind is BoundKind.LITERATURE
    assert bounds_for("star", 2)[0].kind is BoundKind.EXACT_FORMULA
    assert bounds_for("diamond", 4)[0].kind is BoundKind.TRIVIAL


@pytest.mark.parametrize("family,order", [("diamond", 4), ("triangular", 1), ("hexagonal", 4)])
def test_trivial_fallback(family, order):
    n = build_shape(family, order).n
    bounds, _ = bounds_for(family, order)
    assert (bounds.lower, bounds.upper) == (21, 6 * n - 15)


def test_diamond2_derivation_quantities():
    _, report = bounds_for("diamond", 2)
    q = report.quantities
    assert (q["A_max"], q["B_max"], q["total"], q["M_max"]) == (31, 50, 136, 62)


def test_hexagonal2_exact_rational_then_floor():
    bounds, report = bounds_for("hexagonal", 2)
    assert report.quantities["M_max"] == Fraction(429, 5)
    assert bounds.upper == 85


def test_hexagonal3_bound_arithmetic():
    _, report = bounds_for("hexagonal", 3)
    assert report.quantities["B+C_min"] == 300
    assert report.quantities["M_max"] == Fraction(2670, 14)


def test_triangular_errata_flagged():
    _, tri3 = bounds_for("triangular", 3)
    _, tri4 = bounds_for("triangular", 4)
    assert any("71" in w for w in tri3.warnings)
    assert any("122" in w for w in tri4.warnings)
    assert tri4.quantities["M_max"] == Fraction(243, 2)
    assert (tri4.quantities["C_max"], tri4.quantities["D_max"], tri4.quantities["B_min"]) == (96, 165, 21)


def test_structural_group_sizes():
    d2 = build_shape("diamond", 2)
    _, r = bounds_for("diamond", 2)
    assert len(r.groups["a"]) == 2 and all(d2.membership[v] == 3 for v in r.groups["a"])
    assert len(r.groups["c"]) == 4
    _, r = bounds_for("triangular", 2)
    assert (len(r.groups["a"]), len(r.groups["b"]), len(r.groups["c"])) == (1, 3, 9)
    _, r = bounds_for("triangular", 3)
    assert len(r.groups["leftover"]) == 4
    _, r = bounds_for("hexagonal", 2)
    assert len(r.groups["b"]) == 6
    _, r = bounds_for("hexagonal", 3)
    assert len(r.groups["b"]) == len(r.groups["c"]) == 12
    assert not set(r.groups["b"]) & set(r.groups["c"])


def test_disjoint_sets_are_the_documented_ones():
    shape = build_shape("triangular", 4)
    _, r = bounds_for("triangular", 4)
    cert = dict(r.certificates)["four disjoint hexagons plus a, b"]
    assert sorted(shape.centers[h] for h in cert.hex_mult) == sorted([(0, 0), (3, 0), (0, 3), (1, 1)])
    shape = build_shape("diamond", 3)
    _, r = bounds_for("diamond", 3)
    cert = dict(r.certificates)["four disjoint hexagons plus f"]
    assert sorted(shape.centers[h] for h in cert.hex_mult) == sorted([(0, 0), (2, 0), (0, 2), (2, 2)])


def test_refute_110():
    ref = refute_diamond3_extreme(110)
    assert (ref.f_sum, ref.fD_max, ref.t_max, ref.bound_8M, ref.refuted) == (25, 15, 59, 868, True)
    assert (ref.group_sizes["T"], ref.group_sizes["D"], ref.group_sizes["S"]) == (2, 14, 14)
    assert ref.group_sizes["f_in_D"] == 2


def test_refute_109_not_refuted():
    # f_sum = 465 - 436 = 29, fD_max = 19, bound = 465 + 59 + 329 + 19 = 872
    ref = refute_diamond3_extreme(109)
    assert (ref.f_sum, ref.fD_max, ref.bound_8M, ref.refuted) == (29, 19, 872, False)


def test_refute_76_by_complement():
    ref = refute_diamond3_extreme(76)
    assert ref.mirrored and ref.evaluated == 110 and ref.refuted


@pytest.mark.parametrize("magic", [112, 74, 200])
def test_refute_domain(magic):
    with pytest.raises(ValueError):
        refute_diamond3_extreme(magic)


def test_certificate_examples():
    d2 = build_shape("diamond", 2)
    pair = [d2.hexagon_index((0, 0)), d2.hexagon_index((1, 1))]
    covered = set(d2.hexagons[pair[0]]) | set(d2.hexagons[pair[1]])
    cert = CoverCertificate({h: 1 for h in pair}, {v: 1 for v in range(16) if v not in covered},
                            {v: 1 for v in range(16)})
    assert check_cover_certificate(d2, cert)

    star = build_shape("star", 2)
    cover = [star.hexagon_index((0, 0))] + [star.hexagon_index(c) for c in
                                              [(1, 1), (-1, 2), (-2, 1), (-1, -1), (1, -2), (2, -1)]]
    assert check_cover_certificate(star, CoverCertificate({h: 1 for h in cover}, {}, {v: 1 for v in range(42)}))
    assert check_cover_certificate(star, CoverCertificate())


def test_certificate_failure_diagnostic():
    d1 = build_shape("diamond", 1)
    check = check_cover_certificate(d1, CoverCertificate({0: 1}, {}, {0: 1, 1: 1, 2: 1, 3: 1, 4: 1}))
    assert not check and check.vertex == 5 and check.achieved == 1 and check.expected == 0


def test_certificate_index_errors():
    d1 = build_shape("diamond", 1)
    with pytest.raises(IndexError):
        check_cover_certificate(d1, CoverCertificate({1: 1}))
    with pytest.raises(IndexError):
        check_cover_certificate(d1, CoverCertificate(target={6: 1}))


@pytest.mark.parametrize("shape_key", sorted(DERIVATIONS))
def test_certificates_valid_and_perturbations_rejected(shape_key):
    shape = build_shape(*shape_key)
    _, report = bounds_for(*shape_key)
    assert report.certificates
    for _, cert in report.certificates:
        assert check_cover_certificate(shape, cert)
        for h in range(len(shape.hexagons)):
            assert not check_cover_certificate(shape, cert.perturbed("hex_mult", h))
        for v in range(shape.n):
            assert not check_cover_certificate(shape, cert.perturbed("vtx_mult", v))
            assert not check_cover_certificate(shape, cert.perturbed("target", v))


def test_bounds_for_is_pure():
    a, ra = bounds_for("triangular", 4)
    b, rb = bounds_for("triangular", 4)
    assert a == b and ra.quantities == rb.quantities and ra.chain == rb.chain
