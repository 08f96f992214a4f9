"""Magic-constant bounds with machine-checkable coverage identities.

Each derivation picks vertex groups straight from the built shape, checks the
linear coverage identities it relies on (as :class:`CoverCertificate`
objects), and only then maximizes the resulting expression over 1..n.
Lower bounds come from the complement map ``M -> 6n + 6 - M``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .hexgrid import HexCoord, Shape, ShapeFamily, build_shape, check_supported

LITERATURE_DIAMOND3 = (76, 110)


class BoundKind(str, enum.Enum):
    EXACT_FORMULA = "exact-formula"
    LITERATURE = "literature"
    TRIVIAL = "trivial"


@dataclass(frozen=True)
class MagicBounds:
    lower: int
    upper: int
    kind: BoundKind

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"empty bound range [{self.lower}, {self.upper}]")

    def __iter__(self):
        return iter((self.lower, self.upper))

    def __contains__(self, magic: int) -> bool:
        return self.lower <= magic <= self.upper


@dataclass(frozen=True)
class CoverCertificate:
    """Claims ``sum(hex_mult[h] for h containing v) + vtx_mult[v] == target[v]`` for every v.

    Missing keys mean zero.
    """

    hex_mult: Mapping[int, int] = field(default_factory=dict)
    vtx_mult: Mapping[int, int] = field(default_factory=dict)
    target: Mapping[int, int] = field(default_factory=dict)

    def perturbed(self, part: str, index: int, delta: int = 1) -> "CoverCertificate":
        maps = {"hex_mult": dict(self.hex_mult), "vtx_mult": dict(self.vtx_mult), "target": dict(self.target)}
        maps[part][index] = maps[part].get(index, 0) + delta
        return CoverCertificate(**maps)


@dataclass(frozen=True)
class CertificateCheck:
    valid: bool
    vertex: Optional[int] = None
    achieved: Optional[int] = None
    expected: Optional[int] = None

    def __bool__(self) -> bool:
        return self.valid


class CertificateError(RuntimeError):
    pass


def check_cover_certificate(shape: Shape, cert: CoverCertificate) -> CertificateCheck:
    n_hex, n = len(shape.hexagons), shape.n
    for name, mapping, size in (("hexagon", cert.hex_mult, n_hex),
                                ("vertex", cert.vtx_mult, n), ("vertex", cert.target, n)):
        for idx, mult in mapping.items():
            if not 0 <= idx < size:
                raise IndexError(f"{name} index {idx} out of range 0..{size - 1}")
            if mult < 0:
                raise ValueError(f"negative multiplicity {mult} at {name} {idx}")
    coverage = [cert.vtx_mult.get(v, 0) for v in range(n)]
    for h, mult in cert.hex_mult.items():
        for v in shape.hexagons[h]:
            coverage[v] += mult
    for v in range(n):
        expected = cert.target.get(v, 0)
        if coverage[v] != expected:
            return CertificateCheck(False, v, coverage[v], expected)
    return CertificateCheck(True)


@dataclass
class DerivationReport:
    quantities: Dict[str, Fraction] = field(default_factory=dict)
    chain: List[str] = field(default_factory=list)
    groups: Dict[str, Tuple[int, ...]] = field(default_factory=dict)
    certificates: List[Tuple[str, CoverCertificate]] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    def set(self, label: str, value) -> Fraction:
        value = Fraction(value)
        self.quantities[label] = value
        return value

    def lines(self) -> List[str]:
        out = [f"{k} = {v}" for k, v in self.quantities.items()]
        out += self.chain
        return out


def average_magic(n: int) -> int:
    return 3 * n + 3


def complement_magic(magic: int, n: int) -> int:
    return 6 * n + 6 - magic


def top_sum(n: int, k: int) -> int:
    """Sum of the k largest values of 1..n."""
    return sum(range(n - k + 1, n + 1))


def bottom_sum(k: int) -> int:
    return k * (k + 1) // 2


def disjoint_hexagons(shape: Shape, size: int) -> Tuple[int, ...]:
    """Lexicographically smallest set of ``size`` pairwise vertex-disjoint hexagons."""
    sets = [set(h) for h in shape.hexagons]

    def extend(chosen: List[int], start: int) -> Optional[List[int]]:
        if len(chosen) == size:
            return chosen
        for h in range(start, len(sets)):
            if all(sets[h].isdisjoint(sets[c]) for c in chosen):
                found = extend(chosen + [h], h + 1)
                if found:
                    return found
        return None

    found = extend([], 0)
    if found is None:
        raise CertificateError(f"{shape.label} has no {size} pairwise disjoint hexagons")
    return tuple(found)


def interior_hexagons(shape: Shape) -> List[int]:
    """Hexagons whose six lattice neighbours all belong to the shape."""
    present = set(shape.centers)
    return [
        h for h, c in enumerate(shape.centers)
        if all(HexCoord(c.q + dq, c.r + dr) in present
               for dq, dr in ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)))
    ]


def _ones(indices) -> Dict[int, int]:
    return {i: 1 for i in indices}


def _require(shape: Shape, report: DerivationReport, name: str, cert: CoverCertificate) -> None:
    check = check_cover_certificate(shape, cert)
    if not check:
        raise CertificateError(
            f"{shape.label}: certificate {name!r} fails at vertex {check.vertex} "
            f"(covered {check.achieved}, expected {check.expected})"
        )
    report.certificates.append((name, cert))


def _symmetric(upper: int, n: int, kind: BoundKind) -> MagicBounds:
    return MagicBounds(complement_magic(upper, n), upper, kind)


# -- derivations -------------------------------------------------------------

def _single_hexagon(shape: Shape, report: DerivationReport) -> MagicBounds:
    _require(shape, report, "hexagon covers all", CoverCertificate(hex_mult={0: 1}, target=_ones(range(6))))
    m = report.set("M", bottom_sum(6))
    report.chain.append(f"M = 1 + 2 + ... + 6 = {m}")
    return MagicBounds(int(m), int(m), BoundKind.EXACT_FORMULA)


def _diamond2(shape: Shape, report: DerivationReport) -> MagicBounds:
    n = shape.n
    pair = disjoint_hexagons(shape, 2)
    others = [h for h in range(len(shape.hexagons)) if h not in pair]
    covered = set().union(*(shape.hexagons[h] for h in pair))
    c = sorted(set(range(n)) - covered)
    both = set(shape.hexagons[others[0]]) & set(shape.hexagons[others[1]])
    a = sorted(both)
    b = sorted(set().union(*(shape.hexagons[h] for h in others)) - both - set(c))
    d = sorted(set(range(n)) - set(a) - set(b) - set(c))
    report.groups.update(a=tuple(a), b=tuple(b), c=tuple(c), d=tuple(d))

    _require(shape, report, "disjoint pair plus c",
             CoverCertificate(hex_mult=_ones(pair), vtx_mult=_ones(c), target=_ones(range(n))))
    target = {v: 2 for v in a}
    target.update(_ones(b + c))
    _require(shape, report, "other pair", CoverCertificate(hex_mult=_ones(others), target=target))

    total = report.set("total", bottom_sum(n))
    a_max = report.set("A_max", top_sum(n, len(a)))
    ab_max = report.set("A+B_max", top_sum(n, len(a) + len(b)))
    report.set("B_max", ab_max - a_max)
    m_max = report.set("M_max", (a_max + ab_max + total) / 4)
    report.chain += [
        f"C = {total} - 2M (pair plus c counts every vertex once)",
        "2M = 2A + B + C (other pair counts a twice, b and c once)",
        f"4M = 2A + B + {total} <= 2*{a_max} + {ab_max - a_max} + {total} = {4 * m_max}",
        f"M <= {m_max}",
    ]
    return _symmetric(math.floor(m_max), n, BoundKind.EXACT_FORMULA)


@dataclass(frozen=True)
class Diamond3Refutation:
    magic: int
    evaluated: int
    mirrored: bool
    f_sum: int
    fD_max: int
    t_max: int
    td_max: int
    bound_8M: int
    refuted: bool
    group_sizes: Dict[str, int]


def _diamond3_groups(shape: Shape) -> Dict[str, object]:
    cover = disjoint_hexagons(shape, 4)
    covered = set().union(*(shape.hexagons[h] for h in cover))
    f = sorted(set(range(shape.n)) - covered)
    (central,) = interior_hexagons(shape)
    eight = [h for h in range(len(shape.hexagons)) if h != central]
    within = shape.membership_within(eight)
    return {
        "cover": cover,
        "f": f,
        "eight": eight,
        "within": within,
        "T": [v for v in range(shape.n) if within[v] == 3],
        "D": [v for v in range(shape.n) if within[v] == 2],
        "S": [v for v in range(shape.n) if within[v] == 1],
    }


def refute_diamond3_extreme(magic: int, shape: Optional[Shape] = None) -> Diamond3Refutation:
    """Test whether the eight-hexagon count argument rules out ``magic`` on the 3x3 diamond.

    Magic constants below the average are mirrored through the complement map
    first, so ``76`` is checked as ``110``.
    """
    shape = shape or build_shape(ShapeFamily.DIAMOND, 3)
    if (shape.family, shape.order) != (ShapeFamily.DIAMOND, 3):
        raise ValueError(f"refutation applies to diamond-3 only, got {shape.label}")
    n = shape.n
    evaluated = max(magic, complement_magic(magic, n))
    g = _diamond3_groups(shape)
    f = g["f"]
    total = bottom_sum(n)
    f_sum = total - len(g["cover"]) * evaluated
    if f_sum < bottom_sum(len(f)):
        raise ValueError(
            f"magic {magic} outside refutation domain: leftover sum {f_sum} "
            f"cannot hold {len(f)} distinct positive values"
        )
    heavy = set(g["T"]) | set(g["D"])
    f_heavy = [v for v in f if v in heavy]
    fD_max = f_sum - bottom_sum(len(f) - len(f_heavy))
    t_max = top_sum(n, len(g["T"]))
    td_max = top_sum(n, len(heavy) - len(f_heavy)) + fD_max
    bound = total + t_max + td_max
    return Diamond3Refutation(
        magic=magic,
        evaluated=evaluated,
        mirrored=evaluated != magic,
        f_sum=f_sum,
        fD_max=fD_max,
        t_max=t_max,
        td_max=td_max,
        bound_8M=bound,
        refuted=8 * evaluated > bound,
        group_sizes={"T": len(g["T"]), "D": len(g["D"]), "S": len(g["S"]),
                     "f": len(f), "f_in_D": len(f_heavy)},
    )


def _diamond3(shape: Shape, report: DerivationReport) -> MagicBounds:
    n = shape.n
    g = _diamond3_groups(shape)
    report.groups.update(f=tuple(g["f"]), T=tuple(g["T"]), D=tuple(g["D"]), S=tuple(g["S"]))
    _require(shape, report, "four disjoint hexagons plus f",
             CoverCertificate(hex_mult=_ones(g["cover"]), vtx_mult=_ones(g["f"]), target=_ones(range(n))))
    within = g["within"]
    _require(shape, report, "eight outer hexagons",
             CoverCertificate(hex_mult=_ones(g["eight"]), target={v: within[v] for v in range(n)}))

    lower, upper = LITERATURE_DIAMOND3
    report.set("literature_lower", lower)
    report.set("literature_upper", upper)
    report.chain.append(f"start from the literature range {lower} <= M <= {upper}")
    while upper > lower:
        ref = refute_diamond3_extreme(upper, shape)
        if not ref.refuted:
            break
        report.chain.append(
            f"M = {upper}: f sum {ref.f_sum}, f in D at most {ref.fD_max}, "
            f"8M = {8 * upper} > {ref.bound_8M} = {bottom_sum(n)} + {ref.t_max} + {ref.td_max}, impossible"
        )
        upper -= 1
    while lower < upper:
        ref = refute_diamond3_extreme(lower, shape)
        if not ref.refuted:
            break
        report.chain.append(f"M = {lower}: impossible, complement of {ref.evaluated}")
        lower += 1
    report.set("M_max", upper)
    report.set("M_min", lower)
    return MagicBounds(lower, upper, BoundKind.LITERATURE)


def _triangular2(shape: Shape, report: DerivationReport) -> MagicBounds:
    n = shape.n
    everything = range(len(shape.hexagons))
    within = shape.membership_within(everything)
    a = [v for v in range(n) if within[v] == 3]
    b = [v for v in range(n) if within[v] == 2]
    c = [v for v in range(n) if within[v] == 1]
    report.groups.update(a=tuple(a), b=tuple(b), c=tuple(c))
    _require(shape, report, "all three hexagons",
             CoverCertificate(hex_mult=_ones(everything), target={v: within[v] for v in range(n)}))
    total = report.set("total", bottom_sum(n))
    a_max = report.set("a_max", top_sum(n, len(a)))
    ab_max = report.set("a+B_max", top_sum(n, len(a) + len(b)))
    report.set("B_max", ab_max - a_max)
    k = len(shape.hexagons)
    m_max = report.set("M_max", (a_max + ab_max + total) / k)
    report.chain += [
        f"{k}M = 3a + 2B + C = 2a + B + {total}",
        f"{k}M <= 2*{a_max} + {ab_max - a_max} + {total} = {k * m_max}",
        f"M <= {m_max}",
    ]
    return _symmetric(math.floor(m_max), n, BoundKind.EXACT_FORMULA)


def _triangular3(shape: Shape, report: DerivationReport) -> MagicBounds:
    n = shape.n
    cover = disjoint_hexagons(shape, 3)
    covered = set().union(*(shape.hexagons[h] for h in cover))
    leftover = sorted(set(range(n)) - covered)
    report.groups.update(leftover=tuple(leftover))
    _require(shape, report, "three corner hexagons plus leftover",
             CoverCertificate(hex_mult=_ones(cover), vtx_mult=_ones(leftover), target=_ones(range(n))))
    total = report.set("total", bottom_sum(n))
    l_min = report.set("leftover_min", bottom_sum(len(leftover)))
    m_max = report.set("M_max", (total - l_min) / len(cover))
    upper = math.floor(m_max)
    report.chain += [
        f"{len(cover)}M = {total} - L, L = sum of the {len(leftover)} leftover vertices",
        f"L >= {l_min}, so M <= {m_max}",
    ]
    report.warnings.append(
        f"erratum: an upper bound of 71 contradicts {len(cover)}M = {total} - L "
        f"(L >= {l_min} gives {upper}) and the complement of the lower bound "
        f"{complement_magic(upper, n)}; using {upper}"
    )
    return _symmetric(upper, n, BoundKind.EXACT_FORMULA)


def _triangular4(shape: Shape, report: DerivationReport) -> MagicBounds:
    n = shape.n
    cover = disjoint_hexagons(shape, 4)
    (center,) = [h for h in cover if h in interior_hexagons(shape)]
    within = shape.membership_within(range(len(shape.hexagons)))
    m = set(shape.hexagons[center])
    covered = set().union(*(shape.hexagons[h] for h in cover))
    rest = [v for v in range(n) if v not in m]
    groups = {
        "a": [v for v in rest if v not in covered and within[v] == 2],
        "b": [v for v in rest if v not in covered and within[v] == 1],
        "c": [v for v in rest if within[v] == 3],
        "d": [v for v in rest if v in covered and within[v] == 2],
        "e": [v for v in rest if v in covered and within[v] == 1],
        "m": sorted(m),
    }
    report.groups.update({k: tuple(v) for k, v in groups.items()})
    outside = groups["a"] + groups["b"]
    _require(shape, report, "center hexagon plus groups a-e",
             CoverCertificate(hex_mult={center: 1}, vtx_mult=_ones(rest), target=_ones(range(n))))
    _require(shape, report, "four disjoint hexagons plus a, b",
             CoverCertificate(hex_mult=_ones(cover), vtx_mult=_ones(outside), target=_ones(range(n))))
    _require(shape, report, "all ten hexagons",
             CoverCertificate(hex_mult=_ones(range(len(shape.hexagons))), target={v: within[v] for v in range(n)}))

    total = report.set("total", bottom_sum(n))
    nc, nd, nb = len(groups["c"]), len(groups["d"]), len(groups["b"])
    c_max = report.set("C_max", top_sum(n, nc))
    cd_max = report.set("C+D_max", top_sum(n, nc + nd))
    report.set("D_max", cd_max - c_max)
    b_min = report.set("B_min", bottom_sum(nb))
    m_max = report.set("M_max", (c_max + cd_max - b_min + 2 * total) / 12)
    upper = math.floor(m_max)
    report.chain += [
        f"A + B + C + D + E + M = {total}",
        f"A + B + 4M = {total}",
        "10M = 2A + B + 3C + 2D + E + 3M",
        f"12M = 2C + D - B + {2 * total} <= {2 * c_max + (cd_max - c_max) - b_min + 2 * total}",
        f"M <= {m_max}",
    ]
    report.warnings.append(
        f"erratum: an upper bound of 122 is slack; 12M <= {12 * m_max} "
        f"gives the integer bound {upper}, matching the lower bound {complement_magic(upper, n)}"
    )
    return _symmetric(upper, n, BoundKind.EXACT_FORMULA)


def _hexagonal2(shape: Shape, report: DerivationReport) -> MagicBounds:
    n = shape.n
    (center,) = interior_hexagons(shape)
    ring = [h for h in range(len(shape.hexagons)) if h != center]
    within = shape.membership_within(ring)
    m = set(shape.hexagons[center])
    b = [v for v in range(n) if v not in m and within[v] == 2]
    c = [v for v in range(n) if v not in m and within[v] == 1]
    report.groups.update(m=tuple(sorted(m)), b=tuple(b), c=tuple(c))
    _require(shape, report, "center plus b, c",
             CoverCertificate(hex_mult={center: 1}, vtx_mult=_ones(b + c), target=_ones(range(n))))
    target = {v: 2 for v in sorted(m) + b}
    target.update(_ones(c))
    _require(shape, report, "six ring hexagons", CoverCertificate(hex_mult=_ones(ring), target=target))
    total = report.set("total", bottom_sum(n))
    b_max = report.set("B_max", top_sum(n, len(b)))
    m_max = report.set("M_max", (total + b_max) / 5)
    report.chain += [
        "6M = 2M + 2B + C",
        f"M + B + C = {total}",
        f"5M = {total} + B <= {total + b_max}",
        f"M <= {m_max}",
    ]
    return _symmetric(math.floor(m_max), n, BoundKind.EXACT_FORMULA)


def _hexagonal3(shape: Shape, report: DerivationReport) -> MagicBounds:
    n = shape.n
    (center,) = [h for h, c in enumerate(shape.centers) if c == (0, 0)]
    ring2 = [h for h, c in enumerate(shape.centers) if HexCoord(0, 0).distance(c) == 2]
    axis = [h for h in ring2 if 0 in (shape.centers[h].q, shape.centers[h].r, shape.centers[h].q + shape.centers[h].r)]
    off_axis = [h for h in ring2 if h not in axis]
    cover_b = [center] + axis
    cover_c = [center] + off_axis
    b = sorted(set(range(n)) - shape.vertex_set(shape.centers[h] for h in cover_b))
    c = sorted(set(range(n)) - shape.vertex_set(shape.centers[h] for h in cover_c))
    report.groups.update(b=tuple(b), c=tuple(c))
    _require(shape, report, "center plus axis ring-2 hexagons plus b",
             CoverCertificate(hex_mult=_ones(cover_b), vtx_mult=_ones(b), target=_ones(range(n))))
    _require(shape, report, "center plus off-axis ring-2 hexagons plus c",
             CoverCertificate(hex_mult=_ones(cover_c), vtx_mult=_ones(c), target=_ones(range(n))))
    # b and c disjoint: every vertex outside b and c is hit by both covers
    both = {h: 1 for h in ring2}
    both[center] = 2
    target = {v: 2 for v in range(n)}
    target.update(_ones(b + c))
    _require(shape, report, "both covers", CoverCertificate(hex_mult=both, target=target))

    total = report.set("total", bottom_sum(n))
    bc_min = report.set("B+C_min", bottom_sum(len(b) + len(c)))
    m_max = report.set("M_max", (2 * total - bc_min) / 14)
    report.chain += [
        f"A + C + M = A + B + M = 7M, A + B + C + M = {total}",
        f"B = C = {total} - 7M, B + C = {2 * total} - 14M",
        f"B + C >= {bc_min}, so M <= {m_max}",
    ]
    return _symmetric(math.floor(m_max), n, BoundKind.EXACT_FORMULA)


def _star2(shape: Shape, report: DerivationReport) -> MagicBounds:
    n = shape.n
    (center,) = interior_hexagons(shape)
    tips = [h for h, c in enumerate(shape.centers) if HexCoord(0, 0).distance(c) == 2]
    cover = [center] + tips
    report.groups.update(cover=tuple(cover))
    _require(shape, report, "center plus six tips",
             CoverCertificate(hex_mult=_ones(cover), target=_ones(range(n))))
    total = report.set("total", bottom_sum(n))
    m = report.set("M", Fraction(total, len(cover)))
    report.chain.append(f"{len(cover)}M = {total}, so M = {m}")
    if m.denominator != 1:
        raise CertificateError(f"{shape.label}: forced magic {m} is not an integer")
    return MagicBounds(int(m), int(m), BoundKind.EXACT_FORMULA)


def _trivial(shape: Shape, report: DerivationReport) -> MagicBounds:
    n = shape.n
    lo, hi = bottom_sum(6), top_sum(n, 6)
    lower = max(lo, complement_magic(hi, n))
    upper = min(hi, complement_magic(lo, n))
    report.set("min_six_sum", lo)
    report.set("max_six_sum", hi)
    report.chain.append(f"{lower} <= M <= {upper} (extreme six-value sums of 1..{n})")
    return MagicBounds(lower, upper, BoundKind.TRIVIAL)


DERIVATIONS: Dict[Tuple[ShapeFamily, int], Callable[[Shape, DerivationReport], MagicBounds]] = {
    (ShapeFamily.DIAMOND, 1): _single_hexagon,
    (ShapeFamily.DIAMOND, 2): _diamond2,
    (ShapeFamily.DIAMOND, 3): _diamond3,
    (ShapeFamily.TRIANGULAR, 2): _triangular2,
    (ShapeFamily.TRIANGULAR, 3): _triangular3,
    (ShapeFamily.TRIANGULAR, 4): _triangular4,
    (ShapeFamily.HEXAGONAL, 1): _single_hexagon,
    (ShapeFamily.HEXAGONAL, 2): _hexagonal2,
    (ShapeFamily.HEXAGONAL, 3): _hexagonal3,
    (ShapeFamily.STAR, 2): _star2,
}


def bounds_for(family, order: int, shape: Optional[Shape] = None) -> Tuple[MagicBounds, DerivationReport]:
    family = check_supported(family, order)
    shape = shape or build_shape(family, order)
    report = DerivationReport()
    derive = DERIVATIONS.get((family, order), _trivial)
    bounds = derive(shape, report)
    return bounds, report
