"""Hexagonal tortoise problem engine: shape families, magic-constant bounds, and a solver."""

from .bounds import (
    BoundKind,
    CoverCertificate,
    DerivationReport,
    MagicBounds,
    average_magic,
    bounds_for,
    check_cover_certificate,
    complement_magic,
    refute_diamond3_extreme,
)
from .hexgrid import (
    Assignment,
    HexCoord,
    InvalidSolution,
    Shape,
    ShapeFamily,
    UnsupportedShape,
    VertexKey,
    build_shape,
    complement_solution,
    expected_vertex_count,
    hexagon_corners,
    verify_solution,
)
from .oracle import oracle_count, oracle_find
from .solver import (
    Mode,
    SearchOutcome,
    SearchStats,
    SolverConfig,
    Status,
    ValueOrder,
    count_solutions,
    solve_one,
    sweep,
)

__version__ = "0.1.0"
