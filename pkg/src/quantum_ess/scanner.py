"""Sweeps over initial-state weights to map where quantization flips stability."""
from __future__ import annotations

import csv
import enum
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional, TextIO

import numpy as np

from .ess_analyzer import StabilityReport, analyze
from .game_core import PayoffMatrix

DEFAULT_RESOLUTION = 51
CSV_HEADER = (
    "w00", "w01", "w10", "w11",
    "classical_disc", "quantum_disc", "mixed_ne",
    "classical_ess", "quantum_ess", "flip",
)


class Constraint(enum.Enum):
    SYMMETRIC_OFF_DIAGONAL = "symmetric"
    FULL_SIMPLEX = "full"


@dataclass(frozen=True)
class ScanPoint:
    indices: tuple
    weights: tuple  # (w00, w01, w10, w11)
    report: StabilityReport


@dataclass(frozen=True)
class ScanGrid:
    resolution: int
    constraint: Constraint
    points: list

    def __len__(self) -> int:
        return len(self.points)


def grid_weights(resolution: int, constraint: Constraint) -> Iterator[tuple[tuple, tuple]]:
    """Grid points in lexicographic index order, as ``(indices, (w00, w01, w10, w11))``.

    Symmetric mode walks ``(w00, w11)`` in steps of ``1/(resolution-1)`` and splits
    the remainder evenly off the diagonal. Full mode walks three of the four
    weights and gives the remainder to ``w11``.
    """
    if resolution < 2:
        raise ValueError(f"resolution must be at least 2, got {resolution}")
    m = resolution - 1
    if constraint is Constraint.SYMMETRIC_OFF_DIAGONAL:
        for i in range(m + 1):
            for j in range(m + 1 - i):
                off = (m - i - j) / (2 * m)
                yield (i, j), (i / m, off, off, j / m)
    else:
        for i in range(m + 1):
            for j in range(m + 1 - i):
                for k in range(m + 1 - i - j):
                    yield (i, j, k), (i / m, j / m, k / m, (m - i - j - k) / m)


def _evaluate(args) -> list[ScanPoint]:
    alpha, chunk = args
    from .quantum_state import StateWeights

    out = []
    for idx, (w00, w01, w10, w11) in chunk:
        s = StateWeights([[w00, w01], [w10, w11]])
        out.append(ScanPoint(idx, (w00, w01, w10, w11), analyze(alpha, s)))
    return out


def scan(
    alpha: PayoffMatrix,
    resolution: int = DEFAULT_RESOLUTION,
    constraint: Constraint = Constraint.SYMMETRIC_OFF_DIAGONAL,
    workers: Optional[int] = None,
) -> ScanGrid:
    """Analyze ``alpha`` at every grid point of the chosen weight region.

    With ``workers`` > 1 the grid is split into contiguous chunks evaluated in
    separate processes; chunks are reassembled in order, so the result does
    not depend on ``workers``.
    """
    a = np.asarray(getattr(alpha, "entries", alpha), dtype=float)
    if a.shape != (2, 2):
        raise ValueError("scan needs a 2x2 payoff matrix")
    cells = list(grid_weights(resolution, constraint))
    if not workers or workers <= 1:
        points = _evaluate((a, cells))
    else:
        size = -(-len(cells) // (4 * workers))
        chunks = [(a, cells[i:i + size]) for i in range(0, len(cells), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            points = [p for part in pool.map(_evaluate, chunks) for p in part]
    return ScanGrid(resolution, constraint, points)


def flip_fraction(g: ScanGrid) -> float:
    if not g.points:
        raise ValueError("flip fraction of an empty grid is undefined")
    return sum(p.report.flip for p in g.points) / len(g.points)


def _num(x) -> str:
    return "na" if x is None else format(x, ".17g")


def _flag(b) -> str:
    return "na" if b is None else ("true" if b else "false")


def write_csv(g: ScanGrid, fh: TextIO) -> None:
    """One row per grid point, floats at 17 significant digits, ``na`` for not applicable.

    ``mixed_ne`` is the quantum game's interior mixed equilibrium.
    """
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for p in g.points:
        r = p.report
        writer.writerow([
            *(_num(w) for w in p.weights),
            _num(r.classical_discriminant),
            _num(r.quantum_discriminant),
            _num(r.mixed_ne_quantum),
            _flag(r.classical_mixed_is_ess),
            _flag(r.quantum_mixed_is_ess),
            _flag(r.flip),
        ])


def to_csv(g: ScanGrid) -> str:
    buf = io.StringIO()
    write_csv(g, buf)
    return buf.getvalue()
