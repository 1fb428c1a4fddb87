import numpy as np
import pytest

from quantum_ess.scanner import (
    CSV_HEADER,
    Constraint,
    ScanGrid,
    flip_fraction,
    grid_weights,
    scan,
    to_csv,
)

COORD = [[3, 4], [2, 5]]


def test_symmetric_grid_size_and_order():
    cells = list(grid_weights(3, Constraint.SYMMETRIC_OFF_DIAGONAL))
    assert [c[0] for c in cells] == sorted(c[0] for c in cells)
    assert len(cells) == 6
    for _, (w00, w01, w10, w11) in cells:
        assert w01 == w10
        assert abs(w00 + w01 + w10 + w11 - 1) <= 1e-12


def test_full_grid_size():
    assert len(list(grid_weights(3, Constraint.FULL_SIMPLEX))) == 10


def test_resolution_validated():
    with pytest.raises(ValueError):
        scan(COORD, 1)


def test_resolution_three_flips_exactly_where_inequality_holds():
    g = scan(COORD, 3)
    for p in g.points:
        w00, w01, w10, w11 = p.weights
        assert p.report.flip == (w00 + w11 < w01 + w10)
    # the corner carrying all weight off the diagonal flips; w00 + w11 = 1/2 is on the boundary
    by_idx = {p.indices: p.report.flip for p in g.points}
    assert by_idx[(0, 0)] is True
    assert by_idx[(1, 0)] is False and by_idx[(0, 1)] is False


def test_classical_corner_never_flips():
    g = scan(COORD, 2)
    corner = next(p for p in g.points if p.weights[0] == 1.0)
    assert corner.report.flip is False


def test_zero_classical_discriminant_never_flips():
    g = scan([[1, 2], [2, 3]], 11)
    assert flip_fraction(g) == 0.0


def test_flip_fraction_counting_oracle():
    g = scan(COORD, 21)
    m = 20
    expected = sum(1 for i in range(m + 1) for j in range(m + 1 - i) if 2 * (i + j) < m)
    assert flip_fraction(g) == expected / len(g)


def test_flip_fraction_bounds():
    with pytest.raises(ValueError):
        flip_fraction(ScanGrid(2, Constraint.SYMMETRIC_OFF_DIAGONAL, []))


def test_full_simplex_marks_asymmetric_points_not_applicable():
    g = scan(COORD, 5, Constraint.FULL_SIMPLEX)
    for p in g.points:
        w00, w01, w10, w11 = p.weights
        assert p.report.state_symmetric == (abs(w01 - w10) <= 1e-12)
        if not p.report.state_symmetric:
            assert p.report.quantum_mixed_is_ess is None and not p.report.flip
    assert "na" in to_csv(g)


def test_csv_layout():
    text = to_csv(scan(COORD, 3))
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 7
    first = lines[1].split(",")
    assert first[:4] == ["0", "0.5", "0.5", "0"]
    assert first[-3:] == ["false", "true", "true"]
    assert float(lines[2].split(",")[1]) == 0.25


def test_csv_uses_17_significant_digits():
    row = to_csv(scan(COORD, 11)).splitlines()[2].split(",")
    assert row[3] == "0.10000000000000001"
    assert float(row[3]) == 0.1


def test_parallel_matches_serial():
    assert to_csv(scan(COORD, 15, workers=3)) == to_csv(scan(COORD, 15))
