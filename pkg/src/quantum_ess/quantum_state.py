"""Initial two-party states, described by the squared magnitudes of their coefficients.

Only ``|c_ij|^2`` reaches the payoffs, so phases are not stored. For two
strategies the grid indices 0 and 1 stand for the basis labels 1 and 3 of the
three-label scheme (label 2 and the operator D are dropped).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-9
SYMMETRY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class StateWeights:
    """Nonnegative n x n grid ``w[i, j] = |c_ij|^2`` summing to one."""

    w: np.ndarray

    def __post_init__(self):
        w = np.array(self.w, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError(f"state weights must be a square grid, got shape {w.shape}")
        if w.shape[0] not in (2, 3):
            raise ValueError(f"state weights must be 2x2 or 3x3, got {w.shape[0]}x{w.shape[0]}")
        if not np.all(np.isfinite(w)):
            raise ValueError("state weights must be finite")
        if np.any(w < 0):
            raise ValueError(f"state weights must be nonnegative, got {w.tolist()}")
        total = w.sum()
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"normalization violated: sum={total:.12g}")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return self.w.shape[0]

    @classmethod
    def from_amplitudes(cls, c) -> "StateWeights":
        """Weights of a state given by its (possibly complex) coefficients."""
        return cls(np.abs(np.asarray(c, dtype=complex)) ** 2)

    @classmethod
    def symmetric_2x2(cls, w00: float, w11: float, off: float) -> "StateWeights":
        """Two-strategy weights with ``off`` split evenly over both off-diagonal cells."""
        return cls([[w00, off / 2], [off / 2, w11]])

    def tolist(self) -> list:
        return self.w.tolist()


def classical_limit(n: int) -> StateWeights:
    """The unentangled state with all weight on ``|1,1>``; the quantum game equals the classical one."""
    if n not in (2, 3):
        raise ValueError(f"basis size must be 2 or 3, got {n}")
    w = np.zeros((n, n))
    w[0, 0] = 1.0
    return StateWeights(w)


def is_symmetric(s: StateWeights, tol: float = SYMMETRY_TOL) -> bool:
    """True when ``|w[i, j] - w[j, i]| <= tol`` for every off-diagonal pair.

    This is what makes the quantized game symmetric in the players.
    """
    return bool(np.all(np.abs(s.w - s.w.T) <= tol))


def _require_2x2(s: StateWeights) -> np.ndarray:
    if s.n != 2:
        raise ValueError(f"expected 2x2 state weights, got {s.n}x{s.n}")
    return s.w


def stability_factor(s: StateWeights) -> float:
    """``w00 - w01 - w10 + w11``.

    The quantum discriminant is the classical one times this factor, so its
    sign decides whether quantization preserves or reverses stability.
    """
    w = _require_2x2(s)
    return float((w[0, 0] + w[1, 1]) - (w[0, 1] + w[1, 0]))


def flip_condition_holds(s: StateWeights) -> bool:
    """Strict inequality ``w00 + w11 < w01 + w10``."""
    w = _require_2x2(s)
    return bool(w[0, 0] + w[1, 1] < w[0, 1] + w[1, 0])
