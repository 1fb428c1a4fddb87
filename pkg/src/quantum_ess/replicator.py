"""Replicator dynamics, integrated with explicit Euler steps on the simplex.

Used to corroborate stability verdicts: an ESS is asymptotically stable under
these dynamics (the converse need not hold, so this is a cross-check only).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .game_core import MixedStrategy, _probs, payoff_array

DEFAULT_DT = 0.01
DEFAULT_STEPS = 5000
DEFAULT_PERTURBATION = 1e-2
CONVERGENCE_TOL = 1e-6
# absorbs last-bit wobble once a run saturates at a vertex
MONOTONE_SLACK = 1e-12


class StabilityClass(enum.Enum):
    ATTRACTING = "Attracting"
    REPELLING = "Repelling"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Simulated population states; ``states[0]`` is the initial state."""

    states: np.ndarray
    dt: float
    steps: int

    @property
    def final(self) -> MixedStrategy:
        return MixedStrategy(self.states[-1])

    def __len__(self) -> int:
        return len(self.states)


def _step(x: list, A: list, dt: float) -> list:
    # plain floats: the arrays are tiny and this loop runs millions of times
    n = len(x)
    fitness = [sum(A[i][j] * x[j] for j in range(n)) for i in range(n)]
    mean = sum(x[i] * fitness[i] for i in range(n))
    y = [max(x[i] + dt * x[i] * (fitness[i] - mean), 0.0) for i in range(n)]
    total = sum(y)
    return [v / total for v in y]


def replicator_step(x, M, dt: float = DEFAULT_DT) -> MixedStrategy:
    """One Euler step of ``x_i' = x_i [(Mx)_i - x^T M x]``, clipped back onto the simplex."""
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    A = payoff_array(M)
    x = _probs(x)
    if x.size != A.shape[0]:
        raise ValueError(f"dimension mismatch: state of length {x.size} vs {A.shape[0]} strategies")
    return MixedStrategy(_step(x.tolist(), A.tolist(), dt))


def simulate(x0, M, dt: float = DEFAULT_DT, steps: int = DEFAULT_STEPS) -> Trajectory:
    if steps < 1:
        raise ValueError(f"steps must be at least 1, got {steps}")
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    A = payoff_array(M)
    x0 = _probs(x0)
    if x0.size != A.shape[0]:
        raise ValueError(f"dimension mismatch: state of length {x0.size} vs {A.shape[0]} strategies")
    rows, x = A.tolist(), x0.tolist()
    states = [x]
    for _ in range(steps):
        x = _step(x, rows, dt)
        states.append(x)
    return Trajectory(np.array(states), dt, steps)


def classify_stability(
    M,
    x_star: float,
    perturbation: float = DEFAULT_PERTURBATION,
    dt: float = DEFAULT_DT,
    steps: int = DEFAULT_STEPS,
    tol: float = CONVERGENCE_TOL,
) -> StabilityClass:
    """Kick a two-strategy population off ``x_star`` both ways and watch where it goes.

    Attracting if both runs end within ``tol`` of ``x_star``. Repelling if both
    move monotonically away and end farther than ``2 * perturbation``.
    """
    if not perturbation < x_star < 1.0 - perturbation:
        raise ValueError(
            f"x_star={x_star} is within perturbation={perturbation} of the simplex boundary"
        )
    endings = []
    for sign in (1.0, -1.0):
        traj = simulate(MixedStrategy.from_scalar(x_star + sign * perturbation), M, dt, steps)
        dist = np.abs(traj.states[:, 0] - x_star)
        if dist[-1] <= tol:
            endings.append(StabilityClass.ATTRACTING)
        elif dist[-1] > 2 * perturbation and np.all(np.diff(dist) >= -MONOTONE_SLACK):
            endings.append(StabilityClass.REPELLING)
        else:
            endings.append(StabilityClass.INCONCLUSIVE)
    if endings[0] == endings[1]:
        return endings[0]
    return StabilityClass.INCONCLUSIVE
