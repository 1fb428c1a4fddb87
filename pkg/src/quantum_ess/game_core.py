"""Classical symmetric matrix games: payoffs, Nash tests and evolutionary stability.

The row player receives ``M[i, j]`` when playing ``i`` against ``j``; the column
player's matrix is the transpose, so only ``M`` is stored.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

ESS_TOL = 1e-9
SUPPORT_THRESHOLD = 1e-12
PROB_TOL = 1e-12
SUM_TOL = 1e-9
# relative band under which a 2x2 discriminant counts as zero
DEGENERACY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class PayoffMatrix:
    """Row-player payoffs of a symmetric two-player game with 2 or 3 strategies."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"payoff matrix must be square, got shape {a.shape}")
        if a.shape[0] not in (2, 3):
            raise ValueError(f"payoff matrix must be 2x2 or 3x3, got {a.shape[0]}x{a.shape[0]}")
        if not np.all(np.isfinite(a)):
            raise ValueError("payoff matrix entries must be finite")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def tolist(self) -> list:
        return self.entries.tolist()


@dataclass(frozen=True, eq=False)
class MixedStrategy:
    """Probability vector over pure strategies. Validated, never renormalized."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.array(self.probs, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("mixed strategy must be a non-empty vector")
        if not np.all(np.isfinite(p)):
            raise ValueError("mixed strategy components must be finite")
        if np.any(p < -PROB_TOL) or np.any(p > 1 + PROB_TOL):
            raise ValueError(f"mixed strategy components must lie in [0, 1], got {p.tolist()}")
        if abs(p.sum() - 1.0) > SUM_TOL:
            raise ValueError(f"mixed strategy must sum to 1, got sum={p.sum():.12g}")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @property
    def n(self) -> int:
        return self.probs.size

    @classmethod
    def pure(cls, i: int, n: int) -> "MixedStrategy":
        p = np.zeros(n)
        p[i] = 1.0
        return cls(p)

    @classmethod
    def from_scalar(cls, x: float) -> "MixedStrategy":
        """Two-strategy mix ``[x, 1 - x]``; ``x`` weights the first strategy."""
        return cls([x, 1.0 - x])

    def tolist(self) -> list:
        return self.probs.tolist()


class ESSBranch(enum.Enum):
    STRICT_NASH = "StrictNash"
    NEUTRAL_STABLE = "NeutralStable"
    NEUTRAL_UNSTABLE = "NeutralUnstable"
    NOT_NASH = "NotNash"


@dataclass(frozen=True)
class ESSVerdict:
    is_nash: bool
    is_ess: bool
    branch: ESSBranch
    # a strategy refuting stability; None when p is an ESS
    worst_invader: Optional[MixedStrategy] = None


class NEStatus(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUT_OF_RANGE = "out_of_range"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class MixedNE2x2:
    status: NEStatus
    x: Optional[float]
    # the raw formula value, also when it falls outside [0, 1]
    raw: Optional[float] = None


MatrixLike = Union[PayoffMatrix, np.ndarray, list]
StrategyLike = Union[MixedStrategy, np.ndarray, list]


def payoff_array(M) -> np.ndarray:
    """Return the payoff grid of any matrix-like (PayoffMatrix, QuantumPayoffMatrix, array)."""
    a = getattr(M, "entries", M)
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"payoff matrix must be square, got shape {a.shape}")
    return a


def _probs(p) -> np.ndarray:
    if isinstance(p, MixedStrategy):
        return p.probs
    return MixedStrategy(p).probs


def _check_dims(A: np.ndarray, *vectors: np.ndarray) -> None:
    for v in vectors:
        if v.size != A.shape[0]:
            raise ValueError(
                f"dimension mismatch: strategy of length {v.size} vs {A.shape[0]}x{A.shape[0]} matrix"
            )


def expected_payoff(p: StrategyLike, q: StrategyLike, M: MatrixLike) -> float:
    """Expected payoff ``p^T M q`` to a p-player meeting a q-player."""
    A = payoff_array(M)
    x, y = _probs(p), _probs(q)
    _check_dims(A, x, y)
    return float(x @ A @ y)


def support(p: StrategyLike, threshold: float = SUPPORT_THRESHOLD) -> frozenset:
    """Indices of pure strategies played with probability above ``threshold``."""
    return frozenset(int(i) for i in np.flatnonzero(_probs(p) > threshold))


def best_replies(p: StrategyLike, M: MatrixLike, tol: float = ESS_TOL) -> frozenset:
    """Pure strategies whose payoff against ``p`` is within ``tol`` of the best one."""
    A = payoff_array(M)
    x = _probs(p)
    _check_dims(A, x)
    payoffs = A @ x
    return frozenset(int(i) for i in np.flatnonzero(payoffs >= payoffs.max() - tol))


def is_symmetric_nash(p: StrategyLike, M: MatrixLike, tol: float = ESS_TOL) -> bool:
    """True when no pure deviation gains more than ``tol`` against ``p``.

    Checking pure deviations suffices because the payoff is linear in the
    deviating strategy.
    """
    A = payoff_array(M)
    x = _probs(p)
    _check_dims(A, x)
    payoffs = A @ x
    return bool(x @ payoffs >= payoffs.max() - tol)


def invasion_payoff_difference(
    p: StrategyLike, q: StrategyLike, M: MatrixLike, eps: float = 1e-3
) -> float:
    """``P[p, (1-eps)p + eps q] - P[q, (1-eps)p + eps q]``.

    Positive means the incumbent ``p`` does better than the mutant ``q`` in the
    post-entry population at this invasion share.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    A = payoff_array(M)
    x, y = _probs(p), _probs(q)
    _check_dims(A, x, y)
    mix = (1.0 - eps) * x + eps * y
    return float((x - y) @ A @ mix)


def _sum_zero_basis(idx: list[int], n: int) -> np.ndarray:
    """Orthonormal basis (n x k) of {d : supp(d) in idx, sum(d) = 0}."""
    k = len(idx)
    diffs = np.zeros((n, k - 1))
    for c in range(1, k):
        diffs[idx[0], c - 1] = -1.0
        diffs[idx[c], c - 1] = 1.0
    q, _ = np.linalg.qr(diffs)
    return q


def _max_on_cone(G: np.ndarray, C: np.ndarray) -> tuple[float, np.ndarray]:
    """Maximize the quadratic form ``z^T G z`` over unit z with ``C z >= 0``.

    Only dimensions 1 and 2 occur (at most three strategies). In the plane the
    maximum over an arc sits either at an eigen-direction or at an arc endpoint,
    and arc endpoints are directions orthogonal to a constraint row.
    """
    k = G.shape[0]
    if k == 1:
        candidates = [np.array([1.0]), np.array([-1.0])]
    elif k == 2:
        _, vecs = np.linalg.eigh(G)
        candidates = [s * vecs[:, i] for i in range(2) for s in (1.0, -1.0)]
        for c in C:
            norm = math.hypot(c[0], c[1])
            if norm > 0:
                perp = np.array([-c[1], c[0]]) / norm
                candidates += [perp, -perp]
    else:
        raise ValueError("exact ESS check supports at most three strategies")

    best_val, best_z = -math.inf, None
    for z in candidates:
        if C.size and np.any(C @ z < -1e-12):
            continue
        val = float(z @ G @ z)
        if val > best_val:
            best_val, best_z = val, z
    return best_val, best_z


def ess_verdict(p: StrategyLike, M: MatrixLike, tol: float = ESS_TOL) -> ESSVerdict:
    """Decide whether ``p`` is an evolutionarily stable strategy of ``M``.

    A Nash strategy ``p`` is stable against a mutant ``q`` either because ``q``
    earns strictly less against ``p`` (first condition), or because ``q`` ties
    against ``p`` but ``p`` beats ``q`` in ``q``-populations (second condition).
    Only mutants supported on the best replies to ``p`` can tie. Writing
    ``q = p + d`` for such a mutant, the second condition reads
    ``d^T M d < 0``, so stability reduces to negativity of the quadratic form
    on the cone of feasible directions ``d``. That cone is at most two
    dimensional here and is checked exactly.

    Parameters
    ----------
    p : MixedStrategy or array_like
        Candidate strategy.
    M : PayoffMatrix, QuantumPayoffMatrix or array_like
        Square payoff matrix with at most three strategies.
    tol : float
        Payoff ties within ``tol`` count as equalities.

    Returns
    -------
    ESSVerdict
        ``worst_invader`` is a mutant that refutes stability, or None.
    """
    A = payoff_array(M)
    x = _probs(p)
    n = A.shape[0]
    _check_dims(A, x)
    if n > 3:
        raise ValueError("ess_verdict supports at most three strategies")

    payoffs = A @ x
    base = float(x @ payoffs)
    top = int(np.argmax(payoffs))
    if payoffs[top] > base + tol:
        return ESSVerdict(False, False, ESSBranch.NOT_NASH, MixedStrategy.pure(top, n))

    supp = support(x)
    ties = set(int(i) for i in np.flatnonzero(payoffs >= base - tol)) | supp
    if len(ties) == 1:
        return ESSVerdict(True, True, ESSBranch.STRICT_NASH, None)

    idx = sorted(ties)
    V = _sum_zero_basis(idx, n)
    G = V.T @ (0.5 * (A + A.T)) @ V
    # mutant may only add weight to tied strategies outside the support
    C = V[[j for j in idx if j not in supp], :]
    worst, z = _max_on_cone(G, C)
    if worst < -tol:
        return ESSVerdict(True, True, ESSBranch.NEUTRAL_STABLE, None)

    d = V @ z
    neg = d < -1e-15
    t = float(np.min(x[neg] / -d[neg])) if np.any(neg) else 1.0
    q = np.clip(x + t * d, 0.0, None)
    q /= q.sum()
    return ESSVerdict(True, False, ESSBranch.NEUTRAL_UNSTABLE, MixedStrategy(q))


def enumerate_pure_ess(M: MatrixLike, tol: float = ESS_TOL) -> list[int]:
    """Indices of pure strategies that are evolutionarily stable."""
    A = payoff_array(M)
    n = A.shape[0]
    return [i for i in range(n) if ess_verdict(MixedStrategy.pure(i, n), A, tol).is_ess]


def discriminant_2x2(M: MatrixLike) -> float:
    """``M00 - M01 - M10 + M11``; negative makes an interior mixed NE stable."""
    A = payoff_array(M)
    if A.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got {A.shape}")
    return math.fsum((A[0, 0], -A[0, 1], -A[1, 0], A[1, 1]))


def mixed_ne_2x2(M: MatrixLike, tol: float = ESS_TOL) -> MixedNE2x2:
    """Solve the indifference condition of a 2x2 game for ``x``, the weight on strategy 0.

    A root counts as boundary, not interior, when a pure strategy at the near
    end already ties with its deviation within ``tol``: the payoff gain from
    leaving pure strategy 1 is ``x * |den|`` and from leaving 0 is
    ``(1 - x) * |den|``.
    """
    A = payoff_array(M)
    den = discriminant_2x2(A)
    scale = max(1.0, float(np.max(np.abs(A))))
    if abs(den) <= DEGENERACY_TOL * scale:
        return MixedNE2x2(NEStatus.DEGENERATE, None)
    x = float((A[1, 1] - A[0, 1]) / den)
    if x < 0.0 or x > 1.0:
        return MixedNE2x2(NEStatus.OUT_OF_RANGE, None, x)
    if min(x, 1.0 - x) * abs(den) <= tol:
        return MixedNE2x2(NEStatus.BOUNDARY, x, x)
    return MixedNE2x2(NEStatus.INTERIOR, x, x)


def find_mixed_ne_2x2(M: MatrixLike) -> Optional[float]:
    """The equalizing mix ``x*`` if it exists and lies in [0, 1], else None.

    Use :func:`mixed_ne_2x2` to tell a degenerate game from an out-of-range root.
    """
    return mixed_ne_2x2(M).x


def simplex_grid(n: int, step: float) -> np.ndarray:
    """All points of the probability simplex whose coordinates are multiples of ``step``."""
    m = int(round(1.0 / step))
    if not math.isclose(m * step, 1.0, rel_tol=1e-9):
        raise ValueError(f"1/step must be an integer, got step={step}")
    if n == 2:
        i = np.arange(m + 1)
        return np.column_stack([i, m - i]) / m
    if n == 3:
        i, j = np.triu_indices(m + 1)
        # i <= j, so (i, j - i, m - j) covers every composition of m
        return np.column_stack([i, j - i, m - j]) / m
    raise ValueError("simplex grids are provided for 2 or 3 strategies")


def brute_force_ess(
    p: StrategyLike, M: MatrixLike, step: float = 1e-3, tol: float = 1e-10
) -> tuple[bool, Optional[MixedStrategy]]:
    """Grid oracle for evolutionary stability, independent of :func:`ess_verdict`.

    Every mutant ``q`` on a simplex grid is checked against the two stability
    conditions directly. With ``d = q - p``, the first condition compares
    ``P(p,p) - P(q,p) = -d.Mp`` with zero; on a tie the second compares
    ``P(p,q) - P(q,q) = -d.Md``. Each quantity is divided by the matching power
    of ``|d|`` so mutants very close to ``p`` are judged on the same scale.
    Returns ``(stable, invader)``.
    """
    A = payoff_array(M)
    x = _probs(p)
    _check_dims(A, x)
    D = simplex_grid(A.shape[0], step) - x
    norm = np.linalg.norm(D, axis=1)
    D, norm = D[norm > 1e-12], norm[norm > 1e-12]
    first = -(D @ (A @ x)) / norm
    second = -np.einsum("ij,jk,ik->i", D, A, D) / norm**2
    lead = np.where(np.abs(first) > tol, first, second)
    bad = lead <= tol
    if not np.any(bad):
        return True, None
    k = int(np.argmin(np.where(bad, lead, np.inf)))
    q = np.clip(x + D[k], 0.0, None)
    return False, MixedStrategy(q / q.sum())
