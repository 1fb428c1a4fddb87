"""Quantum payoff matrix of a game played by permuting basis states of a shared state.

Each player applies one operator from an :class:`OperatorSet` to their half of
the initial state; the outcome ``(k, l)`` is then read off in the computational
basis and paid as in the classical game. An operator that relabels basis state
``i`` as ``pi(i)`` moves weight ``w[i, j]`` to outcome ``(pi_mu(i), pi_nu(j))``,
hence

    omega[mu, nu] = sum_kl alpha[k, l] * w[pi_mu^-1(k), pi_nu^-1(l)].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .game_core import PayoffMatrix, payoff_array
from .quantum_state import StateWeights


@dataclass(frozen=True)
class OperatorSet:
    """Basis permutations available to both players; ``perms[0]`` must be the identity."""

    perms: tuple
    names: tuple = field(default=())

    def __post_init__(self):
        perms = tuple(tuple(int(v) for v in p) for p in self.perms)
        if not perms:
            raise ValueError("operator set must contain at least the identity")
        n = len(perms[0])
        for p in perms:
            if len(p) != n or sorted(p) != list(range(n)):
                raise ValueError(f"operator {p} is not a permutation of 0..{n - 1}")
        if perms[0] != tuple(range(n)):
            raise ValueError("the first operator must be the identity")
        names = tuple(self.names) or tuple(f"U{i}" for i in range(len(perms)))
        if len(names) != len(perms):
            raise ValueError("operator names and permutations differ in length")
        object.__setattr__(self, "perms", perms)
        object.__setattr__(self, "names", names)

    @property
    def n(self) -> int:
        return len(self.perms[0])

    @property
    def k(self) -> int:
        return len(self.perms)

    def inverses(self) -> list[np.ndarray]:
        return [np.argsort(p) for p in self.perms]

    @classmethod
    def rsp3(cls) -> "OperatorSet":
        """Identity, D swapping labels 1 and 2, C swapping labels 1 and 3."""
        return cls(((0, 1, 2), (1, 0, 2), (2, 1, 0)), ("I", "D", "C"))

    @classmethod
    def id_swap2(cls) -> "OperatorSet":
        return cls(((0, 1), (1, 0)), ("I", "C"))

    @classmethod
    def default(cls, n: int) -> "OperatorSet":
        if n == 2:
            return cls.id_swap2()
        if n == 3:
            return cls.rsp3()
        raise ValueError(f"no default operator set for n={n}")


PRESETS = {"rsp3": OperatorSet.rsp3, "id-swap2": OperatorSet.id_swap2}


@dataclass(frozen=True, eq=False)
class QuantumPayoffMatrix:
    """``entries[mu, nu]``: row player's payoff for operator mu against operator nu."""

    entries: np.ndarray
    operators: OperatorSet | None = None

    def __post_init__(self):
        m = np.array(self.entries, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"quantum payoff matrix must be square, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("quantum payoff entries must be finite")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def k(self) -> int:
        return self.entries.shape[0]

    def tolist(self) -> list:
        return self.entries.tolist()


def _check_shapes(alpha: np.ndarray, s: StateWeights, ops: OperatorSet) -> None:
    if not (alpha.shape[0] == s.n == ops.n):
        raise ValueError(
            f"dimension mismatch: alpha is {alpha.shape[0]}x{alpha.shape[0]}, "
            f"weights {s.n}x{s.n}, operators act on {ops.n} labels"
        )


def coefficient_matrix(s: StateWeights, ops: OperatorSet) -> np.ndarray:
    """Linear map from flattened ``alpha`` (n*n) to flattened ``omega`` (k*k).

    Row ``(k, l)``, column ``(mu, nu)`` holds ``w[pi_mu^-1(k), pi_nu^-1(l)]``. For
    three labels and the I, D, C operators this is the 9x9 table of the scheme.
    """
    inv = ops.inverses()
    n, k = ops.n, ops.k
    coef = np.empty((n * n, k * k))
    for mu in range(k):
        for nu in range(k):
            coef[:, mu * k + nu] = s.w[np.ix_(inv[mu], inv[nu])].ravel()
    return coef


def transform(
    alpha: PayoffMatrix, s: StateWeights, ops: OperatorSet | None = None
) -> QuantumPayoffMatrix:
    """Quantum payoff matrix of ``alpha`` played on the state ``s``."""
    a = payoff_array(alpha)
    ops = ops or OperatorSet.default(a.shape[0])
    _check_shapes(a, s, ops)
    omega = a.ravel() @ coefficient_matrix(s, ops)
    return QuantumPayoffMatrix(omega.reshape(ops.k, ops.k), ops)


def transform_2x2(alpha: PayoffMatrix, s: StateWeights) -> QuantumPayoffMatrix:
    """Closed form of :func:`transform` for two strategies with operators I and C."""
    a = payoff_array(alpha)
    if a.shape != (2, 2) or s.n != 2:
        raise ValueError("transform_2x2 needs a 2x2 payoff matrix and 2x2 weights")
    (a11, a13), (a31, a33) = a
    (c11, c13), (c31, c33) = s.w
    w11 = c11 * a11 + c13 * a13 + c31 * a31 + c33 * a33
    w13 = c13 * a11 + c11 * a13 + c33 * a31 + c31 * a33
    w31 = c31 * a11 + c33 * a13 + c11 * a31 + c13 * a33
    w33 = c33 * a11 + c31 * a13 + c13 * a31 + c11 * a33
    return QuantumPayoffMatrix([[w11, w13], [w31, w33]], OperatorSet.id_swap2())


def oracle_transform(
    alpha: PayoffMatrix, s: StateWeights, ops: OperatorSet | None = None
) -> QuantumPayoffMatrix:
    """Reference evaluation by moving weights forward, one operator pair at a time.

    Shares no code with :func:`transform`: no inverse permutations, no
    coefficient table, plain loops.
    """
    a = payoff_array(alpha)
    ops = ops or OperatorSet.default(a.shape[0])
    _check_shapes(a, s, ops)
    n = ops.n
    out = [[0.0] * ops.k for _ in range(ops.k)]
    for mu, pm in enumerate(ops.perms):
        for nu, pn in enumerate(ops.perms):
            moved = [[0.0] * n for _ in range(n)]
            for i in range(n):
                for j in range(n):
                    moved[pm[i]][pn[j]] = float(s.w[i, j])
            out[mu][nu] = sum(float(a[k, l]) * moved[k][l] for k in range(n) for l in range(n))
    return QuantumPayoffMatrix(out, ops)


def column_player_matrix(
    alpha: PayoffMatrix, s: StateWeights, ops: OperatorSet | None = None
) -> np.ndarray:
    """Column player's payoffs, indexed ``[row operator, column operator]``.

    The quantum game is symmetric when this equals the transpose of
    ``transform(alpha, s, ops)``.
    """
    return transform(payoff_array(alpha).T, s, ops).entries


def restrict(omega: QuantumPayoffMatrix, keep: Sequence[int]) -> QuantumPayoffMatrix:
    """Sub-game where players only use the operators in ``keep``."""
    keep = list(keep)
    ops = None
    if omega.operators is not None:
        ops_perms = [omega.operators.perms[i] for i in keep]
        if ops_perms and ops_perms[0] == tuple(range(omega.operators.n)):
            ops = OperatorSet(ops_perms, [omega.operators.names[i] for i in keep])
    return QuantumPayoffMatrix(omega.entries[np.ix_(keep, keep)], ops)
