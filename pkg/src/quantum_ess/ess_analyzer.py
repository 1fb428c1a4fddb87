"""Classical versus quantum stability of the interior mixed equilibrium of a 2x2 game."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

from .game_core import (
    DEGENERACY_TOL,
    ESS_TOL,
    NEStatus,
    PayoffMatrix,
    discriminant_2x2,
    enumerate_pure_ess,
    mixed_ne_2x2,
    payoff_array,
)
from .quantum_state import StateWeights, is_symmetric
from .quantum_transform import QuantumPayoffMatrix, transform_2x2

NE_MATCH_TOL = 1e-9


@dataclass(frozen=True)
class StabilityReport:
    """Joint classical/quantum verdict for one game and one initial state.

    ``None`` in a quantum verdict field means "not applicable": the state
    breaks player symmetry, so evolutionary stability is undefined.
    """

    classical_discriminant: float
    quantum_discriminant: float
    mixed_ne_classical: Optional[float]
    mixed_ne_quantum: Optional[float]
    ne_status_classical: str
    ne_status_quantum: str
    ne_preserved: bool
    classical_mixed_is_ess: bool
    quantum_mixed_is_ess: Optional[bool]
    flip: bool
    pure_ess_classical: list
    pure_ess_quantum: Optional[list]
    state_symmetric: bool
    omega: list

    def to_dict(self) -> dict:
        return asdict(self)

    @property
    def degenerate(self) -> bool:
        return NEStatus.DEGENERATE.value in (self.ne_status_classical, self.ne_status_quantum)


def classical_discriminant(alpha: PayoffMatrix) -> float:
    return discriminant_2x2(alpha)


def quantum_discriminant(omega: QuantumPayoffMatrix) -> float:
    """``omega11 - omega13 - omega31 + omega33``; the mixed NE is an ESS iff this is negative."""
    return discriminant_2x2(omega)


def mixed_ne_quantum(omega: QuantumPayoffMatrix) -> Optional[float]:
    return mixed_ne_2x2(omega).x


def ne_preservation_check(alpha: PayoffMatrix, tol: float = ESS_TOL) -> bool:
    """True when ``alpha33 - alpha13 == alpha11 - alpha31`` within ``tol``.

    Under this condition the mixed equilibrium sits at 1/2 for every state,
    classical or quantum, so quantization can only change its stability.
    """
    a = payoff_array(alpha)
    if a.shape != (2, 2):
        raise ValueError(f"expected a 2x2 payoff matrix, got {a.shape}")
    return abs(math.fsum((a[1, 1], -a[0, 1], -a[0, 0], a[1, 0]))) <= tol


def _interior_ess(status: NEStatus, disc: float, scale: float) -> bool:
    return status is NEStatus.INTERIOR and disc < -DEGENERACY_TOL * scale


def analyze(alpha: PayoffMatrix, s: StateWeights, tol: float = ESS_TOL) -> StabilityReport:
    """Full classical-vs-quantum stability report for a 2x2 game and a 2x2 state.

    The interior mixed equilibrium is an ESS exactly when the discriminant is
    negative; boundary roots count as pure equilibria and zero discriminants as
    degenerate (no isolated equilibrium, no stability claim). A flip is reported
    when both forms share the same interior equilibrium and disagree on its
    stability.
    """
    a = payoff_array(alpha)
    if a.shape != (2, 2) or s.n != 2:
        raise ValueError("analyze needs a 2x2 payoff matrix and 2x2 state weights")
    omega = transform_2x2(a, s)
    cd = classical_discriminant(a)
    qd = quantum_discriminant(omega)
    ne_c = mixed_ne_2x2(a)
    ne_q = mixed_ne_2x2(omega)
    scale = max(1.0, float(abs(a).max()))

    symmetric = is_symmetric(s)
    classical_ess = _interior_ess(ne_c.status, cd, scale)
    quantum_ess = _interior_ess(ne_q.status, qd, scale) if symmetric else None
    preserved = bool(
        ne_c.status is NEStatus.INTERIOR
        and ne_q.status is NEStatus.INTERIOR
        and abs(ne_c.x - ne_q.x) <= NE_MATCH_TOL
    )
    flip = bool(symmetric and preserved and classical_ess != quantum_ess)

    return StabilityReport(
        classical_discriminant=cd,
        quantum_discriminant=qd,
        mixed_ne_classical=ne_c.x if ne_c.status is NEStatus.INTERIOR else None,
        mixed_ne_quantum=ne_q.x if ne_q.status is NEStatus.INTERIOR else None,
        ne_status_classical=ne_c.status.value,
        ne_status_quantum=ne_q.status.value,
        ne_preserved=preserved,
        classical_mixed_is_ess=classical_ess,
        quantum_mixed_is_ess=quantum_ess,
        flip=flip,
        pure_ess_classical=enumerate_pure_ess(a, tol),
        pure_ess_quantum=enumerate_pure_ess(omega, tol) if symmetric else None,
        state_symmetric=symmetric,
        omega=omega.tolist(),
    )
