"""Evolutionary stability of mixed equilibria in symmetric games, classical and quantized."""
from .ess_analyzer import StabilityReport, analyze
from .game_core import MixedStrategy, PayoffMatrix, ess_verdict, expected_payoff
from .quantum_state import StateWeights, classical_limit
from .quantum_transform import OperatorSet, QuantumPayoffMatrix, transform

__all__ = [
    "MixedStrategy",
    "OperatorSet",
    "PayoffMatrix",
    "QuantumPayoffMatrix",
    "StabilityReport",
    "StateWeights",
    "analyze",
    "classical_limit",
    "ess_verdict",
    "expected_payoff",
    "transform",
]

__version__ = "0.1.0"
