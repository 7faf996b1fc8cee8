"""Structural bounds on the reachable subspace of temporal networks."""
from .kernels import BACKEND
from .model import (BadN, ModelError, NotDedicated, Realization, SparsityPattern,
                    StructuredPair, TargetSpec, TemporalNetwork, Verdict)

__version__ = "0.1.0"

__all__ = ["BACKEND", "BadN", "ModelError", "NotDedicated", "Realization",
           "SparsityPattern", "StructuredPair", "TargetSpec", "TemporalNetwork", "Verdict"]
