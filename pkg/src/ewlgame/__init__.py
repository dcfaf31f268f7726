"""Maximally entangled two-player quantum game: amplitudes, SO(4) and
quaternion forms, stabilizers, counterstrategies and equilibrium search."""

from .errors import (
    BudgetError,
    ConvergenceError,
    DegeneratePointError,
    NormError,
    RangeError,
    RealityError,
)
from .game import DEFAULT_TABLE, AmplitudeSet, PayoffTable, build_gate, payoffs, play
from .qlinalg import DEFECT, IDENTITY, SU2Element, su2_from_params, su2_random, tensor_product

__version__ = "0.1.0"
