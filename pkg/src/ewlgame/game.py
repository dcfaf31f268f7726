"""The two-player entangled quantum game.

The entangling gate is ``J(gamma) = exp(i gamma/2 D x D)`` with ``D = i sigma2``.
Since ``(D x D)^2 = I`` it has the closed form
``cos(gamma/2) I + i sin(gamma/2) D x D``.  A pair of player moves
``(U_A, U_B)`` produces the final state ``J^dag (U_A x U_B) J |++>`` whose
basis overlaps are the outcome amplitudes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NormError, RangeError
from .qlinalg import ATOL, D, I4, SU2Element, tensor_product

MAX_GAMMA = np.pi / 2
_DD = tensor_product(D, D)


@dataclass(frozen=True)
class GateOperator:
    gamma: float
    matrix: np.ndarray = field(repr=False, compare=False)

    @property
    def is_maximal(self) -> bool:
        return abs(self.gamma - MAX_GAMMA) <= 1e-12


def build_gate(gamma: float) -> GateOperator:
    """Entangling gate ``J(gamma)`` for ``0 <= gamma <= pi/2``."""
    gamma = float(gamma)
    if not (0.0 <= gamma <= MAX_GAMMA + 1e-15) or not np.isfinite(gamma):
        raise RangeError(f"gamma={gamma!r} outside [0, pi/2]")
    gamma = min(gamma, MAX_GAMMA)
    m = np.cos(gamma / 2) * I4 + 1j * np.sin(gamma / 2) * _DD
    m.setflags(write=False)
    return GateOperator(gamma, m)


@dataclass(frozen=True)
class GameState:
    vector: np.ndarray = field(compare=False)

    def __post_init__(self):
        n = np.linalg.norm(self.vector)
        if abs(n - 1.0) > 1e-9:
            raise NormError(f"state norm {n!r}, expected 1")


@dataclass(frozen=True)
class AmplitudeSet:
    """Amplitudes on |++>, |-+>, |+->, |-->, in that order."""

    a_pp: complex
    a_mp: complex
    a_pm: complex
    a_mm: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.a_pp, self.a_mp, self.a_pm, self.a_mm], dtype=complex)

    @classmethod
    def from_array(cls, v) -> "AmplitudeSet":
        v = np.asarray(v, dtype=complex)
        return cls(*(complex(x) for x in v))

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.as_array()) ** 2

    @property
    def max_imag(self) -> float:
        return float(np.max(np.abs(self.as_array().imag)))


@dataclass(frozen=True)
class PayoffTable:
    r: float = 3.0
    s: float = 0.0
    t: float = 5.0
    p: float = 1.0

    @property
    def is_prisoners_dilemma(self) -> bool:
        return self.t > self.r > self.p > self.s

    def require_prisoners_dilemma(self) -> "PayoffTable":
        if not self.is_prisoners_dilemma:
            raise ValueError(f"payoffs {self} do not satisfy t > r > p > s")
        return self

    @property
    def values(self) -> tuple[float, float, float, float]:
        return (self.r, self.s, self.t, self.p)

    def weights(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-outcome payoff vectors for Alice and Bob in basis order."""
        alice = np.array([self.r, self.t, self.s, self.p])
        bob = np.array([self.r, self.s, self.t, self.p])
        return alice, bob


DEFAULT_TABLE = PayoffTable()


@dataclass(frozen=True)
class PayoffPair:
    s_a: float
    s_b: float

    def as_tuple(self) -> tuple[float, float]:
        return (self.s_a, self.s_b)


def final_state(gate: GateOperator, ua: SU2Element, ub: SU2Element) -> GameState:
    j = gate.matrix
    moves = tensor_product(ua.matrix, ub.matrix)
    return GameState(j.conj().T @ (moves @ j[:, 0]))


def amplitudes(state: GameState) -> AmplitudeSet:
    return AmplitudeSet.from_array(state.vector)


def play(gate: GateOperator, ua: SU2Element, ub: SU2Element) -> AmplitudeSet:
    return amplitudes(final_state(gate, ua, ub))


def payoffs(amps: AmplitudeSet, table: PayoffTable = DEFAULT_TABLE) -> PayoffPair:
    probs = amps.probabilities
    total = probs.sum()
    if abs(total - 1.0) > 1e-9:
        raise NormError(f"probabilities sum to {total!r}")
    alice, bob = table.weights()
    return PayoffPair(float(alice @ probs), float(bob @ probs))


def batch_amplitudes(gate: GateOperator, ua: np.ndarray, ub: np.ndarray) -> np.ndarray:
    """Amplitudes for every pair from stacks of 2x2 matrices.

    ``ua`` has shape (n, 2, 2) and ``ub`` shape (m, 2, 2); returns (n, m, 4).
    """
    j = gate.matrix
    # Coefficient matrix psi[a, b] of J|++> with Alice index a, Bob index b.
    psi = j[:, 0].reshape(2, 2).T
    out = np.einsum("nac,cd,mbd->nmba", ua, psi, ub)
    # Flattening (b, a) with a fastest matches the basis ordering.
    out = out.reshape(ua.shape[0], ub.shape[0], 4)
    return np.einsum("ij,nmj->nmi", j.conj().T, out)


def pairwise_amplitudes(gate: GateOperator, ua: np.ndarray, ub: np.ndarray) -> np.ndarray:
    """Amplitudes for matched pairs ``(ua[k], ub[k])``; returns shape (n, 4)."""
    j = gate.matrix
    psi = j[:, 0].reshape(2, 2).T
    out = np.einsum("nac,cd,nbd->nba", ua, psi, ub).reshape(ua.shape[0], 4)
    return out @ j.conj()


def check_normalized(amps: AmplitudeSet, atol: float = ATOL) -> bool:
    return abs(amps.probabilities.sum() - 1.0) <= atol
