"""Stabilizers of the entangled initial state and the counterstrategy.

At maximal entanglement the pairs ``(U, U0 U U0^dag)`` fix ``J|++>`` for a
single fixed ``U0``; splitting any strategy pair through this subgroup lets
one player reach any target outcome whatever the other plays.  Below
maximal entanglement only ``(exp(i d sigma3), exp(-i d sigma3))`` survives.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import game
from .errors import ConvergenceError, RangeError
from .qlinalg import (
    SIGMA1,
    SIGMA2,
    SIGMA3,
    SU2Element,
    su2_exp,
    su2_from_matrix,
    su2_random_batch,
    tensor_product,
)

FIXING_TOL = 1e-10


@dataclass(frozen=True)
class StabilityConjugator:
    u0: SU2Element


@dataclass(frozen=True)
class LowGammaStabilizer:
    delta: float

    def pair(self) -> tuple[SU2Element, SU2Element]:
        return low_gamma_stabilizer(self.delta)


def initial_state(gamma: float = game.MAX_GAMMA) -> np.ndarray:
    return game.build_gate(gamma).matrix[:, 0].copy()


def coefficient_matrix(state) -> np.ndarray:
    """``psi[a, b]`` with Alice index a and Bob index b."""
    return np.asarray(state, dtype=complex).reshape(2, 2).T


def fixing_residual(ua: SU2Element, ub: SU2Element, gamma: float = game.MAX_GAMMA) -> float:
    """``||(U x V) J(gamma)|++> - J(gamma)|++>||``."""
    psi = initial_state(gamma)
    return float(np.linalg.norm(tensor_product(ua.matrix, ub.matrix) @ psi - psi))


_PROBES = tuple(su2_exp(0.7, axis) for axis in np.eye(3))


def _canonical_sign(m: np.ndarray) -> np.ndarray:
    for entry in m.flat:
        if abs(entry) > 1e-12:
            if entry.real < 0 or (abs(entry.real) <= 1e-12 and entry.imag < 0):
                return -m
            return m
    return m


@lru_cache(maxsize=None)
def derive_u0() -> StabilityConjugator:
    """Solve for U0 from the state-fixing condition at maximal entanglement.

    ``U psi V^T = psi`` forces ``V = psi^T conj(U) psi^-T``; U0 is the matrix X
    with ``X U = V X`` on three non-commuting probe moves, found as the null
    vector of the stacked linear system.  The sign is fixed so that the first
    nonzero entry of U0 has positive real part.
    """
    psi = coefficient_matrix(initial_state())
    psi_t_inv = np.linalg.inv(psi.T)
    rows = []
    for probe in _PROBES:
        u = probe.matrix
        v = psi.T @ u.conj() @ psi_t_inv
        # Linear map X -> X U - V X, one column per basis matrix of X.
        cols = []
        for k in range(4):
            x = np.zeros(4, dtype=complex)
            x[k] = 1.0
            x = x.reshape(2, 2)
            cols.append((x @ u - v @ x).ravel())
        rows.append(np.column_stack(cols))
    system = np.vstack(rows)
    _, sing, vh = np.linalg.svd(system)
    x = vh[-1].conj().reshape(2, 2)
    x = x / np.sqrt(np.linalg.det(x))
    x = _canonical_sign(x)
    u0 = su2_from_matrix(x, atol=1e-8)

    conj = StabilityConjugator(u0)
    checks = list(_PROBES) + su2_random_batch(16, seed=20240917)
    worst = max(fixing_residual(*stability_element(u, conj)) for u in checks)
    if worst > FIXING_TOL or sing[-1] > FIXING_TOL:
        raise ConvergenceError(
            f"U0 solve residual {worst:.3e} (smallest singular value {sing[-1]:.3e})"
        )
    return conj


def stability_element(u: SU2Element, conj: StabilityConjugator | None = None) -> tuple[SU2Element, SU2Element]:
    u0 = (conj or derive_u0()).u0
    return u, u0 @ u @ u0.dagger()


def counterstrategy(
    target_ua: SU2Element,
    target_ub: SU2Element,
    alice_move: SU2Element,
    conj: StabilityConjugator | None = None,
) -> SU2Element:
    """Bob's reply to ``alice_move`` reproducing the target pair's amplitudes.

    Only guaranteed at maximal entanglement.
    """
    u0 = (conj or derive_u0()).u0
    return target_ub @ u0 @ target_ua.dagger() @ alice_move @ u0.dagger()


def alice_counterstrategy(
    target_ua: SU2Element,
    target_ub: SU2Element,
    bob_move: SU2Element,
    conj: StabilityConjugator | None = None,
) -> SU2Element:
    """Mirror of :func:`counterstrategy` with the roles exchanged."""
    u0 = (conj or derive_u0()).u0
    return target_ua @ u0.dagger() @ target_ub.dagger() @ bob_move @ u0


def low_gamma_stabilizer(delta: float, gamma: float = 0.0) -> tuple[SU2Element, SU2Element]:
    if not 0.0 <= gamma < game.MAX_GAMMA:
        raise RangeError(f"gamma={gamma!r} outside [0, pi/2)")
    phase = np.exp(1j * delta)
    return SU2Element(phase, 0j), SU2Element(phase.conjugate(), 0j)


def stabilizer_dimension(gamma: float, rel_tol: float = 1e-8) -> int:
    """Dimension of the Lie algebra of the stabilizer of ``J(gamma)|++>``.

    Linearizes ``(U, V) -> (U x V) psi`` at the identity along the six
    generators ``i sigma_k`` of both players and counts the null space.
    """
    psi = initial_state(gamma)
    gens = [1j * s for s in (SIGMA1, SIGMA2, SIGMA3)]
    eye = np.eye(2)
    cols = [tensor_product(g, eye) @ psi for g in gens]
    cols += [tensor_product(eye, g) @ psi for g in gens]
    jac = np.vstack([np.column_stack(cols).real, np.column_stack(cols).imag])
    sing = np.linalg.svd(jac, compute_uv=False)
    rank = int(np.sum(sing > rel_tol * sing[0]))
    return 6 - rank
