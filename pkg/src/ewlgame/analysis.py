"""Numerical checks of the structural properties of the game.

Strategies on grids and in Jacobians use the angles ``(theta, phi, psi)``
with ``alpha = cos(theta/2) e^{i phi}`` and ``beta = sin(theta/2) e^{i psi}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import game, quaternions, so4map, stability
from .errors import BudgetError, DegeneratePointError, NormError, RealityError
from .game import DEFAULT_TABLE, PayoffTable
from .qlinalg import IDENTITY, VALIDATION_TOL, SU2Element

RANK_REL_TOL = 1e-4
POLE_MARGIN = 1e-3
NASH_SLACK = 1e-12
DEFAULT_MAX_POINTS = 1_000_000


def strategy_from_angles(theta: float, phi: float, psi: float) -> SU2Element:
    return SU2Element(
        np.cos(theta / 2) * np.exp(1j * phi), np.sin(theta / 2) * np.exp(1j * psi)
    )


def angles_from_strategy(u: SU2Element) -> tuple[float, float, float]:
    a, b = complex(u.alpha), complex(u.beta)
    theta = 2 * np.arctan2(abs(b), abs(a))
    return float(theta), float(np.angle(a)), float(np.angle(b))


def _matrices_from_angles(angles: np.ndarray) -> np.ndarray:
    """Stack of 2x2 matrices from an (n, 3) array of angles."""
    theta, phi, psi = angles.T
    a = np.cos(theta / 2) * np.exp(1j * phi)
    b = np.sin(theta / 2) * np.exp(1j * psi)
    return np.stack(
        [np.stack([a, b], axis=-1), np.stack([-b.conj(), a.conj()], axis=-1)], axis=-2
    )


@dataclass(frozen=True)
class GammaScanRow:
    gamma: float
    max_imag: float
    jacobian_rank: int
    sample_count: int


def random_point(rng) -> np.ndarray:
    """Six angles for a random strategy pair, kept away from the theta poles."""
    rng = np.random.default_rng(rng)
    while True:
        theta = rng.uniform(0, np.pi, size=2)
        if np.all(np.minimum(theta, np.pi - theta) > POLE_MARGIN):
            break
    phi = rng.uniform(-np.pi, np.pi, size=2)
    psi = rng.uniform(-np.pi, np.pi, size=2)
    return np.array([theta[0], phi[0], psi[0], theta[1], phi[1], psi[1]])


def amplitude_vector(gamma: float, point) -> np.ndarray:
    """Real and imaginary parts of the four amplitudes, as 8 reals."""
    point = np.asarray(point, dtype=float)
    amps = game.play(
        game.build_gate(gamma), strategy_from_angles(*point[:3]), strategy_from_angles(*point[3:])
    ).as_array()
    return np.concatenate([amps.real, amps.imag])


def amplitude_jacobian(gamma: float, point, step: float = 1e-5) -> np.ndarray:
    """Central finite-difference Jacobian, shape (8, 6)."""
    point = np.asarray(point, dtype=float)
    cols = []
    for k in range(6):
        dx = np.zeros(6)
        dx[k] = step
        cols.append((amplitude_vector(gamma, point + dx) - amplitude_vector(gamma, point - dx)) / (2 * step))
    return np.column_stack(cols)


def strategy_manifold_rank(gamma: float, point, step: float = 1e-5) -> int:
    """Numerical rank of the strategy-to-amplitude map at ``point``.

    Singular values below ``1e-4 * sigma_max`` count as zero.
    """
    if not 1e-7 <= step <= 1e-3:
        raise ValueError(f"step={step!r} outside [1e-7, 1e-3]")
    sing = np.linalg.svd(amplitude_jacobian(gamma, point, step), compute_uv=False)
    if sing[0] < 1e-10:
        raise DegeneratePointError(f"sigma_max={sing[0]:.3e} at {point}")
    return int(np.sum(sing > RANK_REL_TOL * sing[0]))


def _haar_stack(n: int, rng) -> np.ndarray:
    v = rng.standard_normal((n, 4))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    a = v[:, 0] + 1j * v[:, 1]
    b = v[:, 2] + 1j * v[:, 3]
    return np.stack(
        [np.stack([a, b], axis=-1), np.stack([-b.conj(), a.conj()], axis=-1)], axis=-2
    )


def max_imag_over_samples(gamma: float, samples: int, seed: int) -> float:
    rng = np.random.default_rng(seed)
    ua = _haar_stack(samples, rng)
    ub = _haar_stack(samples, rng)
    amps = game.pairwise_amplitudes(game.build_gate(gamma), ua, ub)
    return float(np.max(np.abs(amps.imag)))


def reality_scan(gamma_grid, samples: int, seed: int) -> list[GammaScanRow]:
    """Largest imaginary amplitude part and Jacobian rank per entanglement angle.

    The same Haar samples and Jacobian point are used at every angle, so
    rows do not depend on grid order.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    point = random_point(np.random.default_rng([seed, 1]))
    rows = []
    for gamma in gamma_grid:
        rows.append(
            GammaScanRow(
                gamma=float(gamma),
                max_imag=max_imag_over_samples(gamma, samples, seed),
                jacobian_rank=strategy_manifold_rank(gamma, point),
                sample_count=samples,
            )
        )
    return rows


def achieve_amplitudes(target) -> tuple[SU2Element, SU2Element]:
    """Strategy pair ``(U_A, I)`` whose amplitudes at maximal entanglement equal ``target``."""
    target = np.asarray(target)
    if np.iscomplexobj(target):
        if np.max(np.abs(target.imag)) > VALIDATION_TOL:
            raise RealityError("target amplitudes must be real")
        target = target.real
    target = target.astype(float)
    if abs(np.linalg.norm(target) - 1.0) > VALIDATION_TOL:
        raise NormError(f"target norm {np.linalg.norm(target)!r}, expected 1")
    q = quaternions.quaternion_from_amplitudes(target)
    return quaternions.alice_from_q1(q), IDENTITY


def _outcome_profile(slot: int) -> tuple[SU2Element, SU2Element]:
    target = np.zeros(4)
    target[slot] = 1.0
    return achieve_amplitudes(target)


def best_response(
    opponent: SU2Element,
    responder: str,
    table: PayoffTable = DEFAULT_TABLE,
) -> tuple[SU2Element, float]:
    """Exact best response at maximal entanglement.

    The responder steers the game onto its most valuable outcome (``t`` in a
    Prisoners' Dilemma) with the counterstrategy construction.
    """
    alice_w, bob_w = table.weights()
    gate = game.build_gate(game.MAX_GAMMA)
    if responder == "bob":
        ua, ub = _outcome_profile(int(np.argmax(bob_w)))
        reply = stability.counterstrategy(ua, ub, opponent)
        pay = game.payoffs(game.play(gate, opponent, reply), table).s_b
    elif responder == "alice":
        ua, ub = _outcome_profile(int(np.argmax(alice_w)))
        reply = stability.alice_counterstrategy(ua, ub, opponent)
        pay = game.payoffs(game.play(gate, reply, opponent), table).s_a
    else:
        raise ValueError(f"responder must be 'alice' or 'bob', got {responder!r}")
    return reply, pay


@dataclass
class EquilibriumReport:
    gamma: float
    epsilon: float
    grid_resolution: int
    certification: str
    vacuous: bool
    candidates: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "gamma": self.gamma,
            "epsilon": self.epsilon,
            "grid_resolution": self.grid_resolution,
            "certification": self.certification,
            "vacuous": self.vacuous,
            "candidate_count": len(self.candidates),
            "candidates": self.candidates,
        }


def strategy_grid(grid_per_axis: int) -> np.ndarray:
    """All (theta, phi, psi) on the grid; theta includes both poles."""
    theta = np.linspace(0, np.pi, grid_per_axis)
    phase = np.linspace(0, 2 * np.pi, grid_per_axis, endpoint=False)
    t, f, s = np.meshgrid(theta, phase, phase, indexing="ij")
    return np.column_stack([t.ravel(), f.ravel(), s.ravel()])


def payoff_matrices(gamma: float, angles: np.ndarray, table: PayoffTable) -> tuple[np.ndarray, np.ndarray]:
    mats = _matrices_from_angles(angles)
    probs = np.abs(game.batch_amplitudes(game.build_gate(gamma), mats, mats)) ** 2
    alice_w, bob_w = table.weights()
    return probs @ alice_w, probs @ bob_w


def pure_nash_search(
    gamma: float,
    grid_per_axis: int,
    epsilon: float,
    table: PayoffTable = DEFAULT_TABLE,
    max_points: int = DEFAULT_MAX_POINTS,
) -> EquilibriumReport:
    """Grid points where neither player gains more than ``epsilon`` by deviating.

    At maximal entanglement deviations are evaluated exactly through
    :func:`best_response`; otherwise only deviations within the grid count.
    """
    if grid_per_axis < 4:
        raise ValueError("grid_per_axis must be >= 4")
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    if grid_per_axis**6 > max_points:
        raise BudgetError(f"grid {grid_per_axis}^6 = {grid_per_axis**6} exceeds cap {max_points}")

    angles = strategy_grid(grid_per_axis)
    pay_a, pay_b = payoff_matrices(gamma, angles, table)
    exact = abs(gamma - game.MAX_GAMMA) <= 1e-12
    if exact:
        moves = [strategy_from_angles(*a) for a in angles]
        best_a = np.array([best_response(m, "alice", table)[1] for m in moves])
        best_b = np.array([best_response(m, "bob", table)[1] for m in moves])
        certification = "counterstrategy-certified"
    else:
        best_a = pay_a.max(axis=0)
        best_b = pay_b.max(axis=1)
        certification = "grid-certified"

    gain = np.maximum(best_a[None, :] - pay_a, best_b[:, None] - pay_b)
    alive = np.argwhere(gain <= epsilon + NASH_SLACK)
    candidates = [
        {
            "alice": [float(x) for x in angles[i]],
            "bob": [float(x) for x in angles[j]],
            "max_gain": float(max(gain[i, j], 0.0)),
        }
        for i, j in alive
    ]
    spread = max(table.values) - min(table.values)
    return EquilibriumReport(
        gamma=float(gamma),
        epsilon=float(epsilon),
        grid_resolution=grid_per_axis,
        certification=certification,
        vacuous=epsilon >= spread,
        candidates=candidates,
    )


def contains_profile(report: EquilibriumReport, ua: SU2Element, ub: SU2Element, atol: float = 1e-9) -> bool:
    """Whether a candidate realizes the matrices ``ua``, ``ub``."""
    for cand in report.candidates:
        if strategy_from_angles(*cand["alice"]).allclose(ua, atol) and strategy_from_angles(
            *cand["bob"]
        ).allclose(ub, atol):
            return True
    return False


def cross_representation_residual(ua: SU2Element, ub: SU2Element) -> float:
    """Largest pairwise disagreement among the game, SO(4) and quaternion paths."""
    paths = [
        game.play(game.build_gate(game.MAX_GAMMA), ua, ub).as_array(),
        so4map.amplitudes_via_so4(so4map.so4_image(ua, ub, so4map.R_FRAME), so4map.R_FRAME).as_array(),
        so4map.amplitudes_via_so4(so4map.so4_image(ua, ub, so4map.RP_FRAME), so4map.RP_FRAME).as_array(),
        quaternions.amplitudes_via_quaternion(ua, ub).as_array(),
    ]
    return max(
        float(np.max(np.abs(p - q))) for i, p in enumerate(paths) for q in paths[i + 1 :]
    )

