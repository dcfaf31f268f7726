"""Invariant suites run by ``ewlgame verify``.

Each check measures a residual and compares it with a fixed tolerance.
Module constants (frames in particular) are looked up at call time so a
corrupted constant is caught rather than bypassed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import analysis, game, qlinalg, quaternions, so4map, stability
from .errors import EWLError

SUITES = ("reality", "so4", "quaternion", "stability")


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    residual: float
    tol: float
    passed: bool
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.suite}.{self.name} residual={self.residual:.3e} tol={self.tol:.0e}"
        return f"{text} ({self.note})" if self.note else text


def _run(suite: str, name: str, tol: float, fn) -> CheckResult:
    try:
        residual = float(fn())
    except EWLError as exc:
        return CheckResult(suite, name, float("inf"), tol, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(suite, name, residual, tol, residual <= tol)


def _pairs(n: int, seed: int):
    moves = qlinalg.su2_random_batch(2 * n, seed)
    return list(zip(moves[::2], moves[1::2]))


# Tabulated transformed basis at maximal entanglement, before the common phase.
TILDE_REAL = np.array(
    [[1, 0, 0, 1], [0, 1, -1, 0], [0, 1, 1, 0], [1, 0, 0, -1]], dtype=float
)
TILDE_PHASE = (1 / np.sqrt(2)) * (1 + 1j) / np.sqrt(2)


def reality_checks(gamma: float, seed: int, samples: int = 1000) -> list[CheckResult]:
    gate = game.build_gate(gamma)
    pairs = _pairs(samples, seed)
    rng = np.random.default_rng([seed, 7])

    def max_imag():
        return max(game.play(gate, u, v).max_imag for u, v in pairs)

    def normalization():
        return max(abs(game.play(gate, u, v).probabilities.sum() - 1) for u, v in pairs)

    def gate_antiunitary_form():
        j = game.build_gate(game.MAX_GAMMA).matrix
        worst = 0.0
        for k in range(4):
            e = np.zeros(4, dtype=complex)
            e[k] = 1
            rhs = np.sqrt(2) * qlinalg.real_project(e, 1j, -1)
            worst = max(worst, np.max(np.abs(j @ e - rhs)))
        return worst

    def pseudoreality():
        op = qlinalg.AntiUnitaryOp(np.exp(1j * 0.37))
        worst = 0.0
        for u in qlinalg.su2_random_batch(100, rng):
            v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            lhs = u.matrix @ qlinalg.antiunitary_apply(op, v)
            worst = max(worst, np.max(np.abs(lhs - qlinalg.antiunitary_apply(op, u.matrix @ v))))
            twice = qlinalg.antiunitary_apply(op, qlinalg.antiunitary_apply(op, v))
            worst = max(worst, np.max(np.abs(twice + v)))
        return worst

    def tensor_involution():
        worst = 0.0
        for _ in range(100):
            v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            w = qlinalg.tensor_antiunitary_apply(1j, -1, qlinalg.tensor_antiunitary_apply(1j, -1, v))
            worst = max(worst, np.max(np.abs(w - v)))
        return worst

    return [
        _run("reality", "max_imag_amplitude", 1e-12, max_imag),
        _run("reality", "normalization", 1e-12, normalization),
        _run("reality", "gate_antiunitary_form", 1e-14, gate_antiunitary_form),
        _run("reality", "pseudoreality", 1e-12, pseudoreality),
        _run("reality", "tensor_involution", 1e-12, tensor_involution),
    ]


def so4_checks(seed: int, samples: int = 100) -> list[CheckResult]:
    pairs = _pairs(samples, seed)
    frame = so4map.R_FRAME
    alt = so4map.RP_FRAME
    gate = game.build_gate(game.MAX_GAMMA)

    def orthogonality():
        worst = 0.0
        for u, v in pairs:
            s = so4map.so4_image(u, v, frame)
            worst = max(worst, s.orthogonality_residual, abs(s.det - 1))
        return worst

    def homomorphism():
        worst = 0.0
        for (u1, v1), (u2, v2) in zip(pairs, pairs[1:] + pairs[:1]):
            lhs = so4map.so4_image(u1 @ u2, v1 @ v2, frame).matrix
            rhs = so4map.so4_image(u1, v1, frame).matrix @ so4map.so4_image(u2, v2, frame).matrix
            worst = max(worst, np.max(np.abs(lhs - rhs)))
        return worst

    def kernel():
        minus = -qlinalg.IDENTITY
        return np.max(np.abs(so4map.so4_image(minus, minus, frame).matrix - np.eye(4)))

    def transformed_basis():
        basis = so4map.transformed_basis(frame)
        return max(
            np.max(np.abs(b - TILDE_PHASE * TILDE_REAL[k])) for k, b in enumerate(basis.vectors)
        )

    def frame_equivalence():
        worst = 0.0
        for u, v in pairs:
            a = so4map.amplitudes_via_so4(so4map.so4_image(u, v, frame), frame).as_array()
            b = so4map.amplitudes_via_so4(so4map.so4_image(u, v, alt), alt).as_array()
            worst = max(worst, np.max(np.abs(a - b)))
        return worst

    def game_agreement():
        worst = 0.0
        for u, v in pairs:
            a = so4map.amplitudes_via_so4(so4map.so4_image(u, v, frame), frame).as_array()
            worst = max(worst, np.max(np.abs(a - game.play(gate, u, v).as_array())))
        return worst

    return [
        _run("so4", "orthogonality_det", 1e-12, orthogonality),
        _run("so4", "homomorphism", 1e-12, homomorphism),
        _run("so4", "kernel_minus_identity", 1e-12, kernel),
        _run("so4", "transformed_basis", 1e-14, transformed_basis),
        _run("so4", "frame_equivalence", 1e-12, frame_equivalence),
        _run("so4", "game_agreement", 1e-10, game_agreement),
    ]


ALICE_AUTOMORPHISM = np.array([[0, 0, -1], [0, 1, 0], [1, 0, 0]], dtype=float)
BOB_AUTOMORPHISM = np.array([[0, 0, 1], [-1, 0, 0], [0, -1, 0]], dtype=float)


def quaternion_checks(seed: int, samples: int = 100) -> list[CheckResult]:
    pairs = _pairs(samples, seed)
    rng = np.random.default_rng([seed, 11])
    gate = game.build_gate(game.MAX_GAMMA)

    def gauge():
        worst = 0.0
        for u, v in pairs:
            q1, q2 = quaternions.q1_from_alice(u), quaternions.q2_from_bob(v)
            s = quaternions.Quaternion.from_array(rng.standard_normal(4))
            s = quaternions.Quaternion.from_array(s.as_array() / s.norm())
            a = (q1 * q2.inverse()).as_array()
            b = ((q1 * s) * (q2 * s).inverse()).as_array()
            worst = max(worst, np.max(np.abs(a - b)))
        return worst

    def automorphisms():
        a = quaternions.automorphism_matrix(quaternions.q1_from_alice)
        b = quaternions.automorphism_matrix(quaternions.q2_from_bob)
        return max(np.max(np.abs(a - ALICE_AUTOMORPHISM)), np.max(np.abs(b - BOB_AUTOMORPHISM)))

    def game_agreement():
        worst = 0.0
        for u, v in pairs:
            a = quaternions.amplitudes_via_quaternion(u, v).as_array()
            worst = max(worst, np.max(np.abs(a - game.play(gate, u, v).as_array())))
        return worst

    def rotation_orthogonality():
        worst = 0.0
        for u, v in pairs:
            m = quaternions.rotation_matrix(quaternions.q1_from_alice(u), quaternions.q2_from_bob(v))
            worst = max(worst, np.max(np.abs(m.T @ m - np.eye(4))), abs(np.linalg.det(m) - 1))
        return worst

    return [
        _run("quaternion", "gauge_invariance", 1e-12, gauge),
        _run("quaternion", "automorphisms", 1e-12, automorphisms),
        _run("quaternion", "game_agreement", 1e-10, game_agreement),
        _run("quaternion", "rotation_orthogonality", 1e-12, rotation_orthogonality),
    ]


def stability_checks(seed: int, samples: int = 100) -> list[CheckResult]:
    moves = qlinalg.su2_random_batch(3 * samples, seed)
    gate = game.build_gate(game.MAX_GAMMA)

    def so3_fixing():
        conj = stability.derive_u0()
        return max(stability.fixing_residual(*stability.stability_element(u, conj)) for u in moves[:samples])

    def counterstrategy():
        worst = 0.0
        for u1, u2, v1 in zip(moves[::3], moves[1::3], moves[2::3]):
            v2 = stability.counterstrategy(u1, u2, v1)
            diff = game.play(gate, v1, v2).as_array() - game.play(gate, u1, u2).as_array()
            worst = max(worst, np.max(np.abs(diff)))
        return worst

    def low_gamma_fixing():
        worst = 0.0
        for g in (0.3, 0.8, 1.2):
            for delta in np.linspace(-np.pi, np.pi, 20):
                worst = max(worst, stability.fixing_residual(*stability.low_gamma_stabilizer(delta, g), gamma=g))
        return worst

    def dimensions():
        dims = [stability.stabilizer_dimension(g) for g in (0.3, 0.8, 1.2, game.MAX_GAMMA)]
        return float(dims != [1, 1, 1, 3])

    def best_response():
        worst = 0.0
        for u in moves[:50]:
            for who in ("alice", "bob"):
                worst = max(worst, abs(analysis.best_response(u, who)[1] - game.DEFAULT_TABLE.t))
        return worst

    return [
        _run("stability", "so3_fixing", 1e-10, so3_fixing),
        _run("stability", "counterstrategy_amplitudes", 1e-10, counterstrategy),
        _run("stability", "low_gamma_fixing", 1e-12, low_gamma_fixing),
        _run("stability", "stabilizer_dimensions", 0.0, dimensions),
        _run("stability", "best_response_is_t", 1e-10, best_response),
    ]


def run_suite(name: str, gamma: float = game.MAX_GAMMA, seed: int = 0) -> list[CheckResult]:
    if name == "all":
        return [r for suite in SUITES for r in run_suite(suite, gamma, seed)]
    if name == "reality":
        return reality_checks(gamma, seed)
    if name == "so4":
        return so4_checks(seed)
    if name == "quaternion":
        return quaternion_checks(seed)
    if name == "stability":
        return stability_checks(seed)
    raise ValueError(f"unknown suite {name!r}; choose from {SUITES + ('all',)}")
