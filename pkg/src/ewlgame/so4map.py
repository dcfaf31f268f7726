"""SU(2) x SU(2) -> SO(4) through a fixed unitary change of frame.

For a frame matrix F, ``S = F^dag (U x V) F`` is real orthogonal with unit
determinant.  At maximal entanglement the vectors ``F^dag J |eps eps'>``
are a common phase times real vectors, so amplitudes become real matrix
elements of S.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import game
from .errors import RealityError
from .game import AmplitudeSet
from .qlinalg import (
    ATOL,
    BASIS_LABELS,
    VALIDATION_TOL,
    SU2Element,
    su2_from_matrix,
    tensor_product,
)

_S2 = np.sqrt(2.0)

# Tabulated rows; the frame itself is the adjoint of this matrix.  Using the
# table directly as F gives a complex S.
_R_TABLE = np.array(
    [[1, 0, 0, 1], [0, 1j, 1j, 0], [0, -1, 1, 0], [1j, 0, 0, -1j]], dtype=complex
) / _S2

# Real orthogonal re-frame which sends the transformed basis back onto the
# computational one (up to the common phase).
P_MATRIX = np.array(
    [[1, 0, 0, 1], [0, 1, 1, 0], [0, -1, 1, 0], [1, 0, 0, -1]], dtype=float
) / _S2


@dataclass(frozen=True)
class IsomorphismFrame:
    name: str
    matrix: np.ndarray = field(repr=False, compare=False)


R_FRAME = IsomorphismFrame("R", _R_TABLE.conj().T)
RP_FRAME = IsomorphismFrame("RP", _R_TABLE.conj().T @ P_MATRIX)
FRAMES = {f.name: f for f in (R_FRAME, RP_FRAME)}


def det4(m) -> float:
    """Determinant by cofactor expansion along the first row."""
    m = np.asarray(m)

    def det3(a):
        return (
            a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
            - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
            + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
        )

    total = 0.0
    for j in range(4):
        minor = np.delete(np.delete(m, 0, axis=0), j, axis=1)
        total += (-1) ** j * m[0, j] * det3(minor)
    return total


@dataclass(frozen=True)
class SO4Matrix:
    matrix: np.ndarray = field(compare=False)
    imag_residual: float = 0.0

    def __matmul__(self, other: "SO4Matrix") -> "SO4Matrix":
        return SO4Matrix(self.matrix @ other.matrix)

    @property
    def orthogonality_residual(self) -> float:
        return float(np.max(np.abs(self.matrix.T @ self.matrix - np.eye(4))))

    @property
    def det(self) -> float:
        return float(det4(self.matrix))


def so4_image(ua: SU2Element, ub: SU2Element, frame: IsomorphismFrame = R_FRAME) -> SO4Matrix:
    f = frame.matrix
    s = f.conj().T @ tensor_product(ua.matrix, ub.matrix) @ f
    residual = float(np.max(np.abs(s.imag)))
    if residual > VALIDATION_TOL:
        raise RealityError(
            f"frame {frame.name!r}: imaginary residue {residual:.3e} in SO(4) image"
        )
    return SO4Matrix(np.ascontiguousarray(s.real), residual)


def pair_from_so4(s: SO4Matrix, frame: IsomorphismFrame = R_FRAME) -> tuple[SU2Element, SU2Element]:
    """Recover ``(U, V)`` from S, up to the common sign ``(-U, -V)``.

    The product matrix is rearranged so that ``U x V`` becomes the rank-one
    outer product of the flattened factors, then split by SVD.
    """
    f = frame.matrix
    k = f @ s.matrix @ f.conj().T
    # k[2i + a, 2j + b] = V[i, j] * U[a, b]
    blocks = k.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
    left, sing, right = np.linalg.svd(blocks)
    v = (left[:, 0] * np.sqrt(sing[0])).reshape(2, 2)
    u = (right[0] * np.sqrt(sing[0])).reshape(2, 2)
    # Move the shared scalar so that both factors have unit determinant.
    phase = np.sqrt(np.linalg.det(u))
    u, v = u / phase, v * phase
    return su2_from_matrix(u, atol=1e-8), su2_from_matrix(v, atol=1e-8)


@dataclass(frozen=True)
class TransformedBasis:
    vectors: tuple[np.ndarray, ...] = field(compare=False)

    def __getitem__(self, label: str) -> np.ndarray:
        return self.vectors[BASIS_LABELS.index(label)]


def transformed_basis(frame: IsomorphismFrame = R_FRAME, gamma: float = game.MAX_GAMMA) -> TransformedBasis:
    """Columns of ``F^dag J(gamma)``, i.e. images of the four basis kets."""
    m = frame.matrix.conj().T @ game.build_gate(gamma).matrix
    return TransformedBasis(tuple(m[:, k].copy() for k in range(4)))


def amplitudes_via_so4(s: SO4Matrix, frame: IsomorphismFrame = R_FRAME) -> AmplitudeSet:
    basis = transformed_basis(frame)
    ref = basis.vectors[0]
    return AmplitudeSet.from_array([np.vdot(b, s.matrix @ ref) for b in basis.vectors])


def check_so4(s: SO4Matrix, atol: float = ATOL) -> bool:
    return s.orthogonality_residual <= atol and abs(s.det - 1.0) <= atol
