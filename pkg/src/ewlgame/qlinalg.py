"""Small dense complex linear algebra for two qubits.

Basis ordering of the two-qubit space is fixed as

    index 0: |++>   index 1: |-+>   index 2: |+->   index 3: |-->

where the first symbol belongs to Alice and the second to Bob, with
|+> = (1, 0) and |-> = (0, 1).  Tensor products put the first factor on
the fastest-varying index, ``(a, b) x (c, d) = (ac, bc, ad, bd)``.  This is
the reverse of ``numpy.kron``, so every product in the package goes through
:func:`tensor_product`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NormError

ATOL = 1e-12
VALIDATION_TOL = 1e-9

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
D = 1j * SIGMA2  # [[0, 1], [-1, 0]], the classical "defect" move

KET_PLUS = np.array([1, 0], dtype=complex)
KET_MINUS = np.array([0, 1], dtype=complex)

BASIS_LABELS = ("++", "-+", "+-", "--")

# Swaps Alice's and Bob's tensor factors.
SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)


def tensor_product(a, b) -> np.ndarray:
    """Tensor product with the first factor varying fastest.

    Works for pairs of 2-vectors and pairs of 2x2 matrices (and in fact
    any pair numpy.kron accepts).
    """
    return np.kron(np.asarray(b), np.asarray(a))


def basis_ket(label: str) -> np.ndarray:
    """Return the basis vector for ``'++'``, ``'-+'``, ``'+-'`` or ``'--'``."""
    out = np.zeros(4, dtype=complex)
    out[BASIS_LABELS.index(label)] = 1.0
    return out


def is_unitary(m, atol: float = ATOL) -> bool:
    m = np.asarray(m)
    return bool(np.allclose(m.conj().T @ m, np.eye(m.shape[0]), atol=atol, rtol=0))


@dataclass(frozen=True)
class SU2Element:
    """Special unitary matrix ``[[alpha, beta], [-conj(beta), conj(alpha)]]``."""

    alpha: complex
    beta: complex

    @property
    def matrix(self) -> np.ndarray:
        a, b = complex(self.alpha), complex(self.beta)
        return np.array([[a, b], [-b.conjugate(), a.conjugate()]], dtype=complex)

    def dagger(self) -> "SU2Element":
        return SU2Element(complex(self.alpha).conjugate(), -complex(self.beta))

    def __matmul__(self, other: "SU2Element") -> "SU2Element":
        return su2_from_matrix(self.matrix @ other.matrix)

    def __neg__(self) -> "SU2Element":
        return SU2Element(-complex(self.alpha), -complex(self.beta))

    def allclose(self, other: "SU2Element", atol: float = ATOL) -> bool:
        return bool(np.allclose(self.matrix, other.matrix, atol=atol, rtol=0))


IDENTITY = SU2Element(1.0 + 0j, 0j)
DEFECT = SU2Element(0j, 1.0 + 0j)


def su2_from_params(alpha: complex, beta: complex) -> SU2Element:
    """Build an SU(2) element, renormalizing small deviations from unit norm.

    Raises NormError if ``|alpha|^2 + |beta|^2`` is further than 1e-9 from 1.
    """
    alpha, beta = complex(alpha), complex(beta)
    norm2 = abs(alpha) ** 2 + abs(beta) ** 2
    if not np.isfinite(norm2) or abs(norm2 - 1.0) > VALIDATION_TOL:
        raise NormError(f"|alpha|^2 + |beta|^2 = {norm2!r}, expected 1")
    scale = 1.0 / np.sqrt(norm2)
    return SU2Element(alpha * scale, beta * scale)


def su2_from_matrix(m, atol: float = VALIDATION_TOL) -> SU2Element:
    """Read (alpha, beta) off a 2x2 matrix, checking that it lies in SU(2)."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
    alpha, beta = m[0, 0], m[0, 1]
    if abs(m[1, 0] + np.conj(beta)) > atol or abs(m[1, 1] - np.conj(alpha)) > atol:
        raise NormError("matrix is not of the form [[a, b], [-b*, a*]]")
    return su2_from_params(alpha, beta)


def su2_random(seed) -> SU2Element:
    """Haar-random SU(2) element.

    ``seed`` is an int or a ``numpy.random.Generator``; an int gives a
    reproducible draw.  Uses a normalized real Gaussian 4-vector, i.e. a
    uniform point on the 3-sphere of unit quaternions.
    """
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(4)
    v /= np.linalg.norm(v)
    return SU2Element(complex(v[0], v[1]), complex(v[2], v[3]))


def su2_random_batch(n: int, seed) -> list[SU2Element]:
    rng = np.random.default_rng(seed)
    return [su2_random(rng) for _ in range(n)]


def su2_exp(theta: float, axis) -> SU2Element:
    """``exp(i * theta * n.sigma)`` for a unit 3-vector ``n``."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    c, s = np.cos(theta), np.sin(theta)
    return SU2Element(complex(c, s * n[2]), complex(s * n[1], s * n[0]))


@dataclass(frozen=True)
class AntiUnitaryOp:
    """The map ``v -> eta * sigma2 * conj(v)`` on a single qubit."""

    eta: complex

    def __post_init__(self):
        if abs(abs(self.eta) - 1.0) > VALIDATION_TOL:
            raise NormError(f"|eta| = {abs(self.eta)!r}, expected 1")


def antiunitary_apply(op: AntiUnitaryOp, v) -> np.ndarray:
    return op.eta * (SIGMA2 @ np.conj(np.asarray(v, dtype=complex)))


def tensor_antiunitary_apply(eta_a: complex, eta_b: complex, v) -> np.ndarray:
    """Apply ``C(eta_a) x C(eta_b)`` to a two-qubit vector."""
    v = np.asarray(v, dtype=complex)
    return eta_a * eta_b * (tensor_product(SIGMA2, SIGMA2) @ np.conj(v))


def real_project(v, eta_a: complex, eta_b: complex) -> np.ndarray:
    """``(1/2)(I + C(eta_a) x C(eta_b)) v``; the image is fixed by the antiunitary."""
    v = np.asarray(v, dtype=complex)
    return 0.5 * (v + tensor_antiunitary_apply(eta_a, eta_b, v))
