"""Quaternion form of the maximally entangled game.

Alice's and Bob's moves map to unit quaternions q1 and q2.  The product
``q = q1 * q2^-1`` is invariant under ``(q1, q2) -> (q1 s, q2 s)`` and its four
coordinates are, up to reordering, the outcome amplitudes.  The reordering
(``COORD_TO_AMPLITUDE``) was fitted against direct evaluation of the game;
see ``scripts/fit_quaternion_map.py``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NormError
from .game import AmplitudeSet
from .qlinalg import I2, SIGMA1, SIGMA2, SIGMA3, VALIDATION_TOL, SU2Element, su2_from_params


@dataclass(frozen=True)
class Quaternion:
    w: float
    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z], dtype=float)

    @classmethod
    def from_array(cls, v) -> "Quaternion":
        w, x, y, z = (float(c) for c in v)
        return cls(w, x, y, z)

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        return qmul(self, other)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> float:
        return float(np.sqrt(self.w**2 + self.x**2 + self.y**2 + self.z**2))

    def inverse(self) -> "Quaternion":
        n2 = self.w**2 + self.x**2 + self.y**2 + self.z**2
        c = self.conj()
        return Quaternion(c.w / n2, c.x / n2, c.y / n2, c.z / n2)


ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
QI = Quaternion(0.0, 1.0, 0.0, 0.0)
QJ = Quaternion(0.0, 0.0, 1.0, 0.0)
QK = Quaternion(0.0, 0.0, 0.0, 1.0)


def qmul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product, ``i^2 = j^2 = k^2 = ijk = -1``."""
    return Quaternion(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


def q1_from_alice(ua: SU2Element) -> Quaternion:
    a, b = complex(ua.alpha), complex(ua.beta)
    return Quaternion(a.real, a.imag, -b.real, -b.imag)


def q2_from_bob(ub: SU2Element) -> Quaternion:
    a, b = complex(ub.alpha), complex(ub.beta)
    return Quaternion(a.real, -a.imag, b.imag, b.real)


def alice_from_q1(q: Quaternion) -> SU2Element:
    return su2_from_params(complex(q.w, q.x), complex(-q.y, -q.z))


def bob_from_q2(q: Quaternion) -> SU2Element:
    return su2_from_params(complex(q.w, -q.x), complex(q.z, q.y))


def _check_unit(q: Quaternion, name: str) -> None:
    if abs(q.norm() - 1.0) > VALIDATION_TOL:
        raise NormError(f"{name} has norm {q.norm()!r}, expected 1")


def rotate(r: Quaternion, q1: Quaternion, q2: Quaternion) -> Quaternion:
    """The SO(4) action ``r -> q1 r q2^-1`` for unit q1, q2."""
    _check_unit(q1, "q1")
    _check_unit(q2, "q2")
    return q1 * r * q2.conj()


def rotation_matrix(q1: Quaternion, q2: Quaternion) -> np.ndarray:
    """Real 4x4 matrix of ``r -> q1 r q2^-1`` in the basis 1, i, j, k."""
    cols = [rotate(e, q1, q2).as_array() for e in (ONE, QI, QJ, QK)]
    return np.column_stack(cols)


# Slot in the amplitude vector (++, -+, +-, --) fed by each of w, x, y, z.
COORD_TO_AMPLITUDE = (0, 3, 1, 2)
# Signs are all +1 with the q1/q2 maps above.
COORD_SIGNS = (1.0, 1.0, 1.0, 1.0)


def strategy_quaternion(ua: SU2Element, ub: SU2Element) -> Quaternion:
    return q1_from_alice(ua) * q2_from_bob(ub).inverse()


def amplitudes_from_quaternion(q: Quaternion) -> AmplitudeSet:
    out = np.zeros(4)
    for coord, slot, sign in zip(q.as_array(), COORD_TO_AMPLITUDE, COORD_SIGNS):
        out[slot] = sign * coord
    return AmplitudeSet.from_array(out)


def quaternion_from_amplitudes(amps) -> Quaternion:
    v = np.asarray(amps.as_array() if isinstance(amps, AmplitudeSet) else amps).real
    return Quaternion.from_array(
        [sign * v[slot] for slot, sign in zip(COORD_TO_AMPLITUDE, COORD_SIGNS)]
    )


def amplitudes_via_quaternion(ua: SU2Element, ub: SU2Element) -> AmplitudeSet:
    return amplitudes_from_quaternion(strategy_quaternion(ua, ub))


# Unit quaternions i, j, k realized as 2x2 matrices -i sigma_1,2,3.
PAULI_UNITS = (I2, -1j * SIGMA1, -1j * SIGMA2, -1j * SIGMA3)


def pauli_quaternion(u: SU2Element) -> Quaternion:
    """Coordinates of U in the basis ``1, -i sigma1, -i sigma2, -i sigma3``."""
    m = u.matrix
    # The four basis matrices are orthogonal under <A, B> = tr(A^dag B) / 2.
    coords = [np.trace(e.conj().T @ m).real / 2 for e in PAULI_UNITS]
    return Quaternion.from_array(coords)


def matrix_from_quaternion(q: Quaternion) -> np.ndarray:
    return sum(c * e for c, e in zip(q.as_array(), PAULI_UNITS))


def automorphism_matrix(to_quaternion) -> np.ndarray:
    """3x3 matrix carrying Pauli-identification imaginary parts to ``to_quaternion``'s.

    Columns are the images of i, j, k.  Probed on the SU(2) elements that the
    Pauli identification sends to each imaginary unit.
    """
    cols = []
    for unit in (QI, QJ, QK):
        m = matrix_from_quaternion(unit)
        u = su2_from_params(m[0, 0], m[0, 1])
        cols.append(to_quaternion(u).as_array()[1:])
    return np.column_stack(cols)


def is_signed_permutation(m, atol: float = 0.0) -> bool:
    m = np.asarray(m, dtype=float)
    rounded = np.rint(m)
    if np.max(np.abs(m - rounded)) > atol:
        return False
    return bool(
        np.all(np.abs(rounded).sum(axis=0) == 1)
        and np.all(np.abs(rounded).sum(axis=1) == 1)
    )
