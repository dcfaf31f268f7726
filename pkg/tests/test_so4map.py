import numpy as np
import pytest
from hypothesis import given, settings

from conftest import su2_elements
from ewlgame import game, qlinalg as ql, so4map
from ewlgame.errors import RealityError
from oracles import ewl_final_state

PHASE = (1 / np.sqrt(2)) * (1 + 1j) / np.sqrt(2)
TILDE = {
    "++": PHASE * np.array([1, 0, 0, 1]),
    "-+": PHASE * np.array([0, 1, -1, 0]),
    "+-": PHASE * np.array([0, 1, 1, 0]),
    "--": PHASE * np.array([1, 0, 0, -1]),
}


def test_frames_are_unitary():
    for frame in so4map.FRAMES.values():
        assert ql.is_unitary(frame.matrix)
    assert ql.is_unitary(so4map.P_MATRIX)
    np.testing.assert_allclose(so4map.P_MATRIX.T @ so4map.P_MATRIX, np.eye(4), atol=1e-15)


def test_identity_and_kernel():
    np.testing.assert_allclose(so4map.so4_image(ql.IDENTITY, ql.IDENTITY).matrix, np.eye(4), atol=1e-15)
    minus = -ql.IDENTITY
    np.testing.assert_allclose(so4map.so4_image(minus, minus).matrix, np.eye(4), atol=1e-15)
    # (-I, I) is not in the kernel
    assert np.allclose(so4map.so4_image(minus, ql.IDENTITY).matrix, -np.eye(4))


@settings(max_examples=100, deadline=None)
@given(su2_elements(), su2_elements())
def test_image_is_special_orthogonal(u, v):
    for frame in (so4map.R_FRAME, so4map.RP_FRAME):
        s = so4map.so4_image(u, v, frame)
        assert s.imag_residual <= 1e-12
        assert s.orthogonality_residual <= 1e-12
        assert abs(s.det - 1) <= 1e-12


def test_det4_matches_numpy(rng):
    for _ in range(20):
        m = rng.standard_normal((4, 4))
        assert so4map.det4(m) == pytest.approx(np.linalg.det(m), abs=1e-12)


def test_raw_table_as_frame_is_rejected():
    bad = so4map.IsomorphismFrame("bad", so4map._R_TABLE)
    u, v = ql.su2_random_batch(2, 0)
    with pytest.raises(RealityError):
        so4map.so4_image(u, v, bad)


def test_homomorphism(rng):
    moves = ql.su2_random_batch(400, rng)
    for u1, v1, u2, v2 in zip(moves[::4], moves[1::4], moves[2::4], moves[3::4]):
        lhs = so4map.so4_image(u1 @ u2, v1 @ v2).matrix
        rhs = so4map.so4_image(u1, v1).matrix @ so4map.so4_image(u2, v2).matrix
        assert np.max(np.abs(lhs - rhs)) <= 1e-12


def test_kernel_only_plus_minus_identity(rng):
    """Reconstructed factors always agree with the inputs up to one common sign."""
    for u, v in zip(*[iter(ql.su2_random_batch(200, rng))] * 2):
        s = so4map.so4_image(u, v)
        ru, rv = so4map.pair_from_so4(s)
        same = ru.allclose(u, 1e-10) and rv.allclose(v, 1e-10)
        flipped = ru.allclose(-u, 1e-10) and rv.allclose(-v, 1e-10)
        assert same or flipped
    # S = I reconstructs to +-(I, I)
    ru, rv = so4map.pair_from_so4(so4map.SO4Matrix(np.eye(4)))
    assert np.allclose(ru.matrix, rv.matrix) and np.allclose(np.abs(ru.matrix), np.eye(2))


@pytest.mark.parametrize("label", ql.BASIS_LABELS)
def test_transformed_basis_values(label):
    got = so4map.transformed_basis(so4map.R_FRAME)[label]
    assert np.max(np.abs(got - TILDE[label])) <= 1e-14


def test_transformed_basis_orthonormal():
    vecs = np.array(so4map.transformed_basis().vectors)
    np.testing.assert_allclose(vecs.conj() @ vecs.T, np.eye(4), atol=1e-15)


def test_p_frame_reference_kets_are_computational_basis():
    vecs = so4map.transformed_basis(so4map.RP_FRAME).vectors
    for k, v in enumerate(vecs):
        expected = np.zeros(4, dtype=complex)
        expected[k] = (1 + 1j) / np.sqrt(2)
        np.testing.assert_allclose(v, expected, atol=1e-15)
        np.testing.assert_allclose(so4map.P_MATRIX.T @ TILDE[ql.BASIS_LABELS[k]], expected, atol=1e-15)


def test_amplitudes_via_identity():
    a = so4map.amplitudes_via_so4(so4map.SO4Matrix(np.eye(4))).as_array()
    np.testing.assert_allclose(a, [1, 0, 0, 0], atol=1e-15)


def test_amplitudes_via_defect_defect():
    s = so4map.so4_image(ql.DEFECT, ql.DEFECT)
    a = so4map.amplitudes_via_so4(s).as_array()
    oracle = ewl_final_state(np.pi / 2, ql.D, ql.D)
    assert abs(abs(a[3]) - 1) < 1e-14
    np.testing.assert_allclose(a, oracle, atol=1e-14)


def test_amplitudes_via_so4_match_game(rng):
    gate = game.build_gate(np.pi / 2)
    for u, v in zip(*[iter(ql.su2_random_batch(200, rng))] * 2):
        expected = game.play(gate, u, v).as_array()
        for frame in (so4map.R_FRAME, so4map.RP_FRAME):
            got = so4map.amplitudes_via_so4(so4map.so4_image(u, v, frame), frame)
            assert got.max_imag <= 1e-12
            assert np.max(np.abs(got.as_array() - expected)) <= 1e-10


def test_frame_equivalence(rng):
    for u, v in zip(*[iter(ql.su2_random_batch(200, rng))] * 2):
        a = so4map.amplitudes_via_so4(so4map.so4_image(u, v, so4map.R_FRAME), so4map.R_FRAME).as_array()
        b = so4map.amplitudes_via_so4(so4map.so4_image(u, v, so4map.RP_FRAME), so4map.RP_FRAME).as_array()
        assert np.max(np.abs(a - b)) <= 1e-12


def test_rp_image_is_p_conjugate_of_r_image(rng):
    u, v = ql.su2_random_batch(2, rng)
    s = so4map.so4_image(u, v, so4map.R_FRAME).matrix
    s_alt = so4map.so4_image(u, v, so4map.RP_FRAME).matrix
    np.testing.assert_allclose(s_alt, so4map.P_MATRIX.T @ s @ so4map.P_MATRIX, atol=1e-14)
