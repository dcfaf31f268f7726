"""Fit the coordinate -> amplitude assignment of the strategy quaternion.

Evaluates the game directly on random strategy pairs, then finds the
signed permutation that carries the coordinates (w, x, y, z) of
q1 * q2^-1 onto the amplitudes (A++, A-+, A+-, A--).  The result is what
``ewlgame.quaternions.COORD_TO_AMPLITUDE`` / ``COORD_SIGNS`` hard-code.

    python scripts/fit_quaternion_map.py [--pairs 20] [--seed 0]
"""

import argparse

import numpy as np

from ewlgame import game, qlinalg
from ewlgame.quaternions import q1_from_alice, q2_from_bob


def sample(n_pairs, seed):
    gate = game.build_gate(game.MAX_GAMMA)
    moves = qlinalg.su2_random_batch(2 * n_pairs, seed)
    coords, amps = [], []
    for ua, ub in zip(moves[::2], moves[1::2]):
        coords.append((q1_from_alice(ua) * q2_from_bob(ub).inverse()).as_array())
        amps.append(game.play(gate, ua, ub).as_array().real)
    return np.array(coords), np.array(amps)


def fit(n_pairs=20, seed=0):
    """Return (slots, signs, residual) with amps[:, slots[k]] ~ signs[k] * coords[:, k]."""
    coords, amps = sample(n_pairs, seed)
    m, *_ = np.linalg.lstsq(coords, amps, rcond=None)
    rounded = np.rint(m)
    if not (np.all(np.abs(rounded).sum(axis=0) == 1) and np.all(np.abs(rounded).sum(axis=1) == 1)):
        raise RuntimeError(f"fitted map is not a signed permutation:\n{m}")
    slots = tuple(int(np.argmax(np.abs(row))) for row in rounded)
    signs = tuple(float(rounded[k, slots[k]]) for k in range(4))
    residual = float(np.max(np.abs(coords @ rounded - amps)))
    return slots, signs, residual


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    slots, signs, residual = fit(args.pairs, args.seed)
    labels = qlinalg.BASIS_LABELS
    for coord, slot, sign in zip("wxyz", slots, signs):
        print(f"{coord} -> {'+' if sign > 0 else '-'}A{labels[slot]}")
    print(f"COORD_TO_AMPLITUDE = {slots}")
    print(f"COORD_SIGNS = {signs}")
    print(f"max residual = {residual:.3e}")


if __name__ == "__main__":
    main()
