"""Bob answers random Alice moves and always collects the top payoff.

For each Alice move, prints Bob's counterstrategy toward his best outcome
and the resulting payoffs at maximal entanglement, then repeats the
exercise with the roles swapped.

    python scripts/counterstrategy_demo.py --trials 5 --seed 1
"""

import argparse

from ewlgame import analysis, game, qlinalg


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--payoffs", default="3,0,5,1", help="r,s,t,p")
    args = ap.parse_args()
    r, s, t, p = (float(x) for x in args.payoffs.split(","))
    table = game.PayoffTable(r, s, t, p)
    gate = game.build_gate(game.MAX_GAMMA)

    moves = qlinalg.su2_random_batch(args.trials, args.seed)
    print("responder  opponent(theta,phi,psi)           reply(theta,phi,psi)              payoffs")
    for who in ("bob", "alice"):
        for opp in moves:
            reply, _ = analysis.best_response(opp, who, table)
            pair = (opp, reply) if who == "bob" else (reply, opp)
            pay = game.payoffs(game.play(gate, *pair), table)
            o = ", ".join(f"{x:+.3f}" for x in analysis.angles_from_strategy(opp))
            rp = ", ".join(f"{x:+.3f}" for x in analysis.angles_from_strategy(reply))
            print(f"{who:<10} ({o})  ({rp})  A={pay.s_a:.6f} B={pay.s_b:.6f}")


if __name__ == "__main__":
    main()
