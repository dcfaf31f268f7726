"""Command-line interface: ``ewlgame {play,counter,verify,scan,nash}``.

Exit codes: 0 success, 1 verification failure, 2 usage or I/O error,
3 request outside the maximal-entanglement theorem.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass

import numpy as np

from . import analysis, game, qlinalg, stability, verify
from .errors import BudgetError, EWLError
from .game import PayoffTable
from .qlinalg import SU2Element

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_SCOPE = 3

STRATEGY_HELP = (
    "strategy: a name (I or C for cooperate, D for defect), three angles "
    "'theta,phi,psi' with alpha=cos(theta/2)e^(i phi), beta=sin(theta/2)e^(i psi), "
    "or four numbers 'Re(alpha),Im(alpha),Re(beta),Im(beta)' with unit norm"
)

_PI_RE = re.compile(r"^\s*([0-9.]*)\s*\*?\s*pi\s*(?:/\s*([0-9.]+))?\s*$")


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


@dataclass(frozen=True)
class RunConfig:
    gamma: float = game.MAX_GAMMA
    table: PayoffTable = game.DEFAULT_TABLE
    seed: int = 0
    fmt: str | None = None
    out: str | None = None

    @property
    def is_maximal(self) -> bool:
        return abs(self.gamma - game.MAX_GAMMA) <= 1e-12


def parse_angle(text: str) -> float:
    """A float, or a multiple/fraction of pi such as ``pi/2`` or ``3pi/8``."""
    m = _PI_RE.match(text)
    if m:
        num = float(m.group(1)) if m.group(1) else 1.0
        den = float(m.group(2)) if m.group(2) else 1.0
        return num * math.pi / den
    return float(text)


def parse_strategy(text: str, flag: str) -> SU2Element:
    name = text.strip().upper()
    if name in ("I", "C"):
        return qlinalg.IDENTITY
    if name == "D":
        return qlinalg.DEFECT
    try:
        values = [parse_angle(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(flag, f"cannot parse {text!r}") from None
    if not all(math.isfinite(v) for v in values):
        raise UsageError(flag, "non-finite strategy parameter")
    if len(values) == 3:
        return analysis.strategy_from_angles(*values)
    if len(values) == 4:
        try:
            return qlinalg.su2_from_params(complex(values[0], values[1]), complex(values[2], values[3]))
        except EWLError as exc:
            raise UsageError(flag, str(exc)) from None
    raise UsageError(flag, f"expected a name, 3 angles or 4 numbers, got {len(values)} values")


def parse_payoffs(text: str) -> PayoffTable:
    try:
        r, s, t, p = (float(x) for x in text.split(","))
    except ValueError:
        raise UsageError("--payoffs", f"expected r,s,t,p, got {text!r}") from None
    return PayoffTable(r=r, s=s, t=t, p=p)


def _strategy_dict(u: SU2Element) -> dict:
    a, b = complex(u.alpha), complex(u.beta)
    theta, phi, psi = analysis.angles_from_strategy(u)
    return {
        "alpha": [a.real, a.imag],
        "beta": [b.real, b.imag],
        "angles": [theta, phi, psi],
    }


def _outcome_dict(amps: game.AmplitudeSet, table: PayoffTable) -> dict:
    arr = amps.as_array()
    pay = game.payoffs(amps, table)
    return {
        "amplitudes": {lab: [float(a.real), float(a.imag)] for lab, a in zip(qlinalg.BASIS_LABELS, arr)},
        "probabilities": {lab: float(p) for lab, p in zip(qlinalg.BASIS_LABELS, amps.probabilities)},
        "payoffs": {"alice": pay.s_a, "bob": pay.s_b},
    }


def _emit(text: str, config: RunConfig) -> None:
    if config.out:
        try:
            with open(config.out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError("--out", str(exc)) from None
    else:
        sys.stdout.write(text)


def _json(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def cmd_play(config: RunConfig, alice: SU2Element, bob: SU2Element) -> int:
    amps = game.play(game.build_gate(config.gamma), alice, bob)
    if config.fmt == "csv":
        arr = amps.as_array()
        pay = game.payoffs(amps, config.table)
        header = ["gamma"]
        row: list = [repr(config.gamma)]
        for lab, a, p in zip(qlinalg.BASIS_LABELS, arr, amps.probabilities):
            header += [f"re_{lab}", f"im_{lab}", f"p_{lab}"]
            row += [repr(float(a.real)), repr(float(a.imag)), repr(float(p))]
        header += ["payoff_alice", "payoff_bob"]
        row += [repr(pay.s_a), repr(pay.s_b)]
        _emit(_csv(header, [row]), config)
        return EXIT_OK
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "play",
        "gamma": config.gamma,
        "table": dict(zip("rstp", config.table.values)),
        "alice": _strategy_dict(alice),
        "bob": _strategy_dict(bob),
        **_outcome_dict(amps, config.table),
    }
    _emit(_json(report), config)
    return EXIT_OK


def cmd_counter(config: RunConfig, target_a: SU2Element, target_b: SU2Element, alice_move: SU2Element) -> int:
    if not config.is_maximal:
        print(
            f"counter: counterstrategy holds only at gamma=pi/2 (got {config.gamma!r})",
            file=sys.stderr,
        )
        return EXIT_SCOPE
    gate = game.build_gate(config.gamma)
    reply = stability.counterstrategy(target_a, target_b, alice_move)
    target = game.play(gate, target_a, target_b)
    achieved = game.play(gate, alice_move, reply)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "counter",
        "gamma": config.gamma,
        "in_theorem_scope": True,
        "alice_move": _strategy_dict(alice_move),
        "bob_counterstrategy": _strategy_dict(reply),
        "target": _outcome_dict(target, config.table),
        "achieved": _outcome_dict(achieved, config.table),
        "max_amplitude_deviation": float(np.max(np.abs(target.as_array() - achieved.as_array()))),
    }
    _emit(_json(report), config)
    return EXIT_OK


def cmd_verify(config: RunConfig, suite: str) -> int:
    results = verify.run_suite(suite, gamma=config.gamma, seed=config.seed)
    ok = all(r.passed for r in results)
    if config.fmt == "json":
        report = {
            "schema_version": SCHEMA_VERSION,
            "command": "verify",
            "suite": suite,
            "passed": ok,
            "checks": [
                {"name": f"{r.suite}.{r.name}", "residual": r.residual, "tol": r.tol, "passed": r.passed, "note": r.note}
                for r in results
            ],
        }
        _emit(_json(report), config)
    else:
        lines = [r.line() for r in results]
        lines.append(f"{'PASS' if ok else 'FAIL'} {suite}: {sum(r.passed for r in results)}/{len(results)} checks")
        _emit("\n".join(lines) + "\n", config)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_scan(config: RunConfig, gamma_count: int, samples: int) -> int:
    if gamma_count < 2:
        raise UsageError("--gamma-count", "must be >= 2")
    if samples < 1:
        raise UsageError("--samples", "must be >= 1")
    grid = np.linspace(0.0, game.MAX_GAMMA, gamma_count)
    grid[-1] = game.MAX_GAMMA
    rows = analysis.reality_scan(grid, samples, config.seed)
    if config.fmt == "json":
        report = {
            "schema_version": SCHEMA_VERSION,
            "command": "scan",
            "seed": config.seed,
            "rank_rel_tol": analysis.RANK_REL_TOL,
            "rows": [
                {"gamma": r.gamma, "max_imag": r.max_imag, "jacobian_rank": r.jacobian_rank, "samples": r.sample_count}
                for r in rows
            ],
        }
        _emit(_json(report), config)
        return EXIT_OK
    text = _csv(
        ["gamma", "max_imag", "jacobian_rank", "samples"],
        [[repr(r.gamma), f"{r.max_imag:.6e}", r.jacobian_rank, r.sample_count] for r in rows],
    )
    _emit(text, config)
    return EXIT_OK


def cmd_nash(config: RunConfig, grid: int, epsilon: float, max_points: int, max_listed: int) -> int:
    try:
        report = analysis.pure_nash_search(config.gamma, grid, epsilon, config.table, max_points=max_points)
    except BudgetError as exc:
        raise UsageError("--grid", str(exc)) from None
    except ValueError as exc:
        raise UsageError("--grid/--epsilon", str(exc)) from None
    out = {"schema_version": SCHEMA_VERSION, "command": "nash", **report.to_dict()}
    out["table"] = dict(zip("rstp", config.table.values))
    out["candidates_truncated"] = len(report.candidates) > max_listed
    out["candidates"] = report.candidates[:max_listed]
    _emit(_json(out), config)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--gamma", default="pi/2", help="entanglement angle in [0, pi/2]; accepts 'pi/2' style (default pi/2)")
    common.add_argument("--payoffs", default="3,0,5,1", help="payoff table r,s,t,p (default 3,0,5,1)")
    common.add_argument("--pd", action="store_true", help="require Prisoners' Dilemma ordering t > r > p > s")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("csv", "json"), default=None, dest="fmt")
    common.add_argument("--out", metavar="PATH", default=None, help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="ewlgame", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("play", parents=[common], help="evaluate a strategy pair", epilog=STRATEGY_HELP)
    p.add_argument("--alice", required=True, help="Alice's strategy")
    p.add_argument("--bob", required=True, help="Bob's strategy")

    p = sub.add_parser("counter", parents=[common], help="Bob's counterstrategy to an Alice move", epilog=STRATEGY_HELP)
    p.add_argument("--target-alice", required=True, help="Alice's strategy in the target profile")
    p.add_argument("--target-bob", required=True, help="Bob's strategy in the target profile")
    p.add_argument("--alice-move", required=True, help="the move Alice actually plays")

    p = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    p.add_argument("suite", choices=verify.SUITES + ("all",))

    p = sub.add_parser("scan", parents=[common], help="reality and Jacobian-rank scan over gamma (CSV)")
    p.add_argument("--gamma-count", type=int, default=9)
    p.add_argument("--samples", type=int, default=200)

    p = sub.add_parser("nash", parents=[common], help="pure Nash equilibrium grid search (JSON)")
    p.add_argument("--grid", type=int, default=8, help="grid points per strategy angle (6 angles total)")
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--max-points", type=int, default=analysis.DEFAULT_MAX_POINTS, help="budget on grid^6")
    p.add_argument("--max-listed", type=int, default=1000, help="cap on candidates written out")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        try:
            gamma = parse_angle(args.gamma)
            game.build_gate(gamma)
        except (ValueError, EWLError):
            raise UsageError("--gamma", f"{args.gamma!r} is not an angle in [0, pi/2]") from None
        table = parse_payoffs(args.payoffs)
        if args.pd and not table.is_prisoners_dilemma:
            raise UsageError("--payoffs", "table violates t > r > p > s required by --pd")
        config = RunConfig(gamma=gamma, table=table, seed=args.seed, fmt=args.fmt, out=args.out)

        if args.command == "play":
            return cmd_play(config, parse_strategy(args.alice, "--alice"), parse_strategy(args.bob, "--bob"))
        if args.command == "counter":
            return cmd_counter(
                config,
                parse_strategy(args.target_alice, "--target-alice"),
                parse_strategy(args.target_bob, "--target-bob"),
                parse_strategy(args.alice_move, "--alice-move"),
            )
        if args.command == "verify":
            return cmd_verify(config, args.suite)
        if args.command == "scan":
            if config.fmt is None:
                config = RunConfig(config.gamma, config.table, config.seed, "csv", config.out)
            return cmd_scan(config, args.gamma_count, args.samples)
        if args.command == "nash":
            return cmd_nash(config, args.grid, args.epsilon, args.max_points, args.max_listed)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
