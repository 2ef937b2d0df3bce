"""Command-line interface for avgmdp."""

import argparse
import logging
import sys
from pathlib import Path
from typing import ClassVar

import numpy as np

from avgmdp.avgcost import (
    DpSource,
    EnumerationSource,
    SweepSource,
    average_cost_report,
    build_sweep,
    w_star_bruteforce,
)
from avgmdp.avgcost.average import DEFAULT_POLICY_CAP
from avgmdp.config import Builtin, RunConfig, parse_grid
from avgmdp.dp import finite_horizon, solve_discounted
from avgmdp.errors import ModelError, ParameterError
from avgmdp.example41 import (
    BranchSequence,
    ClosedFormSource,
    abel_trend,
    build_model,
    derive_params,
    g_value,
    gap_table,
    generate_sequence,
    verify_lemma43,
    verify_prop42,
)
from avgmdp.model import (
    MdpModel,
    absorbing_model,
    load_model,
    random_model,
    validate_model,
)
from avgmdp.model.io import key_of
from avgmdp.report import ReportWriter

logger = logging.getLogger(__name__)


def _actions(actions: tuple[object, ...]) -> str:
    return " ".join(key_of(a) for a in actions)


class CLI:
    """Command-line interface using argparse."""

    EXIT_OK: ClassVar[int] = 0
    EXIT_FAILED: ClassVar[int] = 1
    EXIT_INPUT: ClassVar[int] = 2

    def __init__(self) -> None:
        """Initialize CLI with argument parser."""
        self.parser = argparse.ArgumentParser(
            prog="avgmdp",
            description=(
                "Solve and verify Markov decision processes under discounted "
                "and average-cost criteria"
            ),
        )
        subparsers = self.parser.add_subparsers(
            dest="command", help="Available commands"
        )

        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--tol", type=float, help="Absolute tolerance")
        common.add_argument("--threads", type=int, help="Worker threads")
        common.add_argument("--out", type=Path, help="Directory for report files")
        common.add_argument(
            "--precision",
            choices=["double", "extended"],
            help="Working precision of closed-form computations",
        )
        common.add_argument(
            "--verbose", action="store_true", help="Log progress to stderr"
        )

        source = argparse.ArgumentParser(add_help=False)
        group = source.add_mutually_exclusive_group()
        group.add_argument("--model", dest="model_path", type=Path, help="Model file")
        group.add_argument(
            "--builtin",
            choices=[b.value for b in Builtin],
            help="Use a built-in model instead of a file",
        )
        source.add_argument("--seed", type=int, help="Seed for the random model")
        source.add_argument("--states", type=int, help="States of the random model")
        source.add_argument("--actions", type=int, help="Actions of the random model")
        source.add_argument("--branches", type=int, help="Branches of example41")
        source.add_argument("--alpha1", type=float, help="First discount of example41")

        solve_parser = subparsers.add_parser(
            "solve", parents=[common, source], help="Infinite-horizon discounted solve"
        )
        solve_parser.add_argument("--alpha", type=float, help="Discount factor")

        finite_parser = subparsers.add_parser(
            "finite", parents=[common, source], help="Finite-horizon backward induction"
        )
        finite_parser.add_argument("--alpha", type=float, help="Discount factor")
        finite_parser.add_argument("--horizon", type=int, help="Number of epochs")

        avg_parser = subparsers.add_parser(
            "avg", parents=[common, source], help="Vanishing-discount average-cost run"
        )
        avg_parser.add_argument(
            "--alpha-grid",
            dest="alpha_grid",
            help="geometric:K1:K2, a comma-separated list, or example41",
        )
        avg_parser.add_argument(
            "--source",
            choices=["auto", "dp", "enumerate"],
            help="How discounted values are computed",
        )

        self.example_parser = subparsers.add_parser(
            "example41", help="Counterexample parameters and verdicts"
        )
        example_actions = self.example_parser.add_subparsers(
            dest="action", help="Available actions"
        )
        params_parser = example_actions.add_parser(
            "params", parents=[common], help="Parameter tuple and g-bounds for (β, M)"
        )
        params_parser.add_argument("--beta", type=float, help="β in (0, 1)")
        params_parser.add_argument("--M", dest="m", type=float, help="M > 0")
        params_parser.add_argument("--samples", type=int, help="Samples per interval")
        for name, text in (
            ("sequence", "Branch table"),
            ("verify", "Full verification with verdict"),
            ("gap-table", "u_α(0) at γ⁽ⁿ⁾ and α⁽ⁿ⁾"),
        ):
            sub = example_actions.add_parser(name, parents=[common], help=text)
            sub.add_argument("--branches", type=int, help="Number of branches")
            sub.add_argument("--alpha1", type=float, help="First discount α⁽¹⁾")
            sub.add_argument("--samples", type=int, help="Samples per interval")

        validate_parser = subparsers.add_parser(
            "validate", parents=[common], help="Check a model file"
        )
        validate_parser.add_argument(
            "--model", dest="model_path", type=Path, required=True, help="Model file"
        )

    def run(self, args: list[str] | None = None) -> int:
        """Run CLI with given arguments.

        Args:
            args: Command-line arguments. If None, uses sys.argv[1:]

        Returns:
            Exit code: 0 success, 1 failed verification, 2 input error
        """
        parsed_args = self.parser.parse_args(args)
        if parsed_args.command is None:
            self.parser.print_help()
            return self.EXIT_OK

        logging.basicConfig(
            level=(
                logging.DEBUG
                if getattr(parsed_args, "verbose", False)
                else logging.WARNING
            ),
            format="%(levelname)s %(name)s: %(message)s",
            stream=sys.stderr,
            force=True,
        )
        handlers = {
            "solve": self._handle_solve,
            "finite": self._handle_finite,
            "avg": self._handle_avg,
            "example41": self._handle_example41,
            "validate": self._handle_validate,
        }
        try:
            config = RunConfig.from_namespace(parsed_args)
            return handlers[config.command](config)
        except ValueError as e:
            print(f"Error: {e}", file=sys.stderr)
            return self.EXIT_INPUT

    def _load(self, config: RunConfig) -> tuple[MdpModel, BranchSequence | None]:
        """Resolve the model named by the config.

        Raises:
            ModelError: If a model file is invalid
            ParameterError: If no model is named
        """
        if config.model_path is not None:
            model = load_model(config.model_path)
            report = validate_model(model)
            if not report.accepted:
                defect = report.defects[0].describe()
                msg = f"Invalid model {config.model_path}: {defect}"
                raise ModelError(msg)
            return model, None
        match config.builtin:
            case Builtin.EXAMPLE41:
                seq = self._sequence(config)
                return build_model(seq), seq
            case Builtin.RANDOM:
                rng = np.random.default_rng(config.seed)
                return (
                    random_model(rng, config.states, config.actions, unichain=True),
                    None,
                )
            case Builtin.ABSORBING:
                return absorbing_model(), None
        msg = "Give --model PATH or --builtin NAME"
        raise ParameterError(msg)

    def _sequence(self, config: RunConfig) -> BranchSequence:
        seq = generate_sequence(
            config.alpha1, config.branches, dps=config.precision.dps
        )
        if seq.truncated:
            print(
                f"Note: branch {seq.truncated_at} has N = {seq.cap_value} "
                "above the cap; "
                f"using {len(seq)} branches"
            )
        return seq

    def _handle_solve(self, config: RunConfig) -> int:
        """Handle solve subcommand."""
        model, _ = self._load(config)
        solution = solve_discounted(
            model, config.alpha, min(config.tol, 1e-10), workers=config.threads
        )
        records = [
            {
                "state": key_of(x),
                "value": solution.values[x],
                "action": key_of(solution.policy[x]),
                "argmin": _actions(solution.argmins[x]),
            }
            for x in model.states
        ]
        print(
            f"Solved {model.name} at α = {config.alpha}: "
            f"{solution.iterations} iterations, residual {solution.residual:.3e}"
            + ("" if solution.certified else " (fixed budget, not certified)")
        )
        ReportWriter(config.out).records(
            "values.csv", records, ["state", "value", "action", "argmin"]
        )
        return self.EXIT_OK

    def _handle_finite(self, config: RunConfig) -> int:
        """Handle finite subcommand."""
        model, _ = self._load(config)
        result = finite_horizon(model, config.alpha, config.horizon, config.threads)
        values = [
            {
                "t": t,
                "state": key_of(x),
                "value": result.values[t][x],
                "argmin": _actions(result.argmins[t - 1][x]) if t else "",
            }
            for t in range(config.horizon + 1)
            for x in model.states
        ]
        policy = [
            {"epoch": e, "state": key_of(x), "action": key_of(rule[x])}
            for e, rule in enumerate(result.policy.epochs)
            for x in model.states
        ]
        print(f"Backward induction on {model.name}: {config.horizon} epochs")
        writer = ReportWriter(config.out)
        writer.records("finite_values.csv", values, ["t", "state", "value", "argmin"])
        writer.records("finite_policy.csv", policy, ["epoch", "state", "action"])
        return self.EXIT_OK

    def _sweep_source(
        self, config: RunConfig, model: MdpModel, seq: BranchSequence | None
    ) -> SweepSource:
        if seq is not None:
            return ClosedFormSource(seq)
        enumerable = (
            model.has_bounded_costs
            and model.policy_count <= EnumerationSource.DEFAULT_CAP
        )
        if config.source == "enumerate" or (config.source == "auto" and enumerable):
            return EnumerationSource()
        return DpSource(tol=min(config.tol, 1e-10), workers=config.threads)

    def _handle_avg(self, config: RunConfig) -> int:
        """Handle avg subcommand."""
        model, seq = self._load(config)
        adversarial = None
        if seq is not None:
            # α⁽¹⁾..α⁽ᴷ⁺¹⁾ and γ⁽¹⁾..γ⁽ᴷ⁾; the grid ends on α⁽ᴷ⁺¹⁾
            last = float(seq.branches[-1].alpha_next)
            points = {float(b.alpha) for b in seq} | {float(b.gamma) for b in seq}
            adversarial = sorted(points | {last})
        grid = parse_grid(config.grid_spec, adversarial)
        source = self._sweep_source(config, model, seq)
        table = build_sweep(model, grid, source, config.threads)

        w_star = None
        if model.policy_count <= DEFAULT_POLICY_CAP:
            w_star = w_star_bruteforce(model, workers=config.threads)
        report = average_cost_report(model, table, config.tol, w_star)
        check = report.check

        print(
            f"Average-cost sweep on {model.name} "
            f"({table.source}, {len(grid)} points)"
        )
        print(f"  w_lower: {report.w_lower:.12g}")
        print(f"  w_upper: {report.w_upper:.12g}")
        if w_star is not None:
            print(f"  w_star:  {w_star:.12g}")
        print(f"  min slack: {check.min_slack:.3e}")

        writer = ReportWriter(config.out)
        writer.records(
            "sweep.csv",
            [{**r, "state": key_of(r["state"])} for r in table.records()],
            ["alpha", "state", "v", "m", "u"],
        )
        writer.verdict(
            "avg_report.json",
            {
                "model": model.name,
                "evidence": report.evidence,
                "grid": list(table.grid),
                "w_lower": report.w_lower,
                "w_upper": report.w_upper,
                "w_star": w_star,
                "chain_holds": report.chain_holds,
                "min_slack": check.min_slack,
                "within_floor": check.within_floor,
                "inclusion_failures": list(check.inclusion_failures),
                "states": {
                    key_of(x): {
                        "u": report.u[x],
                        "slack": check.slack[x],
                        "slack_floor": check.slack_floor.get(x),
                        "a_upper": list(check.a_upper[x]),
                        "a_min": list(check.a_min[x]),
                        "policy": check.policy[x],
                    }
                    for x in model.states
                },
            },
        )
        return self.EXIT_OK if report.chain_holds else self.EXIT_FAILED

    def _handle_example41(self, config: RunConfig) -> int:
        """Handle example41 subcommand."""
        if config.action is None:
            self.example_parser.print_help()
            return self.EXIT_INPUT
        writer = ReportWriter(config.out)
        dps = config.precision.dps
        if config.action == "params":
            params = derive_params(config.beta, config.m, dps=dps)
            lemma = verify_lemma43(
                config.beta, config.m, config.samples, config.tol, dps
            )
            print(
                f"β = {config.beta}, M = {config.m}: γ = {float(params.gamma):.12g}, "
                f"n* = {params.n_star}, δ = {float(params.delta):.12g}"
            )
            writer.verdict(
                "params.json",
                {
                    "eps": params.eps,
                    "gamma": params.gamma,
                    "n_star": params.n_star,
                    "delta": params.delta,
                    "g_at_gamma": g_value(params, params.gamma),
                    "lemma": lemma.record(),
                },
            )
            return self.EXIT_OK if lemma.passed else self.EXIT_FAILED

        seq = self._sequence(config)
        if config.action == "sequence":
            writer.records(
                "branches.csv",
                [b.record() for b in seq],
                ["n", "alpha", "eps", "gamma", "N", "alpha_next"],
            )
            return self.EXIT_OK
        if config.action == "gap-table":
            writer.records(
                "gap_table.csv",
                [row.record() for row in gap_table(seq, config.threads)],
                ["n", "gamma", "u_gamma", "alpha", "u_alpha"],
            )
            return self.EXIT_OK
        if config.action == "verify":
            return self._verify_example41(config, seq, writer)
        msg = f"Unknown example41 action {config.action!r}"
        raise ParameterError(msg)

    def _verify_example41(
        self, config: RunConfig, seq: BranchSequence, writer: ReportWriter
    ) -> int:
        dps = config.precision.dps
        prop = verify_prop42(seq, tol=config.tol, workers=config.threads)
        lemmas = [
            verify_lemma43(b.alpha, b.n, config.samples, config.tol, dps) for b in seq
        ]
        trend = abel_trend(seq)
        passed = (
            prop.passed
            and all(r.passed for r in lemmas)
            and all(r.ok for r in trend)
        )

        print(f"Verification over {len(seq)} branches: {'PASS' if passed else 'FAIL'}")
        for row in prop.gaps:
            print(
                f"  n={row.n}: u at γ = {float(row.u_gamma):.6g}, "
                f"u at α = {float(row.u_alpha):.6g}"
            )
        writer.records(
            "gap_table.csv",
            [row.record() for row in prop.gaps],
            ["n", "gamma", "u_gamma", "alpha", "u_alpha"],
        )
        writer.records(
            "abel_trend.csv",
            [row.record() for row in trend],
            ["n", "alpha", "scaled_m", "deviation", "bound", "ok"],
        )
        writer.verdict(
            "verdict.json",
            {
                **prop.verdict(),
                "passed": passed,
                "lemma": [r.record() for r in lemmas],
                "abel_trend": [row.record() for row in trend],
                "truncated_at": seq.truncated_at,
            },
        )
        return self.EXIT_OK if passed else self.EXIT_FAILED

    def _handle_validate(self, config: RunConfig) -> int:
        """Handle validate subcommand."""
        if config.model_path is None:
            msg = "validate needs --model PATH"
            raise ParameterError(msg)
        model = load_model(config.model_path)
        report = validate_model(model)
        if report.accepted:
            print(f"{config.model_path}: valid ({len(model)} states)")
            return self.EXIT_OK
        print(f"{config.model_path}: {len(report.defects)} defects")
        for defect in report.defects:
            print(f"  {defect.describe()}")
        return self.EXIT_FAILED
