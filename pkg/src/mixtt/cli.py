"""Command-line front end.

Three subcommands: ``analyze`` fits one dataset and writes a report,
``simulate`` runs a Monte Carlo study over a built-in scenario, and
``sensitivity`` compares prior presets on the same data. Every command
requires ``--seed``; there is no wall-clock seeding, so rerunning a command
with identical flags produces byte-identical output files. Exit status is 0
on success and nonzero with a diagnostic on stderr otherwise.
"""

from __future__ import annotations

import argparse
import sys

from .analysis import (
    alpha_decision,
    cohen_partition,
    delta_mpe,
    effect_size_range,
    effect_size_series,
    hpd_interval,
    pmp,
    posterior_mode,
)
from .errors import MixttError
from .gibbs import ChainConfig, run_chain
from .harness import SCENARIO_KINDS, Scenario, StudyConfig, prior_sensitivity, run_study
from .model import IndependencePrior, PriorPreset, realize_preset
from .reports import (
    AnalysisReport,
    chain_summary_dict,
    read_sample_csv,
    sensitivity_dict,
    study_result_dict,
    write_json,
    write_plot_data,
)
from .welch import welch_t_test

DEFAULT_ITERATIONS = 10_000
DEFAULT_BURN_IN = 5_000
DEFAULT_ALPHA = 0.95
DEFAULT_ROPE = "-0.2,0.2"
DEFAULT_DIRECTION = "g2-g1"


def _parse_rope(text: str) -> tuple[tuple[float, float], ...]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected numbers in LO,HI, got {text!r}") from None
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"rope needs LO < HI, got {text!r}")
    return ((lo, hi),)


def _add_chain_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--iters", type=int, default=DEFAULT_ITERATIONS, help="total sweeps per chain")
    p.add_argument("--burnin", type=int, default=DEFAULT_BURN_IN, help="sweeps discarded up front")
    p.add_argument("--seed", type=int, required=True, help="master seed; required, no wall-clock fallback")
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA, help="credible level for HPD and decisions")
    p.add_argument(
        "--rope",
        type=_parse_rope,
        default=_parse_rope(DEFAULT_ROPE),
        metavar="LO,HI",
        help="no-effect region for decisions (use --rope=LO,HI for negative bounds)",
    )


def _add_prior_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--prior", choices=("wide", "medium", "narrow"), default="wide",
                   help="data-scaled prior preset")
    p.add_argument("--b0", type=float, default=None, help="custom prior mean of the group means")
    p.add_argument("--B0", type=float, default=None, help="custom prior variance of the group means")
    p.add_argument("--c0", type=float, default=None, help="custom inverse-gamma shape for the variances")
    p.add_argument("--C0", type=float, default=None, help="custom inverse-gamma scale for the variances")


def _preset_from_args(args: argparse.Namespace) -> PriorPreset:
    custom = (args.b0, args.B0, args.c0, args.C0)
    if all(v is None for v in custom):
        return PriorPreset(args.prior)
    if any(v is None for v in custom):
        raise MixttError("a custom prior needs all four of --b0 --B0 --c0 --C0")
    return PriorPreset("custom", IndependencePrior(*custom))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mixtt",
        description="Bayesian two-group effect-size estimation with ROPE/HPD summaries",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="fit one CSV dataset and write a JSON report")
    p_an.add_argument("--input", required=True, help="CSV file with a value,group header")
    p_an.add_argument("--output", required=True, help="where to write the JSON report")
    p_an.add_argument("--plot-data", default=None, help="also write a kind,x,y density CSV here")
    p_an.add_argument("--direction", choices=("g1-g2", "g2-g1"), default=DEFAULT_DIRECTION,
                      help="sign convention for the reported effect size")
    p_an.add_argument("--strict-decision", action="store_true",
                      help="collapse boundary-straddling decisions into rejections")
    _add_chain_flags(p_an)
    _add_prior_flags(p_an)

    p_sim = sub.add_parser("simulate", help="run a Monte Carlo study over a built-in scenario")
    p_sim.add_argument("--scenario", required=True, choices=SCENARIO_KINDS)
    p_sim.add_argument("--n", type=int, required=True, help="observations per group")
    p_sim.add_argument("--datasets", type=int, required=True, help="number of simulated datasets")
    p_sim.add_argument("--output", required=True, help="where to write the JSON study result")
    _add_chain_flags(p_sim)
    p_sim.add_argument("--prior", choices=("wide", "medium", "narrow"), default="wide")

    p_sen = sub.add_parser("sensitivity", help="compare prior presets on the same data")
    p_sen.add_argument("--input", required=True, help="CSV file with a value,group header")
    p_sen.add_argument("--output", required=True, help="where to write the JSON comparison")
    p_sen.add_argument("--presets", default="wide,medium,narrow",
                       help="comma-separated preset names (at least two)")
    _add_chain_flags(p_sen)

    return parser


def cmd_analyze(args: argparse.Namespace) -> None:
    sample = read_sample_csv(args.input)
    preset = _preset_from_args(args)
    prior = realize_preset(preset, sample)
    chain = run_chain(sample, ChainConfig(args.iters, args.burnin, args.seed, prior))
    deltas = effect_size_series(chain, direction=args.direction)
    interval = hpd_interval(deltas, args.alpha)
    label, mass = pmp(deltas, cohen_partition())
    decision = alpha_decision(deltas, args.rope, args.alpha, strict=args.strict_decision)
    report = AnalysisReport(
        delta_mpe=delta_mpe(deltas),
        delta_mode=posterior_mode(deltas),
        hpd=interval,
        esr=effect_size_range(deltas, args.alpha),
        pmp_label=label,
        pmp_value=mass,
        decision=decision,
        welch=welch_t_test(sample),
        iterations=args.iters,
        burn_in=args.burnin,
        seed=args.seed,
        prior=prior,
        preset_kind=preset.kind,
        direction=args.direction,
        rope=args.rope,
        strict=args.strict_decision,
        n1=sample.n1,
        n2=sample.n2,
        parameter_summary=chain_summary_dict(chain),
    )
    write_json(report.to_dict(), args.output)
    if args.plot_data is not None:
        write_plot_data(deltas, interval, args.plot_data)


def cmd_simulate(args: argparse.Namespace) -> None:
    config = StudyConfig(
        scenario=Scenario.named(args.scenario),
        n_per_group=args.n,
        n_datasets=args.datasets,
        master_seed=args.seed,
        iterations=args.iters,
        burn_in=args.burnin,
        preset=PriorPreset(args.prior),
        alpha=args.alpha,
        rope=args.rope,
    )
    write_json(study_result_dict(run_study(config)), args.output)


def cmd_sensitivity(args: argparse.Namespace) -> None:
    names = [name.strip() for name in args.presets.split(",") if name.strip()]
    sample = read_sample_csv(args.input)
    summaries, differences = prior_sensitivity(
        sample,
        [PriorPreset(name) for name in names],
        base_seed=args.seed,
        iterations=args.iters,
        burn_in=args.burnin,
        alpha=args.alpha,
    )
    payload = sensitivity_dict(
        summaries, differences, args.iters, args.burnin, args.seed, args.alpha,
        sample.n1, sample.n2,
    )
    write_json(payload, args.output)


_COMMANDS = {"analyze": cmd_analyze, "simulate": cmd_simulate, "sensitivity": cmd_sensitivity}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:  # MixttError subclasses ValueError
        print(f"mixtt: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
