"""Command-line front end.

Three subcommands:

  screen         CSV in, JSON screening report out (optional plot-data CSV)
  simulate       run a replicated synthetic study, JSON report out
  augment-check  screen, replace unselected columns by noise, screen again

Exit codes: 0 success, 2 input error, 3 degenerate data, 4 config error.
Worker parallelism is capped by the SIT_SCREEN_THREADS environment variable;
thread count never changes results.  The master seed defaults to the fixed
constant 42 (never time-based) so runs are reproducible by default.
"""

from __future__ import annotations

import argparse
import math
import sys
import time

from . import __version__
from .errors import ConfigError, DegenerateData, InputError, SitScreenError
from .estimator import (
    SliceConfig,
    VarianceCalibration,
    auto_calibration,
    plugin_calibration,
)
from .fdr import FdrConfig, by_threshold
from .io import ingest_csv
from .reports import (
    augment_report,
    dump_json,
    plot_data_lines,
    replication_csv_header,
    replication_csv_rows,
    screen_report,
    simulation_report_dict,
)
from .screening import (
    RULE_BH,
    RULE_BY,
    RULE_HARD_LEVEL,
    RULE_HARD_SIZE,
    Dataset,
    augment_with_noise,
    hard_threshold_select,
    level_threshold_select,
    screen_all,
)
from .seeding import DEFAULT_MASTER_SEED, derive_seed
from .simlab import DesignSpec, ModelSpec, ThresholdRule, run_study

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE = 3
EXIT_CONFIG = 4

# Presets matching the three study layouts of the simulation suite.
STUDY_PRESETS = {
    "1": {"n": 256, "p": 1000, "rho": 0.5, "c": 32, "d": 32},
    "2": {"n": 256, "p": 1000, "rho": 0.8, "c": 32, "d": 32},
    "3": {"n": 1024, "p": 5000, "rho": 0.5, "c": 32, "q": 0.1},
}


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad flags; config errors must exit 4.
    def error(self, message):
        raise ConfigError(message)


def auto_slice_size(n: int) -> int:
    """Power of two nearest sqrt(n) from below: 2^floor(log2(n) / 2)."""
    if n < 4:
        raise ConfigError("need n >= 4 to choose a slice size")
    return 2 ** ((n.bit_length() - 1) // 2)


def default_hard_size(n: int, p: int) -> int:
    """Conventional screening budget floor(n / log(n)), capped at p."""
    return max(1, min(int(n / math.log(n)), p))


def _parse_slice_size(text: str) -> int | str:
    if text == "auto":
        return "auto"
    try:
        value = int(text)
    except ValueError:
        raise ConfigError(f"--c must be an integer or 'auto', got {text!r}") from None
    return value


def build_parser() -> _Parser:
    parser = _Parser(prog="sitscreen", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_MASTER_SEED,
                        help="master seed (default: %(default)s)")
    common.add_argument("--output", default="-",
                        help="JSON report path, or - for stdout (default)")

    csv_common = argparse.ArgumentParser(add_help=False)
    csv_common.add_argument("--input", required=True, help="CSV file with header")
    csv_common.add_argument("--response", required=True,
                            help="response column: a name, or #k for 0-based index k")
    csv_common.add_argument("--standardize", action="store_true",
                            help="center and scale covariates before screening")
    csv_common.add_argument("--c", type=_parse_slice_size, default="auto",
                            help="observations per slice, or 'auto' (default)")
    csv_common.add_argument("--sigma", choices=("auto", "fixed", "plugin"),
                            default="auto", help="variance calibration mode")
    csv_common.add_argument("--rule", default=RULE_BY,
                            choices=(RULE_BY, RULE_BH, RULE_HARD_SIZE, RULE_HARD_LEVEL),
                            help="threshold rule (default: by)")
    csv_common.add_argument("--q", type=float, default=0.1,
                            help="nominal FDR level for by/bh (default: 0.1)")
    csv_common.add_argument("--d", type=int, default=None,
                            help="model size for hard-size (default: n/log n)")
    csv_common.add_argument("--level", type=float, default=None,
                            help="statistic cutoff for hard-level")

    p_screen = sub.add_parser("screen", parents=[common, csv_common],
                              help="screen a CSV dataset")
    p_screen.add_argument("--plot-data", default=None,
                          help="also write an index,name,omega,selected CSV")

    p_sim = sub.add_parser("simulate", parents=[common],
                           help="run a replicated synthetic study")
    p_sim.add_argument("--study", choices=tuple(STUDY_PRESETS), default=None,
                       help="preset sizes for study 1, 2, or 3")
    p_sim.add_argument("--model", required=True,
                       help="response model id (a1..a4, b1..b4, c1..c4)")
    p_sim.add_argument("--n", type=int, default=None)
    p_sim.add_argument("--p", type=int, default=None)
    p_sim.add_argument("--s", type=int, default=None,
                       help="sparsity for a*/c* models")
    p_sim.add_argument("--rho", type=float, default=None)
    p_sim.add_argument("--c", type=int, default=None,
                       help="observations per slice")
    p_sim.add_argument("--rule", action="append", default=None,
                       choices=(RULE_HARD_SIZE, RULE_BY, RULE_BH),
                       help="threshold rule; repeat for several")
    p_sim.add_argument("--d", type=int, default=None)
    p_sim.add_argument("--q", type=float, default=None)
    p_sim.add_argument("--reps", type=int, default=100)
    p_sim.add_argument("--per-rep", default=None,
                       help="stream per-replication rows to this CSV")

    p_aug = sub.add_parser("augment-check", parents=[common, csv_common],
                           help="threshold stability check with noise columns")
    p_aug.add_argument("--num-aux", type=int, default=None,
                       help="auxiliary noise columns (default: p - #selected)")
    return parser


def _calibration_for(mode: str, y):
    if mode == "fixed":
        return VarianceCalibration.fixed()
    if mode == "plugin":
        return plugin_calibration(y)
    return auto_calibration(y)


def _apply_rule(args, result, n: int):
    """Run the configured threshold rule; returns (outcome, selected)."""
    if args.rule == RULE_HARD_SIZE:
        d = args.d if args.d is not None else default_hard_size(n, result.p)
        outcome = hard_threshold_select(result, d)
        return outcome, outcome.indices
    if args.rule == RULE_HARD_LEVEL:
        if args.level is None:
            raise ConfigError("--rule hard-level requires --level")
        outcome = level_threshold_select(result, args.level)
        return outcome, outcome.indices
    decision = by_threshold(result, FdrConfig(q=args.q, adjustment=args.rule))
    return decision, decision.selected


def _screen_once(args, data: Dataset, seed: int):
    """Shared screen pipeline; returns (result, outcome, selected, config)."""
    c = auto_slice_size(data.n) if args.c == "auto" else args.c
    config = SliceConfig(c=c, tie_seed=seed)
    calibration = _calibration_for(args.sigma, data.y)
    result = screen_all(data, config, calibration=calibration)
    outcome, selected = _apply_rule(args, result, data.n)
    effective = {
        "input": args.input,
        "response": args.response,
        "standardize": bool(args.standardize),
        "n": int(data.n),
        "p": int(data.p),
        "c": int(result.config.c),
        "H": int(result.config.H),
        "n_effective": int(result.n_effective),
        "sigma_mode": args.sigma,
        "rule": args.rule,
        "d": args.d,
        "q": args.q if args.rule in (RULE_BY, RULE_BH) else None,
        "level": args.level,
        "seed": int(seed),
    }
    return result, outcome, selected, effective


def cmd_screen(args) -> int:
    started = time.perf_counter()
    data = ingest_csv(args.input, args.response, standardize=args.standardize)
    result, outcome, selected, effective = _screen_once(args, data, args.seed)
    report = screen_report(
        result, outcome, selected, data.names, effective,
        timing_seconds=time.perf_counter() - started,
    )
    text = dump_json(report, args.output)
    if args.output == "-":
        print(text)
    if args.plot_data:
        lines = plot_data_lines(
            result, selected, data.names,
            outcome.realized_threshold if hasattr(outcome, "realized_threshold")
            else math.inf,
        )
        with open(args.plot_data, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    return EXIT_OK


def _simulate_settings(args):
    preset = STUDY_PRESETS.get(args.study, {}) if args.study else {}

    def pick(name, fallback=None):
        value = getattr(args, name)
        if value is not None:
            return value
        return preset.get(name, fallback)

    n = pick("n", 256)
    p = pick("p", 1000)
    rho = pick("rho", 0.5)
    c = pick("c", auto_slice_size(n))
    q = pick("q", 0.1)
    d = pick("d", default_hard_size(n, p))
    kinds = args.rule or [RULE_HARD_SIZE]
    rules = []
    for kind in kinds:
        if kind == RULE_HARD_SIZE:
            rules.append(ThresholdRule(kind=kind, d=d))
        else:
            rules.append(ThresholdRule(kind=kind, q=q))
    return n, p, rho, c, rules


def cmd_simulate(args) -> int:
    started = time.perf_counter()
    n, p, rho, c, rules = _simulate_settings(args)
    model = ModelSpec(id=args.model, s=args.s)
    design = DesignSpec(n=n, p=p, rho=rho, seed=derive_seed(args.seed, 0))

    hook = None
    per_rep_fh = None
    if args.per_rep:
        per_rep_fh = open(args.per_rep, "w", encoding="utf-8")
        per_rep_fh.write(replication_csv_header() + "\n")

        def hook(outcome):
            for row in replication_csv_rows(outcome):
                per_rep_fh.write(row + "\n")

    try:
        report = run_study(
            design, model, c, rules, reps=args.reps,
            master_seed=args.seed, outcome_hook=hook,
        )
    finally:
        if per_rep_fh is not None:
            per_rep_fh.close()

    effective = {
        "model": args.model,
        "s": model.s,
        "n": n,
        "p": p,
        "rho": rho,
        "c": c,
        "rules": [rule.label for rule in rules],
        "reps": args.reps,
        "seed": int(args.seed),
        "study": args.study,
    }
    payload = simulation_report_dict(
        report, effective, timing_seconds=time.perf_counter() - started
    )
    text = dump_json(payload, args.output)
    if args.output == "-":
        print(text)
    return EXIT_OK


def cmd_augment_check(args) -> int:
    started = time.perf_counter()
    data = ingest_csv(args.input, args.response, standardize=args.standardize)
    result, outcome, selected, effective = _screen_once(args, data, args.seed)
    num_aux = args.num_aux
    if num_aux is None:
        num_aux = data.p - int(len(selected))
    augmented_data = augment_with_noise(
        data, keep=selected, num_aux=num_aux, seed=derive_seed(args.seed, 1)
    )
    aug_result, aug_outcome, aug_selected, _ = _screen_once(
        args, augmented_data, args.seed
    )

    names = data.names
    kept_names = [names[int(k)] for k in selected]
    aug_names = augmented_data.names
    reselected = [aug_names[int(k)] for k in aug_selected]
    overlap = sorted(set(kept_names) & set(reselected))
    effective["num_aux"] = int(num_aux)

    original_report = screen_report(
        result, outcome, selected, names, effective, timing_seconds=0.0
    )
    augmented_report = screen_report(
        aug_result, aug_outcome, aug_selected, aug_names, effective,
        timing_seconds=0.0,
    )
    for sub_report in (original_report, augmented_report):
        del sub_report["timing"]

    payload = augment_report(
        original_report,
        augmented_report,
        {
            "selected_original": sorted(kept_names),
            "selected_augmented": sorted(reselected),
            "retained": overlap,
            "retained_fraction": (
                len(overlap) / len(kept_names) if kept_names else None
            ),
        },
        effective,
        timing_seconds=time.perf_counter() - started,
    )
    text = dump_json(payload, args.output)
    if args.output == "-":
        print(text)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "screen":
            return cmd_screen(args)
        if args.command == "simulate":
            return cmd_simulate(args)
        return cmd_augment_check(args)
    except (InputError, FileNotFoundError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except DegenerateData as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ConfigError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except SitScreenError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
