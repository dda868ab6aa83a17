#!/usr/bin/env python3
"""Study 2: nonlinear models (b1..b4) under strong design correlation.

n=256, p=1000, rho=0.8, hard threshold d=32, slice sizes {2, 32} by default.
Reports the same ranking criteria as study 1.
"""

import argparse
import json

from sitscreen import DesignSpec, ModelSpec, ThresholdRule, run_study


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=100)
    parser.add_argument("--seed", type=int, default=2)
    parser.add_argument("--models", nargs="+", default=["b1", "b2", "b3", "b4"])
    parser.add_argument("--slice-sizes", nargs="+", type=int, default=[2, 32])
    parser.add_argument("--output", default=None)
    args = parser.parse_args()

    design = DesignSpec(n=256, p=1000, rho=0.8)
    rules = [ThresholdRule(kind="hard-size", d=32)]
    collected = {}
    for model_id in args.models:
        model = ModelSpec(id=model_id)
        print(f"\nModel ({model_id[0]}.{model_id[1]})  active={model.active_set}")
        header = "  ".join(f"X{k}" for k in model.active_set)
        print(f"{'c':>4}  {header}  P_a    25% 50% 75% 95%")
        for c in args.slice_sizes:
            report = run_study(design, model, c=c, rules=rules,
                               reps=args.reps, master_seed=args.seed)
            summary = report.per_rule[rules[0].label]
            props = "  ".join(
                f"{summary.selection_proportions[k]:.3f}" for k in model.active_set
            )
            quantiles = " ".join(
                f"{report.mms_quantiles[q]:.0f}" for q in ("25", "50", "75", "95")
            )
            print(f"{c:>4}  {props}  {summary.p_all:.3f}  {quantiles}")
            collected[f"{model_id}/c={c}"] = {
                "p_a": summary.p_all,
                "selection_proportions": summary.selection_proportions,
                "mms_quantiles": report.mms_quantiles,
            }
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(collected, fh, indent=2, sort_keys=True)
        print(f"\nwrote {args.output}")


if __name__ == "__main__":
    main()
