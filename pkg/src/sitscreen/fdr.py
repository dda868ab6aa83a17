"""Data-adaptive selection thresholds with false-discovery-rate control.

The threshold is the smallest positive statistic value t at which the
estimated false-discovery proportion

    S(p) * p * (1 - Phi(z(t))) / max(#{k: omega_k >= t}, 1)

drops to the nominal level q, where z(t) scales t like the per-covariate
z statistic and S(p) = 1 + 1/2 + ... + 1/p is the harmonic adjustment that
makes the bound valid under arbitrary dependence across covariates.  With
S(p) = 1 the rule is the classical step-up procedure that assumes positive
dependence; both variants are exposed.

The infimum over t > 0 is attained at an observed statistic value, so the
implementation runs the equivalent step-up scan over sorted p-values in
O(p log p) instead of scanning the estimated-FDP curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, NonPositiveThreshold
from .estimator import p_value_from_z
from .screening import RULE_BH, RULE_BY, ScreeningResult

ADJUSTMENTS = (RULE_BY, RULE_BH)


def harmonic_number(p: int) -> float:
    """S(p) = sum_{l=1..p} 1/l, the dependence adjustment constant."""
    return float(sum(1.0 / l for l in range(1, p + 1)))


@dataclass(frozen=True)
class FdrConfig:
    """Nominal FDR level q in (0, 1) and the adjustment variant."""

    q: float
    adjustment: str = RULE_BY

    def __post_init__(self):
        if not (0.0 < self.q < 1.0):
            raise ConfigError(f"q must lie in (0, 1), got {self.q}")
        if self.adjustment not in ADJUSTMENTS:
            raise ConfigError(f"adjustment must be one of {ADJUSTMENTS}")


@dataclass(frozen=True)
class ThresholdDecision:
    """Outcome of the data-adaptive rule.

    ``realized_threshold`` is +inf when nothing qualifies (empty selection);
    otherwise it is the smallest selected statistic value, and the selected
    set is exactly {k: omega_k >= realized_threshold}, closed under ties.
    """

    realized_threshold: float
    num_selected: int
    selected: np.ndarray
    per_k_pvalues: np.ndarray
    harmonic_constant: float
    rule: str

    def __post_init__(self):
        object.__setattr__(self, "selected", np.asarray(self.selected, dtype=np.intp))


def by_threshold(result: ScreeningResult, config: FdrConfig) -> ThresholdDecision:
    """Data-adaptive selection via the step-up form of the threshold rule.

    Walk covariates in increasing p-value order (equivalently decreasing
    utility) and find the largest position k whose p-value is at most
    k * q / (p * S(p)); the utility at that position is the realized
    threshold.  Only positive utilities are candidates, so covariates with
    omega <= 0 are never selected.  An empty selection is a valid outcome.
    """
    p = result.p
    harmonic = harmonic_number(p) if config.adjustment == RULE_BY else 1.0
    order = result.order
    omega_sorted = result.omega[order]
    pvals_sorted = result.p_values[order]
    positions = np.arange(1, p + 1)
    bounds = positions * (config.q / (p * harmonic))
    qualifies = (omega_sorted > 0.0) & (pvals_sorted <= bounds)
    hits = np.flatnonzero(qualifies)
    if hits.size == 0:
        return ThresholdDecision(
            realized_threshold=math.inf,
            num_selected=0,
            selected=np.array([], dtype=np.intp),
            per_k_pvalues=result.p_values,
            harmonic_constant=harmonic,
            rule=config.adjustment,
        )
    threshold = float(omega_sorted[hits[-1]])
    selected = np.flatnonzero(result.omega >= threshold)
    return ThresholdDecision(
        realized_threshold=threshold,
        num_selected=int(selected.size),
        selected=selected,
        per_k_pvalues=result.p_values,
        harmonic_constant=harmonic,
        rule=config.adjustment,
    )


def fdp_hat(t: float, result: ScreeningResult, config: FdrConfig) -> float:
    """Estimated false-discovery proportion of the selection at level t."""
    if not (t > 0.0):
        raise NonPositiveThreshold(f"threshold must be positive, got {t}")
    harmonic = harmonic_number(result.p) if config.adjustment == RULE_BY else 1.0
    scale = math.sqrt(result.n_effective * (result.config.c - 1))
    tail = float(p_value_from_z(scale * t / result.calibration.sigma))
    count = int(np.count_nonzero(result.omega >= t))
    return harmonic * result.p * tail / max(count, 1)


def evaluate_selection(selected, active) -> tuple[float, int]:
    """False-discovery proportion and true-positive count of a selection.

    The FDP uses the max(|selected|, 1) guard, so an empty selection scores
    zero false discoveries.
    """
    selected = set(int(k) for k in selected)
    active = set(int(k) for k in active)
    false_hits = len(selected - active)
    true_hits = len(selected & active)
    return false_hits / max(len(selected), 1), true_hits
