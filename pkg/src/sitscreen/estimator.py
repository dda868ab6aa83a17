"""Sliced dependence statistic for one covariate/response pair.

The statistic measures how strongly a response Y depends on a covariate X,
on a scale where 0 corresponds to independence and 1 to Y being a function
of X.  It is computed from ranks only:

1. order the sample by X (ties broken by a seeded random permutation),
2. cut the ordered sample into H consecutive slices of c observations,
3. compare, within each slice, the response ranks r of the slice members,
4. normalise by the global rank dispersion sum R_i (n - R_i).

With ``num`` the within-slice sum of absolute rank differences and ``den``
the dispersion sum, the statistic is

    1 - (n - 1) * num / ((c - 1) * den),

evaluated here as a single correctly rounded division of exact integers.
Everything depends on orderings alone, so the value is invariant under
strictly increasing transformations of either variable.

Under independence of X and Y the scaled statistic

    z = sqrt(n (c - 1)) * value / sigma

is asymptotically standard normal; for a continuous response sigma^2 = 4/5
exactly, and for tied responses a plug-in calibration estimates sigma^2 from
the response ranks.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .errors import (
    ConfigError,
    DegenerateResponse,
    InvalidCalibration,
    SampleTooSmall,
)
from .seeding import rng_from_seed

# sigma^2 for a continuous (tie-free) response.
FIXED_SIGMA_SQ = 4.0 / 5.0

TRIM_RANDOM = "trim-random"


@dataclass(frozen=True)
class SliceConfig:
    """Slicing layout: c observations per slice, seeded tie handling.

    ``H`` is the slice count; it is unset until the configuration has been
    resolved against a concrete sample size (see :meth:`resolved`).  The
    remainder policy discards ``n mod c`` observations chosen uniformly at
    random before ordering, so the effective sample size is always H * c.
    """

    c: int
    tie_seed: int = 0
    remainder_policy: str = TRIM_RANDOM
    H: int | None = None

    def __post_init__(self):
        if not isinstance(self.c, (int, np.integer)) or self.c < 2:
            raise ConfigError(f"slice size c must be an integer >= 2, got {self.c!r}")
        if self.remainder_policy != TRIM_RANDOM:
            raise ConfigError(f"unknown remainder policy {self.remainder_policy!r}")
        if not (0 <= int(self.tie_seed) < 2**64):
            raise ConfigError("tie_seed must fit in 64 bits")
        if self.H is not None and self.H < 1:
            raise ConfigError("slice count H must be >= 1")

    def resolved(self, n: int) -> "SliceConfig":
        """Return a copy with H fixed for a sample of size ``n``."""
        n_eff = n - n % self.c
        if n_eff < 2 * self.c:
            raise SampleTooSmall(
                f"need at least two slices: n={n} leaves {n_eff} observations "
                f"for slices of {self.c}"
            )
        return dataclasses.replace(self, H=n_eff // self.c)

    @property
    def n_effective(self) -> int | None:
        return None if self.H is None else self.H * self.c


@dataclass(frozen=True)
class PairedSample:
    """One covariate/response pair of equal-length finite float vectors."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.float64)
        y = np.asarray(self.y, dtype=np.float64)
        if x.ndim != 1 or y.ndim != 1:
            raise ValueError("x and y must be one-dimensional")
        if x.shape[0] != y.shape[0]:
            raise ValueError(f"length mismatch: {x.shape[0]} vs {y.shape[0]}")
        if x.shape[0] < 4:
            raise ValueError("need at least 4 paired observations")
        if not (np.isfinite(x).all() and np.isfinite(y).all()):
            raise ValueError("all values must be finite")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return self.x.shape[0]


@dataclass(frozen=True)
class RankCounts:
    """Per-observation right counts r_i = #{y_j <= y_i} and R_i = #{y_j >= y_i}."""

    r: np.ndarray
    R: np.ndarray


@dataclass(frozen=True)
class VarianceCalibration:
    """Variance scale sigma^2 for the null z statistic.

    ``fixed`` mode pins sigma^2 = 4/5 (exact for a continuous response);
    ``plugin`` mode estimates sigma^2 = 2 * theta1 / theta2^2 from the
    response ranks and is the fallback when the response carries ties.
    """

    mode: str
    sigma_sq: float
    theta1: float | None = None
    theta2: float | None = None

    def __post_init__(self):
        if self.mode not in ("fixed", "plugin"):
            raise InvalidCalibration(f"unknown calibration mode {self.mode!r}")
        if not (self.sigma_sq > 0):
            raise InvalidCalibration(f"sigma_sq must be positive, got {self.sigma_sq}")
        if self.mode == "fixed" and self.sigma_sq != FIXED_SIGMA_SQ:
            raise InvalidCalibration("fixed mode requires sigma_sq = 4/5 exactly")
        if self.mode == "plugin":
            if self.theta1 is None or self.theta2 is None:
                raise InvalidCalibration("plugin mode requires theta1 and theta2")
            if self.sigma_sq != 2.0 * self.theta1 / self.theta2**2:
                raise InvalidCalibration("plugin sigma_sq must equal 2*theta1/theta2^2")

    @classmethod
    def fixed(cls) -> "VarianceCalibration":
        return cls(mode="fixed", sigma_sq=FIXED_SIGMA_SQ)

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma_sq)


@dataclass(frozen=True)
class DependenceEstimate:
    """Statistic value plus its normal z score and upper-tail p-value."""

    omega_hat: float
    z: float
    p_value: float
    n_effective: int
    c: int


def arrange_by_covariate(
    sample: PairedSample, config: SliceConfig
) -> tuple[np.ndarray, SliceConfig]:
    """Trim the sample to a multiple of c and order the response by X.

    Randomness (remainder trimming, then tie-break keys for equal X values)
    is drawn from ``config.tie_seed`` in that fixed order, so the arrangement
    is a pure function of (sample, config).  Returns the response values in
    slice order together with the resolved configuration.

    This arrangement is deliberately shared with the brute-force reference
    implementation: both paths must see the same tie-broken ordering for
    exact-equality checks to be meaningful.
    """
    resolved = config.resolved(sample.n)
    rng = rng_from_seed(config.tie_seed)
    x, y = sample.x, sample.y
    rem = sample.n % config.c
    if rem:
        drop = rng.choice(sample.n, size=rem, replace=False)
        keep = np.setdiff1d(np.arange(sample.n), drop)
        x, y = x[keep], y[keep]
    u = rng.random(x.shape[0])
    order = np.lexsort((u, x))
    return y[order], resolved


def rank_counts(y: np.ndarray) -> RankCounts:
    """Right counts of a response vector against its own values.

    ``r[i]`` counts values <= y[i], ``R[i]`` counts values >= y[i]; both are
    taken over the full vector, in the order ``y`` is given.
    """
    y = np.asarray(y, dtype=np.float64)
    ys = np.sort(y)
    r = np.searchsorted(ys, y, side="right").astype(np.int64)
    R = (y.shape[0] - np.searchsorted(ys, y, side="left")).astype(np.int64)
    return RankCounts(r=r, R=R)


def _within_slice_rank_spread(r_sliced: np.ndarray, H: int, c: int) -> int:
    """Sum over slices of all pairwise absolute rank differences.

    For sorted ranks a_(0) <= ... <= a_(c-1) the pairwise sum equals
    sum_j (2j - c + 1) a_(j), so one sort per slice replaces the c^2 pair
    loop and the whole pass costs O(n log c).
    """
    ro = np.sort(r_sliced.reshape(H, c), axis=1)
    w = 2 * np.arange(c, dtype=np.int64) - (c - 1)
    return int(ro @ w @ np.ones(H, dtype=np.int64))


def _combine(num: int, den: int, n_effective: int, c: int) -> float:
    # Exact integer arithmetic with one final rounding; both the fast path
    # and the brute-force reference evaluate this same expression.
    num_total = (n_effective - 1) * int(num)
    den_total = (c - 1) * int(den)
    return (den_total - num_total) / den_total


def statistic_from_arrangement(y_sliced: np.ndarray, config: SliceConfig) -> float:
    """Statistic value from an already trimmed, slice-ordered response."""
    if config.H is None:
        raise ConfigError("configuration must be resolved before evaluation")
    counts = rank_counts(y_sliced)
    n_eff = config.n_effective
    den = int(np.sum(counts.R * (n_eff - counts.R)))
    if den == 0:
        raise DegenerateResponse("response is constant after trimming")
    num = _within_slice_rank_spread(counts.r, config.H, config.c)
    return _combine(num, den, n_eff, config.c)


def sliced_estimate(
    sample: PairedSample,
    config: SliceConfig,
    calibration: VarianceCalibration | None = None,
) -> DependenceEstimate:
    """Estimate the dependence of Y on X with slice size ``config.c``.

    The calibration defaults to :func:`auto_calibration` of the full
    (untrimmed) response.  Deterministic given (sample, config): the same
    tie seed always yields the same bits.
    """
    if calibration is None:
        calibration = auto_calibration(sample.y)
    y_sliced, resolved = arrange_by_covariate(sample, config)
    value = statistic_from_arrangement(y_sliced, resolved)
    n_eff = resolved.n_effective
    z = z_statistic(value, n_eff, resolved.c, calibration)
    return DependenceEstimate(
        omega_hat=value,
        z=z,
        p_value=p_value_from_z(z),
        n_effective=n_eff,
        c=resolved.c,
    )


def z_statistic(
    estimate_value: float, n_effective: int, c: int, cal: VarianceCalibration
) -> float:
    """Scale a statistic value to its asymptotic standard-normal z score."""
    if c < 2:
        raise ConfigError(f"slice size c must be >= 2, got {c}")
    if not (cal.sigma_sq > 0):
        raise InvalidCalibration(f"sigma_sq must be positive, got {cal.sigma_sq}")
    return math.sqrt(n_effective * (c - 1)) * estimate_value / cal.sigma


def p_value_from_z(z) -> float:
    """Upper-tail p-value 1 - Phi(z); negative z gives p > 0.5, untruncated."""
    return norm.sf(z)


def plugin_calibration(y: np.ndarray) -> VarianceCalibration:
    """Estimate the variance calibration from the response ranks.

    theta2_hat = mean of G(y_i) (1 - G(y_i)) with G the empirical
    right-tail function, and theta1_hat averages
    (F(min(y_j, y_l)) - F(y_j) F(y_l))^2 over ordered pairs j != l with F
    the empirical CDF.  Both reduce to sorted prefix sums, O(n log n) total.
    """
    y = np.asarray(y, dtype=np.float64)
    n = y.shape[0]
    if n < 2:
        raise ValueError("need at least 2 observations")
    counts = rank_counts(y)
    theta2 = float(np.sum(counts.R * (n - counts.R))) / n**3
    if theta2 == 0.0:
        raise DegenerateResponse("response is constant")
    # With u = F(y) sorted ascending, min(u_j, u_l) = u_j for j < l, so the
    # pair sum collapses to sum_l (1-u_l)^2 * prefix_sum(u^2).
    u = np.sort(counts.r) / n
    head = np.cumsum(u**2)[:-1]
    tail = (1.0 - u[1:]) ** 2
    theta1 = 2.0 * float(tail @ head) / (n * (n - 1))
    sigma_sq = 2.0 * theta1 / theta2**2
    if sigma_sq <= 0.0:
        raise DegenerateResponse(
            "response carries too little variation to calibrate sigma"
        )
    return VarianceCalibration(
        mode="plugin", sigma_sq=sigma_sq, theta1=theta1, theta2=theta2
    )


def auto_calibration(y: np.ndarray) -> VarianceCalibration:
    """Fixed 4/5 calibration for tie-free responses, plug-in otherwise."""
    y = np.asarray(y, dtype=np.float64)
    if np.unique(y).shape[0] == y.shape[0]:
        return VarianceCalibration.fixed()
    return plugin_calibration(y)


def naive_estimate(sample: PairedSample, config: SliceConfig) -> float:
    """Quadratic-time transcription of the statistic, for testing.

    Delegates to the single brute-force reference implementation in
    :mod:`sitscreen.oracle`; see there for details.
    """
    from .oracle import oracle_estimate

    return oracle_estimate(sample, config)
