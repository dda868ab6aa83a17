"""Marginal screening of a covariate matrix against a response.

Applies the sliced dependence statistic column by column, ranks covariates
by the resulting utilities, and provides the selection rules built on that
ranking (fixed-size and fixed-level thresholds) plus the ranking diagnostics
used by the simulation studies.

Column k draws its trimming/tie randomness from a seed derived as
hash(master_seed, k), so results are identical for any worker count and any
chunking of the columns.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    AllColumnsConstant,
    ConfigError,
    DegenerateResponse,
    EmptyActiveSet,
    InvalidSize,
)
from .estimator import (
    SliceConfig,
    VarianceCalibration,
    _combine,
    _within_slice_rank_spread,
    auto_calibration,
    p_value_from_z,
    rank_counts,
)
from .seeding import derive_seed, rng_from_seed

THREADS_ENV_VAR = "SIT_SCREEN_THREADS"

RULE_HARD_SIZE = "hard-size"
RULE_HARD_LEVEL = "hard-level"
RULE_BY = "by"
RULE_BH = "bh"


@dataclass(frozen=True)
class Dataset:
    """An n x p covariate matrix with a paired response vector.

    ``names`` is optional; when present it must list one unique label per
    covariate column.  All entries must be finite.
    """

    x: np.ndarray
    y: np.ndarray
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.float64)
        y = np.asarray(self.y, dtype=np.float64)
        if x.ndim != 2:
            raise ValueError("covariates must form a 2-D matrix")
        if y.ndim != 1 or y.shape[0] != x.shape[0]:
            raise ValueError("response length must match the number of rows")
        if x.shape[0] < 1 or x.shape[1] < 1:
            raise ValueError("need at least one row and one column")
        if not (np.isfinite(x).all() and np.isfinite(y).all()):
            raise ValueError("all entries must be finite")
        if self.names is not None:
            names = tuple(str(v) for v in self.names)
            if len(names) != x.shape[1]:
                raise ValueError("names must list one label per covariate")
            if len(set(names)) != len(names):
                raise ValueError("covariate names must be unique")
            object.__setattr__(self, "names", names)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def p(self) -> int:
        return self.x.shape[1]


@dataclass(frozen=True)
class ScreeningResult:
    """Per-covariate utilities, z scores, p-values, and the descending order.

    ``order`` sorts covariate indices by utility, largest first, ties broken
    by smaller index.  ``config`` is the resolved slicing layout shared by
    all columns and ``calibration`` the single variance scale behind every z.
    """

    omega: np.ndarray
    z: np.ndarray
    p_values: np.ndarray
    order: np.ndarray
    config: SliceConfig
    calibration: VarianceCalibration

    @property
    def p(self) -> int:
        return self.omega.shape[0]

    @property
    def n_effective(self) -> int:
        return self.config.n_effective

    def ranks(self) -> np.ndarray:
        """1-based rank of each covariate in the descending utility order."""
        ranks = np.empty(self.p, dtype=np.int64)
        ranks[self.order] = np.arange(1, self.p + 1)
        return ranks


@dataclass(frozen=True)
class ActiveSet:
    """A selection outcome: sorted indices, the rule used, and its threshold."""

    indices: np.ndarray
    rule: str
    realized_threshold: float

    def __post_init__(self):
        object.__setattr__(
            self, "indices", np.asarray(self.indices, dtype=np.intp)
        )

    @property
    def size(self) -> int:
        return self.indices.shape[0]


def _column_omega(xk, y, seed, c, H, n_raw, shared):
    """Statistic for one covariate column; mirrors the single-pair kernel.

    ``shared`` carries (r_base, den) precomputed from the full response when
    no trimming is needed; with trimming, counts are recomputed against the
    column's own kept subsample.
    """
    rng = rng_from_seed(seed)
    n_eff = H * c
    if shared is not None:
        r_base, den = shared
        u = rng.random(n_raw)
        order = np.lexsort((u, xk))
        r_sliced = r_base[order]
    else:
        drop = rng.choice(n_raw, size=n_raw - n_eff, replace=False)
        keep = np.setdiff1d(np.arange(n_raw), drop)
        xk = xk[keep]
        u = rng.random(n_eff)
        order = np.lexsort((u, xk))
        counts = rank_counts(y[keep])
        den = int(np.sum(counts.R * (n_eff - counts.R)))
        if den == 0:
            raise DegenerateResponse("response is constant after trimming")
        r_sliced = counts.r[order]
    num = _within_slice_rank_spread(r_sliced, H, c)
    return _combine(num, den, n_eff, c)


def resolve_threads(requested: int | None = None) -> int:
    """Worker count: explicit request, capped by SIT_SCREEN_THREADS if set."""
    cap = os.environ.get(THREADS_ENV_VAR)
    cap = int(cap) if cap else None
    threads = requested if requested else (cap or os.cpu_count() or 1)
    if cap is not None:
        threads = min(threads, cap)
    return max(threads, 1)


def screen_all(
    data: Dataset,
    config: SliceConfig,
    calibration: VarianceCalibration | None = None,
    threads: int | None = None,
) -> ScreeningResult:
    """Compute the dependence statistic of every covariate against y.

    ``config.tie_seed`` acts as the master seed; column k is evaluated with
    the derived seed hash(master, k), exactly as if ``sliced_estimate`` were
    called on that column alone.  Results do not depend on ``threads``.
    """
    if data.n < 4:
        raise ValueError("need at least 4 observations to screen")
    y = data.y
    if np.all(y == y[0]):
        raise DegenerateResponse("response is constant")
    if np.all(data.x == data.x[0:1, :]):
        raise AllColumnsConstant("every covariate column is constant")
    if calibration is None:
        calibration = auto_calibration(y)

    resolved = config.resolved(data.n)
    c, H = resolved.c, resolved.H
    n_eff = resolved.n_effective
    if n_eff != data.n:
        shared = None
    else:
        counts = rank_counts(y)
        den = int(np.sum(counts.R * (n_eff - counts.R)))
        shared = (counts.r, den)

    p = data.p
    seeds = [derive_seed(config.tie_seed, k) for k in range(p)]
    omega = np.empty(p, dtype=np.float64)

    def work(span):
        start, stop = span
        for k in range(start, stop):
            omega[k] = _column_omega(data.x[:, k], y, seeds[k], c, H, data.n, shared)

    n_threads = min(resolve_threads(threads), p)
    if n_threads > 1:
        bounds = np.linspace(0, p, n_threads + 1).astype(int)
        spans = list(zip(bounds[:-1], bounds[1:]))
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            for _ in pool.map(work, spans):
                pass
    else:
        work((0, p))

    # same association as z_statistic so per-column results match bitwise
    z = np.sqrt(n_eff * (c - 1)) * omega / calibration.sigma
    p_values = p_value_from_z(z)
    order = np.lexsort((np.arange(p), -omega))
    return ScreeningResult(
        omega=omega,
        z=z,
        p_values=p_values,
        order=order,
        config=resolved,
        calibration=calibration,
    )


def hard_threshold_select(result: ScreeningResult, d: int) -> ActiveSet:
    """Keep the d covariates with the largest utilities (ties by index)."""
    if not (1 <= d <= result.p):
        raise InvalidSize(f"model size d={d} outside [1, {result.p}]")
    top = result.order[:d]
    return ActiveSet(
        indices=np.sort(top),
        rule=RULE_HARD_SIZE,
        realized_threshold=float(result.omega[result.order[d - 1]]),
    )


def level_threshold_select(result: ScreeningResult, threshold: float) -> ActiveSet:
    """Keep every covariate whose utility is at least ``threshold``."""
    if np.isnan(threshold):
        raise ConfigError("threshold must not be NaN")
    return ActiveSet(
        indices=np.flatnonzero(result.omega >= threshold),
        rule=RULE_HARD_LEVEL,
        realized_threshold=float(threshold),
    )


def minimum_model_size(result: ScreeningResult, active) -> int:
    """Smallest top-of-ranking prefix that covers all ``active`` covariates."""
    active = np.asarray(list(active), dtype=np.intp)
    if active.size == 0:
        raise EmptyActiveSet("active set must be non-empty")
    if active.min() < 0 or active.max() >= result.p:
        raise ValueError("active indices outside [0, p)")
    return int(result.ranks()[active].max())


def augment_with_noise(
    data: Dataset, keep, num_aux: int, seed: int
) -> Dataset:
    """Kept columns plus ``num_aux`` fresh standard-normal auxiliary columns.

    Used for threshold-stability checks: screen, keep the selected columns,
    replace the rest with independent noise, and screen again.  Auxiliary
    columns are appended after the kept ones and labelled ``aux_####`` when
    the dataset carries names.
    """
    keep = np.asarray(sorted(int(k) for k in keep), dtype=np.intp)
    if keep.size and (keep.min() < 0 or keep.max() >= data.p):
        raise ValueError("keep indices outside [0, p)")
    if num_aux < 0:
        raise ValueError("num_aux must be >= 0")
    rng = rng_from_seed(seed)
    blocks = [data.x[:, keep]] if keep.size else []
    if num_aux:
        blocks.append(rng.standard_normal((data.n, num_aux)))
    if not blocks:
        raise ValueError("augmented dataset would have no columns")
    x = np.hstack(blocks)
    names = None
    if data.names is not None:
        kept_names = [data.names[k] for k in keep]
        taken = set(kept_names)
        aux_names = []
        i = 1
        while len(aux_names) < num_aux:
            candidate = f"aux_{i:04d}"
            if candidate not in taken:
                aux_names.append(candidate)
                taken.add(candidate)
            i += 1
        names = tuple(kept_names + aux_names)
    return Dataset(x=x, y=data.y, names=names)
