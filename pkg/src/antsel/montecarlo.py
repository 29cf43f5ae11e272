"""Monte-Carlo sampling of bounds and capacities, and experiment sweeps.

Every trial draws from its own counter-based stream derived from
(master_seed, trial index), so trials can be executed in any order or on
any number of workers with bit-identical results; aggregation always
reduces in trial order.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np
from scipy.special import ndtr

from .bounds import GaussianBound, approx_ergodic_capacity, bf_bound_params, mrc_bound_params
from .capacity import EfficiencyParams, efficient_capacity
from .channel import RngStream, derive_stream, row_norms_sq, sample_channel
from .selection import SELECTORS, AdaptiveConfig, adaptive_select

__all__ = [
    "ExperimentConfig",
    "SummaryStats",
    "ErgodicPoint",
    "ErgodicResult",
    "CdfResult",
    "SweepPoint",
    "SweepResult",
    "AdaptiveMcPoint",
    "AdaptiveMcResult",
    "sample_full_bound",
    "sample_bf_bound",
    "sample_mrc_bound",
    "trimmed_sum_bits",
    "run_ergodic",
    "run_cdf",
    "run_adaptive",
    "sweep_csi",
    "ks_distance",
    "resolve_target",
]


def snr_db_to_rho(snr_db: float) -> float:
    return float(10.0 ** (snr_db / 10.0))


@dataclass(frozen=True)
class ExperimentConfig:
    """Declarative description of one Monte-Carlo experiment."""

    master_seed: int
    trials: int
    nr: int
    nt: int
    l: int
    snr_db_grid: tuple[float, ...]
    eta: float = 0.0
    selector: str = "greedy"
    csi_grid: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be positive, got {self.trials}")
        if min(self.nr, self.nt, self.l) < 1:
            raise ValueError("nr, nt and l must be positive")
        if self.l > self.nr:
            raise ValueError(f"need l <= nr, got l={self.l}, nr={self.nr}")
        if len(self.snr_db_grid) == 0:
            raise ValueError("snr_db_grid must be nonempty")
        if not 0.0 <= self.eta < 1.0:
            raise ValueError(f"eta must lie in [0, 1), got {self.eta}")
        if self.selector not in SELECTORS:
            raise ValueError(f"unknown selector {self.selector!r}; choose from {sorted(SELECTORS)}")
        if self.csi_grid is not None:
            if len(self.csi_grid) == 0:
                raise ValueError("csi_grid must be nonempty when given")
            bad = [u for u in self.csi_grid if not self.l <= u <= self.nr]
            if bad:
                raise ValueError(f"csi_grid entries must satisfy l <= u <= nr, offending: {bad}")


@dataclass(frozen=True)
class SummaryStats:
    """Sample summary: mean, unbiased variance, standard error, and ECDF."""

    mean: float
    variance: float
    std_error: float
    ecdf_values: np.ndarray
    ecdf_fractions: np.ndarray
    n: int

    @classmethod
    def from_samples(cls, samples: np.ndarray) -> "SummaryStats":
        x = np.asarray(samples, dtype=float)
        n = x.size
        if n == 0:
            raise ValueError("cannot summarize an empty sample")
        mean = float(x.mean())
        var = float(x.var(ddof=1)) if n > 1 else 0.0
        values = np.sort(x)
        fractions = np.arange(1, n + 1) / n
        return cls(mean, var, float(np.sqrt(var / n)), values, fractions, n)


def trimmed_sum_bits(gains: np.ndarray, l: int, rho_bar: float) -> float:
    """Sum of log2(1 + rho * g) over the l largest entries of ``gains``.

    Uses partial selection rather than a full sort.
    """
    gains = np.asarray(gains)
    n = gains.shape[-1]
    if not 1 <= l <= n:
        raise ValueError(f"need 1 <= l <= {n}, got l={l}")
    top = gains if l == n else np.partition(gains, n - l, axis=-1)[..., n - l :]
    return np.log1p(rho_bar * top).sum(axis=-1) / np.log(2.0)


def sample_full_bound(rng: RngStream, nr: int, nt: int, rho_bar: float, kind: str) -> float:
    """One draw of the no-selection capacity upper bound.

    ``per-transmit``: nt independent Gamma(nr, 1) beamforming gains;
    ``per-receive``: nr independent Gamma(nt, 1) gains (the parent sum of
    the BF selection bound).
    """
    if kind == "per-transmit":
        gains = rng.gen.standard_exponential((nt, nr)).sum(axis=1)
    elif kind == "per-receive":
        gains = rng.gen.standard_exponential((nr, nt)).sum(axis=1)
    else:
        raise ValueError(f"kind must be 'per-transmit' or 'per-receive', got {kind!r}")
    return float(np.log1p(rho_bar * gains).sum() / np.log(2.0))


def sample_bf_bound(rng: RngStream, nr: int, nt: int, l: int, rho_bar: float) -> float:
    """One draw of the BF selection bound: top-l of nr Gamma(nt, 1) gains."""
    gains = rng.gen.standard_exponential((nr, nt)).sum(axis=1)
    return float(trimmed_sum_bits(gains, l, rho_bar))


def sample_mrc_bound(rng: RngStream, nr: int, nt: int, l: int, rho_bar: float) -> float:
    """One draw of the MRC selection bound: nt independent subsystems, each
    summing its top-l of nr Exp(1) gains."""
    if not 1 <= l <= nr:
        raise ValueError(f"need 1 <= l <= nr, got l={l}, nr={nr}")
    e = rng.gen.standard_exponential((nt, nr))
    tops = e if l == nr else np.partition(e, nr - l, axis=1)[:, nr - l :]
    return float(np.log1p(rho_bar * tops.sum(axis=1)).sum() / np.log(2.0))


def _bound_draw_from_channel(h: np.ndarray, l: int, rho_bar: float, kind: str) -> float:
    # the bound gains are exactly the squared row norms (BF) or the
    # per-column squared magnitudes (MRC) of the same fading realization
    if kind == "bf":
        return float(trimmed_sum_bits(row_norms_sq(h), l, rho_bar))
    mags = np.abs(h) ** 2
    nr = h.shape[0]
    tops = mags.T if l == nr else np.partition(mags.T, nr - l, axis=1)[:, nr - l :]
    return float(np.log1p(rho_bar * tops.sum(axis=1)).sum() / np.log(2.0))


def _map_trials(fn, trials: int, jobs: int) -> list:
    if jobs <= 1:
        return [fn(t) for t in range(trials)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        chunk = max(1, trials // (jobs * 8))
        return list(ex.map(fn, range(trials), chunksize=chunk))


# --- ergodic capacity vs SNR -------------------------------------------------


@dataclass(frozen=True)
class ErgodicPoint:
    snr_db: float
    capacity: SummaryStats
    bound_mc: SummaryStats
    bound_kind: str
    asym_mean: float
    asym_var: float
    approx_capacity: float | None


@dataclass(frozen=True)
class ErgodicResult:
    config: ExperimentConfig
    points: tuple[ErgodicPoint, ...]


def _ergodic_trial(t: int, cfg: ExperimentConfig, kind: str) -> tuple[np.ndarray, np.ndarray]:
    rng = derive_stream(cfg.master_seed, t)
    h = sample_channel(rng, cfg.nr, cfg.nt)
    select = SELECTORS[cfg.selector]
    caps = np.empty(len(cfg.snr_db_grid))
    bnds = np.empty(len(cfg.snr_db_grid))
    for i, snr in enumerate(cfg.snr_db_grid):
        rho = snr_db_to_rho(snr)
        caps[i] = select(h, cfg.l, rho).capacity_bits
        bnds[i] = _bound_draw_from_channel(h, cfg.l, rho, kind)
    return caps, bnds


def run_ergodic(cfg: ExperimentConfig, jobs: int = 1) -> ErgodicResult:
    """Per-SNR summaries of selector capacity and sampled bound, together
    with the matching Gaussian bound parameters and (for l <= nt) the
    gap-corrected capacity estimate."""
    kind = "bf" if cfg.l <= cfg.nt else "mrc"
    results = _map_trials(partial(_ergodic_trial, cfg=cfg, kind=kind), cfg.trials, jobs)
    caps = np.stack([r[0] for r in results])  # (trials, n_snr)
    bnds = np.stack([r[1] for r in results])
    points = []
    for i, snr in enumerate(cfg.snr_db_grid):
        rho = snr_db_to_rho(snr)
        params = (bf_bound_params if kind == "bf" else mrc_bound_params)(
            cfg.nr, cfg.nt, cfg.l, rho
        )
        approx = approx_ergodic_capacity(cfg.nr, cfg.nt, cfg.l, rho) if cfg.l <= cfg.nt else None
        points.append(
            ErgodicPoint(
                snr_db=float(snr),
                capacity=SummaryStats.from_samples(caps[:, i]),
                bound_mc=SummaryStats.from_samples(bnds[:, i]),
                bound_kind=kind,
                asym_mean=params.mean,
                asym_var=params.variance,
                approx_capacity=approx,
            )
        )
    return ErgodicResult(cfg, tuple(points))


# --- bound CDF vs Gaussian reference -----------------------------------------


@dataclass(frozen=True)
class CdfResult:
    config: ExperimentConfig
    snr_db: float
    bound_kind: str
    gaussian: GaussianBound
    stats: SummaryStats
    ks: float

    @property
    def gaussian_cdf(self) -> np.ndarray:
        return ndtr((self.stats.ecdf_values - self.gaussian.mean) / np.sqrt(self.gaussian.variance))


def _cdf_trial(t: int, cfg: ExperimentConfig, rho: float, kind: str) -> float:
    rng = derive_stream(cfg.master_seed, t)
    sampler = sample_bf_bound if kind == "bf" else sample_mrc_bound
    return sampler(rng, cfg.nr, cfg.nt, cfg.l, rho)


def run_cdf(cfg: ExperimentConfig, jobs: int = 1) -> CdfResult:
    """Empirical distribution of the sampled bound at the first grid SNR,
    with its Gaussian reference and the Kolmogorov-Smirnov distance."""
    snr = cfg.snr_db_grid[0]
    rho = snr_db_to_rho(snr)
    kind = "bf" if cfg.l <= cfg.nt else "mrc"
    samples = np.array(_map_trials(partial(_cdf_trial, cfg=cfg, rho=rho, kind=kind), cfg.trials, jobs))
    params = (bf_bound_params if kind == "bf" else mrc_bound_params)(cfg.nr, cfg.nt, cfg.l, rho)
    stats = SummaryStats.from_samples(samples)
    ks = ks_distance(stats.ecdf_values, params.mean, params.variance)
    return CdfResult(cfg, float(snr), kind, params, stats, ks)


# --- partial-CSI sweep --------------------------------------------------------


@dataclass(frozen=True)
class SweepPoint:
    snr_db: float
    csi_rows: int
    capacity: SummaryStats
    efficient: SummaryStats
    r1: float  # mean partial-CSI capacity over mean full-CSI capacity
    r2: float  # acquired rows over total rows
    full_mean: float


@dataclass(frozen=True)
class SweepResult:
    config: ExperimentConfig
    points: tuple[SweepPoint, ...]


def _sweep_trial(t: int, cfg: ExperimentConfig) -> np.ndarray:
    rng = derive_stream(cfg.master_seed, t)
    h = sample_channel(rng, cfg.nr, cfg.nt)
    perm = rng.gen.permutation(cfg.nr)
    select = SELECTORS[cfg.selector]
    grid = list(cfg.csi_grid)
    out = np.empty((len(cfg.snr_db_grid), len(grid) + 1))
    for i, snr in enumerate(cfg.snr_db_grid):
        rho = snr_db_to_rho(snr)
        for j, ups in enumerate(grid):
            out[i, j] = select(h[perm[:ups]], cfg.l, rho).capacity_bits
        # full-CSI reference for the capacity ratio
        out[i, -1] = (
            out[i, grid.index(cfg.nr)] if cfg.nr in grid else select(h, cfg.l, rho).capacity_bits
        )
    return out


def sweep_csi(cfg: ExperimentConfig, jobs: int = 1) -> SweepResult:
    """Capacity and efficient capacity when selection only sees the first
    ``csi_rows`` acquired rows.

    Rows arrive in a per-trial random order; each trial reuses the same
    channel and acquisition order across the whole grid, so capacity is
    pathwise nondecreasing in the number of acquired rows.
    """
    if cfg.csi_grid is None:
        raise ValueError("sweep_csi requires csi_grid in the experiment config")
    eff = EfficiencyParams(cfg.eta)
    data = np.stack(_map_trials(partial(_sweep_trial, cfg=cfg), cfg.trials, jobs))
    points = []
    for i, snr in enumerate(cfg.snr_db_grid):
        full_mean = float(data[:, i, -1].mean())
        for j, ups in enumerate(cfg.csi_grid):
            caps = data[:, i, j]
            effs = np.array([efficient_capacity(c, ups, cfg.l, eff) for c in caps])
            cap_stats = SummaryStats.from_samples(caps)
            points.append(
                SweepPoint(
                    snr_db=float(snr),
                    csi_rows=int(ups),
                    capacity=cap_stats,
                    efficient=SummaryStats.from_samples(effs),
                    r1=cap_stats.mean / full_mean,
                    r2=ups / cfg.nr,
                    full_mean=full_mean,
                )
            )
    return SweepResult(cfg, tuple(points))


# --- adaptive selection experiments -------------------------------------------


@dataclass(frozen=True)
class AdaptiveMcPoint:
    snr_db: float
    target: float
    reached_rate: float
    csi_rows: SummaryStats
    capacity: SummaryStats
    visited: SummaryStats
    full_capacity: SummaryStats
    full_visited: SummaryStats


@dataclass(frozen=True)
class AdaptiveMcResult:
    config: ExperimentConfig
    batch_size: int
    inner_selector: str
    target_spec: str
    points: tuple[AdaptiveMcPoint, ...]


def resolve_target(spec: str, nr: int, nt: int, l: int, rho_bar: float) -> float:
    """Turn a target description into a capacity value in bits/s/Hz.

    ``value:<x>`` is an absolute target. ``level09`` (and the general
    ``level:<f>``) is a fraction of the regime reference: the gap-corrected
    capacity estimate when l <= nt, the combining-bound mean otherwise.
    """
    if spec.startswith("value:"):
        return float(spec.split(":", 1)[1])
    if spec == "level09":
        frac = 0.9
    elif spec.startswith("level:"):
        frac = float(spec.split(":", 1)[1])
    else:
        raise ValueError(f"unknown target spec {spec!r}; use level09, level:<f> or value:<x>")
    if l <= nt:
        return frac * approx_ergodic_capacity(nr, nt, l, rho_bar)
    return frac * mrc_bound_params(nr, nt, l, rho_bar).mean


_ADAPTIVE_TO_FULL = {"exhaustive": "es", "bab": "bab", "greedy": "greedy"}


def _adaptive_trial(
    t: int, cfg: ExperimentConfig, batch_size: int, inner: str, targets: tuple[float, ...]
) -> np.ndarray:
    rng = derive_stream(cfg.master_seed, t)
    h = sample_channel(rng, cfg.nr, cfg.nt)
    order = rng.gen.permutation(cfg.nr)
    full_select = SELECTORS[_ADAPTIVE_TO_FULL[inner]]
    out = np.empty((len(cfg.snr_db_grid), 6))
    for i, snr in enumerate(cfg.snr_db_grid):
        rho = snr_db_to_rho(snr)
        acfg = AdaptiveConfig(
            target_capacity=targets[i], batch_size=batch_size, inner_selector=inner,
            l=cfg.l, rho_bar=rho,
        )
        res = adaptive_select(h, acfg, order=order)
        full = full_select(h, cfg.l, rho)
        out[i] = (
            res.csi_rows_used, res.capacity_bits, res.visited_nodes,
            float(res.reached), full.capacity_bits, full.visited_nodes,
        )
    return out


def run_adaptive(
    cfg: ExperimentConfig,
    batch_size: int,
    inner_selector: str,
    target_spec: str,
    jobs: int = 1,
) -> AdaptiveMcResult:
    """Monte-Carlo summary of the adaptive acquire-then-select loop.

    Each trial reuses one channel draw and one acquisition order across the
    SNR grid; the same inner selector run on the full matrix provides the
    full-CSI capacity and complexity reference columns.
    """
    targets = tuple(
        resolve_target(target_spec, cfg.nr, cfg.nt, cfg.l, snr_db_to_rho(s))
        for s in cfg.snr_db_grid
    )
    data = np.stack(
        _map_trials(
            partial(_adaptive_trial, cfg=cfg, batch_size=batch_size,
                    inner=inner_selector, targets=targets),
            cfg.trials, jobs,
        )
    )
    points = []
    for i, snr in enumerate(cfg.snr_db_grid):
        points.append(
            AdaptiveMcPoint(
                snr_db=float(snr),
                target=targets[i],
                reached_rate=float(data[:, i, 3].mean()),
                csi_rows=SummaryStats.from_samples(data[:, i, 0]),
                capacity=SummaryStats.from_samples(data[:, i, 1]),
                visited=SummaryStats.from_samples(data[:, i, 2]),
                full_capacity=SummaryStats.from_samples(data[:, i, 4]),
                full_visited=SummaryStats.from_samples(data[:, i, 5]),
            )
        )
    return AdaptiveMcResult(cfg, batch_size, inner_selector, target_spec, tuple(points))


def ks_distance(samples: np.ndarray, mean: float, variance: float) -> float:
    """Kolmogorov-Smirnov distance between a sample and N(mean, variance)."""
    if variance <= 0:
        raise ValueError(f"variance must be positive, got {variance}")
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    if n == 0:
        raise ValueError("cannot compute a KS distance on an empty sample")
    cdf = ndtr((x - mean) / np.sqrt(variance))
    i = np.arange(1, n + 1)
    return float(max((i / n - cdf).max(), (cdf - (i - 1) / n).max()))
