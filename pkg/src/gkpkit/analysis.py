"""Regression, mutual information and slope extrapolation for sweep records."""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import curve_fit
from scipy.spatial import cKDTree
from scipy.special import digamma
from scipy.stats import pearsonr

from .errors import InvalidArgumentError, NumericalFailureError

log = logging.getLogger(__name__)


@dataclass
class RegressionStats:
    slope: float
    intercept: float
    correlation_error: float  # 1 - Pearson r
    mutual_information: float  # nats


@dataclass
class ExtrapolationResult:
    m_infinity: float
    amplitude: float
    rate: float
    window_mean: float
    window_std: float


def ksg_mutual_information(xs, ys, k=4):
    """KSG (variant 1) mutual information estimate in nats.

    I = psi(k) + psi(M) - <psi(n_x + 1) + psi(n_y + 1)>, where n_x and n_y
    count strict max-norm neighbors within the k-th joint neighbor distance.
    Duplicate joint points are broken by a deterministic 1e-12 jitter.
    """
    xs = np.asarray(xs, dtype=float).ravel()
    ys = np.asarray(ys, dtype=float).ravel()
    if xs.size != ys.size:
        raise InvalidArgumentError("xs and ys must have the same length")
    m = xs.size
    if m < k + 1:
        raise InvalidArgumentError(f"need at least k+1 = {k + 1} samples, got {m}")
    joint = np.column_stack((xs, ys))
    if np.unique(joint, axis=0).shape[0] < m:
        log.info("duplicate sample points; applying 1e-12 jitter")
        rng = np.random.default_rng(0)
        joint = joint + 1e-12 * rng.standard_normal(joint.shape)
        xs, ys = joint[:, 0], joint[:, 1]
    tree_joint = cKDTree(joint)
    dists, _ = tree_joint.query(joint, k=k + 1, p=np.inf)
    eps = dists[:, k]
    tree_x = cKDTree(xs[:, None])
    tree_y = cKDTree(ys[:, None])
    n_x = np.array(
        tree_x.query_ball_point(xs[:, None], eps - 1e-15, p=np.inf, return_length=True)
    ) - 1
    n_y = np.array(
        tree_y.query_ball_point(ys[:, None], eps - 1e-15, p=np.inf, return_length=True)
    ) - 1
    return float(
        digamma(k) + digamma(m) - np.mean(digamma(n_x + 1) + digamma(n_y + 1))
    )


def regression_per_cutoff(record, ksg_k=4):
    """Per-cutoff linear fit of expectation vs infidelity over all pairs."""
    x = record.infidelity.ravel()
    if x.size < 3:
        raise InvalidArgumentError("need at least 3 state pairs for regression")
    stats = {}
    for cutoff in record.cutoffs:
        y = record.expectation[cutoff].ravel()
        slope, intercept = np.polyfit(x, y, 1)
        r = pearsonr(x, y).statistic
        mi = ksg_mutual_information(x, y, k=ksg_k)
        stats[cutoff] = RegressionStats(
            slope=float(slope),
            intercept=float(intercept),
            correlation_error=float(1.0 - r),
            mutual_information=mi,
        )
    return stats


def _power_law(n, m_inf, amplitude, rate):
    return m_inf - amplitude * np.asarray(n, dtype=float) ** (-rate)


_RATE_BOUNDS = (0.1, 10.0)


def _fit_window(ns, ms):
    m0 = float(np.max(ms))
    # two-point amplitude estimate at rate 1
    a0 = max((m0 - ms[0]) * ns[0], 1e-6)
    # rate bounded away from 0 to exclude the degenerate flat-plateau fit
    popt, _ = curve_fit(
        _power_law,
        ns,
        ms,
        p0=(m0, a0, 1.0),
        bounds=([-np.inf, 1e-12, _RATE_BOUNDS[0]], [np.inf, np.inf, _RATE_BOUNDS[1]]),
        maxfev=20_000,
    )
    if min(popt[2] - _RATE_BOUNDS[0], _RATE_BOUNDS[1] - popt[2]) < 1e-6:
        # rate pinned at a bound: the window does not identify the power law
        raise RuntimeError(f"saturation rate {popt[2]:.3g} pinned at bound")
    return popt


def extrapolate_slope(slopes, n_min=None, n_max=None, window_floor=20):
    """Saturating power-law extrapolation m(N) = m_inf - A N^(-d).

    Fits the widest window [n_min, n_max] for the headline numbers, then
    repeats the fit for every admissible window start above `window_floor`
    and reports the mean and standard deviation of m_inf across windows.
    """
    ns = np.array(sorted(slopes), dtype=float)
    if n_min is not None:
        ns = ns[ns >= n_min]
    if n_max is not None:
        ns = ns[ns <= n_max]
    ms = np.array([slopes[int(n)] for n in ns])
    if ns.size < 5:
        raise InvalidArgumentError("need at least 5 cutoffs inside the window")
    window_starts = [n for n in ns if n > window_floor and np.sum(ns >= n) >= 5]
    if not window_starts:
        window_starts = [ns[0]]
    winners = []
    for start in window_starts:
        sel = ns >= start
        try:
            popt = _fit_window(ns[sel], ms[sel])
        except RuntimeError as exc:
            log.warning("power-law fit failed for window start %s: %s", start, exc)
            continue
        winners.append(popt)
    if not winners:
        raise NumericalFailureError(
            "power-law fit failed for every window", windows=len(window_starts)
        )
    m_infs = np.array([w[0] for w in winners])
    head = winners[0]
    return ExtrapolationResult(
        m_infinity=float(head[0]),
        amplitude=float(head[1]),
        rate=float(head[2]),
        window_mean=float(m_infs.mean()),
        window_std=float(m_infs.std()),
    )
