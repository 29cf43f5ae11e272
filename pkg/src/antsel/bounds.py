"""Gaussian approximations of the subset-selection capacity bounds.

Two upper bounds on post-selection capacity are used depending on the
regime. When the number of selected antennas L is at most the transmit
count Nt, the bound is a trimmed sum of per-antenna beamforming rates: the
sum of log2(1 + rho * g) over the L largest of Nr i.i.d. Gamma(Nt, 1)
gains ("BF" bound). When L exceeds Nt, the bound stacks Nt independent
combining subsystems, each contributing log2(1 + rho * t) with t the sum
of the L largest of Nr i.i.d. Exp(1) gains ("MRC" bound).

As Nr grows, a trimmed sum of the top L order statistics converges to a
Gaussian whose parameters only involve the (1 - L/Nr) quantile of the
parent distribution, so both bounds admit cheap normal approximations.
This module evaluates those parameters in closed form or by quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import betainc, gammainc

__all__ = [
    "QuadratureError",
    "GaussianBound",
    "TrimmedSumParams",
    "GapModel",
    "chi2_pdf",
    "chi2_tail",
    "chi2_tail_threshold",
    "bf_bound_params",
    "mrc_trimmed_params",
    "mrc_bound_params",
    "gap",
    "approx_ergodic_capacity",
]

_LN2 = math.log(2.0)


class QuadratureError(RuntimeError):
    """Raised when a numerical integral fails to reach its tolerance."""


@dataclass(frozen=True)
class GaussianBound:
    """Normal approximation N(mean, variance) of a capacity upper bound.

    ``threshold_u`` is the gain-domain trimming threshold: the value whose
    upper tail under the parent gain distribution has mass l/nr (for the
    MRC kind this is ln(nr/l) exactly).
    """

    kind: str  # "bf" | "mrc"
    mean: float
    variance: float
    nr: int
    nt: int
    l: int
    rho_bar: float
    threshold_u: float


@dataclass(frozen=True)
class TrimmedSumParams:
    """Mean and variance of the top-L-of-Nr Exp(1) trimmed sum."""

    mu_t: float
    sigma_t_sq: float


@dataclass(frozen=True)
class GapModel:
    """Coefficients of the empirical bound-to-capacity gap formula."""

    a: float = 0.1146
    b: float = 0.4401
    c: float = 0.2226
    d: float = 8.78


def chi2_pdf(nt: int, x):
    """Density of a unit-rate Gamma(nt, 1) gain (squared row norm, mean nt).

    Accepts scalars or arrays; zero below the support.
    """
    if nt < 1:
        raise ValueError(f"nt must be a positive integer, got {nt}")
    xa = np.asarray(x, dtype=float)
    out = np.zeros_like(xa)
    mask = xa >= 0
    xm = xa[mask]
    out[mask] = np.exp(-xm) * xm ** (nt - 1) / math.factorial(nt - 1)
    return float(out) if np.isscalar(x) or xa.ndim == 0 else out


def chi2_tail(nt: int, u: float) -> float:
    """Upper-tail mass of Gamma(nt, 1): exp(-u) * sum_{k<nt} u^k / k!."""
    if nt < 1:
        raise ValueError(f"nt must be a positive integer, got {nt}")
    if u <= 0:
        return 1.0
    term = 1.0
    total = 1.0
    for k in range(1, nt):
        term *= u / k
        total += term
    return math.exp(-u) * total


def chi2_tail_threshold(nt: int, l: int, nr: int) -> float:
    """Threshold u with tail mass exactly l/nr under the Gamma(nt, 1) gain law.

    Closed form ln(nr/l) for nt = 1; otherwise bracketed bisection to
    1e-10 absolute, which is robust for every integer shape without any
    special-function inverse.
    """
    if not 1 <= l <= nr:
        raise ValueError(f"need 1 <= l <= nr, got l={l}, nr={nr}")
    if l == nr:
        return 0.0
    if nt == 1:
        return math.log(nr / l)
    target = l / nr
    lo, hi = 0.0, nt + 40.0 + 10.0 * math.sqrt(nt)
    while hi - lo > 1e-10:
        mid = 0.5 * (lo + hi)
        if chi2_tail(nt, mid) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _panel_quad(f, lo: float, hi: float, rtol: float) -> float:
    val, err = quad(f, lo, hi, epsabs=1e-300, epsrel=rtol, limit=200)
    if err > max(10.0 * rtol * abs(val), 1e-12):
        raise QuadratureError(
            f"integral on [{lo:g}, {hi:g}] reached error {err:g} for value {val:g}"
        )
    return val


def _tail_quad(f, lo: float, rtol: float, width: float = 32.0) -> float:
    """Integrate f on [lo, inf) by fixed panels until the tail is negligible.

    The integrands here decay like exp(-x), so each panel shrinks by
    roughly exp(-width); the loop stops once a panel contributes less than
    1e-14 of the accumulated value.
    """
    total = 0.0
    a = lo
    for _ in range(64):
        part = _panel_quad(f, a, a + width, rtol)
        total += part
        if abs(part) <= 1e-14 * max(abs(total), 1e-300):
            return total
        a += width
    raise QuadratureError(f"tail integral from {lo:g} did not settle within 64 panels")


def bf_bound_params(nr: int, nt: int, l: int, rho_bar: float, rtol: float = 1e-8) -> GaussianBound:
    """Normal approximation of the beamforming-bound trimmed sum.

    The limiting mean is nr * E[log2(1 + rho*g); g > u] with g ~
    Gamma(nt, 1) and u the l/nr upper quantile. Integrating by parts
    against the upper-tail function turns that into a boundary term at u
    plus tail integrals of x^k e^{-x} / (1 + rho*x), which decay fast
    enough for panel quadrature. At finite nr the sharp threshold
    overstates the mean by a visible amount (enough to shift the whole
    approximating CDF), so the reported mean replaces the indicator
    {g > u} with the exact probability that a gain ranks among the top l
    of nr draws - a binomial rank weight that converges to the indicator
    as nr grows and reproduces the empirical trimmed-sum mean at any nr.

    The variance is the trimmed-sum normal limit
    L * (var_cond + (y_u - m)^2 (1 - L/nr)), where y_u = log2(1 + rho*u)
    is the threshold mapped into rate units, m the limiting conditional
    mean rate, and var_cond the conditional rate variance beyond the
    threshold.
    """
    if not 1 <= l <= nr:
        raise ValueError(f"need 1 <= l <= nr, got l={l}, nr={nr}")
    if nt < 1:
        raise ValueError(f"nt must be a positive integer, got {nt}")
    if rho_bar <= 0:
        raise ValueError(f"rho_bar must be positive, got {rho_bar}")

    u = chi2_tail_threshold(nt, l, nr)
    q_u = chi2_tail(nt, u)
    y_u = math.log1p(rho_bar * u) / _LN2
    inv_fact = [1.0 / math.factorial(k) for k in range(nt)]

    def poly_exp(x: float) -> float:
        # sum_{k<nt} x^k/k! * e^{-x}, the upper-tail function before summing
        s = 0.0
        p = 1.0
        for k in range(nt):
            s += inv_fact[k] * p
            p *= x
        return s * math.exp(-x)

    def mean_integrand(x: float) -> float:
        return poly_exp(x) / (1.0 + rho_bar * x)

    def second_integrand(x: float) -> float:
        return poly_exp(x) * math.log1p(rho_bar * x) / _LN2 / (1.0 + rho_bar * x)

    def rate_density_weighted(x: float) -> float:
        # log2(1+rho*x) f_nt(x) P(x ranks in the top l of nr i.i.d. gains);
        # the rank weight is a regularized incomplete beta in the CDF
        if x <= 0.0:
            return 0.0
        dens = math.exp(-x + (nt - 1) * math.log(x)) * inv_fact[nt - 1]
        w = 1.0 if l == nr else float(betainc(nr - l, l, gammainc(nt, x)))
        return math.log1p(rho_bar * x) / _LN2 * dens * w

    # mean with the finite-nr rank weight: head up to the threshold, then
    # exponential-tail panels (the weight is already ~1 past u)
    head = _panel_quad(rate_density_weighted, 0.0, u, rtol) if u > 0 else 0.0
    mean = nr * (head + _tail_quad(rate_density_weighted, u, rtol))

    # limiting conditional moments at the sharp threshold for the variance
    tail_mean = _tail_quad(mean_integrand, u, rtol)
    tail_second = _tail_quad(second_integrand, u, rtol)
    mean_sharp = nr * (y_u * q_u + rho_bar / _LN2 * tail_mean)
    second_sharp = nr * (y_u * y_u * q_u + 2.0 * rho_bar / _LN2 * tail_second)

    m = mean_sharp / l
    var_cond = max(second_sharp / l - m * m, 0.0)
    variance = l * (var_cond + (y_u - m) ** 2 * (1.0 - l / nr))
    return GaussianBound("bf", mean, variance, nr, nt, l, rho_bar, u)


def mrc_trimmed_params(nr: int, l: int) -> TrimmedSumParams:
    """Closed-form normal parameters of the top-L-of-Nr Exp(1) sum.

    The exponential tail threshold is u = ln(nr/l); memorylessness makes
    the conditional variance exactly 1, giving mu = L(1 + ln(nr/l)) and
    sigma^2 = L(2 - L/nr).
    """
    if not 1 <= l <= nr:
        raise ValueError(f"need 1 <= l <= nr, got l={l}, nr={nr}")
    return TrimmedSumParams(l * (1.0 + math.log(nr / l)), l * (2.0 - l / nr))


def mrc_bound_params(nr: int, nt: int, l: int, rho_bar: float, rtol: float = 1e-8) -> GaussianBound:
    """Normal approximation of the combining bound (sum of nt subsystems).

    Each subsystem rate is log2(1 + rho*t) with t the normal-approximated
    trimmed sum; its moments are Gaussian-weighted integrals truncated at
    ten standard deviations and clipped at zero (the sub-zero normal mass
    is negligible whenever nr is meaningfully larger than l, and the small
    clipped remainder is deliberately dropped rather than renormalized).
    """
    if not 1 <= l <= nr:
        raise ValueError(f"need 1 <= l <= nr, got l={l}, nr={nr}")
    if nt < 1:
        raise ValueError(f"nt must be a positive integer, got {nt}")
    if rho_bar <= 0:
        raise ValueError(f"rho_bar must be positive, got {rho_bar}")

    tp = mrc_trimmed_params(nr, l)
    sd = math.sqrt(tp.sigma_t_sq)
    lo = max(0.0, tp.mu_t - 10.0 * sd)
    hi = tp.mu_t + 10.0 * sd
    norm = 1.0 / (sd * math.sqrt(2.0 * math.pi))

    def weight(x: float) -> float:
        z = (x - tp.mu_t) / sd
        return norm * math.exp(-0.5 * z * z)

    def rate(x: float) -> float:
        return math.log1p(rho_bar * x) / _LN2

    m1 = _panel_quad(lambda x: rate(x) * weight(x), lo, hi, rtol)
    m2 = _panel_quad(lambda x: rate(x) ** 2 * weight(x), lo, hi, rtol)

    mean = nt * m1
    variance = nt * max(m2 - m1 * m1, 0.0)
    return GaussianBound("mrc", mean, variance, nr, nt, l, rho_bar, math.log(nr / l))


def gap(l: int, nt: int, rho_db: float, model: GapModel = GapModel()) -> float:
    """Empirical mean offset between the BF bound and the optimal-selection
    ergodic capacity, as a function of L, Nt and the SNR in dB.

    Zero at L = 1 (where the bound is exact) and damped by a logistic
    factor below 0 dB. The piecewise definition has a deliberate jump at
    exactly 0 dB; it is evaluated verbatim, not smoothed.
    """
    if l < 1 or nt < 1:
        raise ValueError(f"l and nt must be positive, got l={l}, nt={nt}")
    base = model.a * l * l * (l - 1) / nt ** (model.b * math.sqrt(l))
    if rho_db >= 0.0:
        return base
    z = math.exp(model.c * (rho_db + model.d))
    return base * z / (z + 1.0)


def approx_ergodic_capacity(nr: int, nt: int, l: int, rho_bar: float) -> float:
    """Ergodic capacity estimate for optimal selection of L <= Nt antennas:
    the BF bound mean minus the empirical gap.

    The gap model is fitted only for the L <= Nt regime, so larger L is
    rejected.
    """
    if l > nt:
        raise ValueError(f"gap-corrected estimate requires l <= nt, got l={l}, nt={nt}")
    b = bf_bound_params(nr, nt, l, rho_bar)
    return b.mean - gap(l, nt, 10.0 * math.log10(rho_bar))
