"""Exponential quasi-likelihood filter with analytic first and second derivatives.

For a candidate theta = (omega, alpha, beta) and observed durations x_1..x_n
the conditional mean follows

    psi_i = omega + alpha * x_{i-1} + beta * psi_{i-1},      psi_0, x_0 given,

and the per-observation objective is ell_i = log(psi_i) + x_i / psi_i, so the
negative quasi-log-likelihood is sum_i ell_i.  Differentiating the recursion
(the pre-sample state is treated as a constant) gives

    d psi_i / d omega = 1        + beta * d psi_{i-1} / d omega
    d psi_i / d alpha = x_{i-1}  + beta * d psi_{i-1} / d alpha
    d psi_i / d beta  = psi_{i-1} + beta * d psi_{i-1} / d beta

with zero pre-sample derivatives, and the second-derivative recursion

    d2 psi_i = beta * d2 psi_{i-1} + e_b d psi_{i-1}' + d psi_{i-1} e_b'

where e_b is the beta unit vector.  Because the recursion is affine in omega
and alpha, the (omega,omega), (omega,alpha) and (alpha,alpha) entries of
d2 psi_i are identically zero.

Per observation, with r_i = x_i / psi_i:

    score        xi_i   = (1 - r_i) / psi_i * d psi_i
    information  zeta_i = (2 r_i - 1) / psi_i^2 * d psi_i d psi_i'
                          + (1 - r_i) / psi_i * d2 psi_i

The sign convention is zeta_i = + d2 ell_i / d theta d theta', which makes
E[zeta_i] positive definite at the true parameter (the conditional expectation
of zeta_i is d psi_i d psi_i' / psi_i^2).

All recursions are constant-coefficient linear filters in beta and are
evaluated with scipy.signal.lfilter; scalar reductions accumulate in extended
precision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .errors import FilterDivergenceError, ParameterError
from .model import AcdParams, InitialState
from .simulate import DurationSeries


def _as_durations(data) -> np.ndarray:
    if isinstance(data, DurationSeries):
        return data.durations
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ParameterError("data must be a DurationSeries or a non-empty 1-d array")
    return arr


def _beta_filter(beta: float, driver: np.ndarray, z0: float = 0.0) -> np.ndarray:
    """Solve y_i = driver_i + beta * y_{i-1} with beta * y_0 = z0."""
    out, _ = lfilter([1.0], [1.0, -beta], driver, zi=[z0])
    return out


@dataclass(frozen=True)
class FilterOutput:
    """Per-observation filter quantities for one (theta, data, init) triple."""

    psi: np.ndarray          # (n,)   conditional means
    dpsi: np.ndarray         # (n, 3) d psi / d theta
    d2psi: np.ndarray        # (n, 3, 3) symmetric second derivatives
    loglik_terms: np.ndarray  # (n,)  log(psi_i) + x_i / psi_i
    neg_loglik: float

    @property
    def n(self) -> int:
        return int(self.psi.size)


@dataclass(frozen=True)
class ScoreInfo:
    """Unnormalized score/information accumulations over a series."""

    score_sum: np.ndarray  # (3,)   sum of xi_i
    info_sum: np.ndarray   # (3, 3) sum of zeta_i, symmetrized
    outer_sum: np.ndarray  # (3, 3) sum of xi_i xi_i', symmetrized
    n: int


def neg_loglik(theta: AcdParams, data, init: InitialState) -> float:
    """Negative quasi-log-likelihood only (no derivatives); used by line search."""
    x = _as_durations(data)
    x_lag = np.concatenate(([init.x0], x[:-1]))
    psi = _beta_filter(theta.beta, theta.omega + theta.alpha * x_lag, theta.beta * init.psi0)
    if not np.all(np.isfinite(psi)) or np.any(psi <= 0.0):
        bad = int(np.flatnonzero(~(np.isfinite(psi) & (psi > 0.0)))[0]) + 1
        raise FilterDivergenceError(f"filter diverged at observation {bad}", index=bad)
    terms = np.log(psi) + x / psi
    return float(np.sum(terms, dtype=np.longdouble))


def run_filter(theta: AcdParams, data, init: InitialState) -> FilterOutput:
    """Run the psi recursion and its derivative recursions over ``data``.

    ``init`` is the pre-sample state (x_0, psi_0), held fixed as theta varies.
    Raises FilterDivergenceError naming the first bad observation if any
    intermediate quantity is non-finite.
    """
    x = _as_durations(data)
    n = x.size
    omega, alpha, beta = theta.omega, theta.alpha, theta.beta

    x_lag = np.concatenate(([init.x0], x[:-1]))
    psi = _beta_filter(beta, omega + alpha * x_lag, beta * init.psi0)

    finite = np.isfinite(psi) & (psi > 0.0)
    if not finite.all():
        bad = int(np.flatnonzero(~finite)[0]) + 1
        raise FilterDivergenceError(f"filter diverged at observation {bad}", index=bad)

    d_omega = _beta_filter(beta, np.ones(n))
    d_alpha = _beta_filter(beta, x_lag)
    psi_lag = np.concatenate(([init.psi0], psi[:-1]))
    d_beta = _beta_filter(beta, psi_lag)

    def lag0(v):
        return np.concatenate(([0.0], v[:-1]))

    d2_ob = _beta_filter(beta, lag0(d_omega))
    d2_ab = _beta_filter(beta, lag0(d_alpha))
    d2_bb = _beta_filter(beta, 2.0 * lag0(d_beta))

    dpsi = np.stack([d_omega, d_alpha, d_beta], axis=1)
    d2psi = np.zeros((n, 3, 3))
    d2psi[:, 0, 2] = d2psi[:, 2, 0] = d2_ob
    d2psi[:, 1, 2] = d2psi[:, 2, 1] = d2_ab
    d2psi[:, 2, 2] = d2_bb

    terms = np.log(psi) + x / psi
    if not np.all(np.isfinite(terms)):
        bad = int(np.flatnonzero(~np.isfinite(terms))[0]) + 1
        raise FilterDivergenceError(f"likelihood term non-finite at observation {bad}", index=bad)
    total = float(np.sum(terms, dtype=np.longdouble))
    return FilterOutput(psi=psi, dpsi=dpsi, d2psi=d2psi, loglik_terms=terms, neg_loglik=total)


def score_and_info(theta: AcdParams, filt: FilterOutput, data) -> ScoreInfo:
    """Accumulate score, information, and score outer products from a filter pass."""
    x = _as_durations(data)
    if x.size != filt.n:
        raise ParameterError(
            f"filter output has {filt.n} observations but data has {x.size}"
        )
    psi, dpsi, d2psi = filt.psi, filt.dpsi, filt.d2psi
    r = x / psi
    a = (1.0 - r) / psi           # score weight
    b = (2.0 * r - 1.0) / psi**2  # outer-product weight in zeta

    score = np.sum(a[:, None] * dpsi, axis=0, dtype=np.longdouble).astype(float)
    info = np.einsum("i,ij,ik->jk", b, dpsi, dpsi)
    info = info + np.tensordot(a, d2psi, axes=1)
    outer = np.einsum("i,ij,ik->jk", a * a, dpsi, dpsi)

    info = 0.5 * (info + info.T)
    outer = 0.5 * (outer + outer.T)
    return ScoreInfo(score_sum=score, info_sum=info, outer_sum=outer, n=filt.n)


def normalized_omegas(si: ScoreInfo) -> tuple[np.ndarray, np.ndarray]:
    """(Omega_S_hat, Omega_I_hat) = (outer_sum / n, info_sum / n)."""
    if si.n < 1:
        raise ParameterError("need at least one observation")
    return si.outer_sum / si.n, si.info_sum / si.n
