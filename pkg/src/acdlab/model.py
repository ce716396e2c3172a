"""Parameters and stationarity diagnostics for the ACD(1,1) duration model.

Durations follow x_i = psi_i * eps_i with the conditional mean recursion

    psi_i = omega + alpha * x_{i-1} + beta * psi_{i-1}.

Throughout the package the parameter vector is ordered (omega, alpha, beta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ParameterError
from .innovations import InnovationLaw


@dataclass(frozen=True)
class AcdParams:
    """The (omega, alpha, beta) triple, strictly positive.

    The plain constructor enforces strict positivity, which is the estimable
    parameter space.  Boundary values (alpha == 0 or beta == 0) are useful as
    analytic test fixtures and are allowed only through :meth:`boundary`.
    """

    omega: float
    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "omega", float(self.omega))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        for name in ("omega", "alpha", "beta"):
            v = getattr(self, name)
            if not math.isfinite(v) or v <= 0.0:
                raise ParameterError(f"{name} must be strictly positive and finite, got {v!r}")

    @classmethod
    def boundary(cls, omega: float, alpha: float, beta: float) -> "AcdParams":
        """Relaxed constructor admitting alpha == 0 or beta == 0 (fixtures only)."""
        omega, alpha, beta = float(omega), float(alpha), float(beta)
        if not (math.isfinite(omega) and omega > 0.0):
            raise ParameterError(f"omega must be strictly positive and finite, got {omega!r}")
        for name, v in (("alpha", alpha), ("beta", beta)):
            if not (math.isfinite(v) and v >= 0.0):
                raise ParameterError(f"{name} must be non-negative and finite, got {v!r}")
        obj = object.__new__(cls)
        object.__setattr__(obj, "omega", omega)
        object.__setattr__(obj, "alpha", alpha)
        object.__setattr__(obj, "beta", beta)
        return obj

    @property
    def finite_mean(self) -> bool:
        """True iff alpha + beta < 1, i.e. the durations have a finite mean."""
        return self.alpha + self.beta < 1.0

    @property
    def theta(self) -> np.ndarray:
        return np.array([self.omega, self.alpha, self.beta])


@dataclass(frozen=True)
class InitialState:
    """Pre-sample pair (x0, psi0) that seeds the recursion."""

    x0: float
    psi0: float

    def __post_init__(self):
        object.__setattr__(self, "x0", float(self.x0))
        object.__setattr__(self, "psi0", float(self.psi0))
        for name in ("x0", "psi0"):
            v = getattr(self, name)
            if not math.isfinite(v) or v <= 0.0:
                raise ParameterError(f"{name} must be strictly positive and finite, got {v!r}")


def stationary_mean(params: AcdParams) -> float:
    """Unconditional mean omega / (1 - alpha - beta); requires alpha + beta < 1."""
    if not params.finite_mean:
        raise ParameterError(
            f"infinite mean: alpha + beta = {params.alpha + params.beta:g} >= 1"
        )
    return params.omega / (1.0 - params.alpha - params.beta)


def default_initial_state(params: AcdParams) -> InitialState:
    """Scale-matched start: the stationary mean when it exists, else omega."""
    level = stationary_mean(params) if params.finite_mean else params.omega
    return InitialState(x0=level, psi0=level)


class LyapunovEstimate(NamedTuple):
    value: float
    std_error: float
    n_draws: int


def lyapunov_exponent(
    params: AcdParams,
    law: InnovationLaw,
    n_draws: int = 100_000,
    seed=0,
) -> LyapunovEstimate:
    """Monte Carlo estimate of E[ln(alpha * eps + beta)] with its standard error.

    A negative value places ``params`` in the strictly-stationary/ergodic
    region even when alpha + beta >= 1.  The degenerate case alpha == 0 is
    exact (the innovation drops out) and consumes no draws.
    """
    if params.alpha == 0.0:
        if params.beta <= 0.0:
            raise ParameterError("lyapunov exponent undefined for alpha = beta = 0")
        return LyapunovEstimate(math.log(params.beta), 0.0, 0)
    if n_draws < 10_000:
        raise ParameterError(f"n_draws must be at least 10000, got {n_draws}")
    from .simulate import rng_from_seed  # local import to avoid a cycle

    rng = rng_from_seed(seed)
    draws = np.log(params.alpha * law.sample(rng, n_draws) + params.beta)
    value = float(draws.mean())
    std_error = float(draws.std(ddof=1) / math.sqrt(n_draws))
    return LyapunovEstimate(value, std_error, n_draws)
