"""Simulation of ACD(1,1) duration series.

Two stopping rules share one draw stream: a fixed observation count n, or a
fixed calendar horizon [0, T] with a random event count n(T).  For the same
seed (and burn-in) the horizon output is exactly the n(T)-length prefix of
the fixed-n output, which the Monte Carlo harness relies on.

Seeds may be ints or tuples of ints; tuples are how replication streams are
derived from a base seed without any sequential reuse.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EmptySeriesError, ExplosionError, ParameterError
from .innovations import InnovationLaw
from .model import AcdParams, InitialState, default_initial_state

#: Default number of pre-sample steps discarded so recorded series start near
#: stationarity.  Applied only when the parameters have a finite mean.
DEFAULT_BURN_IN = 500

#: Default magnitude cap on psi; crossing it raises ExplosionError.
DEFAULT_PSI_CAP = 1e300

_CHUNK = 8192


def seed_sequence(seed) -> np.random.SeedSequence:
    """Normalize an int, tuple of ints, or SeedSequence into a SeedSequence."""
    if isinstance(seed, np.random.SeedSequence):
        return seed
    if isinstance(seed, (int, np.integer)):
        return np.random.SeedSequence(int(seed))
    try:
        entropy = [int(s) for s in seed]
    except TypeError:
        raise ParameterError(f"seed must be an int or a tuple of ints, got {seed!r}") from None
    return np.random.SeedSequence(entropy)


def rng_from_seed(seed) -> np.random.Generator:
    return np.random.default_rng(seed_sequence(seed))


def replication_seed(base_seed: int, index: int) -> tuple[int, int]:
    """Stream name for replication ``index``; independent of scheduling order."""
    return (int(base_seed), int(index))


@dataclass(frozen=True)
class DurationSeries:
    """An observed or simulated duration series.

    ``event_times`` is the cumulative sum of ``durations``.  ``horizon`` is
    set for horizon simulations (and for observed data with a known
    observation window); ``overshoot`` retains the single discarded draw
    whose inclusion would have crossed the horizon.
    """

    durations: np.ndarray
    horizon: float | None = None
    true_params: AcdParams | None = None
    seed: object | None = None
    law: InnovationLaw | None = None
    burn_in: int | None = None
    overshoot: float | None = None
    event_times: np.ndarray = field(init=False)

    def __post_init__(self):
        durations = np.asarray(self.durations, dtype=float)
        if durations.ndim != 1 or durations.size == 0:
            raise ParameterError("durations must be a non-empty 1-d array")
        if not np.all(np.isfinite(durations)) or np.any(durations <= 0.0):
            raise ParameterError("all durations must be strictly positive and finite")
        object.__setattr__(self, "durations", durations)
        object.__setattr__(self, "event_times", np.cumsum(durations))
        if self.horizon is not None:
            horizon = float(self.horizon)
            if horizon <= 0.0:
                raise ParameterError(f"horizon must be positive, got {horizon!r}")
            if self.event_times[-1] > horizon:
                raise ParameterError("event times exceed the stated horizon")
            if self.overshoot is not None and self.event_times[-1] + self.overshoot <= horizon:
                raise ParameterError("overshoot draw does not cross the horizon")
            object.__setattr__(self, "horizon", horizon)

    @property
    def count(self) -> int:
        return int(self.durations.size)

    def __len__(self) -> int:
        return self.count


class _InnovationStream:
    """Serves innovations one at a time, drawing from the generator in blocks.

    numpy Generators produce identical value streams regardless of how draws
    are batched, so two streams with the same seed agree draw-for-draw even
    when consumed under different stopping rules.
    """

    def __init__(self, law: InnovationLaw, rng: np.random.Generator, chunk: int = _CHUNK):
        self._law = law
        self._rng = rng
        self._chunk = chunk
        self._buf: list[float] = []
        self._pos = 0

    def __next__(self) -> float:
        if self._pos >= len(self._buf):
            self._buf = self._law.sample(self._rng, self._chunk).tolist()
            self._pos = 0
        v = self._buf[self._pos]
        self._pos += 1
        return v


def _resolve(params, init, burn_in):
    if init is None:
        init = default_initial_state(params)
    if burn_in is None:
        burn_in = DEFAULT_BURN_IN if params.finite_mean else 0
    elif burn_in < 0:
        raise ParameterError(f"burn_in must be non-negative, got {burn_in}")
    return init, int(burn_in)


def _burn(omega, alpha, beta, x, psi, eps_values, psi_cap):
    for i, e in enumerate(eps_values, start=1):
        psi = omega + alpha * x + beta * psi
        if psi > psi_cap:
            raise ExplosionError(
                f"psi exceeded cap {psi_cap:g} at burn-in step {i}", index=i
            )
        x = psi * e
        if x <= 0.0:
            raise ExplosionError(f"duration underflowed to zero at burn-in step {i}", index=i)
    return x, psi


def simulate_fixed_n(
    params: AcdParams,
    law: InnovationLaw,
    n: int,
    init: InitialState | None = None,
    seed=0,
    burn_in: int | None = None,
    psi_cap: float = DEFAULT_PSI_CAP,
) -> DurationSeries:
    """Simulate exactly ``n`` durations.

    ``burn_in`` pre-sample steps (default 500 for finite-mean parameters,
    else 0) are generated and discarded before recording starts.  Output is a
    pure function of (params, law, n, init, seed, burn_in).
    """
    if n < 1:
        raise ParameterError(f"n must be at least 1, got {n}")
    init, burn_in = _resolve(params, init, burn_in)
    rng = rng_from_seed(seed)
    omega, alpha, beta = params.omega, params.alpha, params.beta

    eps = law.sample(rng, burn_in + n).tolist()
    x, psi = _burn(omega, alpha, beta, init.x0, init.psi0, eps[:burn_in], psi_cap)
    out = np.empty(n)
    for i in range(n):
        psi = omega + alpha * x + beta * psi
        if psi > psi_cap:
            raise ExplosionError(f"psi exceeded cap {psi_cap:g} at step {i + 1}", index=i + 1)
        x = psi * eps[burn_in + i]
        if x <= 0.0:
            raise ExplosionError(f"duration underflowed to zero at step {i + 1}", index=i + 1)
        out[i] = x
    return DurationSeries(
        durations=out, true_params=params, seed=seed, law=law, burn_in=burn_in
    )


def simulate_horizon(
    params: AcdParams,
    law: InnovationLaw,
    horizon: float,
    init: InitialState | None = None,
    seed=0,
    burn_in: int | None = None,
    psi_cap: float = DEFAULT_PSI_CAP,
    allow_nonstationary: bool = False,
) -> DurationSeries:
    """Simulate all events in [0, horizon]; the count n(T) is random.

    The simulator draws durations until one would push the cumulative event
    time past ``horizon``; that single overshooting draw is discarded (and
    retained in the result for the counting identity
    sum(durations) <= T < sum(durations) + overshoot).

    Infinite-mean parameters are refused unless ``allow_nonstationary`` is
    set, since n(T)/T no longer converges to a positive rate.
    """
    if horizon <= 0.0:
        raise ParameterError(f"horizon must be positive, got {horizon!r}")
    if not params.finite_mean and not allow_nonstationary:
        raise ParameterError(
            "alpha + beta >= 1 gives durations with no finite mean; "
            "pass allow_nonstationary=True to simulate anyway"
        )
    init, burn_in = _resolve(params, init, burn_in)
    rng = rng_from_seed(seed)
    omega, alpha, beta = params.omega, params.alpha, params.beta

    eps_burn = law.sample(rng, burn_in).tolist() if burn_in else []
    x, psi = _burn(omega, alpha, beta, init.x0, init.psi0, eps_burn, psi_cap)
    stream = _InnovationStream(law, rng)
    out: list[float] = []
    clock = 0.0
    i = 0
    while True:
        i += 1
        psi = omega + alpha * x + beta * psi
        if psi > psi_cap:
            raise ExplosionError(f"psi exceeded cap {psi_cap:g} at step {i}", index=i)
        x = psi * next(stream)
        if x <= 0.0:
            raise ExplosionError(f"duration underflowed to zero at step {i}", index=i)
        if clock + x > horizon:
            overshoot = x
            break
        out.append(x)
        clock += x
    if not out:
        raise EmptySeriesError(
            f"no events in [0, {horizon:g}]: first duration {overshoot:g} "
            "exceeds the horizon; estimation is impossible"
        )
    return DurationSeries(
        durations=np.asarray(out),
        horizon=horizon,
        true_params=params,
        seed=seed,
        law=law,
        burn_in=burn_in,
        overshoot=overshoot,
    )
