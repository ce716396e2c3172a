"""Unit-mean positive innovation distributions.

The duration model multiplies the conditional mean by an i.i.d. innovation
with support (0, inf) and mean exactly 1.  Three families are supported,
each rescaled analytically to unit mean:

* exponential            -- rate 1, no shape parameter
* weibull (shape k > 0)  -- scale 1 / Gamma(1 + 1/k)
* gamma (shape a > 0)    -- scale 1 / a

All families have finite second moment, strictly greater than 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

_FAMILIES = ("exponential", "weibull", "gamma")


@dataclass(frozen=True)
class InnovationLaw:
    """A unit-mean innovation distribution.

    Use the classmethod constructors (:meth:`exponential`, :meth:`weibull`,
    :meth:`gamma`) or :meth:`parse` rather than the raw constructor.
    """

    family: str
    shape: float | None = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ParameterError(f"unknown innovation family {self.family!r}")
        if self.family == "exponential":
            if self.shape is not None:
                raise ParameterError("exponential law takes no shape parameter")
        else:
            if self.shape is None or not math.isfinite(self.shape) or self.shape <= 0:
                raise ParameterError(
                    f"{self.family} shape must be a positive finite number, got {self.shape!r}"
                )

    # -- constructors ------------------------------------------------------

    @classmethod
    def exponential(cls) -> "InnovationLaw":
        return cls("exponential")

    @classmethod
    def weibull(cls, k: float) -> "InnovationLaw":
        return cls("weibull", float(k))

    @classmethod
    def gamma(cls, a: float) -> "InnovationLaw":
        return cls("gamma", float(a))

    @classmethod
    def parse(cls, spec: str) -> "InnovationLaw":
        """Parse ``"exponential"``, ``"weibull:K"`` or ``"gamma:A"``."""
        name, sep, arg = spec.strip().partition(":")
        name = name.lower()
        if name == "exponential":
            if sep:
                raise ParameterError("exponential law takes no shape parameter")
            return cls.exponential()
        if name in ("weibull", "gamma"):
            if not sep:
                raise ParameterError(f"{name} law requires a shape, e.g. '{name}:2.0'")
            try:
                shape = float(arg)
            except ValueError:
                raise ParameterError(f"invalid shape {arg!r} for {name} law") from None
            return cls(name, shape)
        raise ParameterError(f"unknown innovation law {spec!r}")

    # -- properties --------------------------------------------------------

    @property
    def scale(self) -> float:
        """Multiplicative rescaling that makes the mean exactly 1."""
        if self.family == "exponential":
            return 1.0
        if self.family == "weibull":
            return 1.0 / math.gamma(1.0 + 1.0 / self.shape)
        return 1.0 / self.shape

    def second_moment(self) -> float:
        """E[eps^2]; always finite and > 1."""
        if self.family == "exponential":
            return 2.0
        if self.family == "weibull":
            k = self.shape
            return math.gamma(1.0 + 2.0 / k) / math.gamma(1.0 + 1.0 / k) ** 2
        return 1.0 + 1.0 / self.shape

    def variance(self) -> float:
        return self.second_moment() - 1.0

    def describe(self) -> str:
        """Canonical string form, invertible by :meth:`parse`."""
        if self.family == "exponential":
            return "exponential"
        return f"{self.family}:{self.shape!r}"

    # -- sampling ----------------------------------------------------------

    def sample(self, rng: np.random.Generator, size: int | None = None):
        """Draw innovations; returns a scalar when ``size`` is None."""
        if self.family == "exponential":
            return rng.exponential(1.0, size)
        if self.family == "weibull":
            return rng.weibull(self.shape, size) * self.scale
        return rng.gamma(self.shape, self.scale, size)


def draw_innovation(law: InnovationLaw, rng: np.random.Generator) -> float:
    """Draw a single innovation from ``law``; strictly positive and finite."""
    return float(law.sample(rng))
