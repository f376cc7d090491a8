"""Certified rates of asymptotic regularity for the two-stage averaged
iteration of a nonexpansive map with approximate fixed points.

Given a target eps, a uniform-convexity modulus eta, a bound b on the
distance from the start to the (approximate) fixed points, the divergence
witness theta for lambda_n (1 - lambda_n), the pair (L, N0) with
s_n <= 1 - 1/L for n >= N0, and the Cauchy modulus gamma of the partial sums
of s_n (1 - lambda_n), the rate

    phi = theta(P + gamma0 + 1 + N0),
    P = ceil( L (b+1) / (eps * eta(b+1, eps / (L (b+1)))) ),
    gamma0 = gamma(eps / (8 b)),

guarantees d(x_n, T x_n) < eps for every n >= phi, and

    delta(k) = theta(P + k + N0)

guarantees some N in [k, delta(k)] with d(x_N, T x_N) < eps.

The quotient defining P is evaluated in exact rational arithmetic whenever
the modulus descriptor has a rational closed form; certified bounds must
never round down, so the float fallback adds an absolute 1e-12 nudge before
taking the ceiling.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .moduli import (
    ModulusDescriptor,
    Schedule,
    as_fraction,
    ceil_frac,
    eval_eta,
    eval_eta_exact,
    eval_gamma,
    eval_nat,
)

CEIL_NUDGE = 1e-12


class RateError(ValueError):
    pass


class EtaDomainError(RateError):
    """eps / (L (b+1)) fell outside (0, 2]; route through epsilon_shortcut."""


@dataclass(frozen=True)
class RateInputs:
    eps: float
    eta: ModulusDescriptor
    b: float
    N0: int
    L: int
    theta: ModulusDescriptor
    gamma: ModulusDescriptor

    def __post_init__(self):
        if not self.eps > 0:
            raise RateError("eps must be positive")
        if not self.b > 0:
            raise RateError("b must be positive")
        if self.L < 1:
            raise RateError("L must be >= 1")
        if self.N0 < 0:
            raise RateError("N0 must be a natural")


def inputs_for(eps: float, eta: ModulusDescriptor, b: float,
               schedule: Schedule) -> RateInputs:
    return RateInputs(eps=float(eps), eta=eta, b=float(b),
                      N0=schedule.N0, L=schedule.L,
                      theta=schedule.theta, gamma=schedule.gamma)


@dataclass
class RateReport:
    P: int
    gamma0: int
    phi: int
    delta: int | None = None
    empirical_first_hit: int | None = None
    tightness_ratio: float | None = None

    def to_json_dict(self) -> dict:
        return {
            "P": self.P,
            "gamma0": self.gamma0,
            "phi": self.phi,
            "delta": self.delta,
            "empirical_first_hit": self.empirical_first_hit,
            "tightness_ratio": self.tightness_ratio,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def epsilon_shortcut(inputs: RateInputs) -> int | None:
    """All residuals are capped by 2b, so eps > 2b is witnessed at once:
    returns 0 in that case, None when the main formula applies."""
    if inputs.eps > 2.0 * inputs.b:
        return 0
    return None


def _eta_argument(inputs: RateInputs) -> Fraction:
    eps = as_fraction(inputs.eps)
    b = as_fraction(inputs.b)
    arg = eps / (inputs.L * (b + 1))
    if arg > 2:
        if inputs.eps > 2.0 * inputs.b:
            raise EtaDomainError(
                "eps / (L (b+1)) > 2 with eps > 2b; use epsilon_shortcut")
        # unreachable for eps <= 2b since eps <= 2b < 2 L (b+1); kept as a
        # defensive clamp (eta is nondecreasing in eps, so this only weakens)
        arg = Fraction(2)
    return arg


def compute_p(inputs: RateInputs) -> int:
    """P = ceil( L (b+1) / (eps * eta(b+1, eps / (L (b+1)))) )."""
    arg = _eta_argument(inputs)
    eps = as_fraction(inputs.eps)
    b1 = as_fraction(inputs.b) + 1
    exact = eval_eta_exact(inputs.eta, b1, arg)
    if exact is not None:
        if exact <= 0:
            raise RateError("eta evaluated to a nonpositive value")
        return ceil_frac(inputs.L * b1 / (eps * exact))
    value = eval_eta(inputs.eta, float(b1), float(arg))
    if not value > 0:
        raise RateError("eta evaluated to a nonpositive value")
    quotient = inputs.L * float(b1) / (inputs.eps * value)
    return math.ceil(quotient + CEIL_NUDGE)


def compute_gamma0(inputs: RateInputs) -> int:
    """gamma0 = gamma(eps / (8 b)), evaluated at the exact rational."""
    delta = as_fraction(inputs.eps) / (8 * as_fraction(inputs.b))
    return eval_gamma(inputs.gamma, delta)


def compute_phi(inputs: RateInputs) -> RateReport:
    """The rate phi = theta(P + gamma0 + 1 + N0).  Reads nothing but the
    inputs tuple, so configs sharing it get bit-identical reports."""
    p = compute_p(inputs)
    gamma0 = compute_gamma0(inputs)
    phi = eval_nat(inputs.theta, p + gamma0 + 1 + inputs.N0)
    return RateReport(P=p, gamma0=gamma0, phi=phi)


def compute_delta(inputs: RateInputs, k: int) -> int:
    """delta = theta(P + k + N0): some index in [k, delta] has residual
    below eps."""
    if k < 0:
        raise RateError("k must be a natural")
    p = compute_p(inputs)
    delta = eval_nat(inputs.theta, p + k + inputs.N0)
    if delta < k:
        raise RateError(f"theta({p + k + inputs.N0}) = {delta} < k = {k}; "
                        "theta is not a divergence witness")
    return delta
