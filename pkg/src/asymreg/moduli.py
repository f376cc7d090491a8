"""Serializable witness descriptors and the iteration schedule they certify.

Every modulus used by the rate machinery is a closed-form descriptor (a
tagged record) rather than an opaque callable, so experiment configurations
round-trip through files.  The families:

- eta(r, eps): uniform-convexity modulus of a space model, valued in (0, 1],
  nonincreasing in the radius r, defined for eps in (0, 2].
- eta1(r, k), eta2(r, k), eta3(q, k): dyadic counterparts of eta (the
  precision eps = 2^-k), natural-valued, with conversions between all shapes.
- theta(n): rate of divergence witness for sum lambda_k (1 - lambda_k),
  meaning sum_{k=0..theta(n)} lambda_k (1 - lambda_k) >= n.
- gamma(delta): Cauchy modulus for the partial sums alpha_n of
  s_k (1 - lambda_k), meaning alpha_{gamma(delta)+n} - alpha_{gamma(delta)}
  <= delta for every n.
- omega(n): majorization modulus of a self-map T at a base point x,
  d(x, y) <= n implies d(x, Ty) <= omega(n).

Constructors for theta and gamma work in exact rational arithmetic via
fractions.Fraction; floats only enter at the verification boundary
(verify_theta / verify_gamma, which sample the defining inequalities).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .report import CheckReport

SLACK = 1e-9

# Descriptor kinds.  The strings double as the tags used in config files.
ETA_QUADRATIC = "EtaQuadratic"
ETA_HILBERT = "EtaHilbert"
ETA_CONSTANT = "EtaConstant"
ETA_FROM_ETA1 = "EtaFromEta1"
ETA1_FROM_ETA = "Eta1FromEta"
ETA1_AFFINE = "Eta1Affine"
ETA1_SHIFT = "Eta1Shift"
ETA2_FROM_ETA3 = "Eta2FromEta3"
ETA3_K_PLUS_CEIL = "Eta3KPlusCeil"
ETA3_AFFINE = "Eta3Affine"
THETA_LINEAR = "ThetaLinear"
GAMMA_ZERO = "GammaZero"
GAMMA_DYADIC_SHIFT = "GammaDyadicShift"
GAMMA_GEOMETRIC_TAIL = "GammaGeometricTail"
GAMMA_FROM_DYADIC = "GammaFromDyadic"
GAMMA_SHIFTED = "GammaShifted"
OMEGA_AFFINE = "OmegaAffine"
TABULATED = "Tabulated"

SEQ_CONSTANT = "Constant"
SEQ_GEOMETRIC = "Geometric"
SEQ_TABULATED = "Tabulated"


class DescriptorError(ValueError):
    """Malformed descriptor or a parameter outside its admissible range."""


class DescriptorDomainError(ValueError):
    """Descriptor evaluated outside its domain."""


class ScheduleError(ValueError):
    """Schedule violates one of its structural hypotheses."""


def as_fraction(value) -> Fraction:
    """Coerce int, float, str 'p/q', or Fraction to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DescriptorError(f"non-finite value {value!r}")
        return Fraction(value)
    raise DescriptorError(f"cannot interpret {value!r} as a rational")


def ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _pow2_ge(m: int, num: int, den: int) -> bool:
    # 2**m >= num/den, exact integer comparison
    if m >= 0:
        return (den << m) >= num
    return den >= (num << (-m))


def ceil_log2_frac(num: int, den: int) -> int:
    """Smallest integer m with 2**m >= num/den (num, den positive)."""
    if num <= 0 or den <= 0:
        raise DescriptorError("ceil_log2_frac needs a positive rational")
    m = num.bit_length() - den.bit_length()
    while _pow2_ge(m - 1, num, den):
        m -= 1
    while not _pow2_ge(m, num, den):
        m += 1
    return m


def ceil_neg_log2(q: Fraction) -> int:
    """Smallest integer m with 2**-m <= q, i.e. ceil(-log2 q)."""
    q = as_fraction(q)
    if q <= 0:
        raise DescriptorDomainError("ceil_neg_log2 needs a positive argument")
    return ceil_log2_frac(q.denominator, q.numerator)


@dataclass(frozen=True)
class ModulusDescriptor:
    """Tagged closed form; params is an ordered tuple of (name, value)."""

    kind: str
    params: tuple[tuple[str, object], ...] = ()

    def param(self, name: str):
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)


def _desc(kind: str, **params) -> ModulusDescriptor:
    return ModulusDescriptor(kind, tuple(params.items()))


# ---------------------------------------------------------------------------
# descriptor constructors

def eta_quadratic(denominator: int = 8) -> ModulusDescriptor:
    """eta(r, eps) = eps^2 / denominator, independent of r."""
    denominator = int(denominator)
    if denominator <= 0:
        raise DescriptorError("denominator must be positive")
    return _desc(ETA_QUADRATIC, denominator=denominator)


def eta_hilbert() -> ModulusDescriptor:
    """eta(r, eps) = 1 - sqrt(1 - eps^2/4), the inner-product-space modulus."""
    return _desc(ETA_HILBERT)


def eta_constant(value) -> ModulusDescriptor:
    value = as_fraction(value)
    if not 0 < value <= 1:
        raise DescriptorError("constant eta must lie in (0, 1]")
    return _desc(ETA_CONSTANT, value=value)


def eta1_affine(a: int, b: int) -> ModulusDescriptor:
    """eta1(r, k) = a*k + b, independent of r."""
    a, b = int(a), int(b)
    if a < 0 or b < 0:
        raise DescriptorError("eta1 coefficients must be naturals")
    return _desc(ETA1_AFFINE, a=a, b=b)


def eta3_k_plus_ceil() -> ModulusDescriptor:
    """eta3(q, k) = k + ceil(q) on positive rationals q."""
    return _desc(ETA3_K_PLUS_CEIL)


def eta3_affine(a: int, b: int) -> ModulusDescriptor:
    """eta3(q, k) = a*k + b, independent of q."""
    return _desc(ETA3_AFFINE, a=int(a), b=int(b))


def theta_linear(a, b=0) -> ModulusDescriptor:
    """theta(n) = ceil(a*n + b) with rational a, b >= 0."""
    a, b = as_fraction(a), as_fraction(b)
    if a < 0 or b < 0:
        raise DescriptorError("theta coefficients must be nonnegative")
    return _desc(THETA_LINEAR, a=a, b=b)


def gamma_zero() -> ModulusDescriptor:
    return _desc(GAMMA_ZERO)


def gamma_dyadic_shift(c: int) -> ModulusDescriptor:
    """gamma(delta) = max(0, max(0, ceil(-log2 delta)) + c)."""
    return _desc(GAMMA_DYADIC_SHIFT, c=int(c))


def gamma_geometric_tail(c, q, lambda_min) -> ModulusDescriptor:
    c, q, lambda_min = as_fraction(c), as_fraction(q), as_fraction(lambda_min)
    if not 0 < q < 1:
        raise DescriptorError("geometric ratio q must lie in (0, 1)")
    if c < 0 or not 0 <= lambda_min <= 1:
        raise DescriptorError("need c >= 0 and lambda_min in [0, 1]")
    return _desc(GAMMA_GEOMETRIC_TAIL, c=c, q=q, lambda_min=lambda_min)


def gamma_from_dyadic(dyadic: ModulusDescriptor) -> ModulusDescriptor:
    """Adapt a dyadic modulus p -> gamma_d(p) to real arguments:
    gamma(delta) = gamma_d(max(0, ceil(-log2 delta)))."""
    return _desc(GAMMA_FROM_DYADIC, inner=dyadic)


def gamma_shifted(inner: ModulusDescriptor, shift: int) -> ModulusDescriptor:
    """gamma(delta) = max(0, inner(delta) + shift).  Used for fault injection."""
    return _desc(GAMMA_SHIFTED, inner=inner, shift=int(shift))


def omega_affine(slope: int, shift: int) -> ModulusDescriptor:
    """omega(n) = slope*n + shift on naturals (also serves as a generic
    natural -> natural affine map, e.g. the inner form of a dyadic gamma)."""
    return _desc(OMEGA_AFFINE, slope=int(slope), shift=int(shift))


def tabulated(points: Iterable[tuple[int, int]]) -> ModulusDescriptor:
    pts = tuple(sorted((int(k), int(v)) for k, v in points))
    if len({k for k, _ in pts}) != len(pts):
        raise DescriptorError("tabulated arguments must be distinct")
    return _desc(TABULATED, points=pts)


# ---------------------------------------------------------------------------
# conversions between the eta shapes

def eta_to_eta1(eta: ModulusDescriptor) -> ModulusDescriptor:
    """eta1(r, k) = ceil(-log2 eta(r, 2^-k)).

    Simplifies eagerly for the closed forms whose dyadic evaluation is exact.
    """
    if eta.kind == ETA_QUADRATIC:
        # eta(r, 2^-k) = 2^(-2k) / den, so eta1 = 2k + ceil(log2 den)
        den = eta.param("denominator")
        return eta1_affine(2, ceil_log2_frac(den, 1))
    if eta.kind == ETA_CONSTANT:
        return eta1_affine(0, max(0, ceil_neg_log2(eta.param("value"))))
    return _desc(ETA1_FROM_ETA, inner=eta)


def eta1_to_eta(eta1: ModulusDescriptor) -> ModulusDescriptor:
    """eta(r, eps) = 2^(-eta1(r, max(0, ceil(-log2 eps)))).

    The clamp keeps the dyadic precision index a natural when eps > 1; the
    resulting modulus is pointwise smaller, hence still valid.
    """
    return _desc(ETA_FROM_ETA1, inner=eta1)


def eta2_to_eta1(eta2: ModulusDescriptor) -> ModulusDescriptor:
    """eta1(r, k) = eta2(r, k + 1)."""
    if eta2.kind == ETA1_AFFINE:
        a, b = eta2.param("a"), eta2.param("b")
        return eta1_affine(a, a + b)
    if eta2.kind == TABULATED:
        pts = [(k - 1, v) for k, v in eta2.param("points") if k >= 1]
        return tabulated(pts)
    return _desc(ETA1_SHIFT, inner=eta2, shift=1)


def eta3_to_eta2(eta3: ModulusDescriptor) -> ModulusDescriptor:
    """eta2(r, k) = eta3(q_r, k) where q_r is the exact rational value of r.

    Machine radii are dyadic rationals, so the evaluation is exact; for the
    shipped eta3 forms it is bounded by eta3(ceil(r), k) by monotonicity.
    """
    return _desc(ETA2_FROM_ETA3, inner=eta3)


# ---------------------------------------------------------------------------
# theta / gamma / omega constructors

def theta_for_constant_lambda(lam) -> ModulusDescriptor:
    """Divergence witness for lambda_n = lam constant: theta(n) =
    ceil(n / (lam (1 - lam))).  Then (theta(n) + 1) lam (1 - lam) >= n
    holds exactly in rational arithmetic."""
    lam = as_fraction(lam)
    if not 0 < lam < 1:
        raise DescriptorError("constant lambda must lie strictly in (0, 1)")
    return theta_linear(1 / (lam * (1 - lam)), 0)


def sequence_lower_bound(seq: "SequenceDescriptor") -> Fraction:
    if seq.kind == SEQ_CONSTANT:
        return seq.param("value")
    if seq.kind == SEQ_GEOMETRIC:
        return Fraction(0)
    if seq.kind == SEQ_TABULATED:
        return min(list(seq.param("values")) + [seq.param("tail")])
    raise DescriptorError(f"unknown sequence kind {seq.kind!r}")


def gamma_for_geometric_s(c, q, lambda_seq: "SequenceDescriptor") -> ModulusDescriptor:
    """Cauchy modulus for s_n = c q^n: the tail past index N of
    sum s_n (1 - lambda_n) is at most c (1 - lambda_min) q^(N+1) / (1 - q),
    so gamma(delta) is the least N making that bound <= delta."""
    c, q = as_fraction(c), as_fraction(q)
    if c == 0:
        return gamma_zero()
    if not 0 < q < 1:
        raise DescriptorError("geometric ratio q must lie in (0, 1)")
    if c < 0 or c > 1:
        raise DescriptorError("need s_0 = c in [0, 1]")
    return gamma_geometric_tail(c, q, sequence_lower_bound(lambda_seq))


def omega_for_nonexpansive(b: int) -> ModulusDescriptor:
    """d(x, Tx) <= b and T nonexpansive give d(x, Ty) <= n + b."""
    if b < 0:
        raise DescriptorError("b must be a nonnegative natural")
    return omega_affine(1, int(b))


def omega_for_lipschitz(lstar: int, b: int) -> ModulusDescriptor:
    """T Lipschitz with constant at most L* and d(x, Tx) <= b:
    omega(n) = n + L* b."""
    if lstar < 1 or b < 0:
        raise DescriptorError("need L* >= 1 and b >= 0")
    return omega_affine(1, int(lstar) * int(b))


def omega_for_uniformly_continuous(alpha_t: ModulusDescriptor, b: int) -> ModulusDescriptor:
    """T uniformly continuous with modulus alpha_T (dyadic: d(x,y) <= 2^-alpha_T(k)
    gives d(Tx,Ty) <= 2^-k) and d(x, Tx) <= b: omega(n) = n 2^alpha_T(0) + 1 + b."""
    if b < 0:
        raise DescriptorError("b must be a nonnegative natural")
    slope = 2 ** eval_nat(alpha_t, 0)
    return omega_affine(slope, 1 + int(b))


def omega_for_bounded_space(diameter) -> ModulusDescriptor:
    """Bounded space: omega(n) = ceil(diameter), constant."""
    d = as_fraction(diameter)
    if d < 0:
        raise DescriptorError("diameter must be nonnegative")
    return omega_affine(0, ceil_frac(d))


# ---------------------------------------------------------------------------
# evaluation

def eval_eta(desc: ModulusDescriptor, r: float, eps: float) -> float:
    """Evaluate an eta-family descriptor at radius r > 0 and eps in (0, 2].

    Returns the raw closed-form value; codomain validity is the harness's
    concern (deliberately broken moduli are used for fault injection)."""
    if not r > 0:
        raise DescriptorDomainError("radius r must be positive")
    if not 0 < eps <= 2:
        raise DescriptorDomainError("eps must lie in (0, 2]")
    exact = eval_eta_exact(desc, as_fraction(r), as_fraction(eps))
    if exact is not None:
        return float(exact)
    if desc.kind == ETA_HILBERT:
        return 1.0 - math.sqrt(max(0.0, 1.0 - eps * eps / 4.0))
    raise DescriptorError(f"{desc.kind!r} is not an eta descriptor")


def eval_eta_exact(desc: ModulusDescriptor, r: Fraction, eps: Fraction):
    """Exact rational evaluation where the closed form permits it, else None."""
    if desc.kind == ETA_QUADRATIC:
        return eps * eps / desc.param("denominator")
    if desc.kind == ETA_CONSTANT:
        return desc.param("value")
    if desc.kind == ETA_FROM_ETA1:
        k = max(0, ceil_neg_log2(eps))
        m = eval_eta1(desc.param("inner"), float(r), k)
        return Fraction(1, 2 ** m)
    return None


def eval_eta1(desc: ModulusDescriptor, r: float, k: int) -> int:
    """Evaluate an eta1/eta2-family descriptor at radius r and precision k."""
    if k < 0:
        raise DescriptorDomainError("precision index k must be a natural")
    if desc.kind == ETA1_AFFINE:
        return desc.param("a") * k + desc.param("b")
    if desc.kind == TABULATED:
        return _table_lookup(desc, k)
    if desc.kind == ETA1_SHIFT:
        return eval_eta1(desc.param("inner"), r, k + desc.param("shift"))
    if desc.kind == ETA2_FROM_ETA3:
        return eval_eta3(desc.param("inner"), as_fraction(r), k)
    if desc.kind == ETA1_FROM_ETA:
        inner = desc.param("inner")
        eps = Fraction(1, 2 ** k)
        exact = eval_eta_exact(inner, as_fraction(r), eps)
        if exact is not None:
            return max(0, ceil_neg_log2(exact))
        value = eval_eta(inner, r, float(eps))
        if not value > 0:
            raise DescriptorDomainError("eta must be positive to take -log2")
        m = max(0, math.ceil(-math.log2(value)))
        # the defining property is 2^-m <= eta; repair any float rounding
        while 2.0 ** (-m) > value:
            m += 1
        return m
    raise DescriptorError(f"{desc.kind!r} is not an eta1 descriptor")


def eval_eta3(desc: ModulusDescriptor, q: Fraction, k: int) -> int:
    if q <= 0:
        raise DescriptorDomainError("eta3 takes a positive rational radius")
    if desc.kind == ETA3_K_PLUS_CEIL:
        return k + ceil_frac(as_fraction(q))
    if desc.kind == ETA3_AFFINE:
        return desc.param("a") * k + desc.param("b")
    if desc.kind == TABULATED:
        return _table_lookup(desc, k)
    raise DescriptorError(f"{desc.kind!r} is not an eta3 descriptor")


def eval_nat(desc: ModulusDescriptor, n: int) -> int:
    """Evaluate a natural -> natural descriptor (theta, omega, tables)."""
    if n < 0:
        raise DescriptorDomainError("argument must be a natural")
    if desc.kind == THETA_LINEAR:
        return max(0, ceil_frac(desc.param("a") * n + desc.param("b")))
    if desc.kind == OMEGA_AFFINE:
        return max(0, desc.param("slope") * n + desc.param("shift"))
    if desc.kind == TABULATED:
        return _table_lookup(desc, n)
    raise DescriptorError(f"{desc.kind!r} is not a natural-valued descriptor")


eval_theta = eval_nat
eval_omega = eval_nat


def eval_gamma(desc: ModulusDescriptor, delta) -> int:
    """Evaluate a gamma-family descriptor at precision delta > 0."""
    delta = as_fraction(delta)
    if delta <= 0:
        raise DescriptorDomainError("delta must be positive")
    if desc.kind == GAMMA_ZERO:
        return 0
    if desc.kind == GAMMA_DYADIC_SHIFT:
        return max(0, max(0, ceil_neg_log2(delta)) + desc.param("c"))
    if desc.kind == GAMMA_FROM_DYADIC:
        return eval_nat(desc.param("inner"), max(0, ceil_neg_log2(delta)))
    if desc.kind == GAMMA_GEOMETRIC_TAIL:
        c, q = desc.param("c"), desc.param("q")
        tail = c * (1 - desc.param("lambda_min")) * q / (1 - q)  # tail past N=0
        n = 0
        while tail > delta:
            tail *= q
            n += 1
        return n
    if desc.kind == GAMMA_SHIFTED:
        return max(0, eval_gamma(desc.param("inner"), delta) + desc.param("shift"))
    raise DescriptorError(f"{desc.kind!r} is not a gamma descriptor")


def _table_lookup(desc: ModulusDescriptor, arg: int) -> int:
    for k, v in desc.param("points"):
        if k == arg:
            return v
    raise DescriptorDomainError(f"argument {arg} outside the table")


def declared_monotonicity(desc: ModulusDescriptor) -> dict[str, str]:
    """Monotonicity flags per argument, spot-checkable by sampling."""
    kind = desc.kind
    if kind in (ETA_QUADRATIC, ETA_HILBERT, ETA_CONSTANT, ETA_FROM_ETA1):
        return {"r": "nonincreasing", "eps": "nondecreasing"}
    if kind in (ETA1_AFFINE, ETA1_FROM_ETA, ETA1_SHIFT, ETA2_FROM_ETA3):
        return {"r": "nondecreasing", "k": "nondecreasing"}
    if kind in (ETA3_K_PLUS_CEIL, ETA3_AFFINE):
        return {"q": "nondecreasing", "k": "nondecreasing"}
    if kind == THETA_LINEAR:
        return {"n": "nondecreasing"}
    if kind in (GAMMA_ZERO, GAMMA_DYADIC_SHIFT, GAMMA_GEOMETRIC_TAIL,
                GAMMA_FROM_DYADIC, GAMMA_SHIFTED):
        return {"delta": "nonincreasing"}
    if kind == OMEGA_AFFINE:
        return {"n": "nondecreasing"}
    if kind == TABULATED:
        return {"n": "nondecreasing"}
    raise DescriptorError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# averaging sequences and the schedule

@dataclass(frozen=True)
class SequenceDescriptor:
    """Closed form for an averaging sequence: constant, geometric c q^n, or a
    finite table followed by a constant tail."""

    kind: str
    params: tuple[tuple[str, object], ...] = ()

    def param(self, name: str):
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)


def seq_constant(value) -> SequenceDescriptor:
    value = as_fraction(value)
    if not 0 <= value <= 1:
        raise DescriptorError("sequence values must lie in [0, 1]")
    return SequenceDescriptor(SEQ_CONSTANT, (("value", value),))


def seq_geometric(c, q) -> SequenceDescriptor:
    c, q = as_fraction(c), as_fraction(q)
    if not 0 <= c <= 1:
        raise DescriptorError("leading coefficient c must lie in [0, 1]")
    if not 0 < q < 1:
        raise DescriptorError("ratio q must lie in (0, 1)")
    return SequenceDescriptor(SEQ_GEOMETRIC, (("c", c), ("q", q)))


def seq_tabulated(values: Sequence, tail) -> SequenceDescriptor:
    vals = tuple(as_fraction(v) for v in values)
    tail = as_fraction(tail)
    for v in list(vals) + [tail]:
        if not 0 <= v <= 1:
            raise DescriptorError("sequence values must lie in [0, 1]")
    return SequenceDescriptor(SEQ_TABULATED, (("values", vals), ("tail", tail)))


def seq_value(seq: SequenceDescriptor, n: int) -> Fraction:
    if n < 0:
        raise DescriptorDomainError("sequence index must be a natural")
    if seq.kind == SEQ_CONSTANT:
        return seq.param("value")
    if seq.kind == SEQ_GEOMETRIC:
        return seq.param("c") * seq.param("q") ** n
    if seq.kind == SEQ_TABULATED:
        values = seq.param("values")
        return values[n] if n < len(values) else seq.param("tail")
    raise DescriptorError(f"unknown sequence kind {seq.kind!r}")


def seq_values_float(seq: SequenceDescriptor, count: int) -> np.ndarray:
    """First `count` terms as float64, without exact big-denominator blowup."""
    if seq.kind == SEQ_CONSTANT:
        return np.full(count, float(seq.param("value")))
    if seq.kind == SEQ_GEOMETRIC:
        c, q = float(seq.param("c")), float(seq.param("q"))
        with np.errstate(under="ignore"):
            return c * np.power(q, np.arange(count, dtype=np.float64))
    if seq.kind == SEQ_TABULATED:
        values = [float(v) for v in seq.param("values")[:count]]
        pad = count - len(values)
        if pad > 0:
            values.extend([float(seq.param("tail"))] * pad)
        return np.asarray(values)
    raise DescriptorError(f"unknown sequence kind {seq.kind!r}")


def seq_sup_from(seq: SequenceDescriptor, n0: int) -> Fraction:
    """Exact supremum of the sequence over indices n >= n0."""
    if seq.kind == SEQ_CONSTANT:
        return seq.param("value")
    if seq.kind == SEQ_GEOMETRIC:
        return seq_value(seq, n0)
    if seq.kind == SEQ_TABULATED:
        values = seq.param("values")
        candidates = [seq.param("tail")] + list(values[n0:])
        return max(candidates)
    raise DescriptorError(f"unknown sequence kind {seq.kind!r}")


@dataclass(frozen=True)
class Schedule:
    """The data certifying an iteration run: the averaging sequences
    lambda_n and s_n, the divergence witness theta for lambda, the pair
    (L, N0) bounding s away from 1, and the Cauchy modulus gamma for the
    partial sums of s_n (1 - lambda_n)."""

    lambda_seq: SequenceDescriptor
    s_seq: SequenceDescriptor
    theta: ModulusDescriptor
    L: int
    N0: int
    gamma: ModulusDescriptor

    def lambda_at(self, n: int) -> Fraction:
        return seq_value(self.lambda_seq, n)

    def s_at(self, n: int) -> Fraction:
        return seq_value(self.s_seq, n)

    def theta_at(self, n: int) -> int:
        return eval_nat(self.theta, n)

    def gamma_at(self, delta) -> int:
        return eval_gamma(self.gamma, delta)


def validate_schedule(schedule: Schedule) -> None:
    """Raise ScheduleError naming the violated hypothesis, if any."""
    if schedule.L < 1:
        raise ScheduleError("L must be >= 1")
    if schedule.N0 < 0:
        raise ScheduleError("N0 must be a natural")
    sup_s = seq_sup_from(schedule.s_seq, schedule.N0)
    bound = 1 - Fraction(1, schedule.L)
    if sup_s > bound:
        raise ScheduleError(
            f"s_n <= 1 - 1/L fails for n >= N0: sup s_n = {sup_s} > {bound}"
        )
    mono = declared_monotonicity(schedule.theta)
    if mono.get("n") != "nondecreasing":
        raise ScheduleError("theta must be nondecreasing")
    declared = declared_monotonicity(schedule.gamma)
    if declared.get("delta") != "nonincreasing":
        raise ScheduleError("gamma must be antitone in the precision")


def lambda_terms_float(schedule: Schedule, count: int) -> np.ndarray:
    lam = seq_values_float(schedule.lambda_seq, count)
    return lam * (1.0 - lam)


def alpha_terms_float(schedule: Schedule, count: int) -> np.ndarray:
    lam = seq_values_float(schedule.lambda_seq, count)
    s = seq_values_float(schedule.s_seq, count)
    return s * (1.0 - lam)


# ---------------------------------------------------------------------------
# witness verification (floats, 1e-9 slack)

def verify_theta(schedule: Schedule, n_max: int = 10_000) -> CheckReport:
    """Check sum_{k=0..theta(n)} lambda_k (1 - lambda_k) >= n for n <= n_max."""
    report = CheckReport("theta-witness")
    if n_max < 1:
        raise DescriptorDomainError("n_max must be >= 1")
    try:
        indices = [schedule.theta_at(n) for n in range(n_max + 1)]
    except (DescriptorError, DescriptorDomainError) as exc:
        report.fail({"error": str(exc)}, 0.0, 0.0, SLACK)
        return report
    csum = np.cumsum(lambda_terms_float(schedule, max(indices) + 1))
    report.samples = n_max + 1
    for n, t in enumerate(indices):
        if csum[t] < n - SLACK:
            report.fail({"n": n, "theta_n": t}, float(csum[t]), float(n), SLACK)
            break
    return report


def verify_gamma(schedule: Schedule, deltas: Sequence, n_max: int = 10_000) -> CheckReport:
    """Check alpha_{gamma(delta)+n} - alpha_{gamma(delta)} <= delta for
    n <= n_max over each requested delta (alpha_n = partial sums of
    s_k (1 - lambda_k))."""
    report = CheckReport("gamma-witness")
    if n_max < 1:
        raise DescriptorDomainError("n_max must be >= 1")
    try:
        gammas = [schedule.gamma_at(d) for d in deltas]
    except (DescriptorError, DescriptorDomainError) as exc:
        report.fail({"error": str(exc)}, 0.0, 0.0, SLACK)
        return report
    need = max(gammas) + n_max + 1
    alpha = np.cumsum(alpha_terms_float(schedule, need))
    report.samples = len(gammas) * (n_max + 1)
    for delta, g in zip(deltas, gammas):
        window = alpha[g:g + n_max + 1] - alpha[g]
        worst = int(np.argmax(window))
        if window[worst] > float(delta) + SLACK:
            report.fail({"delta": float(delta), "gamma": g, "n": worst},
                        float(window[worst]), float(delta), SLACK)
    return report


# ---------------------------------------------------------------------------
# serialization to/from plain tagged dicts (the config file format)

def _encode_value(value):
    if isinstance(value, ModulusDescriptor):
        return descriptor_to_dict(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, tuple):
        return [list(p) for p in value]
    return value


def descriptor_to_dict(desc: ModulusDescriptor) -> dict:
    out = {"kind": desc.kind}
    for key, value in desc.params:
        out[key] = _encode_value(value)
    return out


_DESCRIPTOR_BUILDERS = {
    ETA_QUADRATIC: (eta_quadratic, ("denominator",), ()),
    ETA_HILBERT: (eta_hilbert, (), ()),
    ETA_CONSTANT: (eta_constant, ("value",), ()),
    ETA1_AFFINE: (eta1_affine, ("a", "b"), ()),
    ETA3_K_PLUS_CEIL: (eta3_k_plus_ceil, (), ()),
    ETA3_AFFINE: (eta3_affine, ("a", "b"), ()),
    THETA_LINEAR: (theta_linear, ("a", "b"), ()),
    GAMMA_ZERO: (gamma_zero, (), ()),
    GAMMA_DYADIC_SHIFT: (gamma_dyadic_shift, ("c",), ()),
    GAMMA_GEOMETRIC_TAIL: (gamma_geometric_tail, ("c", "q", "lambda_min"), ()),
    OMEGA_AFFINE: (omega_affine, ("slope", "shift"), ()),
    TABULATED: (tabulated, ("points",), ()),
    # wrapper kinds: fields naming nested descriptors
    ETA_FROM_ETA1: (None, ("inner",), ("inner",)),
    ETA1_FROM_ETA: (None, ("inner",), ("inner",)),
    ETA1_SHIFT: (None, ("inner", "shift"), ("inner",)),
    ETA2_FROM_ETA3: (None, ("inner",), ("inner",)),
    GAMMA_FROM_DYADIC: (None, ("inner",), ("inner",)),
    GAMMA_SHIFTED: (None, ("inner", "shift"), ("inner",)),
}


def descriptor_from_dict(data: dict) -> ModulusDescriptor:
    if not isinstance(data, dict) or "kind" not in data:
        raise DescriptorError("descriptor must be a dict with a 'kind' tag")
    kind = data["kind"]
    if kind not in _DESCRIPTOR_BUILDERS:
        raise DescriptorError(f"unknown descriptor kind {kind!r}")
    builder, fields, nested = _DESCRIPTOR_BUILDERS[kind]
    extra = set(data) - {"kind"} - set(fields)
    if extra:
        raise DescriptorError(f"{kind}: unknown field(s) {sorted(extra)}")
    values = {}
    for name in fields:
        if name not in data:
            raise DescriptorError(f"{kind}: missing field {name!r}")
        raw = data[name]
        if name in nested:
            values[name] = descriptor_from_dict(raw)
        elif name == "points":
            values[name] = tuple((int(k), int(v)) for k, v in raw)
        else:
            values[name] = raw
    if builder is not None:
        return builder(**values)
    params = tuple((name, values[name] if name in nested else int(values[name]))
                   for name in fields)
    return ModulusDescriptor(kind, params)


def sequence_to_dict(seq: SequenceDescriptor) -> dict:
    out = {"kind": seq.kind}
    for key, value in seq.params:
        if isinstance(value, tuple):
            out[key] = [str(v) for v in value]
        else:
            out[key] = str(value)
    return out


def sequence_from_dict(data: dict) -> SequenceDescriptor:
    if not isinstance(data, dict) or "kind" not in data:
        raise DescriptorError("sequence must be a dict with a 'kind' tag")
    kind = data["kind"]
    fields = {SEQ_CONSTANT: ("value",), SEQ_GEOMETRIC: ("c", "q"),
              SEQ_TABULATED: ("values", "tail")}.get(kind)
    if fields is None:
        raise DescriptorError(f"unknown sequence kind {kind!r}")
    extra = set(data) - {"kind"} - set(fields)
    if extra:
        raise DescriptorError(f"{kind}: unknown field(s) {sorted(extra)}")
    for name in fields:
        if name not in data:
            raise DescriptorError(f"{kind}: missing field {name!r}")
    if kind == SEQ_CONSTANT:
        return seq_constant(data["value"])
    if kind == SEQ_GEOMETRIC:
        return seq_geometric(data["c"], data["q"])
    return seq_tabulated(data["values"], data["tail"])
