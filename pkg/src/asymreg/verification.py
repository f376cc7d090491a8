"""Numerical verification harness.

Every structural claim the library relies on is sampled here with explicit
tolerances: the metric and convexity axioms of the space models, the uniform
convexity implication in both its real-valued and dyadic forms, the step
inequalities of the averaged iteration, the residual cap 2b, and finally the
soundness of the certified rates phi and delta against simulated orbits.

Checks are deterministic: each owns an RNG stream derived from (seed, check
name), and reports serialize to stable JSON.  Rates whose verification window
exceeds the step cap are reported as unverified-at-scale, a warning rather
than a failure.
"""

from __future__ import annotations

import math
import random

import numpy as np

from .config import ExperimentConfig
from .geometry import (
    EUCLIDEAN,
    POINCARE_DISK,
    Point,
    SpaceModel,
    combine,
    dist,
    make_point,
)
from .iteration import Trajectory, run_trajectory
from .mappings import MappingSpec, apply_map, declared_fixed_point
from .moduli import (
    ModulusDescriptor,
    as_fraction,
    eval_eta,
    eval_eta1,
    eval_nat,
    seq_values_float,
    verify_gamma,
    verify_theta,
)
from .rates import RateError, RateReport, compute_delta, compute_phi, epsilon_shortcut, inputs_for
from .report import CheckReport

SLACK = 1e-9
HARD_STEP_CAP = 10_000_000

EUCLID_SAMPLE_RADIUS = 10.0
DISK_SAMPLE_RADIUS = 5.0  # hyperbolic distance to the origin


def _rng(seed: int, name: str) -> random.Random:
    # string seeding hashes stably (sha512), unlike tuple hashing
    return random.Random(f"{seed}:{name}")


def sample_point(space: SpaceModel, rng: random.Random) -> Point:
    """Euclidean: uniform in the ball of radius 10.  Disk: uniform direction
    with hyperbolic distance to the origin uniform in [0, 5]."""
    if space.kind == POINCARE_DISK:
        t = rng.random() * DISK_SAMPLE_RADIUS
        phi = rng.random() * 2.0 * math.pi
        r = math.tanh(t / 2.0)
        return Point(space.kind, (r * math.cos(phi), r * math.sin(phi)))
    vec = [rng.gauss(0.0, 1.0) for _ in range(space.dim)]
    norm = math.sqrt(sum(v * v for v in vec)) or 1.0
    scale = EUCLID_SAMPLE_RADIUS * rng.random() ** (1.0 / space.dim) / norm
    return Point(space.kind, tuple(v * scale for v in vec))


def sample_point_near(space: SpaceModel, rng: random.Random,
                      x: Point, max_dist: float) -> Point:
    """A point y with d(x, y) <= max_dist."""
    if space.kind == POINCARE_DISK:
        t = rng.random() * max_dist
        phi = rng.random() * 2.0 * math.pi
        w = complex(math.tanh(t / 2.0) * math.cos(phi),
                    math.tanh(t / 2.0) * math.sin(phi))
        z = complex(*x.coords)
        out = (z + w) / (1.0 + z.conjugate() * w)
        return Point(space.kind, (out.real, out.imag))
    vec = [rng.gauss(0.0, 1.0) for _ in range(space.dim)]
    norm = math.sqrt(sum(v * v for v in vec)) or 1.0
    scale = max_dist * rng.random() ** (1.0 / space.dim) / norm
    return Point(space.kind, tuple(c + v * scale for c, v in zip(x.coords, vec)))


# ---------------------------------------------------------------------------
# space axioms

def check_space_axioms(space: SpaceModel, samples: int = 10_000, seed: int = 0,
                       combine_override=None) -> CheckReport:
    """Metric axioms plus the four convexity identities of the combination
    map: (W1) point-to-segment convexity, (W2) constant-speed
    parameterization, (W3) endpoint symmetry, (W4) joint convexity."""
    report = CheckReport("space-axioms", samples=samples)
    comb = combine_override or combine
    rng = _rng(seed, f"space-axioms:{space.kind}:{space.dim}")
    for i in range(samples):
        x, y, z, w = (sample_point(space, rng) for _ in range(4))
        lam, lam2 = rng.random(), rng.random()

        dxy = dist(space, x, y)
        tol_rel = SLACK * (1.0 + dxy)
        if dxy < 0:
            report.fail({"axiom": "nonnegative", "i": i}, dxy, 0.0, 0.0)
        if dist(space, x, x) > 1e-12:
            report.fail({"axiom": "identity", "i": i}, dist(space, x, x), 0.0, 1e-12)
        if abs(dxy - dist(space, y, x)) > tol_rel:
            report.fail({"axiom": "symmetry", "i": i}, dist(space, y, x), dxy, tol_rel)
        dxz, dyz = dist(space, x, z), dist(space, y, z)
        tol_tri = SLACK * (1.0 + dxy + dyz)
        if dxz > dxy + dyz + tol_tri:
            report.fail({"axiom": "triangle", "i": i}, dxz, dxy + dyz, tol_tri)

        w_lam = comb(space, x, y, lam)
        w_lam2 = comb(space, x, y, lam2)
        lhs = dist(space, z, w_lam)
        rhs = (1.0 - lam) * dxz + lam * dyz
        if lhs > rhs + SLACK:
            report.fail({"axiom": "W1", "i": i, "lam": lam}, lhs, rhs, SLACK)
        lhs = abs(dist(space, w_lam, w_lam2) - abs(lam - lam2) * dxy)
        if lhs > tol_rel:
            report.fail({"axiom": "W2", "i": i, "lam": lam, "lam2": lam2},
                        dist(space, w_lam, w_lam2), abs(lam - lam2) * dxy, tol_rel)
        lhs = dist(space, w_lam, comb(space, y, x, 1.0 - lam))
        if lhs > SLACK:
            report.fail({"axiom": "W3", "i": i, "lam": lam}, lhs, 0.0, SLACK)
        lhs = dist(space, comb(space, x, z, lam), comb(space, y, w, lam))
        rhs = (1.0 - lam) * dxy + lam * dist(space, z, w)
        if lhs > rhs + SLACK:
            report.fail({"axiom": "W4", "i": i, "lam": lam}, lhs, rhs, SLACK)
    return report


# ---------------------------------------------------------------------------
# uniform convexity

def check_uc_implication(space: SpaceModel, samples: int = 10_000, seed: int = 0,
                         eta: ModulusDescriptor | None = None) -> CheckReport:
    """From d(x, a) <= r, d(y, a) <= r, d(x, y) >= eps r the modulus must
    push the midpoint inward, d(mid, a) <= (1 - eta(r, eps)) r, and for any
    lam and any s >= r the combination obeys
    d((1-lam) x (+) lam y, a) <= (1 - 2 lam (1 - lam) eta(s, eps)) r."""
    desc = eta or space.modulus
    report = CheckReport("uc-implication")
    rng = _rng(seed, f"uc-implication:{space.kind}")
    effective = 0
    for i in range(samples):
        a, x, y = (sample_point(space, rng) for _ in range(3))
        rmax = max(dist(space, x, a), dist(space, y, a))
        if rmax == 0.0:
            continue
        r = rmax * (1.0 + rng.random())
        dxy = dist(space, x, y)
        eps = min(2.0, dxy / r)
        if i % 2 == 1:
            eps *= rng.random()
        if eps <= 0.0:
            continue
        effective += 1

        mid = combine(space, x, y, 0.5)
        bound = (1.0 - eval_eta(desc, r, eps)) * r
        lhs = dist(space, mid, a)
        if lhs > bound + SLACK:
            report.fail({"form": "midpoint", "i": i, "r": r, "eps": eps},
                        lhs, bound, SLACK)

        lam = rng.random()
        s = r * (1.0 + 2.0 * rng.random())
        bound = (1.0 - 2.0 * lam * (1.0 - lam) * eval_eta(desc, s, eps)) * r
        lhs = dist(space, combine(space, x, y, lam), a)
        if lhs > bound + SLACK:
            report.fail({"form": "general-lambda", "i": i, "r": r, "s": s,
                         "eps": eps, "lam": lam}, lhs, bound, SLACK)
    report.samples = effective
    report.note(f"effective samples: {effective} of {samples}")
    return report


def check_dyadic_uc_implication(space: SpaceModel, desc: ModulusDescriptor,
                                conclusion_strict: bool,
                                samples: int = 10_000, seed: int = 0) -> CheckReport:
    """The dyadic-form contrapositive on Euclidean triples: whenever
    d(x, a) <= r, d(y, a) <= r and the midpoint stays outside
    (1 - 2^-eta1(r, k)) r, the endpoints must be 2^-k r close
    (strictly for the eta1 form, weakly for the eta2 form).

    Half the samples are random triples, half are constructed near-threshold
    configurations so the premise actually activates."""
    if space.kind != EUCLIDEAN:
        raise ValueError("dyadic implication check runs on a Euclidean model")
    name = "uc-implication-dyadic-" + ("strict" if conclusion_strict else "weak")
    report = CheckReport(name, samples=samples)
    rng = _rng(seed, f"{name}:{space.dim}")
    activations = 0
    for i in range(samples):
        k = rng.randrange(0, 4)
        if i % 2 == 0:
            a, x, y = (sample_point(space, rng) for _ in range(3))
            rmax = max(dist(space, x, a), dist(space, y, a))
            if rmax == 0.0:
                continue
            r = rmax * (1.0 + 0.001 + rng.random())
        else:
            a, x, y, r = _near_threshold_triple(space, rng, k)
        m = eval_eta1(desc, r, k)
        threshold = (1.0 - 2.0 ** (-m)) * r
        if dist(space, combine(space, x, y, 0.5), a) <= threshold:
            continue
        activations += 1
        dxy = dist(space, x, y)
        bound = 2.0 ** (-k) * r
        tol = SLACK * (1.0 + r)
        ok = dxy < bound + tol if conclusion_strict else dxy <= bound + tol
        if not ok:
            report.fail({"i": i, "k": k, "r": r}, dxy, bound, tol)
    report.note(f"premise activations: {activations} of {samples}")
    if activations == 0:
        report.fail({"error": "premise never activated"}, 0.0, 1.0, 0.0)
    return report


def _near_threshold_triple(space: SpaceModel, rng: random.Random, k: int):
    """x, y near the sphere of radius r about a, separated by 2^-(k+2) r,
    so the midpoint premise of the dyadic implication activates."""
    a = sample_point(space, rng)
    e1 = [rng.gauss(0.0, 1.0) for _ in range(space.dim)]
    n1 = math.sqrt(sum(v * v for v in e1)) or 1.0
    e1 = [v / n1 for v in e1]
    e2 = [rng.gauss(0.0, 1.0) for _ in range(space.dim)]
    proj = sum(u * v for u, v in zip(e1, e2))
    e2 = [v - proj * u for u, v in zip(e1, e2)]
    n2 = math.sqrt(sum(v * v for v in e2)) or 1.0
    e2 = [v / n2 for v in e2]
    r = 0.5 + 9.5 * rng.random()
    w = 2.0 ** (-2 * k - 9)
    d_ax = r * (1.0 - w)
    sep = 2.0 ** (-k - 2) * r
    h = math.sqrt(d_ax * d_ax - sep * sep / 4.0)
    x = Point(space.kind, tuple(c + h * u + 0.5 * sep * v
                                for c, u, v in zip(a.coords, e1, e2)))
    y = Point(space.kind, tuple(c + h * u - 0.5 * sep * v
                                for c, u, v in zip(a.coords, e1, e2)))
    return a, x, y, r


# ---------------------------------------------------------------------------
# mapping-level sampling

def check_nonexpansive(space: SpaceModel, m: MappingSpec,
                       samples: int = 1_000, seed: int = 0) -> CheckReport:
    report = CheckReport(f"nonexpansive:{m.kind}", samples=samples)
    rng = _rng(seed, f"nonexpansive:{m.kind}")
    for i in range(samples):
        x, y = sample_point(space, rng), sample_point(space, rng)
        lhs = dist(space, apply_map(space, m, x), apply_map(space, m, y))
        rhs = dist(space, x, y)
        if lhs > rhs + SLACK * (1.0 + rhs):
            report.fail({"i": i}, lhs, rhs, SLACK * (1.0 + rhs))
    return report


def check_omega_majorization(space: SpaceModel, m: MappingSpec, x: Point,
                             omega: ModulusDescriptor,
                             samples: int = 1_000, seed: int = 0,
                             n_values=(0, 1, 2, 3, 5, 8)) -> CheckReport:
    """d(x, y) <= n must give d(x, Ty) <= omega(n)."""
    report = CheckReport(f"omega-majorization:{m.kind}", samples=samples)
    rng = _rng(seed, f"omega:{m.kind}")
    for i in range(samples):
        n = n_values[i % len(n_values)]
        y = sample_point_near(space, rng, x, float(n))
        lhs = dist(space, x, apply_map(space, m, y))
        rhs = float(eval_nat(omega, n))
        if lhs > rhs + SLACK:
            report.fail({"i": i, "n": n}, lhs, rhs, SLACK)
    return report


# ---------------------------------------------------------------------------
# iteration audit

def check_lemma_inequalities(traj: Trajectory, ref_point: Point | None = None) -> CheckReport:
    """Audit the step inequalities along a recorded orbit:

    (a) (1 - s_n) d(x_n, T x_n) <= d(x_n, T y_n),
    (b) d(x_{n+1}, T x_{n+1}) <= (1 + 2 s_n (1 - lambda_n)) d(x_n, T x_n),
    (c) with a reference point z: d(y_n, z) <= d(x_n, z) + d(z, Tz),
        d(T y_n, z) <= d(x_n, z) + 2 d(z, Tz),
        d(x_{n+1}, z) <= d(x_n, z) + 2 lambda_n d(z, Tz),
        d(x_n, z) <= d(x_0, z) + 2 n d(z, Tz),
    plus the residual cap d(x_n, T x_n) <= 2b when fixed-point data rides
    along.  (a), (b) and the cap are dense; the reference inequalities are
    dense when reference distances were recorded, else they run over the
    stored points."""
    space, m, schedule = traj.space, traj.mapping, traj.schedule
    steps = traj.steps
    report = CheckReport("lemma-inequalities", samples=steps + 1)
    res = traj.residuals
    if steps > 0:
        lam = seq_values_float(schedule.lambda_seq, steps)
        s = seq_values_float(schedule.s_seq, steps)
        _bulk_fail(report, "a", (1.0 - s) * res[:-1], traj.inner_residuals, SLACK)
        _bulk_fail(report, "b", res[1:], (1.0 + 2.0 * s * (1.0 - lam)) * res[:-1], SLACK)
    else:
        lam = np.empty(0)

    if traj.afp is not None:
        cap = 2.0 * traj.afp.b
        _bulk_fail(report, "residual-cap", res, np.full(steps + 1, cap), SLACK)

    z = ref_point or traj.ref_point
    if z is None:
        return report
    d_z_tz = dist(space, z, apply_map(space, m, z))

    if traj.ref_distances is not None and steps > 0:
        rd = traj.ref_distances
        _bulk_fail(report, "c-inner", traj.inner_ref_distances,
                   rd[:-1] + d_z_tz, SLACK)
        _bulk_fail(report, "c-image", traj.t_inner_ref_distances,
                   rd[:-1] + 2.0 * d_z_tz, SLACK)
        _bulk_fail(report, "c-step", rd[1:], rd[:-1] + 2.0 * lam * d_z_tz, SLACK)
        _bulk_fail(report, "c-drift", rd,
                   rd[0] + 2.0 * np.arange(steps + 1) * d_z_tz, SLACK)
        return report

    ref0 = dist(space, traj.points[0], z)
    prev_idx, prev_dxz = None, None
    for pos, n in enumerate(traj.stored_indices):
        n = int(n)
        x_n = traj.points[pos]
        dxz = dist(space, x_n, z)
        if dxz > ref0 + 2.0 * n * d_z_tz + SLACK:
            report.fail({"inequality": "c-drift", "n": n}, dxz,
                        ref0 + 2.0 * n * d_z_tz, SLACK)
        if n < steps and pos < len(traj.inner_points):
            y_n = traj.inner_points[pos]
            dyz = dist(space, y_n, z)
            if dyz > dxz + d_z_tz + SLACK:
                report.fail({"inequality": "c-inner", "n": n}, dyz,
                            dxz + d_z_tz, SLACK)
            dtyz = dist(space, apply_map(space, m, y_n), z)
            if dtyz > dxz + 2.0 * d_z_tz + SLACK:
                report.fail({"inequality": "c-image", "n": n}, dtyz,
                            dxz + 2.0 * d_z_tz, SLACK)
        if prev_idx is not None and n == prev_idx + 1:
            lam_prev = float(schedule.lambda_at(prev_idx))
            if dxz > prev_dxz + 2.0 * lam_prev * d_z_tz + SLACK:
                report.fail({"inequality": "c-step", "n": prev_idx}, dxz,
                            prev_dxz + 2.0 * lam_prev * d_z_tz, SLACK)
        prev_idx, prev_dxz = n, dxz
    return report


def _bulk_fail(report: CheckReport, name: str, lhs: np.ndarray,
               rhs: np.ndarray, slack: float) -> None:
    bad = np.nonzero(lhs > rhs + slack)[0]
    for n in bad[:10]:
        report.fail({"inequality": name, "n": int(n)},
                    float(lhs[n]), float(rhs[n]), slack)
    if len(bad) > 10:
        report.suppressed_failures += len(bad) - 10


# ---------------------------------------------------------------------------
# rate soundness

def reference_point(config: ExperimentConfig) -> Point | None:
    if config.afp.fixed_point is not None:
        return config.afp.fixed_point
    return declared_fixed_point(config.space, config.mapping)


def trajectory_for(config: ExperimentConfig, steps: int, *,
                   dense: bool = False, record_ref: bool = False) -> Trajectory:
    return run_trajectory(
        config.space, config.mapping, config.start, config.schedule, steps,
        store_every=1 if dense else None,
        afp=config.afp,
        ref_point=reference_point(config),
        record_ref_distances=record_ref,
    )


def _covering_trajectory(config: ExperimentConfig, steps: int,
                         trajectory: Trajectory | None) -> Trajectory:
    if trajectory is not None and trajectory.steps >= steps:
        return trajectory
    return trajectory_for(config, steps)


def check_phi_soundness(config: ExperimentConfig, eps: float,
                        trajectory: Trajectory | None = None
                        ) -> tuple[RateReport, CheckReport]:
    """Verify the schedule witnesses, compute phi, then confirm on a simulated
    orbit that every residual on [phi, phi + 1000] falls below
    eps (1 + 1e-9).  Also records the first index whose residual drops below
    eps and the ratio phi / first_hit."""
    report = CheckReport(f"phi-soundness(eps={eps:g})")
    schedule, b = config.schedule, config.afp.b
    report.merge(verify_theta(schedule, n_max=1_000))
    delta0 = as_fraction(eps) / (8 * as_fraction(b))
    report.merge(verify_gamma(schedule, [delta0], n_max=1_000))
    if not report.passed:
        return RateReport(P=0, gamma0=0, phi=0), report

    ri = inputs_for(eps, config.space.modulus, b, schedule)
    if epsilon_shortcut(ri) == 0:
        rr = RateReport(P=0, gamma0=0, phi=0)
        report.note("eps exceeds the residual cap 2b; phi = 0")
    else:
        rr = compute_phi(ri)

    cap = min(HARD_STEP_CAP, config.caps.max_steps)
    if rr.phi > cap:
        report.mark_unverified(
            f"phi = {rr.phi} exceeds the step cap {cap}; soundness not simulated")
        return rr, report
    end = min(rr.phi + 1000, cap)
    traj = _covering_trajectory(config, end, trajectory)
    res = traj.residuals

    tol = eps * (1.0 + SLACK)
    window = res[rr.phi:end + 1]
    report.samples += len(window)
    bad = np.nonzero(window > tol)[0]
    for j in bad[:10]:
        report.fail({"n": int(rr.phi + j)}, float(window[j]), tol, SLACK * eps)
    if len(bad) > 10:
        report.suppressed_failures += len(bad) - 10
    boundary = int(np.count_nonzero(np.abs(window - eps) <= SLACK * eps))
    if boundary:
        report.note(f"{boundary} residual(s) within 1e-9 of the eps boundary")

    hits = np.nonzero(res[:end + 1] < eps)[0]
    if len(hits):
        rr.empirical_first_hit = int(hits[0])
        rr.tightness_ratio = rr.phi / max(1, rr.empirical_first_hit)
    return rr, report


def check_delta_witness(config: ExperimentConfig, eps: float, k_list,
                        trajectory: Trajectory | None = None
                        ) -> tuple[dict[int, int], CheckReport]:
    """For each k, compute delta(k) and confirm some index in [k, delta(k)]
    has residual below eps (1 + 1e-9)."""
    report = CheckReport(f"delta-witness(eps={eps:g})")
    ri = inputs_for(eps, config.space.modulus, config.afp.b, config.schedule)
    shortcut = epsilon_shortcut(ri)
    cap = min(HARD_STEP_CAP, config.caps.max_steps)

    deltas: dict[int, int] = {}
    for k in sorted(set(int(k) for k in k_list)):
        if shortcut == 0:
            deltas[k] = k
            continue
        try:
            deltas[k] = compute_delta(ri, k)
        except RateError as exc:
            report.fail({"k": k, "error": str(exc)}, 0.0, 0.0, 0.0)
    if not deltas:
        return deltas, report

    checkable = {k: d for k, d in deltas.items() if d <= cap}
    for k in sorted(set(deltas) - set(checkable)):
        report.mark_unverified(
            f"delta({k}) = {deltas[k]} exceeds the step cap {cap}")
    if not checkable:
        return deltas, report

    horizon = max(checkable.values())
    traj = _covering_trajectory(config, horizon, trajectory)
    res = traj.residuals
    tol = eps * (1.0 + SLACK)
    for k, d in sorted(checkable.items()):
        window = res[k:d + 1]
        report.samples += len(window)
        hits = np.nonzero(window < tol)[0]
        if len(hits) == 0:
            report.fail({"k": k, "delta": d}, float(window.min()), tol, SLACK * eps)
        else:
            report.note(f"k={k}: delta={d}, witness at n={k + int(hits[0])}")
    return deltas, report
