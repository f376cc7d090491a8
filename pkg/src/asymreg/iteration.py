"""Two-stage averaged iteration of a self-map T:

    y_n     = (1 - s_n) x_n (+) s_n T x_n
    x_{n+1} = (1 - lambda_n) x_n (+) lambda_n T y_n

with s_n = 0 giving the one-stage averaged scheme as a special case.  The
runner records the residuals d(x_n, T x_n) densely for every step, the inner
residuals d(x_n, T y_n) one per step, and the points themselves at a
configurable stride (dense storage of long orbits is the memory hog, the
residual arrays are cheap).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .geometry import Point, SpaceModel, check_point, from_raw, raw_ops, to_raw
from .mappings import ApproxFixedPointSpec, MappingSpec, raw_apply_fn
from .moduli import (
    SEQ_CONSTANT,
    SEQ_GEOMETRIC,
    Schedule,
    seq_value,
)

# Orbits longer than this stride their stored points automatically.
_DENSE_POINT_LIMIT = 100_000


class IterationError(ValueError):
    pass


@dataclass
class Trajectory:
    space: SpaceModel
    mapping: MappingSpec
    schedule: Schedule
    start: Point
    residuals: np.ndarray               # d(x_n, T x_n), n = 0 .. steps
    inner_residuals: np.ndarray         # d(x_n, T y_n), n = 0 .. steps-1
    stored_indices: np.ndarray          # indices n whose points were kept
    points: list[Point]                 # x_n at stored_indices
    inner_points: list[Point]           # y_n at stored_indices with n < steps
    afp: ApproxFixedPointSpec | None = None
    ref_point: Point | None = None
    ref_distances: np.ndarray | None = None        # d(x_n, z), dense
    inner_ref_distances: np.ndarray | None = None  # d(y_n, z), dense
    t_inner_ref_distances: np.ndarray | None = None  # d(T y_n, z), dense
    store_every: int = 1

    @property
    def steps(self) -> int:
        return len(self.residuals) - 1


def ishikawa_step(space: SpaceModel, m: MappingSpec, x: Point,
                  lam: float, s: float) -> tuple[Point, Point]:
    """One update: returns (x_next, y)."""
    check_point(space, x)
    if not 0.0 <= lam <= 1.0:
        raise IterationError(f"lambda = {lam!r} outside [0, 1]")
    if not 0.0 <= s <= 1.0:
        raise IterationError(f"s = {s!r} outside [0, 1]")
    f = raw_apply_fn(space, m)
    _, combine_fn = raw_ops(space)
    xr = to_raw(space, x)
    y = combine_fn(xr, f(xr), s)
    x_next = combine_fn(xr, f(y), lam)
    return from_raw(space, x_next), from_raw(space, y)


def _seq_scalar_plan(seq):
    """(constant_value, geometric_pair, fallback) for fast in-loop evaluation."""
    if seq.kind == SEQ_CONSTANT:
        return float(seq.param("value")), None, None
    if seq.kind == SEQ_GEOMETRIC:
        return None, (float(seq.param("c")), float(seq.param("q"))), None
    return None, None, lambda n: float(seq_value(seq, n))


def run_trajectory(space: SpaceModel, m: MappingSpec, x0: Point,
                   schedule: Schedule, steps: int, *,
                   store_every: int | None = None,
                   afp: ApproxFixedPointSpec | None = None,
                   ref_point: Point | None = None,
                   record_ref_distances: bool = False) -> Trajectory:
    """Run `steps` updates from x0, recording residuals densely.

    With `record_ref_distances` and a reference point z, also records
    d(x_n, z), d(y_n, z) and d(T y_n, z) densely, which lets the audit checks
    work on downsampled orbits.
    """
    check_point(space, x0)
    if steps < 0:
        raise IterationError("steps must be a natural")
    if store_every is None:
        store_every = 1 if steps <= _DENSE_POINT_LIMIT else steps // _DENSE_POINT_LIMIT + 1
    if store_every < 1:
        raise IterationError("store_every must be >= 1")

    dist_fn, combine_fn = raw_ops(space)
    f = raw_apply_fn(space, m)

    lam_const, lam_geo, lam_fn = _seq_scalar_plan(schedule.lambda_seq)
    s_const, s_geo, s_fn = _seq_scalar_plan(schedule.s_seq)
    lam_run, lam_ratio = lam_geo if lam_geo else (0.0, 0.0)
    s_run, s_ratio = s_geo if s_geo else (0.0, 0.0)

    residuals = np.empty(steps + 1)
    inner = np.empty(steps)
    record = record_ref_distances and ref_point is not None
    if record:
        z = to_raw(space, ref_point)
        ref_d = np.empty(steps + 1)
        y_ref_d = np.empty(steps)
        ty_ref_d = np.empty(steps)
    else:
        ref_d = y_ref_d = ty_ref_d = None

    stored: list[int] = []
    points: list[Point] = []
    inner_points: list[Point] = []

    x = to_raw(space, x0)
    for n in range(steps):
        tx = f(x)
        r = dist_fn(x, tx)
        residuals[n] = r

        if s_const is not None:
            s = s_const
        elif s_fn is None:
            s = s_run
            s_run *= s_ratio
        else:
            s = s_fn(n)

        if s == 0.0:
            y = x
            ty = tx
            inner[n] = r
        else:
            y = combine_fn(x, tx, s)
            ty = f(y)
            inner[n] = dist_fn(x, ty)

        if record:
            ref_d[n] = dist_fn(x, z)
            y_ref_d[n] = dist_fn(y, z)
            ty_ref_d[n] = dist_fn(ty, z)
        if n % store_every == 0:
            stored.append(n)
            points.append(from_raw(space, x))
            inner_points.append(from_raw(space, y))

        if lam_const is not None:
            lam = lam_const
        elif lam_fn is None:
            lam = lam_run
            lam_run *= lam_ratio
        else:
            lam = lam_fn(n)
        if lam != 0.0:
            x = combine_fn(x, ty, lam)

    tx = f(x)
    residuals[steps] = dist_fn(x, tx)
    if record:
        ref_d[steps] = dist_fn(x, z)
    if not stored or stored[-1] != steps:
        stored.append(steps)
        points.append(from_raw(space, x))

    return Trajectory(
        space=space, mapping=m, schedule=schedule, start=x0,
        residuals=residuals, inner_residuals=inner,
        stored_indices=np.asarray(stored, dtype=np.int64),
        points=points, inner_points=inner_points,
        afp=afp, ref_point=ref_point,
        ref_distances=ref_d, inner_ref_distances=y_ref_d,
        t_inner_ref_distances=ty_ref_d,
        store_every=store_every,
    )


def partial_sums_alpha(schedule: Schedule, n: int):
    """alpha_n = sum_{i=0..n} s_i (1 - lambda_i), exact Fraction."""
    if n < 0:
        raise IterationError("n must be a natural")
    total = 0
    for i in range(n + 1):
        total += schedule.s_at(i) * (1 - schedule.lambda_at(i))
    return total


def trajectory_to_csv(traj: Trajectory, target, report_every: int = 1) -> None:
    """Write rows n, residual, inner_residual (blank on the final row) and,
    when reference distances were recorded, dist_to_ref."""
    if report_every < 1:
        raise IterationError("report_every must be >= 1")
    own = isinstance(target, (str, bytes)) or hasattr(target, "__fspath__")
    handle = open(target, "w", newline="") if own else target
    try:
        writer = csv.writer(handle)
        header = ["n", "residual", "inner_residual"]
        with_ref = traj.ref_distances is not None
        if with_ref:
            header.append("dist_to_ref")
        writer.writerow(header)
        steps = traj.steps
        for n in range(0, steps + 1, report_every):
            row = [n, repr(float(traj.residuals[n])),
                   repr(float(traj.inner_residuals[n])) if n < steps else ""]
            if with_ref:
                row.append(repr(float(traj.ref_distances[n])))
            writer.writerow(row)
    finally:
        if own:
            handle.close()
