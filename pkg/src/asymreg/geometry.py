"""Geodesic space models with an explicit convex-combination map.

Two models ship: Euclidean n-space and the Poincare unit disk (curvature -1).
Both expose the same primitives: the metric `dist`, the geodesic convex
combination `combine(space, x, y, t)` returning the point a fraction t of the
way from x to y, and an attached uniform-convexity modulus descriptor.

Disk conventions, in complex notation: points z with |z|^2 < 1 - margin,
distance d(x, y) = 2 artanh |(y - x) / (1 - conj(x) y)|, and geodesics
computed by the Mobius translation taking x to the origin, a radial move,
and the inverse translation.  The distance from the origin to z is
2 artanh |z|, so the point at distance t*d(x, y) from x toward y sits at
radius tanh(t * artanh |u|) along the translated direction u.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .moduli import ModulusDescriptor, eval_eta, eta_quadratic

EUCLIDEAN = "Euclidean"
POINCARE_DISK = "PoincareDisk"

# Interior margin for disk points: |z|^2 < 1 - DISK_MARGIN.
DISK_MARGIN = 1e-12
# atanh argument guard; caps representable distances, far beyond sampling range.
_ATANH_GUARD = 1.0 - 1e-15


class GeometryError(ValueError):
    pass


class DimensionMismatchError(GeometryError):
    pass


class PointOutsideModelError(GeometryError):
    pass


class ParameterRangeError(GeometryError):
    pass


@dataclass(frozen=True)
class SpaceModel:
    kind: str
    dim: int
    modulus: ModulusDescriptor


@dataclass(frozen=True)
class Point:
    model: str
    coords: tuple[float, ...]


def euclidean(dim: int = 2, modulus: ModulusDescriptor | None = None) -> SpaceModel:
    if dim < 1:
        raise DimensionMismatchError("dimension must be >= 1")
    return SpaceModel(EUCLIDEAN, dim, modulus or eta_quadratic())


def poincare_disk(modulus: ModulusDescriptor | None = None) -> SpaceModel:
    return SpaceModel(POINCARE_DISK, 2, modulus or eta_quadratic())


def make_point(space: SpaceModel, coords) -> Point:
    coords = tuple(float(c) for c in coords)
    if len(coords) != space.dim:
        raise DimensionMismatchError(
            f"expected {space.dim} coordinates, got {len(coords)}")
    for c in coords:
        if not math.isfinite(c):
            raise PointOutsideModelError("coordinates must be finite")
    if space.kind == POINCARE_DISK:
        n2 = coords[0] * coords[0] + coords[1] * coords[1]
        if n2 >= 1.0 - DISK_MARGIN:
            raise PointOutsideModelError(
                f"point with |z|^2 = {n2!r} is not interior to the disk")
    return Point(space.kind, coords)


def check_point(space: SpaceModel, p: Point) -> None:
    if p.model != space.kind:
        raise DimensionMismatchError(
            f"point of model {p.model!r} used in {space.kind!r}")
    if len(p.coords) != space.dim:
        raise DimensionMismatchError(
            f"expected {space.dim} coordinates, got {len(p.coords)}")


# ---------------------------------------------------------------------------
# raw kernels.  The disk and the Euclidean plane use complex numbers, other
# Euclidean dimensions use plain tuples; the iteration loop works on these
# representations and wraps back into Point at recording boundaries.

def uses_complex(space: SpaceModel) -> bool:
    return space.kind == POINCARE_DISK or space.dim == 2


def to_raw(space: SpaceModel, p: Point):
    check_point(space, p)
    if uses_complex(space):
        return complex(p.coords[0], p.coords[1])
    return p.coords


def from_raw(space: SpaceModel, raw) -> Point:
    if uses_complex(space):
        return Point(space.kind, (raw.real, raw.imag))
    return Point(space.kind, tuple(raw))


def _clamp_disk(z: complex) -> complex:
    n2 = z.real * z.real + z.imag * z.imag
    if n2 >= 1.0 - DISK_MARGIN:
        return z * math.sqrt((1.0 - 2.0 * DISK_MARGIN) / n2)
    return z


def _p_dist(x: complex, y: complex) -> float:
    w = (y - x) / (1.0 - x.conjugate() * y)
    return 2.0 * math.atanh(min(abs(w), _ATANH_GUARD))


def _p_combine(x: complex, y: complex, t: float) -> complex:
    if t == 0.0 or x == y:
        return x
    if t == 1.0:
        return y
    u = (y - x) / (1.0 - x.conjugate() * y)
    ru = abs(u)
    if ru == 0.0:
        return x
    m = u * (math.tanh(t * math.atanh(min(ru, _ATANH_GUARD))) / ru)
    return _clamp_disk((x + m) / (1.0 + x.conjugate() * m))


def _e_dist_c(x: complex, y: complex) -> float:
    return abs(x - y)


def _e_combine_c(x: complex, y: complex, t: float) -> complex:
    return (1.0 - t) * x + t * y


def _e_dist_t(x: tuple, y: tuple) -> float:
    return math.dist(x, y)


def _e_combine_t(x: tuple, y: tuple, t: float) -> tuple:
    s = 1.0 - t
    return tuple(s * a + t * b for a, b in zip(x, y))


def raw_ops(space: SpaceModel):
    """(dist_fn, combine_fn) on the raw representation of the model."""
    if space.kind == POINCARE_DISK:
        return _p_dist, _p_combine
    if space.dim == 2:
        return _e_dist_c, _e_combine_c
    return _e_dist_t, _e_combine_t


# ---------------------------------------------------------------------------
# public operations

def dist(space: SpaceModel, x: Point, y: Point) -> float:
    check_point(space, x)
    check_point(space, y)
    if space.kind == POINCARE_DISK:
        return _p_dist(complex(*x.coords), complex(*y.coords))
    return math.dist(x.coords, y.coords)


def combine(space: SpaceModel, x: Point, y: Point, lam: float) -> Point:
    """The point (1 - lam) x (+) lam y on the geodesic from x to y."""
    check_point(space, x)
    check_point(space, y)
    if not 0.0 <= lam <= 1.0:
        raise ParameterRangeError(f"lambda = {lam!r} outside [0, 1]")
    if space.kind == POINCARE_DISK:
        z = _p_combine(complex(*x.coords), complex(*y.coords), lam)
        return Point(space.kind, (z.real, z.imag))
    return Point(space.kind, _e_combine_t(x.coords, y.coords, lam))


def uc_modulus_eval(space: SpaceModel, r: float, eps: float) -> float:
    """Evaluate the model's uniform-convexity modulus eta(r, eps)."""
    return eval_eta(space.modulus, r, eps)
