"""Euclidean ambient space: distances, segments, straight-line rays.

R^d is the one ambient space shipped. It is complete, separable,
non-compact, locally compact, non-branching, and a length space, which is
everything the ray, co-ray, and uniqueness machinery assumes, and its
geodesics are straight segments with closed-form evaluation. Another
ambient space would have to supply these same primitives (distance,
interpolate, ray_point); none does.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .measures import as_point


def distance(x, y) -> float:
    """Euclidean distance between two points."""
    px, py = as_point(x), as_point(y)
    if px.size != py.size:
        raise DimensionMismatchError(f"points of dimension {px.size} and {py.size}")
    return float(np.linalg.norm(px - py))


def interpolate(x, y, t: float) -> np.ndarray:
    """Point at parameter t on the constant-speed segment from x to y.

    Returns (1 - t) x + t y, so consecutive parameters s, t satisfy
    d(result_s, result_t) = |s - t| d(x, y).
    """
    px, py = as_point(x), as_point(y)
    if px.size != py.size:
        raise DimensionMismatchError(f"points of dimension {px.size} and {py.size}")
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"segment parameter must lie in [0, 1], got {t}")
    if t == 0.0:
        return px.copy()
    if t == 1.0:
        return py.copy()
    return (1.0 - t) * px + t * py


@dataclass(frozen=True, eq=False)
class AmbientRay:
    """Straight ray t -> origin + t * velocity, t >= 0.

    The velocity norm is the ray's speed: d(gamma_s, gamma_t) equals
    |t - s| * speed for all s, t >= 0, exactly in R^d.
    """

    origin: np.ndarray
    velocity: np.ndarray

    def __post_init__(self):
        origin = as_point(self.origin)
        velocity = as_point(self.velocity)
        if origin.size != velocity.size:
            raise DimensionMismatchError(
                f"origin has dimension {origin.size}, velocity {velocity.size}"
            )
        origin.setflags(write=False)
        velocity.setflags(write=False)
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "velocity", velocity)

    @property
    def speed(self) -> float:
        return float(np.linalg.norm(self.velocity))

    @property
    def dim(self) -> int:
        return self.origin.size


def ray_point(ray: AmbientRay, t: float) -> np.ndarray:
    """Position of a ray at time t >= 0."""
    t = float(t)
    if t < 0.0:
        raise ValueError(f"ray time must be nonnegative, got {t}")
    if t == 0.0:
        return ray.origin.copy()
    return ray.origin + t * ray.velocity


def polyline_length(points) -> float:
    """Total length of the polyline through the given points, in order.

    For polylines the supremum over partitions defining curve length is
    attained at the vertex partition, so the sum of consecutive segment
    lengths is exact.
    """
    pts = [as_point(p) for p in points]
    if len(pts) < 2:
        raise ValueError("a polyline needs at least two points")
    d = pts[0].size
    for p in pts[1:]:
        if p.size != d:
            raise DimensionMismatchError("polyline points must share one dimension")
    return float(sum(np.linalg.norm(b - a) for a, b in zip(pts, pts[1:])))
