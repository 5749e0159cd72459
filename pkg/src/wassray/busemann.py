"""Busemann function of a unit-speed ray of measures.

For a unit-speed ray (mu_t) and a measure nu, the truncation
W_p(nu, mu_t) - t is non-increasing in t and bounded below by
-W_p(nu, mu_0), both by the triangle inequality, so its limit exists and
every finite-t value is an upper bound for it. Evaluation doubles t until
the decrement stalls. No convergence rate is available for the limit, so
the stopping rule is a heuristic: the returned estimate is explicitly an
upper bound, bracketed by [lower_bound, value], and the full schedule is
recorded so callers can judge the truncation themselves.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MonotonicityError
from .measures import DiscreteMeasure
from .ot import wasserstein_distance
from .paths import RayMeasure, ray_section, require_unit_speed

DEFAULT_T0 = 1.0
DEFAULT_TOL = 1e-6
DEFAULT_MAX_DOUBLINGS = 24

# Monotonicity holds exactly in theory; a violation beyond this signals a
# defective transport solve rather than a property of the inputs.
MONOTONE_ATOL = 1e-6
LOWER_BOUND_ATOL = 1e-9


@dataclass(frozen=True)
class BusemannEstimate:
    """Truncated Busemann value with its convergence evidence.

    ``value`` is the truncation at ``t_final`` and is an upper bound for
    the limit; ``lower_bound`` is -W_p(nu, mu_0). ``schedule`` records
    every (t, truncation) pair visited, non-increasing in t.
    """

    value: float
    t_final: float
    last_decrement: float
    lower_bound: float
    schedule: tuple[tuple[float, float], ...]
    converged: bool


def _truncation(ray: RayMeasure, nu: DiscreteMeasure, t: float) -> float:
    return wasserstein_distance(nu, ray_section(ray, t), ray.p) - t


def busemann_value(
    ray: RayMeasure,
    nu: DiscreteMeasure,
    t0: float = DEFAULT_T0,
    tol: float = DEFAULT_TOL,
    max_doublings: int = DEFAULT_MAX_DOUBLINGS,
) -> BusemannEstimate:
    """Evaluate the Busemann function of ``ray`` at ``nu`` by doubling.

    Evaluates the truncation on t0, 2 t0, 4 t0, ... and stops once the
    decrement between consecutive values drops below ``tol`` (converged)
    or after ``max_doublings`` doublings (schedule exhausted). Raises
    ``MonotonicityError`` if the recorded sequence increases by more than
    1e-6 or falls below its lower bound: both are provably impossible, so
    either indicates a solver defect.
    """
    require_unit_speed(ray, "the Busemann function")
    t0 = float(t0)
    tol = float(tol)
    if t0 <= 0.0:
        raise ValueError(f"initial time must be positive, got {t0}")
    if tol <= 0.0:
        raise ValueError(f"stopping tolerance must be positive, got {tol}")
    if max_doublings < 1:
        raise ValueError(f"need at least one doubling, got {max_doublings}")
    lower_bound = -wasserstein_distance(nu, ray_section(ray, 0.0), ray.p)
    schedule: list[tuple[float, float]] = []
    previous = None
    decrement = float("inf")
    converged = False
    for j in range(max_doublings + 1):
        t = t0 * 2.0**j
        value = _truncation(ray, nu, t)
        schedule.append((t, value))
        if previous is not None:
            decrement = previous - value
            if decrement < -MONOTONE_ATOL:
                raise MonotonicityError(
                    f"truncation increased by {-decrement:.3e} at t={t}; "
                    "it is provably non-increasing"
                )
            if decrement < tol:
                converged = True
                break
        previous = value
    t_final, value = schedule[-1]
    if value < lower_bound - LOWER_BOUND_ATOL:
        raise MonotonicityError(
            f"truncation {value!r} fell below its lower bound {lower_bound!r}"
        )
    return BusemannEstimate(
        value=value,
        t_final=t_final,
        last_decrement=max(decrement, 0.0),
        lower_bound=lower_bound,
        schedule=tuple(schedule),
        converged=converged,
    )


@dataclass(frozen=True)
class LipschitzReport:
    """One-Lipschitz check of the Busemann function on a measure pair."""

    value1: float
    value2: float
    difference: float
    distance: float
    t_eval: float
    slack: float
    passed: bool


def lipschitz_check(
    ray: RayMeasure,
    nu1: DiscreteMeasure,
    nu2: DiscreteMeasure,
    tol: float = DEFAULT_TOL,
) -> LipschitzReport:
    """Check |b(nu1) - b(nu2)| <= W_p(nu1, nu2) up to estimation slack.

    Both values are compared at one matched evaluation time (the larger of
    the two final times), where the inequality holds exactly by the
    triangle inequality; the slack only has to absorb solver noise and the
    recorded last decrements.
    """
    est1 = busemann_value(ray, nu1, tol=tol)
    est2 = busemann_value(ray, nu2, tol=tol)
    t_eval = max(est1.t_final, est2.t_final)
    value1 = est1.value if est1.t_final == t_eval else _truncation(ray, nu1, t_eval)
    value2 = est2.value if est2.t_final == t_eval else _truncation(ray, nu2, t_eval)
    dist = wasserstein_distance(nu1, nu2, ray.p)
    slack = max(est1.last_decrement, est2.last_decrement) + 1e-9
    difference = abs(value1 - value2)
    return LipschitzReport(
        value1=value1,
        value2=value2,
        difference=difference,
        distance=dist,
        t_eval=t_eval,
        slack=slack,
        passed=difference <= dist + 2.0 * slack,
    )
