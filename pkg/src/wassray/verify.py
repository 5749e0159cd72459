"""Seeded verification suites behind the ``verify`` CLI subcommand.

Each check exercises one property the library promises: solver exactness
against the exhaustive oracle, metric axioms, the tail-mass bound, ray
validation including a known counterexample, monotone convergence and the
closed forms of the Busemann function, and the co-ray construction with
its gradient, subray, subadditivity, and viscosity checks. Checks are
pure functions of the seed, and reports are formatted with fixed float
precision, so one seed always produces one byte-identical report.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .busemann import busemann_value, lipschitz_check
from .coray import (
    busemann_subadditivity_check,
    construct_coray,
    coray_gradient_check,
    subray_uniqueness_check,
    viscosity_check,
)
from .measures import DiscreteMeasure, dirac, same_measure, uniform_measure
from .ot import brute_force_ot, solve_ot, tail_mass_bound_check, wasserstein_distance
from .paths import (
    RayMeasure,
    glue,
    lift_geodesic,
    make_dirac_ray,
    make_translation_ray,
    ray_section,
    restrict_to_geodesic,
    section,
    validate_ray,
)

SUITE_NAMES = ("ot", "ray", "busemann", "coray")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _random_measure(rng, max_atoms=4, dim=2, scale=2.0) -> DiscreteMeasure:
    n = int(rng.integers(1, max_atoms + 1))
    atoms = rng.normal(scale=scale, size=(n, dim))
    weights = rng.random(n) + 0.1
    return DiscreteMeasure(atoms, weights / weights.sum())


def _random_uniform_pair(rng, max_atoms=6, max_dim=3):
    n = int(rng.integers(2, max_atoms + 1))
    d = int(rng.integers(1, max_dim + 1))
    return (
        uniform_measure(rng.normal(size=(n, d))),
        uniform_measure(rng.normal(size=(n, d))),
    )


# ---------------------------------------------------------------------------
# transport checks
# ---------------------------------------------------------------------------


def ot_checks(seed: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []

    exponents = (1.5, 2.0, 3.0)
    couplings = []
    worst_gap = 0.0
    worst_marginal = 0.0
    for trial in range(100):
        mu, nu = _random_uniform_pair(rng)
        p = exponents[trial % 3]
        plan = solve_ot(mu, nu, p)
        oracle = brute_force_ot(mu, nu, p)
        worst_gap = max(worst_gap, abs(plan.cost - oracle.cost) / oracle.cost)
        row = np.bincount(plan.left, weights=plan.masses, minlength=len(mu))
        col = np.bincount(plan.right, weights=plan.masses, minlength=len(nu))
        worst_marginal = max(
            worst_marginal,
            float(np.max(np.abs(row - mu.weights))),
            float(np.max(np.abs(col - nu.weights))),
        )
        couplings.append(plan)
    results.append(
        CheckResult(
            "exact solver matches the exhaustive permutation oracle",
            worst_gap <= 1e-8,
            f"max relative gap {worst_gap:.6e} over 100 instances (limit 1e-08)",
        )
    )
    results.append(
        CheckResult(
            "returned plans reproduce both marginals",
            worst_marginal <= 1e-9,
            f"max per-atom residual {worst_marginal:.6e} (limit 1e-09)",
        )
    )

    worst_sym = 0.0
    worst_triangle = 0.0
    for _ in range(50):
        a = _random_measure(rng)
        b = _random_measure(rng)
        c = _random_measure(rng)
        ab = wasserstein_distance(a, b, 2.0)
        ba = wasserstein_distance(b, a, 2.0)
        ac = wasserstein_distance(a, c, 2.0)
        bc = wasserstein_distance(b, c, 2.0)
        worst_sym = max(worst_sym, abs(ab - ba))
        worst_triangle = max(worst_triangle, ac - (ab + bc))
    results.append(
        CheckResult(
            "distance is symmetric",
            worst_sym <= 1e-10,
            f"max asymmetry {worst_sym:.6e} over 50 pairs (limit 1e-10)",
        )
    )
    results.append(
        CheckResult(
            "triangle inequality holds",
            worst_triangle <= 1e-7,
            f"max violation {worst_triangle:.6e} over 50 triples (limit 1e-07)",
        )
    )

    tail_ok = True
    worst_excess = 0.0
    for plan in couplings:
        if plan.cost <= 0.0:
            continue
        for radius in (plan.cost / 2.0, plan.cost, 2.0 * plan.cost):
            report = tail_mass_bound_check(plan, radius)
            tail_ok = tail_ok and report.passed
            worst_excess = max(worst_excess, report.tail_mass - report.bound)
    results.append(
        CheckResult(
            "tail mass beyond radius R stays under (cost/R)**p",
            tail_ok,
            f"max excess {worst_excess:.6e} across three radii per plan",
        )
    )

    mu, nu = _random_uniform_pair(rng)
    first = solve_ot(mu, nu, 2.0)
    second = solve_ot(mu, nu, 2.0)
    identical = (
        np.array_equal(first.left, second.left)
        and np.array_equal(first.right, second.right)
        and np.array_equal(first.masses, second.masses)
        and first.cost == second.cost
    )
    results.append(
        CheckResult(
            "repeated solves are bit-identical",
            identical,
            "two solves of one instance compared entry by entry",
        )
    )
    return results


# ---------------------------------------------------------------------------
# ray and lift checks
# ---------------------------------------------------------------------------


def ray_checks(seed: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []

    report = validate_ray(make_dirac_ray((0.0, 0.0), (1.0, 0.0)))
    results.append(
        CheckResult(
            "single-atom ray passes pair-coupling validation",
            report.passed,
            f"max relative gap {max(report.relative_gaps):.6e}",
        )
    )

    translation_ok = True
    worst = 0.0
    for _ in range(5):
        mu0 = _random_measure(rng, max_atoms=4)
        v = rng.normal(size=2)
        v /= np.linalg.norm(v)
        report = validate_ray(make_translation_ray(mu0, v, p=2.0))
        translation_ok = translation_ok and report.passed
        worst = max(worst, max(report.relative_gaps), max(report.speed_residuals))
    results.append(
        CheckResult(
            "translation rays pass pair-coupling validation",
            translation_ok,
            f"worst residual {worst:.6e} over 5 random instances",
        )
    )

    crossing = RayMeasure(
        [[0.0], [10.0]], [[1.0], [-1.0]], [0.5, 0.5], 2.0
    )
    report = validate_ray(crossing)
    gap = max(report.gaps)
    results.append(
        CheckResult(
            "crossing ray family is rejected with a positive gap",
            (not report.passed) and gap > 0.0,
            f"largest induced-minus-optimal gap {gap:.6e}",
        )
    )

    worst_speed = 0.0
    lifts = []
    for _ in range(10):
        mu = _random_measure(rng, max_atoms=4)
        nu = _random_measure(rng, max_atoms=4)
        lift = lift_geodesic(solve_ot(mu, nu, 2.0))
        lifts.append(lift)
        for _ in range(5):
            s, t = np.sort(rng.uniform(0.0, lift.length, size=2))
            gap = abs(
                wasserstein_distance(section(lift, s), section(lift, t), 2.0) - (t - s)
            )
            worst_speed = max(worst_speed, gap)
    results.append(
        CheckResult(
            "lifted geodesics run at unit speed between sections",
            worst_speed <= 1e-6,
            f"max |distance - |s-t|| = {worst_speed:.6e} (limit 1e-06)",
        )
    )

    clamp_ok = True
    for lift in lifts[:3]:
        at_end = section(lift, lift.length)
        for factor in (1.0, 1.5, 10.0):
            later = section(lift, lift.length * factor + 1.0)
            clamp_ok = clamp_ok and same_measure(later, at_end, weight_atol=0.0)
    results.append(
        CheckResult(
            "sections past the endpoint clamp there exactly",
            clamp_ok,
            "three lifts evaluated at several times past their length",
        )
    )

    glue_ok = True
    worst_glue = 0.0
    for _ in range(5):
        mu = _random_measure(rng, max_atoms=3)
        nu = _random_measure(rng, max_atoms=3)
        lam = _random_measure(rng, max_atoms=3)
        alpha = lift_geodesic(solve_ot(mu, nu, 2.0))
        beta = solve_ot(section(alpha, alpha.length), lam, 2.0)
        joint = glue(alpha, beta)
        seg_mass = np.zeros(len(alpha.weights))
        for i, _, m in joint:
            seg_mass[i] += m
        worst_glue = max(worst_glue, float(np.max(np.abs(seg_mass - alpha.weights))))
        glue_ok = glue_ok and worst_glue <= 1e-9
    results.append(
        CheckResult(
            "glued joints project back onto the lift weights",
            glue_ok,
            f"max projection residual {worst_glue:.6e} (limit 1e-09)",
        )
    )

    mu0 = _random_measure(rng, max_atoms=3)
    v = rng.normal(size=2)
    v /= np.linalg.norm(v)
    ray = make_translation_ray(mu0, v, p=2.0)
    piece = restrict_to_geodesic(ray, 1.0, 3.0)
    endpoint_cost = wasserstein_distance(section(piece, 0.0), section(piece, piece.length), 2.0)
    restriction_ok = abs(piece.length - 2.0 * ray.speed) <= 1e-9 and abs(
        endpoint_cost - piece.length
    ) <= 1e-8 * max(1.0, piece.length)
    results.append(
        CheckResult(
            "ray restrictions are geodesic lifts between their sections",
            restriction_ok,
            f"length {piece.length:.6e}, endpoint transport {endpoint_cost:.6e}",
        )
    )
    return results


# ---------------------------------------------------------------------------
# Busemann checks
# ---------------------------------------------------------------------------


def _schedule_monotone(estimate) -> bool:
    values = [v for _, v in estimate.schedule]
    return all(b <= a + 1e-9 for a, b in zip(values, values[1:])) and all(
        v >= estimate.lower_bound - 1e-9 for v in values
    )


def busemann_checks(seed: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []
    ray = make_dirac_ray((0.0, 0.0), (1.0, 0.0))

    estimates = []
    worst_closed_form = 0.0
    for _ in range(10):
        a, b = rng.uniform(-3.0, 3.0, size=2)
        est = busemann_value(ray, dirac((a, b)))
        estimates.append(est)
        worst_closed_form = max(worst_closed_form, abs(est.value - (-a)))
    results.append(
        CheckResult(
            "single-atom values match the Euclidean closed form",
            worst_closed_form <= 1e-4,
            f"max |value + a| = {worst_closed_form:.6e} over 10 probes (limit 1e-04)",
        )
    )

    worst_along = 0.0
    for s in (0.0, 1.0, 2.0, 5.0):
        est = busemann_value(ray, ray_section(ray, s))
        estimates.append(est)
        worst_along = max(worst_along, abs(est.value - (-s)))
    results.append(
        CheckResult(
            "values along the ray itself decrease at unit rate",
            worst_along <= 1e-10,
            f"max |value + s| = {worst_along:.6e} for s in 0,1,2,5 (limit 1e-10)",
        )
    )

    mu0 = _random_measure(rng, max_atoms=3)
    translation = make_translation_ray(mu0, (0.0, 1.0), p=2.0)
    for _ in range(3):
        estimates.append(busemann_value(translation, _random_measure(rng)))
    monotone_ok = all(_schedule_monotone(est) for est in estimates)
    results.append(
        CheckResult(
            "every recorded schedule is non-increasing and above its lower bound",
            monotone_ok,
            f"{len(estimates)} evaluation schedules inspected",
        )
    )

    lipschitz_ok = True
    worst_margin = -np.inf
    for _ in range(20):
        report = lipschitz_check(ray, _random_measure(rng), _random_measure(rng))
        lipschitz_ok = lipschitz_ok and report.passed
        worst_margin = max(worst_margin, report.difference - report.distance)
    results.append(
        CheckResult(
            "value differences stay under the distance between arguments",
            lipschitz_ok,
            f"max difference minus distance {worst_margin:.6e} over 20 pairs",
        )
    )
    return results


# ---------------------------------------------------------------------------
# co-ray checks
# ---------------------------------------------------------------------------


def coray_checks(seed: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []

    mu_line = make_dirac_ray((0.0, 0.0), (1.0, 0.0))
    collinear = construct_coray(mu_line, dirac((0.0, 0.0)))
    collinear_ok = (
        collinear.converged
        and np.allclose(collinear.ray.origins, [[0.0, 0.0]], atol=1e-12)
        and np.allclose(collinear.ray.velocities, [[1.0, 0.0]], atol=1e-12)
    )
    results.append(
        CheckResult(
            "co-ray from the ray's own origin is the ray itself",
            collinear_ok,
            f"final diagnostic {collinear.diagnostics[-1]:.6e}",
        )
    )

    parallel = construct_coray(mu_line, dirac((0.0, 1.0)))
    worst_parallel = max(
        wasserstein_distance(ray_section(parallel.ray, t), dirac((t, 1.0)), 2.0)
        for t in (0.0, 1.0, 2.0, 4.0)
    )
    results.append(
        CheckResult(
            "co-ray from an offset point is the parallel ray",
            parallel.converged and worst_parallel <= 1e-3,
            f"max section gap to the parallel ray {worst_parallel:.6e} (limit 1e-03)",
        )
    )

    # diagnostics decay like (start offset)/t_n, so spread-out start measures
    # need targets beyond the default schedule to stall below tolerance
    long_schedule = tuple(2.0**n for n in range(1, 21))
    nu0 = _random_measure(rng, max_atoms=3)
    mu_translation = make_translation_ray(_random_measure(rng, max_atoms=3), (1.0, 0.0))
    built = construct_coray(mu_translation, nu0, schedule=long_schedule)
    speed_gap = abs(built.ray.speed - 1.0)
    candidate_report = validate_ray(built.ray)
    results.append(
        CheckResult(
            "constructed co-ray is unit speed and validates as a ray",
            built.converged and speed_gap <= 1e-6 and candidate_report.passed,
            f"speed gap {speed_gap:.6e}, max pair gap "
            f"{max(candidate_report.relative_gaps):.6e}",
        )
    )

    ratio_ok = True
    worst_ratio = 0.0
    for result in (collinear, parallel, built):
        for t_n, length, offset in zip(
            result.schedule, result.lengths, result.start_offsets
        ):
            excess = abs(length / t_n - 1.0) - (offset / t_n + 1e-9)
            worst_ratio = max(worst_ratio, excess)
            ratio_ok = ratio_ok and excess <= 0.0
    results.append(
        CheckResult(
            "geodesic lengths track target times within the start offset",
            ratio_ok,
            f"max bound excess {worst_ratio:.6e} over all construction steps",
        )
    )

    gradient_ok = True
    worst_gradient = 0.0
    for mu, result in ((mu_line, parallel), (mu_translation, built)):
        report = coray_gradient_check(mu, result.ray)
        gradient_ok = gradient_ok and report.passed
        worst_gradient = max(worst_gradient, max(report.residuals))
    results.append(
        CheckResult(
            "Busemann values fall at unit rate along constructed co-rays",
            gradient_ok,
            f"max gradient residual {worst_gradient:.6e} (limit 1e-03 plus slack)",
        )
    )

    subray_ok = True
    worst_subray = 0.0
    for mu, result, sched in (
        (mu_line, parallel, None),
        (mu_translation, built, long_schedule),
    ):
        report = subray_uniqueness_check(mu, result.ray, tau=1.0, schedule=sched)
        subray_ok = subray_ok and report.passed
        worst_subray = max(worst_subray, report.max_gap)
    results.append(
        CheckResult(
            "rebuilding from a later section reproduces the shifted co-ray",
            subray_ok,
            f"max section gap {worst_subray:.6e} (limit 1e-03)",
        )
    )

    subadd_ok = True
    worst_subadd = 0.0
    for _ in range(5):
        lam = _random_measure(rng, max_atoms=3)
        report = busemann_subadditivity_check(mu_line, parallel.ray, lam)
        subadd_ok = subadd_ok and report.passed
        worst_subadd = max(worst_subadd, -report.margin)
    results.append(
        CheckResult(
            "Busemann values are subadditive across the co-ray relation",
            subadd_ok,
            f"max inequality deficit {worst_subadd:.6e} over 5 probes",
        )
    )

    probes = [_random_measure(rng, max_atoms=3) for _ in range(10)]
    report = viscosity_check(mu_line, dirac((0.0, 1.0)), probes)
    results.append(
        CheckResult(
            "value solves the metric eikonal fixed point",
            report.passed,
            f"min probe margin {report.min_margin:.6e}, equality residual "
            f"{report.equality_residual:.6e}",
        )
    )

    rebuilt = construct_coray(mu_translation, nu0, schedule=long_schedule)
    deterministic = (
        np.array_equal(rebuilt.ray.origins, built.ray.origins)
        and np.array_equal(rebuilt.ray.velocities, built.ray.velocities)
        and np.array_equal(rebuilt.ray.weights, built.ray.weights)
        and rebuilt.diagnostics == built.diagnostics
    )
    results.append(
        CheckResult(
            "construction is deterministic",
            deterministic,
            "two runs on identical inputs compared field by field",
        )
    )
    return results


# ---------------------------------------------------------------------------
# suite driver
# ---------------------------------------------------------------------------

_SUITES = {
    "ot": ot_checks,
    "ray": ray_checks,
    "busemann": busemann_checks,
    "coray": coray_checks,
}


def run_suite(name: str, seed: int) -> list[CheckResult]:
    """Run one named suite (or ``all``) with a fixed seed."""
    if name == "all":
        results = []
        for suite in SUITE_NAMES:
            results.extend(_SUITES[suite](seed))
        return results
    if name not in _SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {SUITE_NAMES + ('all',)}")
    return _SUITES[name](seed)


def format_report(name: str, seed: int, results: list[CheckResult]) -> str:
    failed = sum(1 for r in results if not r.passed)
    lines = [
        "wassray verification report",
        f"suite: {name}",
        f"seed: {seed}",
        f"checks: {len(results)} run, {failed} failed",
        f"result: {'PASS' if failed == 0 else 'FAIL'}",
    ]
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'} {r.name} | {r.detail}")
    return "\n".join(lines) + "\n"
