"""Acceptance suite: one test and one printed pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import time

import numpy as np
import pytest

import wassray as w

from conftest import random_measure, random_uniform_pair

LONG_SCHEDULE = tuple(2.0**n for n in range(1, 21))


def criterion(num, label, ok, detail):
    print(f"criterion {num:02d} {label}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {num} {label}: {detail}"


# ---------------------------------------------------------------------------
# shared computations
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def oracle_instances():
    rng = np.random.default_rng(101)
    exponents = (1.5, 2.0, 3.0)
    started = time.perf_counter()
    plans = []
    worst = 0.0
    for trial in range(100):
        n = int(rng.integers(2, 7))
        d = int(rng.integers(1, 4))
        mu, nu = random_uniform_pair(rng, n, d)
        p = exponents[trial % 3]
        plan = w.solve_ot(mu, nu, p)
        oracle = w.brute_force_ot(mu, nu, p)
        worst = max(worst, abs(plan.cost - oracle.cost) / oracle.cost)
        plans.append(plan)
    return {"plans": plans, "worst": worst, "elapsed": time.perf_counter() - started}


@pytest.fixture(scope="module")
def metric_triples():
    rng = np.random.default_rng(202)
    plans = []
    worst_sym = 0.0
    worst_triangle = -np.inf
    for _ in range(200):
        a = random_measure(rng, max_atoms=4)
        b = random_measure(rng, max_atoms=4)
        c = random_measure(rng, max_atoms=4)
        ab = w.solve_ot(a, b, 2.0)
        ba = w.solve_ot(b, a, 2.0)
        ac = w.solve_ot(a, c, 2.0)
        bc = w.solve_ot(b, c, 2.0)
        worst_sym = max(worst_sym, abs(ab.cost - ba.cost))
        worst_triangle = max(worst_triangle, ac.cost - (ab.cost + bc.cost))
        plans.extend([ab, ac, bc])
    return {"plans": plans, "worst_sym": worst_sym, "worst_triangle": worst_triangle}


@pytest.fixture(scope="module")
def lifted_geodesics():
    rng = np.random.default_rng(303)
    plans = []
    worst = 0.0
    for _ in range(50):
        mu = random_measure(rng, max_atoms=4)
        nu = random_measure(rng, max_atoms=4)
        plan = w.solve_ot(mu, nu, 2.0)
        plans.append(plan)
        lift = w.lift_geodesic(plan)
        for _ in range(10):
            s, t = np.sort(rng.uniform(0.0, lift.length, size=2))
            dist = w.wasserstein_distance(w.section(lift, s), w.section(lift, t), 2.0)
            worst = max(worst, abs(dist - (t - s)))
    return {"plans": plans, "worst": worst}


@pytest.fixture(scope="module")
def line_ray():
    return w.make_dirac_ray((0.0, 0.0), (1.0, 0.0))


@pytest.fixture(scope="module")
def busemann_runs(line_ray):
    rng = np.random.default_rng(707)
    started = time.perf_counter()
    closed_form = []
    for _ in range(10):
        a, b = rng.uniform(-3.0, 3.0, size=2)
        est = w.busemann_value(line_ray, w.dirac((a, b)), max_doublings=24)
        closed_form.append((a, b, est))
    closed_form_elapsed = time.perf_counter() - started
    along_ray = {
        s: w.busemann_value(line_ray, w.ray_section(line_ray, s))
        for s in (0.0, 1.0, 2.0, 5.0)
    }
    return {
        "closed_form": closed_form,
        "closed_form_elapsed": closed_form_elapsed,
        "along_ray": along_ray,
    }


@pytest.fixture(scope="module")
def coray_a(line_ray):
    started = time.perf_counter()
    result = w.construct_coray(line_ray, w.dirac((0.0, 1.0)))
    return {"mu": line_ray, "result": result, "elapsed": time.perf_counter() - started}


@pytest.fixture(scope="module")
def coray_b():
    rng = np.random.default_rng(1010)
    mu = w.make_translation_ray(random_measure(rng, max_atoms=3), (1.0, 0.0))
    nu0 = w.DiscreteMeasure(rng.normal(scale=2.0, size=(3, 2)), np.full(3, 1.0 / 3.0))
    started = time.perf_counter()
    result = w.construct_coray(mu, nu0, schedule=LONG_SCHEDULE)
    return {
        "mu": mu,
        "nu0": nu0,
        "result": result,
        "elapsed": time.perf_counter() - started,
    }


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def test_criterion_01_oracle_equivalence(oracle_instances):
    ok = oracle_instances["worst"] <= 1e-8 and oracle_instances["elapsed"] < 5.0
    criterion(
        1,
        "solver matches exhaustive oracle on 100 seeded instances",
        ok,
        f"max relative gap {oracle_instances['worst']:.3e}, "
        f"elapsed {oracle_instances['elapsed']:.2f}s",
    )


def test_criterion_02_metric_axioms(metric_triples):
    ok = metric_triples["worst_sym"] <= 1e-10 and metric_triples["worst_triangle"] <= 1e-7
    criterion(
        2,
        "symmetry and triangle inequality on 200 random triples",
        ok,
        f"max asymmetry {metric_triples['worst_sym']:.3e}, "
        f"max triangle violation {metric_triples['worst_triangle']:.3e}",
    )


def test_criterion_03_geodesic_speed_identity(lifted_geodesics):
    ok = lifted_geodesics["worst"] <= 1e-6
    criterion(
        3,
        "lifted geodesics run at unit speed between sampled sections",
        ok,
        f"max |distance - |s-t|| = {lifted_geodesics['worst']:.3e}",
    )


def test_criterion_04_tail_mass_bound(oracle_instances, metric_triples, lifted_geodesics):
    checked = 0
    ok = True
    for plan in (
        oracle_instances["plans"] + metric_triples["plans"] + lifted_geodesics["plans"]
    ):
        if plan.cost == 0.0:
            continue
        for radius in (plan.cost / 2.0, plan.cost, 2.0 * plan.cost):
            ok = ok and w.tail_mass_bound_check(plan, radius).passed
            checked += 1
    criterion(
        4,
        "tail mass bound holds for every optimal plan from criteria 1-3",
        ok,
        f"{checked} (plan, radius) pairs checked",
    )


def test_criterion_05_ray_validation(line_ray):
    dirac_report = w.validate_ray(line_ray)
    rng = np.random.default_rng(505)
    translation_report = w.validate_ray(
        w.make_translation_ray(random_measure(rng, max_atoms=3), rng.normal(size=2))
    )
    crossing = w.RayMeasure([[0.0], [10.0]], [[1.0], [-1.0]], [0.5, 0.5], 2.0)
    crossing_report = w.validate_ray(crossing)
    ok = (
        dirac_report.passed
        and translation_report.passed
        and not crossing_report.passed
        and max(crossing_report.gaps) > 0.0
    )
    criterion(
        5,
        "ray validation accepts genuine rays and rejects the crossing family",
        ok,
        f"counterexample gap {max(crossing_report.gaps):.3e}",
    )


def test_criterion_06_busemann_monotonicity(busemann_runs):
    estimates = [est for _, _, est in busemann_runs["closed_form"]]
    estimates.extend(busemann_runs["along_ray"].values())
    ok = True
    for est in estimates:
        values = [v for _, v in est.schedule]
        ok = ok and all(b <= a + 1e-9 for a, b in zip(values, values[1:]))
        ok = ok and all(v >= est.lower_bound - 1e-9 for v in values)
    criterion(
        6,
        "every truncation schedule is non-increasing and above its lower bound",
        ok,
        f"{len(estimates)} schedules inspected",
    )


def test_criterion_07_closed_form_busemann(busemann_runs):
    worst = max(abs(est.value - (-a)) for a, _, est in busemann_runs["closed_form"])
    elapsed = busemann_runs["closed_form_elapsed"]
    ok = worst <= 1e-4 and elapsed < 1.0
    criterion(
        7,
        "single-atom values match the Euclidean closed form",
        ok,
        f"max |value + a| = {worst:.3e}, elapsed {elapsed:.2f}s",
    )


def test_criterion_08_along_ray_identity(busemann_runs):
    worst = max(
        abs(est.value - (-s)) for s, est in busemann_runs["along_ray"].items()
    )
    ok = worst <= 1e-10
    criterion(
        8,
        "values along the ray itself equal minus the time",
        ok,
        f"max |value + s| = {worst:.3e} for s in 0,1,2,5",
    )


def test_criterion_09_lipschitz(line_ray):
    rng = np.random.default_rng(909)
    ok = True
    worst = -np.inf
    for _ in range(20):
        report = w.lipschitz_check(line_ray, random_measure(rng), random_measure(rng))
        ok = ok and report.passed
        worst = max(worst, report.difference - report.distance)
    criterion(
        9,
        "value differences stay under the distance on 20 random pairs",
        ok,
        f"max difference minus distance {worst:.3e}",
    )


def test_criterion_10_coray_gradient(coray_a, coray_b):
    started = time.perf_counter()
    report_a = w.coray_gradient_check(coray_a["mu"], coray_a["result"].ray)
    report_b = w.coray_gradient_check(coray_b["mu"], coray_b["result"].ray)
    elapsed = (
        time.perf_counter() - started + coray_a["elapsed"] + coray_b["elapsed"]
    )
    worst = max(max(report_a.residuals), max(report_b.residuals))
    ok = (
        coray_a["result"].converged
        and coray_b["result"].converged
        and worst <= 1e-3
        and elapsed < 30.0
    )
    criterion(
        10,
        "Busemann values fall at unit rate along both constructed co-rays",
        ok,
        f"max gradient residual {worst:.3e}, elapsed {elapsed:.2f}s",
    )


def test_criterion_11_subray_uniqueness(coray_a, coray_b):
    report_a = w.subray_uniqueness_check(coray_a["mu"], coray_a["result"].ray, tau=1.0)
    report_b = w.subray_uniqueness_check(
        coray_b["mu"], coray_b["result"].ray, tau=1.0, schedule=LONG_SCHEDULE
    )
    worst = max(report_a.max_gap, report_b.max_gap)
    ok = report_a.passed and report_b.passed and worst <= 1e-3
    criterion(
        11,
        "rebuilding from the time-1 section reproduces both subrays",
        ok,
        f"max section gap {worst:.3e}",
    )


def test_criterion_12_viscosity(line_ray):
    rng = np.random.default_rng(1212)
    probes = [random_measure(rng, max_atoms=3) for _ in range(10)]
    report = w.viscosity_check(line_ray, w.dirac((0.0, 1.0)), probes)
    ok = report.passed and report.equality_residual <= 1e-3
    criterion(
        12,
        "metric eikonal fixed point: inequality on probes, equality on the co-ray",
        ok,
        f"min probe margin {report.min_margin:.3e}, "
        f"equality residual {report.equality_residual:.3e}",
    )


def test_criterion_13_schedule_ratio(coray_a, coray_b):
    ok = True
    worst = -np.inf
    for bundle in (coray_a, coray_b):
        result = bundle["result"]
        for t_n, length, offset in zip(
            result.schedule, result.lengths, result.start_offsets
        ):
            excess = abs(length / t_n - 1.0) - (offset / t_n + 1e-9)
            worst = max(worst, excess)
            ok = ok and excess <= 0.0
    criterion(
        13,
        "geodesic lengths track target times within the start offset",
        ok,
        f"max bound excess {worst:.3e} over all steps",
    )


def test_criterion_14_deterministic_verify_report():
    from wassray.verify import format_report, run_suite

    first = format_report("all", 1, run_suite("all", 1))
    second = format_report("all", 1, run_suite("all", 1))
    ok = first.encode() == second.encode() and "FAIL" not in first
    criterion(
        14,
        "rerunning the full verify suite is byte-identical and green",
        ok,
        f"report bytes {len(first.encode())}",
    )
