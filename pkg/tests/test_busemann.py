import numpy as np
import pytest

import wassray as w
from wassray.errors import UnitSpeedError

from conftest import random_measure


@pytest.fixture
def line_ray():
    return w.make_dirac_ray((0.0, 0.0), (1.0, 0.0))


def test_along_ray_value_is_minus_one_at_every_time(line_ray):
    nu = w.ray_section(line_ray, 1.0)
    est = w.busemann_value(line_ray, nu)
    assert est.value == pytest.approx(-1.0, abs=1e-12)
    for t, v in est.schedule:
        if t >= 1.0:
            assert v == pytest.approx(-1.0, abs=1e-12)


def test_closed_form_offset_point(line_ray):
    # lim sqrt(t^2 + 1) - t = 0
    est = w.busemann_value(line_ray, w.dirac((0.0, 1.0)))
    assert abs(est.value) <= 1e-4
    assert est.converged


def test_closed_form_general_point(line_ray):
    # closed form -<x, v> = -2; cross-check by a direct far evaluation
    est = w.busemann_value(line_ray, w.dirac((2.0, 5.0)))
    assert est.value == pytest.approx(-2.0, abs=1e-4)
    far = 2.0**20
    direct = np.hypot(far - 2.0, 5.0) - far
    assert direct == pytest.approx(-2.0, abs=1e-4)
    # truncations decrease toward the limit from above, and the estimate
    # ran past t = 2^20
    assert -2.0 - 1e-9 <= est.value <= direct + 1e-9


def test_schedule_monotone_and_bounded(line_ray, rng):
    for _ in range(5):
        nu = random_measure(rng, max_atoms=3)
        est = w.busemann_value(line_ray, nu)
        values = [v for _, v in est.schedule]
        assert all(b <= a + 1e-9 for a, b in zip(values, values[1:]))
        assert all(v >= est.lower_bound - 1e-9 for v in values)
        assert est.value >= est.lower_bound - 1e-9
        assert est.last_decrement >= 0.0


def test_lower_bound_is_distance_to_origin_section(line_ray):
    nu = w.dirac((3.0, 4.0))
    est = w.busemann_value(line_ray, nu)
    assert est.lower_bound == -5.0


def test_non_unit_speed_rejected():
    fast = w.make_dirac_ray((0.0, 0.0), (2.0, 0.0))
    with pytest.raises(UnitSpeedError):
        w.busemann_value(fast, w.dirac((0.0, 0.0)))


def test_parameter_validation(line_ray):
    nu = w.dirac((0.0, 1.0))
    with pytest.raises(ValueError):
        w.busemann_value(line_ray, nu, t0=0.0)
    with pytest.raises(ValueError):
        w.busemann_value(line_ray, nu, tol=0.0)
    with pytest.raises(ValueError):
        w.busemann_value(line_ray, nu, max_doublings=0)


def test_schedule_exhaustion_reported(line_ray):
    est = w.busemann_value(line_ray, w.dirac((0.0, 1.0)), tol=1e-15, max_doublings=3)
    assert not est.converged
    assert est.t_final == 8.0


def test_unit_speed_translation_ray_value(rng):
    # along a translation ray the value at its own section is -s too
    mu0 = random_measure(rng, max_atoms=3)
    ray = w.make_translation_ray(mu0, (0.0, 1.0))
    for s in (0.0, 2.0):
        est = w.busemann_value(ray, w.ray_section(ray, s))
        assert est.value == pytest.approx(-s, abs=1e-9)


def test_lipschitz_identical_arguments(line_ray):
    nu = w.dirac((1.0, 2.0))
    report = w.lipschitz_check(line_ray, nu, nu)
    assert report.difference == 0.0
    assert report.distance == 0.0
    assert report.passed


def test_lipschitz_dirac_closed_forms(line_ray):
    # values are -a1 and -a2, so the difference is |a2 - a1| <= distance
    report = w.lipschitz_check(line_ray, w.dirac((1.0, 2.0)), w.dirac((-0.5, 3.0)))
    assert report.passed
    assert report.difference == pytest.approx(1.5, abs=1e-4)
    assert report.distance == pytest.approx(np.hypot(1.5, 1.0), abs=1e-12)


def test_lipschitz_random_pairs(line_ray, rng):
    for _ in range(20):
        report = w.lipschitz_check(line_ray, random_measure(rng), random_measure(rng))
        assert report.passed
