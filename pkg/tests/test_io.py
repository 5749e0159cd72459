import numpy as np
import pytest

import wassray as w
from wassray.errors import MeasureFileError
from wassray.io import (
    format_measure,
    format_ray,
    parse_measure,
    parse_ray,
    read_measure,
    read_ray,
)

from conftest import random_measure


def test_measure_round_trip_is_value_identical(tmp_path, rng):
    for _ in range(10):
        m = random_measure(rng, max_atoms=5, dim=3)
        path = tmp_path / "m.measure"
        w.write_measure(m, path)
        back = read_measure(path)
        assert np.array_equal(back.atoms, m.atoms)
        assert np.array_equal(back.weights, m.weights)


def test_measure_round_trip_keeps_exact_weight_sum():
    m = w.uniform_measure(np.arange(7.0).reshape(7, 1))
    back = parse_measure(format_measure(m))
    assert back.weights.sum() == m.weights.sum()


def test_ray_round_trip_is_value_identical(tmp_path, rng):
    mu0 = random_measure(rng, max_atoms=4, dim=2)
    ray = w.make_translation_ray(mu0, rng.normal(size=2), p=2.5)
    path = tmp_path / "r.rays"
    w.write_ray(ray, path)
    back = read_ray(path)
    assert np.array_equal(back.origins, ray.origins)
    assert np.array_equal(back.velocities, ray.velocities)
    assert np.array_equal(back.weights, ray.weights)
    assert back.p == ray.p


def test_comments_and_blank_lines_ignored():
    text = (
        "# a measure\n"
        "measure\n\n"
        "dim 1  # ambient dimension\n"
        "atoms 2\n"
        "0.0 0.5\n"
        "1.0 0.5\n"
    )
    m = parse_measure(text)
    assert len(m) == 2


def test_parse_rejects_wrong_header():
    with pytest.raises(MeasureFileError, match="start with"):
        parse_measure("rays\ndim 1\natoms 0\n")
    with pytest.raises(MeasureFileError, match="start with"):
        parse_ray("measure\ndim 1\np 2.0\nentries 0\n")


def test_parse_rejects_wrong_atom_count():
    with pytest.raises(MeasureFileError, match="atom lines"):
        parse_measure("measure\ndim 1\natoms 2\n0.0 1.0\n")


def test_parse_rejects_wrong_line_width():
    with pytest.raises(MeasureFileError, match="coordinates"):
        parse_measure("measure\ndim 2\natoms 1\n0.0 1.0\n")


def test_parse_rejects_non_numeric():
    with pytest.raises(MeasureFileError, match="non-numeric"):
        parse_measure("measure\ndim 1\natoms 1\nzero 1.0\n")


def test_parse_rejects_invalid_measure_data():
    with pytest.raises(MeasureFileError, match="invalid measure"):
        parse_measure("measure\ndim 1\natoms 1\n0.0 0.7\n")


def test_parse_rejects_truncated_ray_file():
    with pytest.raises(MeasureFileError):
        parse_ray("rays\ndim 2\n")


def test_ray_format_keeps_exponent():
    ray = w.make_dirac_ray((0.0, 0.0), (1.0, 0.0), p=1.5)
    assert parse_ray(format_ray(ray)).p == 1.5
