import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

import wassray as w

settings.register_profile(
    "solver",
    max_examples=25,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("solver")

coords = st.floats(-5.0, 5.0, allow_nan=False, allow_infinity=False)


def random_measure(rng, max_atoms=4, dim=2, scale=2.0):
    n = int(rng.integers(1, max_atoms + 1))
    atoms = rng.normal(scale=scale, size=(n, dim))
    weights = rng.random(n) + 0.1
    return w.DiscreteMeasure(atoms, weights / weights.sum())


def random_uniform_pair(rng, n, d):
    return (
        w.uniform_measure(rng.normal(size=(n, d))),
        w.uniform_measure(rng.normal(size=(n, d))),
    )


@st.composite
def small_measures(draw, max_atoms=4, dim=2):
    n = draw(st.integers(1, max_atoms))
    atoms = draw(
        st.lists(
            st.lists(coords, min_size=dim, max_size=dim), min_size=n, max_size=n
        )
    )
    weights = np.asarray(draw(st.lists(st.floats(0.05, 1.0), min_size=n, max_size=n)))
    return w.DiscreteMeasure(np.asarray(atoms), weights / weights.sum())


@st.composite
def uniform_pairs(draw, max_atoms=5, max_dim=3):
    n = draw(st.integers(2, max_atoms))
    d = draw(st.integers(1, max_dim))
    xs = draw(st.lists(st.lists(coords, min_size=d, max_size=d), min_size=n, max_size=n))
    ys = draw(st.lists(st.lists(coords, min_size=d, max_size=d), min_size=n, max_size=n))
    return w.uniform_measure(np.asarray(xs)), w.uniform_measure(np.asarray(ys))


@pytest.fixture
def rng():
    return np.random.default_rng(0)
