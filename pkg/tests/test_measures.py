import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import wassray as w
from wassray.errors import DimensionMismatchError, EmptyMeasureError
from wassray.measures import merge_atoms, position_key

from conftest import coords


def test_weights_must_sum_to_one():
    with pytest.raises(ValueError, match="sum to 1"):
        w.DiscreteMeasure([[0.0], [1.0]], [0.5, 0.6])


def test_negative_weight_rejected():
    with pytest.raises(ValueError, match="nonnegative"):
        w.DiscreteMeasure([[0.0], [1.0]], [1.5, -0.5])


def test_zero_weight_atoms_pruned():
    m = w.DiscreteMeasure([[0.0], [1.0], [2.0]], [0.5, 0.0, 0.5])
    assert len(m) == 2
    assert np.array_equal(m.atoms.ravel(), [0.0, 2.0])


def test_all_zero_weights_is_empty():
    with pytest.raises(EmptyMeasureError):
        w.DiscreteMeasure([[0.0]], [0.0])


def test_no_atoms_is_empty():
    with pytest.raises(EmptyMeasureError):
        w.DiscreteMeasure(np.zeros((0, 2)), np.zeros(0))


def test_nonfinite_rejected():
    with pytest.raises(ValueError):
        w.DiscreteMeasure([[np.inf]], [1.0])
    with pytest.raises(ValueError):
        w.DiscreteMeasure([[0.0]], [np.nan])


def test_flat_atom_input_means_real_line():
    m = w.DiscreteMeasure([0.0, 1.0], [0.5, 0.5])
    assert m.dim == 1
    assert len(m) == 2


def test_arrays_are_read_only():
    m = w.dirac((1.0, 2.0))
    with pytest.raises(ValueError):
        m.atoms[0, 0] = 5.0


def test_dirac_and_uniform():
    d = w.dirac((1.0, 2.0))
    assert len(d) == 1 and d.weights[0] == 1.0
    u = w.uniform_measure([[0.0], [1.0], [2.0]])
    assert np.allclose(u.weights, 1.0 / 3.0)


def test_translate():
    m = w.uniform_measure([[0.0, 0.0], [1.0, 0.0]])
    shifted = m.translate((2.0, 3.0))
    assert np.array_equal(shifted.atoms, [[2.0, 3.0], [3.0, 3.0]])
    with pytest.raises(DimensionMismatchError):
        m.translate((1.0,))


def test_merge_atoms_pools_coincident_positions():
    atoms, weights = merge_atoms(
        np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]]), np.array([0.25, 0.5, 0.25])
    )
    assert atoms.shape == (2, 2)
    assert np.array_equal(atoms[0], [0.0, 0.0])
    assert weights[0] == 0.5 and weights[1] == 0.5


def test_merge_atoms_keeps_first_occurrence_order():
    atoms, weights = merge_atoms(
        np.array([[3.0], [1.0], [3.0], [2.0]]), np.array([0.1, 0.2, 0.3, 0.4])
    )
    assert np.array_equal(atoms.ravel(), [3.0, 1.0, 2.0])
    assert np.allclose(weights, [0.4, 0.2, 0.4])


def test_position_key_treats_signed_zero_alike():
    assert position_key(np.array([-0.0])) == position_key(np.array([0.0]))


def test_same_measure_ignores_order_and_splitting():
    a = w.DiscreteMeasure([[0.0], [1.0]], [0.5, 0.5])
    b = w.DiscreteMeasure([[1.0], [0.0], [0.0]], [0.5, 0.25, 0.25])
    assert w.same_measure(a, b)
    c = w.DiscreteMeasure([[0.0], [2.0]], [0.5, 0.5])
    assert not w.same_measure(a, c)


@given(
    positions=st.lists(st.lists(coords, min_size=2, max_size=2), min_size=1, max_size=8),
    raw=st.data(),
)
def test_merge_conserves_mass(positions, raw):
    n = len(positions)
    weights = np.asarray(raw.draw(st.lists(st.floats(0.05, 1.0), min_size=n, max_size=n)))
    weights = weights / weights.sum()
    _, merged = merge_atoms(np.asarray(positions), weights)
    assert abs(merged.sum() - 1.0) <= 1e-12
