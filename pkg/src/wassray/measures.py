"""Finitely supported probability measures on R^d."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, EmptyMeasureError

WEIGHT_SUM_TOL = 1e-12

# Pushforwards legitimately collide atoms; positions that agree after
# rounding to this many decimals are treated as one atom.
MERGE_DECIMALS = 12


def as_point(coords) -> np.ndarray:
    """Coerce to a finite 1-D float64 coordinate vector."""
    pt = np.atleast_1d(np.asarray(coords, dtype=float))
    if pt.ndim != 1 or pt.size == 0:
        raise ValueError(f"a point is a nonempty coordinate vector, got shape {pt.shape}")
    if not np.all(np.isfinite(pt)):
        raise ValueError("point coordinates must be finite")
    return pt


def position_key(coords) -> tuple[float, ...]:
    """Merge key for a position: coordinates rounded to MERGE_DECIMALS decimals."""
    return tuple(np.round(np.asarray(coords, dtype=float), MERGE_DECIMALS).tolist())


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Probability measure with finitely many atoms in R^d.

    ``atoms`` is an (n, d) array, ``weights`` an (n,) array of strictly
    positive masses summing to one. Zero-mass atoms are dropped on
    construction; negative weights or a weight sum off by more than 1e-12
    are rejected. Coincident atoms are kept as given: merging by position
    is the job of the pushforward helpers, not of the container.
    """

    atoms: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        atoms = np.array(self.atoms, dtype=float)
        if atoms.ndim == 1:
            atoms = atoms.reshape(-1, 1)  # flat input means atoms on the real line
        if atoms.ndim != 2:
            raise ValueError(f"atoms must form an (n, d) array, got shape {atoms.shape}")
        if atoms.shape[0] == 0:
            raise EmptyMeasureError("a discrete measure needs at least one atom")
        if atoms.shape[1] == 0:
            raise ValueError("ambient dimension must be at least 1")
        weights = np.atleast_1d(np.array(self.weights, dtype=float))
        if weights.shape != (atoms.shape[0],):
            raise ValueError(
                f"got {atoms.shape[0]} atoms but weight array of shape {weights.shape}"
            )
        if not np.all(np.isfinite(atoms)):
            raise ValueError("atom coordinates must be finite")
        if not np.all(np.isfinite(weights)):
            raise ValueError("weights must be finite")
        if np.any(weights < 0.0):
            raise ValueError("weights must be nonnegative")
        keep = weights > 0.0
        if not np.all(keep):
            atoms = atoms[keep]
            weights = weights[keep]
        if atoms.shape[0] == 0:
            raise EmptyMeasureError("every atom has zero mass")
        total = float(weights.sum())
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights must sum to 1 within {WEIGHT_SUM_TOL}, got {total!r}")
        atoms.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weights", weights)

    @property
    def dim(self) -> int:
        return self.atoms.shape[1]

    def __len__(self) -> int:
        return self.atoms.shape[0]

    def translate(self, vector) -> "DiscreteMeasure":
        """The measure shifted by a fixed vector."""
        v = as_point(vector)
        if v.size != self.dim:
            raise DimensionMismatchError(
                f"translation vector has dimension {v.size}, measure has {self.dim}"
            )
        return DiscreteMeasure(self.atoms + v, self.weights)


def dirac(point) -> DiscreteMeasure:
    """Unit mass at a single point."""
    pt = as_point(point)
    return DiscreteMeasure(pt[None, :], np.ones(1))


def uniform_measure(atoms) -> DiscreteMeasure:
    """Equal mass 1/n on each of the given atoms."""
    arr = np.array(atoms, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    n = arr.shape[0]
    if n == 0:
        raise EmptyMeasureError("a uniform measure needs at least one atom")
    return DiscreteMeasure(arr, np.full(n, 1.0 / n))


def merge_atoms(positions: np.ndarray, weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Pool mass sitting at coincident positions.

    Positions sharing a rounded key (MERGE_DECIMALS decimals) collapse to a
    single atom placed at the first occurrence's exact coordinates; output
    order is first-occurrence order, so the result is deterministic.
    """
    positions = np.asarray(positions, dtype=float)
    weights = np.asarray(weights, dtype=float)
    index_of: dict[tuple[float, ...], int] = {}
    out_pos: list[np.ndarray] = []
    out_w: list[float] = []
    for pos, w in zip(positions, weights):
        key = position_key(pos)
        at = index_of.get(key)
        if at is None:
            index_of[key] = len(out_pos)
            out_pos.append(pos)
            out_w.append(float(w))
        else:
            out_w[at] += float(w)
    return np.array(out_pos), np.array(out_w)


def same_measure(a: DiscreteMeasure, b: DiscreteMeasure, weight_atol: float = 1e-9) -> bool:
    """Whether two measures agree as measures, up to per-atom weight slack.

    Atoms are matched by position key after pooling coincident atoms on
    each side, so atom order and coincident-atom splitting do not matter.
    """
    if a.dim != b.dim:
        return False
    pa, wa = merge_atoms(a.atoms, a.weights)
    pb, wb = merge_atoms(b.atoms, b.weights)
    ka = {position_key(pos): w for pos, w in zip(pa, wa)}
    kb = {position_key(pos): w for pos, w in zip(pb, wb)}
    if set(ka) != set(kb):
        return False
    return all(abs(ka[k] - kb[k]) <= weight_atol for k in ka)
