"""Finite probability vectors, couplings, and the entropy/KL toolbox.

Everything internal is in nats.  Validation rejects bad inputs instead of
renormalizing them: a vector whose mass is off by more than ``MASS_TOL`` is
a caller bug we refuse to paper over.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError

# Mass must match 1 to this absolute tolerance at validation time.
MASS_TOL = 1e-12
# Declared marginals of a coupling must be reproduced to this tolerance.
MARGINAL_TOL = 1e-10


def _as_float_array(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise InvalidInputError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise InvalidInputError(f"{name} must be non-empty")
    return arr


@dataclass
class ProbabilityVector:
    """A probability mass function on a finite alphabet.

    Args:
        weights: nonnegative reals summing to 1 within ``MASS_TOL``.
        labels: optional per-atom coordinates (e.g. grid positions); same
            length as ``weights``.
    """

    weights: np.ndarray
    labels: np.ndarray | None = None

    def __post_init__(self):
        self.weights = _as_float_array(self.weights, "weights")
        if np.any(np.isnan(self.weights)) or np.any(self.weights < 0):
            raise InvalidInputError("weights must be nonnegative reals")
        mass = float(self.weights.sum())
        if abs(mass - 1.0) > MASS_TOL:
            raise InvalidInputError(
                f"weights must sum to 1 within {MASS_TOL:g}; got {mass!r}"
            )
        if self.labels is not None:
            self.labels = _as_float_array(self.labels, "labels")
            if self.labels.shape != self.weights.shape:
                raise InvalidInputError(
                    "labels must have the same length as weights "
                    f"({self.labels.size} vs {self.weights.size})"
                )

    def __len__(self) -> int:
        return self.weights.size

    @property
    def support(self) -> np.ndarray:
        """Indices carrying strictly positive mass."""
        return np.flatnonzero(self.weights > 0)


@dataclass
class Coupling:
    """A joint distribution on a product of two finite alphabets."""

    joint: np.ndarray
    source_dim: int = field(init=False)
    target_dim: int = field(init=False)

    def __post_init__(self):
        self.joint = np.asarray(self.joint, dtype=float)
        if self.joint.ndim != 2 or self.joint.size == 0:
            raise InvalidInputError(
                f"joint must be a non-empty matrix, got shape {self.joint.shape}"
            )
        if np.any(np.isnan(self.joint)) or np.any(self.joint < 0):
            raise InvalidInputError("joint entries must be nonnegative reals")
        mass = float(self.joint.sum())
        if abs(mass - 1.0) > MASS_TOL:
            raise InvalidInputError(
                f"joint mass must be 1 within {MASS_TOL:g}; got {mass!r}"
            )
        self.source_dim, self.target_dim = self.joint.shape

    def source_marginal(self) -> ProbabilityVector:
        return ProbabilityVector(self.joint.sum(axis=1))

    def target_marginal(self) -> ProbabilityVector:
        return ProbabilityVector(self.joint.sum(axis=0))

    def check_marginals(
        self,
        source: ProbabilityVector | None = None,
        target: ProbabilityVector | None = None,
        tol: float = MARGINAL_TOL,
    ) -> None:
        """Verify declared marginals are reproduced within ``tol``.

        Raises:
            InvalidInputError: if a declared marginal deviates in sup-norm.
        """
        if source is not None:
            dev = float(np.abs(self.joint.sum(axis=1) - source.weights).max())
            if dev > tol:
                raise InvalidInputError(
                    f"row sums deviate from declared source marginal by {dev:g} > {tol:g}"
                )
        if target is not None:
            dev = float(np.abs(self.joint.sum(axis=0) - target.weights).max())
            if dev > tol:
                raise InvalidInputError(
                    f"column sums deviate from declared target marginal by {dev:g} > {tol:g}"
                )


def _kl_core(p: np.ndarray, q: np.ndarray) -> float:
    """Sum of p*ln(p/q) with the 0*ln(0) = 0 convention, +inf if p !<< q."""
    pos = p > 0
    if np.any(q[pos] == 0):
        return float("inf")
    pp = p[pos]
    return float(np.sum(pp * np.log(pp / q[pos])))


def kl_divergence(p: ProbabilityVector, q: ProbabilityVector) -> float:
    """Relative entropy D(p || q) in nats.

    Returns +inf when p puts mass where q has none (absolute continuity
    failure).  Terms with p_i = 0 contribute exactly zero.
    """
    if len(p) != len(q):
        raise InvalidInputError(
            f"dimension mismatch: p has {len(p)} atoms, q has {len(q)}"
        )
    return _kl_core(p.weights, q.weights)


def entropy(p: ProbabilityVector) -> float:
    """Shannon entropy -sum p ln p in nats (0 ln 0 = 0)."""
    w = p.weights[p.weights > 0]
    return float(-np.sum(w * np.log(w)))


def mutual_information(pi: Coupling) -> float:
    """Mutual information of a coupling: D(pi || mu x nu) of its marginals.

    Computed literally as the KL divergence between the flattened joint and
    the flattened product of its own marginals, so it agrees bit-for-bit
    with ``kl_divergence`` on those arguments.
    """
    row = pi.joint.sum(axis=1)
    col = pi.joint.sum(axis=0)
    outer = np.outer(row, col)
    return _kl_core(pi.joint.ravel(), outer.ravel())
