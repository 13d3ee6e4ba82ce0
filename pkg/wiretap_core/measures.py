"""
Shannon measures in bits on small dense joint tensors.

Every function takes plain numpy arrays. Joint tensors carry one axis
per random variable; composite variables are formed by the caller
through :func:`marginal` rather than by reshaping alphabets.
"""

from __future__ import annotations

import logging
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import entr, rel_entr

from .service.constants import MI_CLAMP_TOL, PROB_TOL, ZERO_TOL
from .service.exceptions import ValidationError

LN2 = float(np.log(2.0))

logger = logging.getLogger(__name__)


def validate_distribution(
    values: ArrayLike, name: str = "distribution", tol: float = PROB_TOL
) -> NDArray[np.float64]:
    """
    Check nonnegativity and normalization of a probability tensor.

    Args:
        values: Masses of any shape.
        name: Label used in error messages.
        tol: Allowed deviation of the total mass from one.

    Returns:
        NDArray: The masses as a float array.

    Raises:
        ValidationError: On negative entries or a total mass away from one.
    """
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValidationError(f"{name}: empty distribution")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name}: non-finite probability")
    if np.any(arr < 0.0):
        raise ValidationError(f"{name}: negative probability {arr.min():.6g}")
    total = float(arr.sum())
    if abs(total - 1.0) > tol:
        raise ValidationError(f"{name}: row not stochastic (sum={total:.12g})")
    return arr


def _check_normalized(joint: NDArray[np.float64]) -> None:
    total = float(joint.sum())
    if abs(total - 1.0) > PROB_TOL or np.any(joint < 0.0):
        raise ValidationError(f"non-normalized tensor (sum={total:.12g})")


def marginal(joint: NDArray[np.float64], keep: Sequence[int]) -> NDArray[np.float64]:
    """
    Marginal of ``joint`` on the axes in ``keep``, in that order.

    Axes are summed out from the last to the first so that the result
    does not depend on how the caller lists ``keep``.
    """
    keep = list(keep)
    out = joint
    for axis in range(joint.ndim - 1, -1, -1):
        if axis not in keep:
            out = out.sum(axis=axis)
    remaining = sorted(keep)
    order = [remaining.index(axis) for axis in keep]
    return np.transpose(out, order) if order != sorted(order) else out


def _h(masses: NDArray[np.float64]) -> float:
    flat = np.where(masses < ZERO_TOL, 0.0, masses).ravel()
    return float(entr(flat).sum() / LN2)


def entropy(p: ArrayLike) -> float:
    """H(p) = -sum p log2 p with 0 log 0 = 0."""
    return _h(np.asarray(p, dtype=float))


def joint_entropy(joint: NDArray[np.float64], axes: Sequence[int]) -> float:
    """Entropy of the variables on ``axes`` of ``joint``; empty axes give 0."""
    if not axes:
        return 0.0
    return _h(marginal(joint, axes))


def conditional_entropy(joint: ArrayLike) -> float:
    """
    H(A|B) for a two-axis tensor indexed [a, b].

    Raises:
        ValidationError: If the tensor is not normalized.
    """
    arr = np.asarray(joint, dtype=float)
    _check_normalized(arr)
    return _h(arr) - _h(arr.sum(axis=0))


def mutual_information(joint: ArrayLike, clamp: bool = True) -> float:
    """
    I(A;B) for a two-axis tensor indexed [a, b].

    Args:
        joint: Joint masses.
        clamp: Clamp tiny negative round-off at zero.

    Raises:
        ValidationError: If the tensor is not normalized.
    """
    arr = np.asarray(joint, dtype=float)
    _check_normalized(arr)
    value = _h(arr.sum(axis=1)) + _h(arr.sum(axis=0)) - _h(arr)
    return _clamp(value) if clamp else value


def conditional_mutual_information(joint: ArrayLike, clamp: bool = True) -> float:
    """I(A;B|C) for a three-axis tensor indexed [a, b, c]."""
    arr = np.asarray(joint, dtype=float)
    _check_normalized(arr)
    value = (
        _h(arr.sum(axis=1))
        + _h(arr.sum(axis=0))
        - _h(arr)
        - _h(arr.sum(axis=(0, 1)))
    )
    return _clamp(value) if clamp else value


def _clamp(value: float) -> float:
    if value < -MI_CLAMP_TOL:
        logger.debug("mutual information %.3g below round-off band", value)
    return max(value, 0.0)


def kl_divergence(p: ArrayLike, q: ArrayLike) -> float:
    """
    D(p||q) in bits; +inf when p charges a point q does not.

    Raises:
        ValidationError: On a shape mismatch.
    """
    p_arr = np.asarray(p, dtype=float).ravel()
    q_arr = np.asarray(q, dtype=float).ravel()
    if p_arr.shape != q_arr.shape:
        raise ValidationError(f"length mismatch: {p_arr.size} vs {q_arr.size}")
    p_arr = np.where(p_arr < ZERO_TOL, 0.0, p_arr)
    q_arr = np.where(q_arr < ZERO_TOL, 0.0, q_arr)
    return float(rel_entr(p_arr, q_arr).sum() / LN2)


def binary_entropy(p: float) -> float:
    """
    h(p) in bits.

    Raises:
        ValidationError: If ``p`` lies outside [0, 1].
    """
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"binary entropy argument {p} outside [0, 1]")
    return entropy([p, 1.0 - p])


def total_variation(p: ArrayLike, q: ArrayLike) -> float:
    """Half the L1 distance between two mass vectors."""
    p_arr = np.asarray(p, dtype=float).ravel()
    q_arr = np.asarray(q, dtype=float).ravel()
    if p_arr.shape != q_arr.shape:
        raise ValidationError(f"length mismatch: {p_arr.size} vs {q_arr.size}")
    return float(0.5 * np.abs(p_arr - q_arr).sum())


def positive_part(value: float) -> float:
    """[x]^+ = max(x, 0)."""
    return max(value, 0.0)
