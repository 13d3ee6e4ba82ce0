"""
Strong-typicality decoder of the superposition code.
"""

from __future__ import annotations

import logging
from enum import Enum
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..service.constants import DEFAULT_EPS, ZERO_TOL
from ..service.exceptions import ValidationError
from .codebook import Codebook

logger = logging.getLogger(__name__)

FAILURE_INDICES = (0, 0, 0, 0)


class DecodeStatus(str, Enum):
    UNIQUE = "unique"
    NONE = "none"
    MULTIPLE = "multiple"


class DecodeResult(NamedTuple):
    """
    Decoder output.

    On failure the indices are the designated first indices (all zero)
    and ``status`` tells whether no or several candidates were typical.
    """

    i: int
    j: int
    k: int
    m: int
    status: DecodeStatus

    @property
    def ok(self) -> bool:
        return self.status is DecodeStatus.UNIQUE


def joint_types(cb: Codebook, y_seq: NDArray[np.int_]) -> NDArray[np.float64]:
    """Empirical joint type of (u_i, v_ijkm, y) per candidate, shape (L, N, K, M, |U||V||Y|)."""
    u_size, v_size, y_size = (cb.joint.tensor.shape[a] for a in (1, 2, 4))
    cells = u_size * v_size * y_size
    codes = (cb.u[:, None, None, None, :] * v_size + cb.v) * y_size + y_seq
    return np.eye(cells)[codes].sum(axis=-2) / cb.n


def typical_mask(cb: Codebook, y_seq: ArrayLike, eps: float = DEFAULT_EPS) -> NDArray[np.bool_]:
    """
    Candidates whose joint type with ``y_seq`` is strongly eps-typical.

    Raises:
        ValidationError: If ``eps`` is not positive or ``y_seq`` has the wrong length.
    """
    if eps <= 0.0:
        raise ValidationError(f"typicality slack {eps} must be positive")
    y = np.asarray(y_seq, dtype=int)
    if y.shape != (cb.n,):
        raise ValidationError(f"output length {y.size} differs from n={cb.n}")
    target = cb.joint.marginal("UVY").ravel()
    types = joint_types(cb, y)
    close = np.all(np.abs(types - target) <= eps, axis=-1)
    support_ok = ~np.any((types > 0.0) & (target <= ZERO_TOL), axis=-1)
    return close & support_ok


def typicality_decode(cb: Codebook, y_seq: ArrayLike, eps: float = DEFAULT_EPS) -> DecodeResult:
    """Unique typical (i, j, k, m), or the designated failure value."""
    hits = np.argwhere(typical_mask(cb, y_seq, eps))
    if len(hits) == 1:
        i, j, k, m = (int(a) for a in hits[0])
        return DecodeResult(i, j, k, m, DecodeStatus.UNIQUE)
    status = DecodeStatus.NONE if len(hits) == 0 else DecodeStatus.MULTIPLE
    return DecodeResult(*FAILURE_INDICES, status)
