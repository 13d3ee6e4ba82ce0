"""
Random superposition codebook.

Codewords are drawn from the NonCausal view of a design: causal designs
are first turned into their composite design, so a Case 2 codebook has
the state copy embedded in its V-layer.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray

from ..scheme import AuxiliaryScheme, JointSystem, SchemeMode, build_joint, to_noncausal
from ..service.constants import CODEBOOK_GUARD, ZERO_TOL
from ..service.exceptions import GuardExceededError, ValidationError

logger = logging.getLogger(__name__)


class Rates(NamedTuple):
    """Rates in bits per symbol: superposition layers, key, message."""

    r1: float
    r2: float
    rk: float
    rm: float

    def as_dict(self) -> dict[str, float]:
        return {"R1": self.r1, "R2": self.r2, "RK": self.rk, "RM": self.rm}


def index_size(n: int, rate: float) -> int:
    """ceil(2^(n*rate)), never overstating the rate."""
    if rate < 0:
        raise ValidationError(f"rate {rate} must be nonnegative")
    return max(1, math.ceil(2.0 ** (n * rate) - 1e-9))


def noncausal_joint(j: JointSystem) -> JointSystem:
    """The joint of the composite NonCausal design behind ``j``."""
    if j.mode is SchemeMode.NON_CAUSAL:
        return j
    return build_joint(j.channel, to_noncausal(j.scheme, j.channel))


def state_posterior(j: JointSystem) -> NDArray[np.float64]:
    """p(s|u,v) indexed [s][u][v]; rows of unused (u, v) are zero."""
    p_suv = j.marginal("SUV")
    p_uv = p_suv.sum(axis=0)
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(p_uv[None] > ZERO_TOL, p_suv / p_uv[None], 0.0)


@dataclass(frozen=True, eq=False)
class Codebook:
    """
    Superposition code of blocklength ``n``.

    Attributes:
        n: Blocklength.
        sizes: (L, N, K, M).
        u: U-layer codewords, shape (L, n).
        v: V-layer codewords, shape (L, N, K, M, n).
        joint: NonCausal joint the codewords were drawn from.
        source: Design the codebook was requested for.
        rates: Requested rates.
        seed: Generator seed.
    """

    n: int
    sizes: tuple[int, int, int, int]
    u: NDArray[np.int_]
    v: NDArray[np.int_]
    joint: JointSystem
    source: AuxiliaryScheme
    rates: Rates
    seed: int

    def __str__(self):
        L, N, K, M = self.sizes
        return f"<{self.__class__.__name__} n={self.n} L={L} N={N} K={K} M={M} seed={self.seed}>"

    @property
    def mode(self) -> SchemeMode:
        """Mode of the design the code implements."""
        return self.source.mode

    @property
    def v_inner(self) -> int:
        """|V| of the source design before the state copy was adjoined."""
        if self.source.mode is SchemeMode.CASE2B:
            return 1
        return self.source.v_size

    def with_v(self, v: NDArray[np.int_]) -> Codebook:
        """Copy with a replaced V-layer."""
        return Codebook(self.n, self.sizes, self.u, v, self.joint, self.source, self.rates, self.seed)


def _conditional_cdf(p_uv: NDArray[np.float64]) -> NDArray[np.float64]:
    p_u = p_uv.sum(axis=1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        rows = np.where(p_u > ZERO_TOL, p_uv / p_u, 1.0 / p_uv.shape[1])
    return np.cumsum(rows, axis=1)


def generate_codebook(
    j: JointSystem, n: int, rates: Rates, seed: int
) -> Codebook:
    """
    Draw u_i i.i.d. from p_U and v_ijkm i.i.d. from p_V|U(.|u_i).

    Raises:
        ValidationError: On negative rates or blocklength.
        GuardExceededError: If the tables exceed ``CODEBOOK_GUARD`` symbols.
    """
    if n < 1:
        raise ValidationError(f"blocklength {n} must be positive")
    sizes = (
        index_size(n, rates.r1),
        index_size(n, rates.r2),
        index_size(n, rates.rk),
        index_size(n, rates.rm),
    )
    L, N, K, M = sizes
    symbols = n * (L + L * N * K * M)
    if symbols > CODEBOOK_GUARD:
        raise GuardExceededError(
            f"codebook needs {symbols} symbols, above the guard {CODEBOOK_GUARD}"
        )
    view = noncausal_joint(j)
    p_uv = view.marginal("UV")
    p_u = p_uv.sum(axis=1)
    rng = np.random.default_rng(seed)
    u = rng.choice(p_u.size, size=(L, n), p=p_u / p_u.sum())
    cdf = _conditional_cdf(p_uv)
    draws = rng.random((L, N, K, M, n))
    rows = cdf[u][:, None, None, None, :, :]
    v = (draws[..., None] >= rows).sum(axis=-1)
    v = np.minimum(v, p_uv.shape[1] - 1)
    logger.debug("generated codebook n=%d sizes=%s", n, sizes)
    return Codebook(n, sizes, u, v, view, j.scheme, rates, seed)


def substitute_state(cb: Codebook, s_seq: NDArray[np.int_]) -> Codebook:
    """
    Replace the embedded state copy of every V-codeword by ``s_seq``.

    Raises:
        ValidationError: If the code does not embed the state in V.
    """
    if not cb.mode.embeds_state_in_v:
        raise ValidationError(f"{cb.mode.value} codewords carry no state copy")
    s_seq = np.asarray(s_seq, dtype=int)
    if s_seq.shape != (cb.n,):
        raise ValidationError(f"state sequence length {s_seq.size} differs from n={cb.n}")
    inner = cb.v_inner
    return cb.with_v(s_seq * inner + cb.v % inner)
