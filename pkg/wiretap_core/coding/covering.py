"""
Soft covering of the state by a random superposition code.

The codebook has L first-layer words u_i and N second-layer words v_ij
per u_i; the induced state law is
``q(s) = 1/(LN) sum_ij p^n(s | u_i, v_ij)``. The exact expectation of
D(q || p^n) over the codebook ensemble is computed through the law of
the sums of i.i.d. codeword likelihoods.
"""

from __future__ import annotations

import itertools
import logging
import math
from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray

from ..measures import LN2
from ..scheme import JointSystem
from ..service.constants import EXACT_GUARD, ZERO_TOL
from ..service.exceptions import GuardExceededError, ValidationError
from .codebook import index_size, state_posterior

logger = logging.getLogger(__name__)

ROUND_DECIMALS = 14


class CoverEstimate(NamedTuple):
    """Expected covering divergence in bits; ``stderr`` is zero in exact mode."""

    bits: float
    stderr: float
    mode: str
    sizes: tuple[int, int]


class CoveringBound(NamedTuple):
    f1: float
    f2: float
    f2_gallager: float
    total_bits: float


class _Law(NamedTuple):
    values: NDArray[np.float64]
    probs: NDArray[np.float64]


def _merge(values: NDArray[np.float64], probs: NDArray[np.float64]) -> _Law:
    keep = probs > 0.0
    keys = np.round(values[keep], ROUND_DECIMALS)
    uniq, inverse = np.unique(keys, return_inverse=True)
    return _Law(uniq, np.bincount(inverse, weights=probs[keep], minlength=uniq.size))


def _combine(a: _Law, b: _Law, op, guard: int) -> _Law:
    if a.values.size * b.values.size > guard:
        raise GuardExceededError(
            f"covering law needs {a.values.size * b.values.size} atoms, above the guard {guard}"
        )
    values = op.outer(a.values, b.values).ravel()
    probs = np.multiply.outer(a.probs, b.probs).ravel()
    return _merge(values, probs)


def _sum_power(law: _Law, count: int, guard: int) -> _Law:
    """Law of the sum of ``count`` i.i.d. copies."""
    result = _Law(np.zeros(1), np.ones(1))
    base = law
    while count:
        if count & 1:
            result = _combine(result, base, np.add, guard)
        count >>= 1
        if count:
            base = _combine(base, base, np.add, guard)
    return result


def _codeword_likelihood_law(
    post: NDArray[np.float64],
    p_v_given_u: NDArray[np.float64],
    s_seq: tuple[int, ...],
    u_seq: tuple[int, ...],
    guard: int,
) -> _Law:
    """Law of p^n(s | u, V^n) when V^n ~ p^n(. | u)."""
    law = _Law(np.ones(1), np.ones(1))
    for s, u in zip(s_seq, u_seq):
        step = _merge(post[s, u, :].copy(), p_v_given_u[u].copy())
        law = _combine(law, step, np.multiply, guard)
    return law


def _design_tables(j: JointSystem):
    p_uv = j.marginal("UV")
    p_u = p_uv.sum(axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        p_v_given_u = np.where(p_u[:, None] > ZERO_TOL, p_uv / p_u[:, None], 0.0)
    return p_u, p_v_given_u, state_posterior(j), j.marginal("S")


def _sequences(size: int, n: int):
    return itertools.product(range(size), repeat=n)


def exact_cover_divergence(j: JointSystem, n: int, L: int, N: int, guard: int = EXACT_GUARD) -> float:
    """
    E D(q^n || p^n) over the codebook ensemble, in bits.

    Raises:
        GuardExceededError: If an intermediate law exceeds ``guard`` atoms
            or the enumeration exceeds ``guard`` sequence pairs.
    """
    p_u, p_v_given_u, post, p_s = _design_tables(j)
    s_size, u_size = p_s.size, p_u.size
    if s_size**n * u_size**n > guard:
        raise GuardExceededError(
            f"{s_size**n * u_size**n} state/codeword sequence pairs, above the guard {guard}"
        )
    scale = float(L * N)
    total = 0.0
    for s_seq in _sequences(s_size, n):
        p_sn = float(np.prod(p_s[list(s_seq)]))
        if p_sn <= ZERO_TOL:
            continue
        mix_values, mix_probs = [], []
        for u_seq in _sequences(u_size, n):
            p_un = float(np.prod(p_u[list(u_seq)]))
            if p_un <= 0.0:
                continue
            word = _codeword_likelihood_law(post, p_v_given_u, s_seq, u_seq, guard)
            block = _sum_power(word, N, guard)
            mix_values.append(block.values)
            mix_probs.append(block.probs * p_un)
        first_layer = _merge(np.concatenate(mix_values), np.concatenate(mix_probs))
        sums = _sum_power(first_layer, L, guard)
        q = sums.values / scale
        positive = q > 0.0
        total += float((sums.probs[positive] * q[positive] * np.log(q[positive])).sum())
        total -= p_sn * math.log(p_sn)
    return total / LN2


def _realized_divergence(
    post: NDArray[np.float64],
    p_s: NDArray[np.float64],
    u: NDArray[np.int_],
    v: NDArray[np.int_],
    n: int,
) -> float:
    """D(q || p^n) in bits for one codebook, u of shape (L, n), v of shape (L, N, n)."""
    total = 0.0
    for s_seq in _sequences(p_s.size, n):
        p_sn = float(np.prod(p_s[list(s_seq)]))
        s = np.array(s_seq)
        q = float(post[s[None, None, :], u[:, None, :], v].prod(axis=-1).mean())
        if q > 0.0:
            if p_sn <= 0.0:
                return math.inf
            total += q * math.log(q / p_sn)
    return total / LN2


def soft_cover_divergence(
    j: JointSystem,
    n: int,
    r1: float,
    r2: float,
    mode: str = "exact",
    seed: int = 0,
    samples: int = 200,
    guard: int = EXACT_GUARD,
) -> CoverEstimate:
    """
    Expected covering divergence at rates (R1, R2).

    L and N are rounded up, so at small n*R the effective rate log2(L)/n
    can sit far above R1 (R1 = 0.1 at n = 1 already gives L = 2). The
    divergence at low rates need not decrease with n.

    Args:
        j: Joint whose p(s,u,v) drives the codebook ensemble.
        n: Blocklength.
        r1: First-layer rate; L = ceil(2^(n*r1)).
        r2: Second-layer rate; N = ceil(2^(n*r2)).
        mode: ``exact`` enumerates the ensemble, ``mc`` samples codebooks.
        seed: Seed of the sampled codebooks.
        samples: Codebooks drawn in ``mc`` mode.
        guard: Enumeration limit.
    """
    if n < 1:
        raise ValidationError(f"blocklength {n} must be positive")
    L, N = index_size(n, r1), index_size(n, r2)
    if mode == "exact":
        bits = exact_cover_divergence(j, n, L, N, guard)
        logger.debug("exact covering divergence n=%d L=%d N=%d: %.6g", n, L, N, bits)
        return CoverEstimate(bits, 0.0, "exact", (L, N))
    if mode != "mc":
        raise ValidationError(f"unknown mode {mode!r}; expected exact or mc")
    p_u, p_v_given_u, post, p_s = _design_tables(j)
    if p_s.size**n * L * N > guard:
        raise GuardExceededError(f"{p_s.size**n * L * N} likelihood terms per codebook, above the guard {guard}")
    rng = np.random.default_rng(seed)
    cdf = np.cumsum(p_v_given_u, axis=1)
    values = np.empty(samples)
    for idx in range(samples):
        u = rng.choice(p_u.size, size=(L, n), p=p_u / p_u.sum())
        draws = rng.random((L, N, n))
        v = np.minimum((draws[..., None] >= cdf[u][:, None, :, :]).sum(axis=-1), p_v_given_u.shape[1] - 1)
        values[idx] = _realized_divergence(post, p_s, u, v, n)
    stderr = float(values.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    return CoverEstimate(float(values.mean()), stderr, "mc", (L, N))


def gallager_e0(j: JointSystem, rho: float) -> float:
    """
    -log2 sum_s (sum_uv p(u,v) p(s|u,v)^(1/(1-rho)))^(1-rho).

    Raises:
        ValidationError: If ``rho`` is outside (0, 1).
    """
    if not 0.0 < rho < 1.0:
        raise ValidationError(f"rho {rho} outside (0, 1)")
    p_uv = j.marginal("UV")
    post = state_posterior(j)
    inner = (p_uv[None] * post ** (1.0 / (1.0 - rho))).sum(axis=(1, 2))
    return float(-np.log2((inner ** (1.0 - rho)).sum()))


def covering_bound(j: JointSystem, n: int, L: int, N: int, rho: float) -> CoveringBound:
    """
    Two-term bound on E D(q^n || p^n), one term per codebook layer.

    ``f1`` and ``f2`` are in nats; ``f2_gallager`` replaces the second
    term by its exponent form; ``total_bits`` is ``(f1 + f2) / ln 2``.
    """
    if not 0.0 < rho < 1.0:
        raise ValidationError(f"rho {rho} outside (0, 1)")
    p_suv = j.marginal("SUV")
    p_s = p_suv.sum(axis=(1, 2))
    p_su = p_suv.sum(axis=2)
    p_u = p_su.sum(axis=0)
    with np.errstate(invalid="ignore", divide="ignore"):
        w_su = np.where(p_u[None] > ZERO_TOL, p_su / p_u[None], 0.0)
        ratio_u = np.where(p_s[:, None] > ZERO_TOL, w_su / p_s[:, None], 0.0)
        ratio_uv = np.where(p_s[:, None, None] > ZERO_TOL, state_posterior(j) / p_s[:, None, None], 0.0)
    moment_u = float((p_su * ratio_u**rho).sum())
    moment_uv = float((p_suv * ratio_uv**rho).sum())
    f1 = L ** (-rho) * moment_u**n / rho
    f2 = (L * N) ** (-rho) * moment_uv**n / rho
    f2_gallager = (L * N) ** (-rho) * 2.0 ** (-n * gallager_e0(j, rho)) / rho
    return CoveringBound(f1, f2, f2_gallager, (f1 + f2) / LN2)


def covering_thresholds(j: JointSystem) -> tuple[float, float]:
    """(I(U;S), I(UV;S)): rates above these drive the divergence to zero."""
    return j.mi("U", "S"), j.mi("UV", "S")
