"""
Likelihood encoder, its causal Case 2 implementation, and the channel.
"""

from __future__ import annotations

import itertools
import logging
from typing import Iterable

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..channel import WiretapChannel
from ..service.exceptions import AtypicalStateError, ValidationError
from .codebook import Codebook, state_posterior, substitute_state

logger = logging.getLogger(__name__)

Indices = tuple[int, int, int]
OutcomeLaw = dict[tuple[int, int, int, tuple[int, ...]], float]


def _rng(seed: int | np.random.Generator | None) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _check_states(cb: Codebook, s_seq: ArrayLike) -> NDArray[np.int_]:
    arr = np.asarray(s_seq, dtype=int)
    if arr.shape != (cb.n,):
        raise ValidationError(f"state sequence length {arr.size} differs from n={cb.n}")
    return arr


def likelihood_weights(cb: Codebook, m: int, s_seq: ArrayLike) -> NDArray[np.float64]:
    """Weights p^n(s | u_i, v_ijkm) indexed [i][j][k]."""
    s = _check_states(cb, s_seq)
    post = state_posterior(cb.joint)
    per_symbol = post[s[None, None, None, :], cb.u[:, None, None, :], cb.v[:, :, :, m, :]]
    return per_symbol.prod(axis=-1)


def likelihood_encode(
    cb: Codebook, m: int, s_seq: ArrayLike, seed: int | np.random.Generator | None = None
) -> Indices:
    """
    Sample (i, j, k) with probability proportional to p^n(s | u_i, v_ijkm).

    Raises:
        AtypicalStateError: If every candidate has zero weight.
    """
    weights = likelihood_weights(cb, m, s_seq)
    total = float(weights.sum())
    if total <= 0.0:
        raise AtypicalStateError(f"no codeword of message {m} is compatible with the state sequence")
    flat = int(_rng(seed).choice(weights.size, p=weights.ravel() / total))
    i, j, k = np.unravel_index(flat, weights.shape)
    return int(i), int(j), int(k)


def _selector_rows(cb: Codebook, s_seq: NDArray[np.int_], i: int, v_word: NDArray[np.int_]):
    selector = cb.joint.scheme.selector
    return selector[s_seq, cb.u[i], v_word]


def encode_inputs(
    cb: Codebook,
    indices: Indices,
    m: int,
    s_seq: ArrayLike,
    seed: int | np.random.Generator | None = None,
) -> NDArray[np.int_]:
    """Draw x_t from p(x | s_t, u_t, v_t) componentwise."""
    s = _check_states(cb, s_seq)
    i, j, k = indices
    rows = _selector_rows(cb, s, i, cb.v[i, j, k, m])
    rng = _rng(seed)
    return np.array([rng.choice(row.size, p=row) for row in rows], dtype=int)


class CausalEncoder:
    """
    Symbol-by-symbol encoder for designs embedding the state in V.

    The indices are drawn uniformly before the block starts; at time t
    the state copy of the chosen V-codeword is overwritten with s_t and
    x_t is drawn from the selector. The key is the pre-drawn k.
    """

    def __init__(self, cb: Codebook, m: int, seed: int | np.random.Generator | None = None):
        if not cb.mode.embeds_state_in_v:
            raise ValidationError(f"causal encoding needs a Case 2 design, got {cb.mode.value}")
        self.cb = cb
        self.m = m
        self.rng = _rng(seed)
        L, N, K, _ = cb.sizes
        flat = int(self.rng.integers(L * N * K))
        self.indices: Indices = tuple(int(a) for a in np.unravel_index(flat, (L, N, K)))  # type: ignore[assignment]
        self.t = 0

    @property
    def key(self) -> int:
        return self.indices[2]

    def step(self, s: int) -> int:
        """Emit x_t for the revealed state s_t."""
        cb = self.cb
        if self.t >= cb.n:
            raise ValidationError("state stream longer than the blocklength")
        i, j, k = self.indices
        inner = cb.v_inner
        v = s * inner + int(cb.v[i, j, k, self.m, self.t]) % inner
        row = cb.joint.scheme.selector[s, cb.u[i, self.t], v]
        self.t += 1
        return int(self.rng.choice(row.size, p=row))


def causal_encode(
    cb: Codebook, m: int, state_stream: Iterable[int], seed: int | np.random.Generator | None = None
) -> tuple[NDArray[np.int_], Indices]:
    """Run :class:`CausalEncoder` over a whole block."""
    encoder = CausalEncoder(cb, m, seed)
    xs = [encoder.step(int(s)) for s in state_stream]
    if len(xs) != cb.n:
        raise ValidationError(f"state stream of length {len(xs)} differs from n={cb.n}")
    return np.array(xs, dtype=int), encoder.indices


def channel_transmit(
    ch: WiretapChannel,
    s_seq: ArrayLike,
    x_seq: ArrayLike,
    seed: int | np.random.Generator | None = None,
) -> tuple[NDArray[np.int_], NDArray[np.int_]]:
    """
    Draw (y_t, z_t) from W(y, z | s_t, x_t) componentwise.

    Raises:
        ValidationError: On a length mismatch.
    """
    s = np.asarray(s_seq, dtype=int)
    x = np.asarray(x_seq, dtype=int)
    if s.shape != x.shape:
        raise ValidationError(f"length mismatch: {s.size} states vs {x.size} inputs")
    flat = ch.kernel.reshape(ch.s_size, ch.x_size, -1)
    cdf = np.cumsum(flat[s, x], axis=-1)
    draws = _rng(seed).random(s.size)
    idx = np.minimum((draws[:, None] >= cdf).sum(axis=-1), flat.shape[-1] - 1)
    return idx // ch.z_size, idx % ch.z_size


def _input_law(rows: NDArray[np.float64]) -> dict[tuple[int, ...], float]:
    law = {}
    for xs in itertools.product(range(rows.shape[-1]), repeat=rows.shape[0]):
        prob = float(np.prod([rows[t, x] for t, x in enumerate(xs)]))
        if prob > 0.0:
            law[xs] = prob
    return law


def likelihood_outcome_law(cb: Codebook, m: int, s_seq: ArrayLike) -> OutcomeLaw:
    """Exact law of (i, j, k, x^n) under likelihood encoding then input generation."""
    s = _check_states(cb, s_seq)
    weights = likelihood_weights(cb, m, s)
    total = float(weights.sum())
    if total <= 0.0:
        raise AtypicalStateError(f"no codeword of message {m} is compatible with the state sequence")
    law: OutcomeLaw = {}
    for (i, j, k), w in np.ndenumerate(weights):
        if w <= 0.0:
            continue
        for xs, px in _input_law(_selector_rows(cb, s, i, cb.v[i, j, k, m])).items():
            law[(i, j, k, xs)] = law.get((i, j, k, xs), 0.0) + w / total * px
    return law


def causal_outcome_law(cb: Codebook, m: int, s_seq: ArrayLike) -> OutcomeLaw:
    """Exact law of (i, j, k, x^n) under :class:`CausalEncoder`."""
    s = _check_states(cb, s_seq)
    substituted = substitute_state(cb, s)
    L, N, K, _ = cb.sizes
    uniform = 1.0 / (L * N * K)
    law: OutcomeLaw = {}
    for i, j, k in itertools.product(range(L), range(N), range(K)):
        rows = _selector_rows(substituted, s, i, substituted.v[i, j, k, m])
        for xs, px in _input_law(rows).items():
            law[(i, j, k, xs)] = law.get((i, j, k, xs), 0.0) + uniform * px
    return law


def outcome_law_distance(a: OutcomeLaw, b: OutcomeLaw) -> float:
    """Total variation between two outcome laws."""
    keys = set(a) | set(b)
    return 0.5 * sum(abs(a.get(key, 0.0) - b.get(key, 0.0)) for key in keys)
