"""
Reliability and secrecy metrics of a simulated code.

Exact mode enumerates state sequences, codeword indices and channel
outputs; Monte-Carlo mode runs independent trials on per-chunk random
substreams and reports Wilson intervals.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np
from numpy.typing import NDArray
from scipy.stats import binomtest

from ..channel import WiretapChannel
from ..measures import kl_divergence, mutual_information, total_variation
from ..scheme import JointSystem
from ..service.constants import DEFAULT_EPS, EXACT_GUARD
from ..service.exceptions import AtypicalStateError, GuardExceededError, ValidationError
from .codebook import Codebook, Rates, generate_codebook
from .decoder import DecodeStatus, typicality_decode
from .encoder import channel_transmit, encode_inputs, likelihood_encode, likelihood_weights

logger = logging.getLogger(__name__)

MODES = ("auto", "exact", "mc")
CONFIDENCE = 0.95


@dataclass(frozen=True)
class SimConfig:
    """
    Simulator tunables.

    Attributes:
        eps: Typicality slack of the decoder.
        guard: Largest enumeration allowed in exact mode.
        mode: ``auto`` picks exact when the enumeration fits the guard.
        trials: Monte-Carlo trials.
        threads: Worker threads for Monte-Carlo chunks.
        chunk: Trials per random substream.
        ba_tol: Stopping tolerance of the semantic-leakage iteration.
        ba_max_iter: Iteration cap of the semantic-leakage iteration.
    """

    eps: float = DEFAULT_EPS
    guard: int = EXACT_GUARD
    mode: str = "auto"
    trials: int = 1000
    threads: int = 1
    chunk: int = 100
    ba_tol: float = 1e-9
    ba_max_iter: int = 500

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValidationError(f"unknown mode {self.mode!r}; expected one of {', '.join(MODES)}")
        if self.eps <= 0.0:
            raise ValidationError(f"typicality slack {self.eps} must be positive")
        if self.trials < 1 or self.threads < 1 or self.chunk < 1:
            raise ValidationError("trials, threads and chunk must be positive")


@dataclass
class SimReport:
    """
    Metrics of one simulated code.

    Exact-mode values carry zero half-widths; Monte-Carlo leakage values
    are plug-in estimates without an interval.
    """

    mode: str
    n: int
    rates: Rates
    error_prob: float
    key_tv: float
    leakage_bits: float | None
    covering_div_bits: float | None
    seed: int
    trials: int = 0
    semantic_leakage_bits: float | None = None
    atypical_prob: float = 0.0
    decode_failures: dict[str, float] = field(default_factory=dict)
    halfwidths: dict[str, float | None] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "n": self.n,
            "rates": self.rates.as_dict(),
            "error_prob": self.error_prob,
            "key_tv": self.key_tv,
            "leakage_bits": self.leakage_bits,
            "semantic_leakage_bits": self.semantic_leakage_bits,
            "covering_div_bits": self.covering_div_bits,
            "atypical_prob": self.atypical_prob,
            "decode_failures": dict(self.decode_failures),
            "halfwidths": dict(self.halfwidths),
            "trials": self.trials,
            "seed": self.seed,
        }


def semantic_leakage(
    p_kz_given_m: NDArray[np.float64], tol: float = 1e-9, max_iter: int = 500
) -> tuple[float, NDArray[np.float64]]:
    """
    max over p_M of I(MK; Z), by alternating maximization.

    Args:
        p_kz_given_m: Laws of (K, Z) per message, indexed [m][k][z].
        tol: Stop when the capacity bracket is narrower than this.
        max_iter: Iteration cap.

    Returns:
        tuple: (leakage in bits, maximizing message law).
    """
    laws = np.asarray(p_kz_given_m, dtype=float)
    if laws.ndim != 3:
        raise ValidationError("message laws must be indexed [m][k][z]")
    n_m = laws.shape[0]
    eve = laws.sum(axis=1)
    key_leak = np.array([mutual_information(laws[m]) for m in range(n_m)])
    p_m = np.full(n_m, 1.0 / n_m)
    best = (0.0, p_m)
    for _ in range(max_iter):
        q_z = p_m @ eve
        gains = np.array([kl_divergence(eve[m], q_z) for m in range(n_m)]) + key_leak
        lower = float(p_m @ gains)
        if lower >= best[0]:
            best = (lower, p_m)
        if float(gains.max()) - lower <= tol:
            break
        p_m = p_m * np.exp2(gains - gains.max())
        p_m = p_m / p_m.sum()
    return best


def _sequences(size: int, n: int) -> NDArray[np.int_]:
    return np.array(list(itertools.product(range(size), repeat=n)), dtype=int).reshape(-1, n)


def _wilson(successes: int, trials: int) -> float:
    low, high = binomtest(successes, trials).proportion_ci(CONFIDENCE, method="wilson")
    return float(high - low) / 2.0


def exact_outcome_size(ch: WiretapChannel, cb: Codebook) -> int:
    L, N, K, M = cb.sizes
    return M * ch.s_size**cb.n * L * N * K * (ch.y_size**cb.n + ch.z_size**cb.n)


def _output_laws(cb: Codebook, ch: WiretapChannel):
    """Per-symbol laws of Y and Z given (s, u, v) of the code's joint."""
    selector = cb.joint.scheme.selector
    yz = np.einsum("suvx,sxyz->suvyz", selector, ch.kernel)
    return yz.sum(axis=4), yz.sum(axis=3)


def _sequence_law(per_symbol, s_seqs, u, v_m, outputs) -> NDArray[np.float64]:
    """p(out^n | s^n, i, j, k) indexed [s^n][i][j][k][out^n]."""
    n = s_seqs.shape[1]
    law = np.ones((s_seqs.shape[0],) + v_m.shape[:3] + (outputs.shape[0],))
    for t in range(n):
        rows = per_symbol[
            s_seqs[:, t][:, None, None, None, None],
            u[:, t][None, :, None, None, None],
            v_m[..., t][None, :, :, :, None],
            outputs[:, t][None, None, None, None, :],
        ]
        law *= rows
    return law


def _realized_covering(cb: Codebook, s_seqs, p_sn) -> float:
    worst = 0.0
    for m in range(cb.sizes[3]):
        q = np.array([likelihood_weights(cb, m, s).mean() for s in s_seqs])
        worst = max(worst, kl_divergence(q, p_sn))
    return worst


def _run_exact(ch: WiretapChannel, cb: Codebook, cfg: SimConfig, seed: int) -> SimReport:
    L, N, K, M = cb.sizes
    n = cb.n
    s_seqs = _sequences(ch.s_size, n)
    p_sn = np.prod(ch.state_dist[s_seqs], axis=1)
    y_seqs = _sequences(ch.y_size, n)
    z_seqs = _sequences(ch.z_size, n)
    w_y, w_z = _output_laws(cb, ch)

    decoded = [typicality_decode(cb, y, cfg.eps) for y in y_seqs]
    dec_km = np.array([(d.k, d.m) if d.ok else (-1, -1) for d in decoded])
    status = np.array([d.status.value for d in decoded])

    errors = np.zeros(M)
    key_laws = np.zeros((M, K))
    eve_laws = np.zeros((M, K, z_seqs.shape[0]))
    failures = {DecodeStatus.NONE.value: 0.0, DecodeStatus.MULTIPLE.value: 0.0}
    atypical = 0.0
    for m in range(M):
        weights = np.stack([likelihood_weights(cb, m, s) for s in s_seqs])
        totals = weights.sum(axis=(1, 2, 3))
        dead = totals <= 0.0
        atypical += float(p_sn[dead].sum()) / M
        with np.errstate(invalid="ignore", divide="ignore"):
            enc = np.where(
                dead[:, None, None, None], 1.0 / (L * N * K), weights / totals[:, None, None, None]
            )
        joint_enc = p_sn[:, None, None, None] * enc
        live_enc = np.where(dead[:, None, None, None], 0.0, joint_enc)

        y_law = _sequence_law(w_y, s_seqs, cb.u, cb.v[:, :, :, m, :], y_seqs)
        p_y_given_k = np.einsum("sijk,sijky->ky", live_enc, y_law)
        for key in range(K):
            right = (dec_km[:, 0] == key) & (dec_km[:, 1] == m)
            errors[m] += float(p_y_given_k[key, ~right].sum())
        p_y = p_y_given_k.sum(axis=0)
        for name in failures:
            failures[name] += float(p_y[status == name].sum()) / M
        errors[m] += float(p_sn[dead].sum())

        key_laws[m] = joint_enc.sum(axis=(0, 1, 2))
        z_law = _sequence_law(w_z, s_seqs, cb.u, cb.v[:, :, :, m, :], z_seqs)
        eve_laws[m] = np.einsum("sijk,sijkz->kz", joint_enc, z_law)

    uniform_key = np.full(K, 1.0 / K)
    key_tv = max(total_variation(key_laws[m], uniform_key) for m in range(M))
    leakage = mutual_information(eve_laws.reshape(M * K, -1) / M)
    semantic, _ = semantic_leakage(eve_laws, cfg.ba_tol, cfg.ba_max_iter)
    covering = _realized_covering(cb, s_seqs, p_sn)
    zero = {"error_prob": 0.0, "key_tv": 0.0, "leakage_bits": 0.0}
    return SimReport(
        mode="exact",
        n=n,
        rates=cb.rates,
        error_prob=float(errors.max()),
        key_tv=float(key_tv),
        leakage_bits=float(leakage),
        covering_div_bits=float(covering),
        seed=seed,
        semantic_leakage_bits=float(semantic),
        atypical_prob=atypical,
        decode_failures=failures,
        halfwidths=zero,
    )


@dataclass
class _Counts:
    errors: NDArray[np.int_]
    sent: NDArray[np.int_]
    keys: NDArray[np.int_]
    atypical: int = 0
    failures: dict[str, int] = field(default_factory=dict)
    observations: dict[tuple, int] = field(default_factory=dict)

    @classmethod
    def empty(cls, M: int, K: int) -> _Counts:
        return cls(np.zeros(M, dtype=int), np.zeros(M, dtype=int), np.zeros((M, K), dtype=int))

    def merge(self, other: _Counts) -> None:
        self.errors += other.errors
        self.sent += other.sent
        self.keys += other.keys
        self.atypical += other.atypical
        for name, value in other.failures.items():
            self.failures[name] = self.failures.get(name, 0) + value
        for key, value in other.observations.items():
            self.observations[key] = self.observations.get(key, 0) + value


def _run_chunk(
    ch: WiretapChannel, cb: Codebook, cfg: SimConfig, first: int, count: int, seed
) -> _Counts:
    _, _, K, M = cb.sizes
    rng = np.random.default_rng(seed)
    counts = _Counts.empty(M, K)
    for trial in range(first, first + count):
        m = trial % M
        counts.sent[m] += 1
        s_seq = rng.choice(ch.s_size, size=cb.n, p=ch.state_dist)
        try:
            indices = likelihood_encode(cb, m, s_seq, rng)
        except AtypicalStateError:
            counts.atypical += 1
            counts.errors[m] += 1
            continue
        x_seq = encode_inputs(cb, indices, m, s_seq, rng)
        y_seq, z_seq = channel_transmit(ch, s_seq, x_seq, rng)
        result = typicality_decode(cb, y_seq, cfg.eps)
        k = indices[2]
        counts.keys[m, k] += 1
        if not result.ok:
            counts.failures[result.status.value] = counts.failures.get(result.status.value, 0) + 1
        if (result.k, result.m) != (k, m) or not result.ok:
            counts.errors[m] += 1
        key = (m, k, tuple(int(z) for z in z_seq))
        counts.observations[key] = counts.observations.get(key, 0) + 1
    return counts


def _plugin_leakage(observations: dict[tuple, int]) -> float:
    if not observations:
        return 0.0
    mk = sorted({key[:2] for key in observations})
    zs = sorted({key[2] for key in observations})
    mk_idx = {value: i for i, value in enumerate(mk)}
    z_idx = {value: i for i, value in enumerate(zs)}
    table = np.zeros((len(mk), len(zs)))
    for (m, k, z), count in observations.items():
        table[mk_idx[(m, k)], z_idx[z]] += count
    return mutual_information(table / table.sum())


def _run_monte_carlo(ch: WiretapChannel, cb: Codebook, cfg: SimConfig, seed: int) -> SimReport:
    _, _, K, M = cb.sizes
    starts = list(range(0, cfg.trials, cfg.chunk))
    seeds = np.random.SeedSequence(seed).spawn(len(starts) + 1)[1:]
    jobs = [(start, min(cfg.chunk, cfg.trials - start), s) for start, s in zip(starts, seeds)]

    def work(job) -> _Counts:
        return _run_chunk(ch, cb, cfg, *job)

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            parts = list(pool.map(work, jobs))
    else:
        parts = [work(job) for job in jobs]
    total = _Counts.empty(M, K)
    for part in parts:
        total.merge(part)

    sent = np.maximum(total.sent, 1)
    rates = total.errors / sent
    worst = int(np.argmax(rates))
    uniform_key = np.full(K, 1.0 / K)
    observed = [m for m in range(M) if total.keys[m].sum() > 0]
    key_tv = max(
        (total_variation(total.keys[m] / total.keys[m].sum(), uniform_key) for m in observed),
        default=1.0,
    )
    failures = {
        name: total.failures.get(name, 0) / cfg.trials
        for name in (DecodeStatus.NONE.value, DecodeStatus.MULTIPLE.value)
    }
    return SimReport(
        mode="mc",
        n=cb.n,
        rates=cb.rates,
        error_prob=float(rates[worst]),
        key_tv=float(key_tv),
        leakage_bits=_plugin_leakage(total.observations),
        covering_div_bits=None,
        seed=seed,
        trials=cfg.trials,
        atypical_prob=total.atypical / cfg.trials,
        decode_failures=failures,
        halfwidths={
            "error_prob": _wilson(int(total.errors[worst]), int(sent[worst])),
            "atypical_prob": _wilson(total.atypical, cfg.trials),
            "key_tv": None,
            "leakage_bits": None,
        },
    )


def run_trials(
    ch: WiretapChannel,
    j: JointSystem,
    n: int,
    rates: Rates | Sequence[float],
    seed: int,
    cfg: SimConfig | None = None,
) -> SimReport:
    """
    Draw a codebook for ``j`` and measure it on ``ch``.

    Raises:
        GuardExceededError: If exact mode is requested and the enumeration
            exceeds the guard.
    """
    cfg = cfg or SimConfig()
    rates = rates if isinstance(rates, Rates) else Rates(*rates)
    code_seed, run_seed = np.random.SeedSequence(seed).generate_state(2)
    cb = generate_codebook(j, n, rates, int(code_seed))
    size = exact_outcome_size(ch, cb)
    mode = cfg.mode
    if mode == "auto":
        mode = "exact" if size <= cfg.guard else "mc"
    if mode == "exact":
        if size > cfg.guard:
            raise GuardExceededError(
                f"exact enumeration of {size} outcomes exceeds the guard {cfg.guard}; use mode mc"
            )
        logger.debug("exact simulation over %d outcomes", size)
        report = _run_exact(ch, cb, cfg, seed)
    else:
        logger.debug("Monte-Carlo simulation with %d trials", cfg.trials)
        report = _run_monte_carlo(ch, cb, cfg, int(run_seed))
        report.seed = seed
    logger.info(
        "%s n=%d: error %.4g, key TV %.4g, leakage %s",
        report.mode,
        n,
        report.error_prob,
        report.key_tv,
        report.leakage_bits,
    )
    return report
