"""
This module contains the finite-alphabet wiretap channel with state,
its JSON file format, the degradedness test and the reduction of
correlated side information at the three terminals.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.optimize import linprog

from .measures import validate_distribution
from .service.constants import DEGRADED_TOL, PROB_TOL, ZERO_TOL
from .service.exceptions import ChannelFormatError, ValidationError

logger = logging.getLogger(__name__)

ALPHABET_KEYS = ("S", "X", "Y", "Z")


class Degradedness(str, Enum):
    """Outcome of :func:`check_degraded`."""

    DEGRADED = "Degraded"
    REVERSELY_DEGRADED = "ReverselyDegraded"
    NEITHER = "Neither"


def _frozen(values: ArrayLike) -> NDArray[np.float64]:
    arr = np.array(values, dtype=float, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class WiretapChannel:
    """
    Wiretap channel ``(S, X, Y, Z, W_S, W_YZ|SX)``.

    The kernel is indexed ``[s][x][y][z]``; both arrays are read-only
    after construction.

    Attributes:
        state_dist: W_S, shape (|S|,).
        kernel: W_YZ|SX, shape (|S|, |X|, |Y|, |Z|).
        name: Optional label used in logs and ledger records.
    """

    state_dist: NDArray[np.float64]
    kernel: NDArray[np.float64]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        state = _frozen(self.state_dist)
        kernel = _frozen(self.kernel)
        if state.ndim != 1:
            raise ValidationError("state_dist must be one-dimensional")
        if kernel.ndim != 4:
            raise ValidationError(
                f"dimension mismatch: kernel must be indexed [s][x][y][z], got {kernel.ndim} axes"
            )
        if kernel.shape[0] != state.size:
            raise ValidationError(
                f"dimension mismatch: kernel has {kernel.shape[0]} state rows, "
                f"state_dist has {state.size} entries"
            )
        validate_distribution(state, "state_dist")
        for s in range(kernel.shape[0]):
            for x in range(kernel.shape[1]):
                validate_distribution(kernel[s, x], f"kernel row (s={s}, x={x})")
        object.__setattr__(self, "state_dist", state)
        object.__setattr__(self, "kernel", kernel)

    def __str__(self):
        sizes = "x".join(str(i) for i in self.sizes)
        return f"<{self.__class__.__name__} {self.name or 'unnamed'} {sizes}>"

    @property
    def sizes(self) -> tuple[int, int, int, int]:
        """(|S|, |X|, |Y|, |Z|)"""
        return tuple(int(i) for i in self.kernel.shape)  # type: ignore[return-value]

    @property
    def s_size(self) -> int:
        return self.kernel.shape[0]

    @property
    def x_size(self) -> int:
        return self.kernel.shape[1]

    @property
    def y_size(self) -> int:
        return self.kernel.shape[2]

    @property
    def z_size(self) -> int:
        return self.kernel.shape[3]

    @property
    def bob_kernel(self) -> NDArray[np.float64]:
        """W_Y|SX indexed [s][x][y]."""
        return self.kernel.sum(axis=3)

    @property
    def eve_kernel(self) -> NDArray[np.float64]:
        """W_Z|SX indexed [s][x][z]."""
        return self.kernel.sum(axis=2)

    def equals(self, other: WiretapChannel, tol: float = PROB_TOL) -> bool:
        """Entrywise comparison of sizes, state distribution and kernel."""
        return (
            self.sizes == other.sizes
            and np.allclose(self.state_dist, other.state_dist, atol=tol, rtol=0.0)
            and np.allclose(self.kernel, other.kernel, atol=tol, rtol=0.0)
        )


def channel_from_dict(data: dict[str, Any], name: str = "") -> WiretapChannel:
    """
    Build a channel from the JSON layout
    ``{alphabets: {S, X, Y, Z}, state_dist: [...], kernel: [s][x][y][z]}``.

    Raises:
        ChannelFormatError: On missing fields or arrays whose shape does
            not match the declared alphabets.
        ValidationError: On negative or non-stochastic rows.
    """
    try:
        alphabets = data["alphabets"]
        sizes = tuple(int(alphabets[key]) for key in ALPHABET_KEYS)
        state = np.asarray(data["state_dist"], dtype=float)
        kernel = np.asarray(data["kernel"], dtype=float)
    except KeyError as err:
        raise ChannelFormatError(f"missing field {err.args[0]!r}") from err
    except (TypeError, ValueError) as err:
        raise ChannelFormatError(f"malformed array: {err}") from err

    if any(size < 1 for size in sizes):
        raise ChannelFormatError(f"alphabet sizes must be positive, got {sizes}")
    if state.shape != (sizes[0],):
        raise ChannelFormatError(
            f"dimension mismatch: state_dist has shape {state.shape}, expected ({sizes[0]},)"
        )
    if kernel.shape != sizes:
        raise ChannelFormatError(
            f"dimension mismatch: kernel has shape {kernel.shape}, expected {sizes}"
        )
    return WiretapChannel(state, kernel, name=data.get("name", name))


def channel_to_dict(ch: WiretapChannel) -> dict[str, Any]:
    """Inverse of :func:`channel_from_dict`."""
    return {
        "name": ch.name,
        "alphabets": dict(zip(ALPHABET_KEYS, ch.sizes)),
        "state_dist": ch.state_dist.tolist(),
        "kernel": ch.kernel.tolist(),
    }


def read_json(path: str | Path) -> Any:
    """
    Read a JSON document, reporting syntax errors with line context.

    Raises:
        OSError: If the file cannot be read.
        ChannelFormatError: If the text is not valid JSON.
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        line = text.splitlines()[err.lineno - 1] if text else ""
        raise ChannelFormatError(
            f"{path}:{err.lineno}:{err.colno}: {err.msg}: {line.strip()!r}"
        ) from err


def load_channel(path: str | Path) -> WiretapChannel:
    """Read and validate a channel spec file."""
    data = read_json(path)
    if not isinstance(data, dict):
        raise ChannelFormatError(f"{path}: top-level value must be an object")
    channel = channel_from_dict(data, name=Path(path).stem)
    logger.debug("loaded %s from %s", channel, path)
    return channel


def save_channel(ch: WiretapChannel, path: str | Path) -> None:
    """Write ``ch`` in the normative JSON layout."""
    Path(path).write_text(json.dumps(channel_to_dict(ch), indent=2), encoding="utf-8")


def swap_receivers(ch: WiretapChannel) -> WiretapChannel:
    """Exchange the roles of Bob's and Eve's outputs."""
    return WiretapChannel(
        ch.state_dist, np.transpose(ch.kernel, (0, 1, 3, 2)), name=f"{ch.name}~swap"
    )


def _min_degradation_residual(
    source: NDArray[np.float64], target: NDArray[np.float64]
) -> float:
    """
    Smallest L1 residual of ``target = source @ Q`` over stochastic Q.

    ``source`` is W(y|x) indexed [x][y], ``target`` is W(z|x) indexed [x][z].
    """
    x_size, y_size = source.shape
    z_size = target.shape[1]
    n_q = y_size * z_size
    n_t = x_size * z_size

    # variables: Q[y, z] row-major, then t_plus, then t_minus
    a_eq = np.zeros((n_t + y_size, n_q + 2 * n_t))
    b_eq = np.zeros(n_t + y_size)
    for x in range(x_size):
        for z in range(z_size):
            row = x * z_size + z
            for y in range(y_size):
                a_eq[row, y * z_size + z] = source[x, y]
            a_eq[row, n_q + row] = -1.0
            a_eq[row, n_q + n_t + row] = 1.0
            b_eq[row] = target[x, z]
    for y in range(y_size):
        a_eq[n_t + y, y * z_size : (y + 1) * z_size] = 1.0
        b_eq[n_t + y] = 1.0

    cost = np.concatenate([np.zeros(n_q), np.ones(2 * n_t)])
    res = linprog(cost, A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if not res.success:
        logger.debug("degradation LP failed: %s", res.message)
        return float("inf")
    return float(res.fun)


def _is_degraded(bob: NDArray[np.float64], eve: NDArray[np.float64], state) -> bool:
    for s in range(bob.shape[0]):
        if state[s] <= ZERO_TOL:
            continue
        if _min_degradation_residual(bob[s], eve[s]) > DEGRADED_TOL:
            return False
    return True


def check_degraded(ch: WiretapChannel) -> Degradedness:
    """
    Classify the channel by per-state physical degradedness.

    ``Degraded`` means a stochastic map Q(z|y,s) with
    W_Z|SX = sum_y W_Y|SX Q exists for every state of positive
    probability. When both directions hold (for example Z identical to
    Y) the channel is reported as ``Degraded``, and so is its
    :func:`swap_receivers` image. ``ReverselyDegraded`` after a swap is
    therefore guaranteed only for channels that are degraded in one
    direction alone.
    """
    bob, eve = ch.bob_kernel, ch.eve_kernel
    if _is_degraded(bob, eve, ch.state_dist):
        return Degradedness.DEGRADED
    if _is_degraded(eve, bob, ch.state_dist):
        return Degradedness.REVERSELY_DEGRADED
    return Degradedness.NEITHER


def side_info_from_dict(data: dict[str, Any], s_size: int) -> NDArray[np.float64]:
    """
    Parse ``{alphabets: {Sa, Sb, Se}, kernel: [s][sa][sb][se]}``.

    Raises:
        ChannelFormatError: On missing fields or mismatched shapes.
        ValidationError: On non-stochastic rows.
    """
    try:
        sizes = tuple(int(data["alphabets"][key]) for key in ("Sa", "Sb", "Se"))
        kernel = np.asarray(data["kernel"], dtype=float)
    except KeyError as err:
        raise ChannelFormatError(f"missing field {err.args[0]!r}") from err
    except (TypeError, ValueError) as err:
        raise ChannelFormatError(f"malformed array: {err}") from err
    if kernel.shape != (s_size, *sizes):
        raise ChannelFormatError(
            f"dimension mismatch: side information has shape {kernel.shape}, "
            f"expected {(s_size, *sizes)}"
        )
    for s in range(s_size):
        validate_distribution(kernel[s], f"side information row (s={s})")
    return kernel


def load_side_info(path: str | Path, s_size: int) -> NDArray[np.float64]:
    """Read a side-information kernel p(sa, sb, se | s) from JSON."""
    data = read_json(path)
    if not isinstance(data, dict):
        raise ChannelFormatError(f"{path}: top-level value must be an object")
    return side_info_from_dict(data, s_size)


def transform_general_csi(
    ch: WiretapChannel, side_info: ArrayLike
) -> WiretapChannel:
    """
    Reduce a channel whose terminals observe correlated side
    information ``(S_a, S_b, S_e)`` to a channel with state ``S_a``
    known to Alice only.

    The new kernel is
    W'(sb y, se z | sa, x) = sum_s p(s, sb, se | sa) W(y, z | s, x),
    Bob's output becomes ``(S_b, Y)`` with index ``sb*|Y| + y`` and
    Eve's ``(S_e, Z)`` with index ``se*|Z| + z``. Values of ``S_a``
    with zero probability get the state-averaged mixture.

    Args:
        ch: Channel with state S.
        side_info: p(sa, sb, se | s) indexed [s][sa][sb][se].

    Raises:
        ValidationError: If the side information does not match |S| or
            has non-stochastic rows.
    """
    kernel = np.asarray(side_info, dtype=float)
    if kernel.ndim != 4 or kernel.shape[0] != ch.s_size:
        raise ValidationError(
            f"dimension mismatch: side information must be indexed [s][sa][sb][se] "
            f"with {ch.s_size} state rows, got shape {kernel.shape}"
        )
    for s in range(ch.s_size):
        validate_distribution(kernel[s], f"side information row (s={s})")

    _, sa_size, sb_size, se_size = kernel.shape
    joint = ch.state_dist[:, None, None, None] * kernel
    p_sa = joint.sum(axis=(0, 2, 3))
    fallback = joint.sum(axis=1)

    posterior = np.empty((sa_size, ch.s_size, sb_size, se_size))
    for sa in range(sa_size):
        if p_sa[sa] > ZERO_TOL:
            posterior[sa] = joint[:, sa] / p_sa[sa]
        else:
            posterior[sa] = fallback

    # out[sa, x, sb, y, se, z]
    out = np.einsum("aibe,ixyz->axbyez", posterior, ch.kernel)
    new_kernel = out.reshape(sa_size, ch.x_size, sb_size * ch.y_size, se_size * ch.z_size)
    new_state = p_sa / p_sa.sum()
    return WiretapChannel(new_state, new_kernel, name=f"{ch.name}~csi")
