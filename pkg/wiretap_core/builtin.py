"""
Registry of the binary example channels and a few small constructors.

Every registry entry is a factory taking keyword parameters and returning
a validated :class:`~wiretap_core.channel.WiretapChannel`.
"""

from __future__ import annotations

import logging
from typing import Callable

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import brentq

from .channel import WiretapChannel
from .measures import binary_entropy
from .service.exceptions import ValidationError

logger = logging.getLogger(__name__)


def binary_symmetric(flip: float) -> NDArray[np.float64]:
    """Transition matrix [x][y] of a binary symmetric channel."""
    if not 0.0 <= flip <= 1.0:
        raise ValidationError(f"flip probability {flip} outside [0, 1]")
    return np.array([[1.0 - flip, flip], [flip, 1.0 - flip]])


def bernoulli_with_entropy(target: float) -> float:
    """
    The p in [0, 1/2] with h(p) = ``target``.

    Raises:
        ValidationError: If ``target`` lies outside [0, 1].
    """
    if not 0.0 <= target <= 1.0:
        raise ValidationError(f"binary entropy target {target} outside [0, 1]")
    if target == 0.0:
        return 0.0
    if target == 1.0:
        return 0.5
    return float(brentq(lambda p: binary_entropy(p) - target, 0.0, 0.5, xtol=1e-15))


def parallel_outputs(
    state_dist: NDArray[np.float64],
    bob: NDArray[np.float64],
    eve: NDArray[np.float64],
    name: str,
) -> WiretapChannel:
    """State-independent channel whose outputs are drawn independently given X."""
    kernel = bob[:, :, None] * eve[:, None, :]
    return WiretapChannel(
        state_dist, np.broadcast_to(kernel, (len(state_dist),) + kernel.shape), name=name
    )


def cascade_outputs(
    state_dist: NDArray[np.float64],
    bob: NDArray[np.float64],
    degrade: NDArray[np.float64],
    name: str,
) -> WiretapChannel:
    """State-independent channel with Z obtained from Y through ``degrade``."""
    kernel = bob[:, :, None] * degrade[None, :, :]
    return WiretapChannel(
        state_dist, np.broadcast_to(kernel, (len(state_dist),) + kernel.shape), name=name
    )


def _binary_state(entropy_bits: float) -> NDArray[np.float64]:
    p = bernoulli_with_entropy(entropy_bits)
    return np.array([1.0 - p, p])


def fig5(flip: float = 0.1) -> WiretapChannel:
    """Eve sees X noiselessly, Bob through a flip; H(S) = 1 - h(flip)."""
    state = _binary_state(1.0 - binary_entropy(flip))
    return parallel_outputs(state, binary_symmetric(flip), np.eye(2), name="fig5")


def fig6(flip: float = 0.1) -> WiretapChannel:
    """Degraded binary channel without state: Y = X, Z = Y through a flip."""
    return cascade_outputs(np.ones(1), np.eye(2), binary_symmetric(flip), name="fig6")


def fig7(flip: float = 0.1, state_flip: float = 0.2) -> WiretapChannel:
    """
    Reversely degraded family: Eve sees X, Bob through ``flip``.

    The state is binary with H(S) = 1 - h(``state_flip``).
    """
    state = _binary_state(1.0 - binary_entropy(state_flip))
    return parallel_outputs(
        state, binary_symmetric(flip), np.eye(2), name=f"fig7(flip={flip:g})"
    )


def xor_state(state_bias: float = 0.5) -> WiretapChannel:
    """Noiseless Y = X xor S with a constant eavesdropper output."""
    state = np.array([1.0 - state_bias, state_bias])
    kernel = np.zeros((2, 2, 2, 1))
    for s in range(2):
        for x in range(2):
            kernel[s, x, x ^ s, 0] = 1.0
    return WiretapChannel(state, kernel, name="xor_state")


def same_outputs(flip: float = 0.1) -> WiretapChannel:
    """Stateless binary channel where Eve receives exactly Bob's output."""
    return cascade_outputs(np.ones(1), binary_symmetric(flip), np.eye(2), name="same_outputs")


BUILTINS: dict[str, Callable[..., WiretapChannel]] = {
    "fig5": fig5,
    "fig6": fig6,
    "fig7": fig7,
    "xor_state": xor_state,
    "same_outputs": same_outputs,
}


def builtin_example(name: str, **params: float) -> WiretapChannel:
    """
    Build a registry channel by name.

    Raises:
        ValidationError: On an unknown name or parameter.
    """
    factory = BUILTINS.get(name)
    if factory is None:
        raise ValidationError(
            f"unknown builtin channel {name!r}; expected one of {', '.join(sorted(BUILTINS))}"
        )
    try:
        channel = factory(**params)
    except TypeError as err:
        raise ValidationError(f"bad parameters for builtin {name!r}: {err}") from err
    logger.debug("built %s", channel)
    return channel
