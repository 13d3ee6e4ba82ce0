"""
Auxiliary input designs and the joint distributions they induce.

A design fixes the law of the auxiliaries (U, V), possibly correlated
with the state S, plus a selector p(x|s,u,v). Together with the channel
it determines the six-way joint over (S, U, V, X, Y, Z).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .channel import WiretapChannel, read_json
from .measures import LN2, validate_distribution
from .service.constants import PROB_TOL, ZERO_TOL
from .service.exceptions import ChannelFormatError, ValidationError

logger = logging.getLogger(__name__)

AXES = {"S": 0, "U": 1, "V": 2, "X": 3, "Y": 4, "Z": 5}


class SchemeMode(str, Enum):
    """Structure of a design; ``Case4`` is accepted as an alias of ``Case3``."""

    NON_CAUSAL = "NonCausal"
    CASE1 = "Case1"
    CASE2 = "Case2"
    CASE2A = "Case2A"
    CASE2B = "Case2B"
    CASE3 = "Case3"

    @classmethod
    def parse(cls, name: str) -> SchemeMode:
        """Look a mode up by name, resolving the Case4 alias."""
        if name == "Case4":
            return cls.CASE3
        try:
            return cls(name)
        except ValueError as err:
            valid = ", ".join(m.value for m in cls)
            raise ValidationError(f"unknown scheme mode {name!r}; expected one of {valid}") from err

    @property
    def is_causal(self) -> bool:
        return self is not SchemeMode.NON_CAUSAL

    @property
    def embeds_state_in_v(self) -> bool:
        """Modes whose codeword layer V carries a copy of the state."""
        return self in (SchemeMode.CASE2, SchemeMode.CASE2A, SchemeMode.CASE2B)


def _frozen(values: ArrayLike) -> NDArray[np.float64]:
    arr = np.array(values, dtype=float, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class AuxiliaryScheme:
    """
    Input design over (S, U, V, X).

    Attributes:
        mode: Structural mode of the design.
        input_dist: p(s,u,v) indexed [s][u][v] for ``NonCausal``;
            p(u,v) indexed [u][v] for causal modes, where S is independent
            of (U, V) by construction.
        selector: p(x|s,u,v) indexed [s][u][v][x].
    """

    mode: SchemeMode
    input_dist: NDArray[np.float64]
    selector: NDArray[np.float64]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        mode = SchemeMode.parse(self.mode) if isinstance(self.mode, str) else self.mode
        object.__setattr__(self, "mode", mode)
        dist = _frozen(self.input_dist)
        sel = _frozen(self.selector)
        expected_ndim = 3 if mode is SchemeMode.NON_CAUSAL else 2
        if dist.ndim != expected_ndim:
            raise ValidationError(
                f"{mode.value} input_dist needs {expected_ndim} axes, got {dist.ndim}"
            )
        if sel.ndim != 4:
            raise ValidationError("selector must be indexed [s][u][v][x]")
        if sel.shape[1:3] != dist.shape[-2:]:
            raise ValidationError(
                f"alphabet mismatch: selector U,V sizes {sel.shape[1:3]} "
                f"vs input_dist {dist.shape[-2:]}"
            )
        if mode is SchemeMode.NON_CAUSAL and dist.shape[0] != sel.shape[0]:
            raise ValidationError(
                f"alphabet mismatch: input_dist has {dist.shape[0]} states, selector {sel.shape[0]}"
            )
        validate_distribution(dist, "input_dist")
        for idx in np.ndindex(*sel.shape[:3]):
            validate_distribution(sel[idx], f"selector row (s,u,v)={idx}")
        if mode is SchemeMode.CASE2A and dist.shape[-2] != 1:
            raise ValidationError("Case2A requires |U| = 1")
        if mode is SchemeMode.CASE2B and dist.shape[-1] != 1:
            raise ValidationError("Case2B requires |V| = 1")
        object.__setattr__(self, "input_dist", dist)
        object.__setattr__(self, "selector", sel)

    def __str__(self):
        return (
            f"<{self.__class__.__name__} {self.mode.value} "
            f"U={self.u_size} V={self.v_size}{' ' + self.label if self.label else ''}>"
        )

    @property
    def u_size(self) -> int:
        return self.selector.shape[1]

    @property
    def v_size(self) -> int:
        return self.selector.shape[2]

    @property
    def s_size(self) -> int:
        return self.selector.shape[0]

    @property
    def x_size(self) -> int:
        return self.selector.shape[3]

    def input_joint(self, state_dist: NDArray[np.float64]) -> NDArray[np.float64]:
        """p(s,u,v) for this design under state law ``state_dist``."""
        if self.mode is SchemeMode.NON_CAUSAL:
            return np.asarray(self.input_dist)
        return state_dist[:, None, None] * self.input_dist[None, :, :]

    def entropy_bits(self) -> float:
        """Entropy of the free design masses, used to break optimizer ties."""
        masses = np.concatenate([self.input_dist.ravel(), self.selector.ravel()])
        masses = masses[masses > ZERO_TOL]
        return float(-(masses * np.log(masses)).sum() / LN2)


class JointSystem:
    """
    The joint law p(s,u,v,x,y,z) induced by a design on a channel.

    Measures are addressed by variable letters, e.g.
    ``j.mi("SV", "Y", given="U")`` is I(SV;Y|U). Entropies of axis
    subsets are cached.
    """

    def __init__(self, tensor: NDArray[np.float64], scheme: AuxiliaryScheme, channel: WiretapChannel):
        self.tensor = _frozen(tensor)
        self.scheme = scheme
        self.channel = channel
        self._entropies: dict[frozenset[int], float] = {}

    def __str__(self):
        return f"<{self.__class__.__name__} {self.scheme.mode.value} shape={self.tensor.shape}>"

    @property
    def mode(self) -> SchemeMode:
        return self.scheme.mode

    @staticmethod
    def _axes(variables: str) -> frozenset[int]:
        try:
            return frozenset(AXES[v] for v in variables)
        except KeyError as err:
            raise ValidationError(f"unknown variable {err.args[0]!r}; use letters of SUVXYZ") from err

    def marginal(self, variables: str) -> NDArray[np.float64]:
        """Marginal tensor over ``variables`` in the order given."""
        axes = [AXES[v] for v in variables]
        drop = tuple(a for a in range(6) if a not in axes)
        out = self.tensor.sum(axis=drop) if drop else self.tensor
        present = sorted(axes)
        return np.transpose(out, [present.index(a) for a in axes])

    def _entropy_of(self, axes: frozenset[int]) -> float:
        if not axes:
            return 0.0
        cached = self._entropies.get(axes)
        if cached is None:
            drop = tuple(a for a in range(5, -1, -1) if a not in axes)
            masses = self.tensor
            for axis in drop:
                masses = masses.sum(axis=axis)
            masses = masses[masses > ZERO_TOL]
            cached = float(-(masses * np.log(masses)).sum() / LN2)
            self._entropies[axes] = cached
        return cached

    def h(self, variables: str, given: str = "") -> float:
        """H(variables | given) in bits."""
        a, c = self._axes(variables), self._axes(given)
        return self._entropy_of(a | c) - self._entropy_of(c)

    def mi(self, a: str, b: str, given: str = "", clamp: bool = True) -> float:
        """I(a; b | given) in bits, clamped at zero unless ``clamp`` is False."""
        ax, bx, cx = self._axes(a), self._axes(b), self._axes(given)
        value = (
            self._entropy_of(ax | cx)
            + self._entropy_of(bx | cx)
            - self._entropy_of(ax | bx | cx)
            - self._entropy_of(cx)
        )
        return max(value, 0.0) if clamp else value


def build_joint(ch: WiretapChannel, aux: AuxiliaryScheme) -> JointSystem:
    """
    p(s,u,v,x,y,z) = p_in(s,u,v) p(x|s,u,v) W(y,z|s,x).

    Raises:
        ValidationError: On an alphabet mismatch, or when a NonCausal
            design's state marginal differs from W_S.
    """
    if aux.s_size != ch.s_size or aux.x_size != ch.x_size:
        raise ValidationError(
            f"alphabet mismatch: design has |S|={aux.s_size}, |X|={aux.x_size}; "
            f"channel has |S|={ch.s_size}, |X|={ch.x_size}"
        )
    if aux.mode is SchemeMode.NON_CAUSAL:
        p_s = aux.input_dist.sum(axis=(1, 2))
        gap = float(np.abs(p_s - ch.state_dist).max())
        if gap > PROB_TOL:
            raise ValidationError(
                f"NonCausal input_dist state marginal differs from W_S by {gap:.3g}"
            )
    p_in = aux.input_joint(ch.state_dist)
    tensor = (
        p_in[:, :, :, None, None, None]
        * aux.selector[:, :, :, :, None, None]
        * ch.kernel[:, None, None, :, :, :]
    )
    return JointSystem(tensor, aux, ch)


def _conditional_rows(joint: NDArray[np.float64], axis: int) -> NDArray[np.float64]:
    """Normalize ``joint`` along ``axis``; zero rows become uniform."""
    totals = joint.sum(axis=axis, keepdims=True)
    size = joint.shape[axis]
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(totals > ZERO_TOL, joint / totals, 1.0 / size)
    return out


def to_noncausal(aux: AuxiliaryScheme, ch: WiretapChannel) -> AuxiliaryScheme:
    """
    Composite NonCausal design realizing a causal design by plugging.

    Case1 folds U into the selector, Case2/Case2A adjoin S to V
    (index ``s*|V| + v``), Case2B replaces V by S and Case3 adjoins S
    to U (index ``s*|U| + u``). The embedded state copy always equals
    the true state.
    """
    mode = aux.mode
    if mode is SchemeMode.NON_CAUSAL:
        return aux
    w_s = ch.state_dist
    s_size = ch.s_size
    p_uv = aux.input_dist
    sel = aux.selector
    u_size, v_size, x_size = aux.u_size, aux.v_size, aux.x_size

    if mode is SchemeMode.CASE1:
        p_v = p_uv.sum(axis=0)
        p_u_given_v = _conditional_rows(p_uv, axis=0)
        new_sel = np.einsum("uv,suvx->svx", p_u_given_v, sel)[:, None, :, :]
        new_dist = (w_s[:, None] * p_v[None, :])[:, None, :]
        return AuxiliaryScheme(SchemeMode.NON_CAUSAL, new_dist, new_sel, label=f"plug:{mode.value}")

    if mode in (SchemeMode.CASE2, SchemeMode.CASE2A, SchemeMode.CASE2B):
        inner_v = v_size if mode is not SchemeMode.CASE2B else 1
        new_v = s_size * inner_v
        new_dist = np.zeros((s_size, u_size, new_v))
        new_sel = np.zeros((s_size, u_size, new_v, x_size))
        for s in range(s_size):
            for sigma in range(s_size):
                for v in range(inner_v):
                    idx = sigma * inner_v + v
                    new_sel[s, :, idx, :] = sel[s, :, v, :]
                    if sigma == s:
                        new_dist[s, :, idx] = w_s[s] * p_uv[:, v]
        return AuxiliaryScheme(SchemeMode.NON_CAUSAL, new_dist, new_sel, label=f"plug:{mode.value}")

    # Case3: U' = (S, U)
    new_u = s_size * u_size
    new_dist = np.zeros((s_size, new_u, v_size))
    new_sel = np.zeros((s_size, new_u, v_size, x_size))
    for s in range(s_size):
        for sigma in range(s_size):
            for u in range(u_size):
                idx = sigma * u_size + u
                new_sel[s, idx, :, :] = sel[s, u, :, :]
                if sigma == s:
                    new_dist[s, idx, :] = w_s[s] * p_uv[u, :]
    return AuxiliaryScheme(SchemeMode.NON_CAUSAL, new_dist, new_sel, label=f"plug:{mode.value}")


def as_correlated(aux: AuxiliaryScheme, ch: WiretapChannel) -> AuxiliaryScheme:
    """A causal design re-expressed as NonCausal over the same alphabets."""
    if aux.mode is SchemeMode.NON_CAUSAL:
        return aux
    return AuxiliaryScheme(
        SchemeMode.NON_CAUSAL, aux.input_joint(ch.state_dist), aux.selector, label=aux.label
    )


def deterministic_selector(
    mapping: ArrayLike, x_size: int
) -> NDArray[np.float64]:
    """One-hot selector from an integer table x = f(s, u, v)."""
    table = np.asarray(mapping, dtype=int)
    if table.ndim != 3:
        raise ValidationError("selector mapping must be indexed [s][u][v]")
    if table.min() < 0 or table.max() >= x_size:
        raise ValidationError(f"selector mapping outside [0, {x_size})")
    return np.eye(x_size)[table]


def scheme_from_dict(data: dict[str, Any]) -> AuxiliaryScheme:
    """
    Parse ``{mode, sizes: {U, V}, input_dist, selector}``.

    Raises:
        ChannelFormatError: On missing fields or mismatched sizes.
        ValidationError: On invalid masses or modes.
    """
    try:
        mode = SchemeMode.parse(str(data["mode"]))
        sizes = data.get("sizes", {})
        dist = np.asarray(data["input_dist"], dtype=float)
        sel = np.asarray(data["selector"], dtype=float)
    except KeyError as err:
        raise ChannelFormatError(f"missing field {err.args[0]!r}") from err
    except (TypeError, ValueError) as err:
        raise ChannelFormatError(f"malformed array: {err}") from err
    if sel.ndim != 4:
        raise ChannelFormatError(
            f"dimension mismatch: selector must be indexed [s][u][v][x], got {sel.ndim} axes"
        )
    if sizes and (int(sizes.get("U", sel.shape[1])), int(sizes.get("V", sel.shape[2]))) != sel.shape[1:3]:
        raise ChannelFormatError(
            f"dimension mismatch: declared sizes {sizes} vs selector {sel.shape[1:3]}"
        )
    return AuxiliaryScheme(mode, dist, sel, label=str(data.get("label", "")))


def scheme_to_dict(aux: AuxiliaryScheme) -> dict[str, Any]:
    """Inverse of :func:`scheme_from_dict`."""
    return {
        "mode": aux.mode.value,
        "label": aux.label,
        "sizes": {"U": aux.u_size, "V": aux.v_size},
        "input_dist": np.round(aux.input_dist, 12).tolist(),
        "selector": np.round(aux.selector, 12).tolist(),
    }


def load_scheme(path: str | Path) -> AuxiliaryScheme:
    """Read an auxiliary design file."""
    data = read_json(path)
    if not isinstance(data, dict):
        raise ChannelFormatError(f"{path}: top-level value must be an object")
    return scheme_from_dict(data)
