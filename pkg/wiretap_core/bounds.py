"""
Catalog of SM-SK rate bounds.

Each bound maps a joint system to a :class:`RatePolytope`, i.e. the two
caps ``R_M <= cM`` and ``R_M + R_K <= cSum``. Caps are stored signed;
clamping happens when a polytope is turned into a region or a scalar.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, NamedTuple

import numpy as np
from numpy.typing import ArrayLike

from .channel import Degradedness, WiretapChannel, check_degraded
from .measures import positive_part, validate_distribution
from .scheme import AuxiliaryScheme, JointSystem, SchemeMode, build_joint
from .service.constants import GATE_TOL, PROB_TOL
from .service.exceptions import ValidationError

logger = logging.getLogger(__name__)


class BoundId(str, Enum):
    """Names of the bounds; the values are the CLI vocabulary."""

    NC_INNER_T1 = "NC_Inner_T1"
    NC_ED_REGION_T3 = "NC_ED_Region_T3"
    C_CASE1 = "C_Case1"
    C_TYPE_I_CASE2 = "C_TypeI_Case2"
    C_CASE2A = "C_Case2A"
    C_CASE2B = "C_Case2B"
    C_TYPE_II_CASE3 = "C_TypeII_Case3"
    C_ED_COR4 = "C_ED_Cor4"
    C_ED_COR5 = "C_ED_Cor5"
    D_REGION_T4 = "D_Region_T4"
    E_OUTER_T5 = "E_Outer_T5"
    STATE_REPRO_OUTER = "StateRepro_Outer"

    @classmethod
    def parse(cls, name: str) -> BoundId:
        try:
            return cls(name)
        except ValueError as err:
            valid = ", ".join(b.value for b in cls)
            raise ValidationError(f"unknown bound {name!r}; valid bounds: {valid}") from err


class Axis(str, Enum):
    SM = "SM"
    SK = "SK"


@dataclass(frozen=True)
class BoundInfo:
    """
    Static description of a bound.

    Attributes:
        c_m: Formula of the message cap.
        c_sum: Formula of the sum cap.
        modes: Design modes the evaluator accepts; ``None`` accepts all.
        search_mode: Mode the optimizer searches for this bound.
        on_input: Whether the bound is a function of p(s,x) alone.
        degraded_only: Whether the bound is only meaningful on degraded channels.
    """

    c_m: str
    c_sum: str
    modes: frozenset[SchemeMode] | None
    search_mode: SchemeMode
    on_input: bool = False
    degraded_only: bool = False


_CASE2_FAMILY = frozenset({SchemeMode.CASE2, SchemeMode.CASE2A, SchemeMode.CASE2B})
_CAUSAL = frozenset(m for m in SchemeMode if m.is_causal)

BOUND_TABLE: dict[BoundId, BoundInfo] = {
    BoundId.NC_INNER_T1: BoundInfo(
        "I(UV;Y) - I(UV;S)",
        "I(V;Y|U) - I(V;Z|U) - [I(U;S) - I(U;Y)]+",
        frozenset({SchemeMode.NON_CAUSAL}),
        SchemeMode.NON_CAUSAL,
    ),
    BoundId.NC_ED_REGION_T3: BoundInfo(
        "I(UV;Y|S)",
        "I(V;Y|SU) - I(V;Z|SU) + H(S|ZU)",
        None,
        SchemeMode.NON_CAUSAL,
    ),
    BoundId.C_CASE1: BoundInfo(
        "I(V;Y)",
        "I(V;Y) - I(V;Z)",
        frozenset({SchemeMode.CASE1}),
        SchemeMode.CASE1,
    ),
    BoundId.C_TYPE_I_CASE2: BoundInfo(
        "I(USV;Y) - H(S)",
        "I(SV;Y|U) - I(SV;Z|U)",
        _CASE2_FAMILY,
        SchemeMode.CASE2,
    ),
    BoundId.C_CASE2A: BoundInfo(
        "I(SV;Y) - H(S)",
        "I(SV;Y) - I(SV;Z)",
        frozenset({SchemeMode.CASE2A}),
        SchemeMode.CASE2A,
    ),
    BoundId.C_CASE2B: BoundInfo(
        "I(U;Y) - H(S|UY)",
        "H(S|UZ) - H(S|UY)",
        frozenset({SchemeMode.CASE2B}),
        SchemeMode.CASE2B,
    ),
    BoundId.C_TYPE_II_CASE3: BoundInfo(
        "I(USV;Y) - H(S)",
        "I(V;Y|SU) - I(V;Z|SU) - [H(S) - I(SU;Y)]+",
        frozenset({SchemeMode.CASE3}),
        SchemeMode.CASE3,
    ),
    BoundId.C_ED_COR4: BoundInfo(
        "I(V;Y|S)",
        "I(V;Y|S) - I(V;Z|S) + H(S|Z)",
        _CAUSAL,
        SchemeMode.CASE2A,
    ),
    BoundId.C_ED_COR5: BoundInfo(
        "I(U;Y|S)",
        "H(S|UZ)",
        _CAUSAL,
        SchemeMode.CASE2B,
    ),
    BoundId.D_REGION_T4: BoundInfo(
        "I(X;Y|S)",
        "I(X;Y|S) - I(X;Z|S) + H(S|Z)",
        None,
        SchemeMode.NON_CAUSAL,
        on_input=True,
        degraded_only=True,
    ),
    BoundId.E_OUTER_T5: BoundInfo(
        "I(X;Y|S)",
        "I(X;Y|S) - I(X;Z|S) + H(S|Z) - H(S|Y)",
        None,
        SchemeMode.NON_CAUSAL,
        on_input=True,
        degraded_only=True,
    ),
    BoundId.STATE_REPRO_OUTER: BoundInfo(
        "I(USV;Y) - H(S)",
        "I(SV;Y|U) - I(SV;Z|U)",
        None,
        SchemeMode.NON_CAUSAL,
    ),
}


@dataclass(frozen=True)
class RatePolytope:
    """
    ``{R_M, R_K >= 0, R_M <= cM, R_M + R_K <= cSum}``.

    A message cap below ``-GATE_TOL`` makes the region trivial, {(0, 0)}.
    """

    c_m: float
    c_sum: float
    bound: BoundId
    design: AuxiliaryScheme | None = field(default=None, compare=False)

    def __str__(self):
        return f"<{self.__class__.__name__} {self.bound.value} cM={self.c_m:.6f} cSum={self.c_sum:.6f}>"

    @property
    def gate_open(self) -> bool:
        """True when the message cap admits the origin's neighbourhood."""
        return self.c_m >= -GATE_TOL

    @property
    def caps(self) -> tuple[float, float]:
        """Clamped (cM, cSum); both zero when the gate is closed."""
        if not self.gate_open:
            return 0.0, 0.0
        return max(self.c_m, 0.0), max(self.c_sum, 0.0)

    @property
    def corner(self) -> tuple[float, float]:
        """The vertex (min(cM, cSum), cSum - min(cM, cSum)) after clamping."""
        c_m, c_sum = self.caps
        r_m = min(c_m, c_sum)
        return r_m, c_sum - r_m


class Projection(NamedTuple):
    """Scalar projection of a polytope on one rate axis."""

    value: float
    signed: float
    feasible: bool


def scalar_projection(poly: RatePolytope, axis: Axis | str) -> Projection:
    """
    Supremum of the polytope along ``axis``.

    SM is ``min(cM, cSum)``; SK is ``cSum``. A design is feasible when its
    message cap clears the gate ``cM >= -GATE_TOL``; infeasible designs
    project to zero and must be excluded from maxima.
    """
    axis = Axis(axis)
    signed = min(poly.c_m, poly.c_sum) if axis is Axis.SM else poly.c_sum
    feasible = poly.gate_open
    value = max(signed, 0.0) if feasible else 0.0
    return Projection(value, signed, feasible)


def _require_mode(bound: BoundId, j: JointSystem) -> None:
    modes = BOUND_TABLE[bound].modes
    if modes is not None and j.mode not in modes:
        accepted = ", ".join(sorted(m.value for m in modes))
        raise ValidationError(
            f"mode mismatch: {bound.value} expects a {accepted} design, got {j.mode.value}"
        )


@lru_cache(maxsize=64)
def _degradedness_warning(ch: WiretapChannel, bound: BoundId) -> Degradedness:
    verdict = check_degraded(ch)
    if verdict is not Degradedness.DEGRADED:
        logger.warning(
            "%s evaluated on %s which is %s; the result is a formula value only",
            bound.value,
            ch,
            verdict.value,
        )
    return verdict


def eval_nc_inner(j: JointSystem) -> RatePolytope:
    """Non-causal inner bound with CSI at Alice only."""
    _require_mode(BoundId.NC_INNER_T1, j)
    c_m = j.mi("UV", "Y") - j.mi("UV", "S")
    c_sum = (
        j.mi("V", "Y", "U")
        - j.mi("V", "Z", "U")
        - positive_part(j.mi("U", "S") - j.mi("U", "Y"))
    )
    return RatePolytope(c_m, c_sum, BoundId.NC_INNER_T1, j.scheme)


def eval_nc_ed_region(j: JointSystem) -> RatePolytope:
    """Non-causal region with CSI at Alice and Bob."""
    c_m = j.mi("UV", "Y", "S")
    c_sum = j.mi("V", "Y", "SU") - j.mi("V", "Z", "SU") + j.h("S", "ZU")
    return RatePolytope(c_m, c_sum, BoundId.NC_ED_REGION_T3, j.scheme)


def eval_causal_case(case: BoundId | str, j: JointSystem) -> RatePolytope:
    """
    Causal inner bounds obtained by plugging restricted designs.

    Args:
        case: One of C_Case1, C_TypeI_Case2, C_Case2A, C_Case2B, C_TypeII_Case3.
        j: Joint of a causal design of the matching mode.

    Raises:
        ValidationError: On a mode mismatch or a non-causal bound id.
    """
    case = BoundId(case)
    _require_mode(case, j)
    if case is BoundId.C_CASE1:
        c_m = j.mi("V", "Y")
        c_sum = j.mi("V", "Y") - j.mi("V", "Z")
    elif case is BoundId.C_TYPE_I_CASE2:
        c_m = j.mi("USV", "Y") - j.h("S")
        c_sum = j.mi("SV", "Y", "U") - j.mi("SV", "Z", "U")
    elif case is BoundId.C_CASE2A:
        c_m = j.mi("SV", "Y") - j.h("S")
        c_sum = j.mi("SV", "Y") - j.mi("SV", "Z")
    elif case is BoundId.C_CASE2B:
        c_m = j.mi("U", "Y") - j.h("S", "UY")
        c_sum = j.h("S", "UZ") - j.h("S", "UY")
    elif case is BoundId.C_TYPE_II_CASE3:
        c_m = j.mi("USV", "Y") - j.h("S")
        c_sum = (
            j.mi("V", "Y", "SU")
            - j.mi("V", "Z", "SU")
            - positive_part(j.h("S") - j.mi("SU", "Y"))
        )
    else:
        raise ValidationError(f"{case.value} is not a causal-case bound")
    return RatePolytope(c_m, c_sum, case, j.scheme)


def eval_causal_ed(case: BoundId | str, j: JointSystem) -> RatePolytope:
    """Causal bounds with CSI at Alice and Bob (V or U independent of S)."""
    case = BoundId(case)
    _require_mode(case, j)
    if case is BoundId.C_ED_COR4:
        c_m = j.mi("V", "Y", "S")
        c_sum = j.mi("V", "Y", "S") - j.mi("V", "Z", "S") + j.h("S", "Z")
    elif case is BoundId.C_ED_COR5:
        c_m = j.mi("U", "Y", "S")
        c_sum = j.h("S", "UZ")
    else:
        raise ValidationError(f"{case.value} is not a causal bound with CSI at Bob")
    return RatePolytope(c_m, c_sum, case, j.scheme)


def input_scheme(ch: WiretapChannel, p_sx: ArrayLike) -> AuxiliaryScheme:
    """
    Wrap an input law p(s,x) as a NonCausal design with singleton U and V.

    Raises:
        ValidationError: If ``p_sx`` is not a law on S x X or its state
            marginal differs from W_S.
    """
    arr = validate_distribution(p_sx, "p_SX")
    if arr.shape != (ch.s_size, ch.x_size):
        raise ValidationError(
            f"alphabet mismatch: p_SX has shape {arr.shape}, expected {(ch.s_size, ch.x_size)}"
        )
    p_s = arr.sum(axis=1)
    gap = float(np.abs(p_s - ch.state_dist).max())
    if gap > PROB_TOL:
        raise ValidationError(f"p_SX state marginal differs from W_S by {gap:.3g}")
    with np.errstate(invalid="ignore", divide="ignore"):
        rows = np.where(p_s[:, None] > 0, arr / p_s[:, None], 1.0 / ch.x_size)
    return AuxiliaryScheme(SchemeMode.NON_CAUSAL, p_s[:, None, None], rows[:, None, None, :])


def _eval_on_input(bound: BoundId, j: JointSystem) -> RatePolytope:
    if BOUND_TABLE[bound].degraded_only:
        _degradedness_warning(j.channel, bound)
    c_m = j.mi("X", "Y", "S")
    c_sum = j.mi("X", "Y", "S") - j.mi("X", "Z", "S") + j.h("S", "Z")
    if bound is BoundId.E_OUTER_T5:
        c_sum -= j.h("S", "Y")
    return RatePolytope(c_m, c_sum, bound, j.scheme)


def eval_degraded_region(ch: WiretapChannel, p_sx: ArrayLike) -> RatePolytope:
    """Capacity region of a degraded channel with CSI at Alice and Bob."""
    return _eval_on_input(BoundId.D_REGION_T4, build_joint(ch, input_scheme(ch, p_sx)))


def eval_outer_e(ch: WiretapChannel, p_sx: ArrayLike) -> RatePolytope:
    """Outer bound of a degraded channel with CSI at Alice only."""
    return _eval_on_input(BoundId.E_OUTER_T5, build_joint(ch, input_scheme(ch, p_sx)))


def eval_state_repro_outer(j: JointSystem) -> RatePolytope:
    """Outer bound for state-reproducing schemes over any p(s,u,v)."""
    c_m = j.mi("USV", "Y") - j.h("S")
    c_sum = j.mi("SV", "Y", "U") - j.mi("SV", "Z", "U")
    return RatePolytope(c_m, c_sum, BoundId.STATE_REPRO_OUTER, j.scheme)


_EVALUATORS: dict[BoundId, Callable[[JointSystem], RatePolytope]] = {
    BoundId.NC_INNER_T1: eval_nc_inner,
    BoundId.NC_ED_REGION_T3: eval_nc_ed_region,
    BoundId.C_CASE1: lambda j: eval_causal_case(BoundId.C_CASE1, j),
    BoundId.C_TYPE_I_CASE2: lambda j: eval_causal_case(BoundId.C_TYPE_I_CASE2, j),
    BoundId.C_CASE2A: lambda j: eval_causal_case(BoundId.C_CASE2A, j),
    BoundId.C_CASE2B: lambda j: eval_causal_case(BoundId.C_CASE2B, j),
    BoundId.C_TYPE_II_CASE3: lambda j: eval_causal_case(BoundId.C_TYPE_II_CASE3, j),
    BoundId.C_ED_COR4: lambda j: eval_causal_ed(BoundId.C_ED_COR4, j),
    BoundId.C_ED_COR5: lambda j: eval_causal_ed(BoundId.C_ED_COR5, j),
    BoundId.D_REGION_T4: lambda j: _eval_on_input(BoundId.D_REGION_T4, j),
    BoundId.E_OUTER_T5: lambda j: _eval_on_input(BoundId.E_OUTER_T5, j),
    BoundId.STATE_REPRO_OUTER: eval_state_repro_outer,
}


def evaluate(bound: BoundId | str, j: JointSystem) -> RatePolytope:
    """Dispatch ``j`` to the evaluator of ``bound``."""
    return _EVALUATORS[BoundId.parse(bound) if isinstance(bound, str) else bound](j)


def evaluate_design(
    bound: BoundId | str, ch: WiretapChannel, aux: AuxiliaryScheme
) -> RatePolytope:
    """Build the joint of ``aux`` on ``ch`` and evaluate ``bound`` on it."""
    return evaluate(bound, build_joint(ch, aux))


def compare_sk_formulas(j: JointSystem) -> tuple[float, float]:
    """
    Key sum caps of the CSI-at-both-ends region with and without U.

    Returns:
        tuple: (I(V;Y|SU) - I(V;Z|SU) + H(S|ZU),
                I(V;Y|S) - I(V;Z|S) + H(S|Z)).
    """
    with_u = j.mi("V", "Y", "SU") - j.mi("V", "Z", "SU") + j.h("S", "ZU")
    without_u = j.mi("V", "Y", "S") - j.mi("V", "Z", "S") + j.h("S", "Z")
    return with_u, without_u
