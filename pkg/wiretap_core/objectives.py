"""
Named scalar maxima and the comparisons built on them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .bounds import Axis, BoundId
from .builtin import fig7
from .channel import WiretapChannel
from .frontier import RegionFrontier, frontier_dominates
from .optimizer import ScalarResult, SearchConfig, optimize_region, optimize_scalar
from .service.exceptions import ValidationError

logger = logging.getLogger(__name__)

COMPARE_TOL = 1e-6
FIG7_FLIPS = (0.05, 0.1, 0.15, 0.2, 0.25)


class Objective(NamedTuple):
    bound: BoundId
    axis: Axis
    label: str


def _objective(label: str, bound: BoundId, axis: Axis) -> tuple[str, Objective]:
    return label, Objective(bound, axis, label)


_CATALOG: dict[str, Objective] = dict(
    [
        _objective("cor1_nc_sm", BoundId.NC_ED_REGION_T3, Axis.SM),
        _objective("cor2_nc_sk", BoundId.NC_ED_REGION_T3, Axis.SK),
        _objective("cor3_sm", BoundId.C_TYPE_I_CASE2, Axis.SM),
        _objective("cor3_sk", BoundId.C_TYPE_I_CASE2, Axis.SK),
        _objective("cor6_sm", BoundId.C_TYPE_II_CASE3, Axis.SM),
        _objective("cor6_sk", BoundId.C_TYPE_II_CASE3, Axis.SK),
        _objective("cor7_sm", BoundId.STATE_REPRO_OUTER, Axis.SM),
        _objective("cor7_sk", BoundId.STATE_REPRO_OUTER, Axis.SK),
        _objective("cor8_sm", BoundId.D_REGION_T4, Axis.SM),
        _objective("cor8_sk", BoundId.D_REGION_T4, Axis.SK),
        _objective("cor9_sk", BoundId.E_OUTER_T5, Axis.SK),
        _objective("gelfand_pinsker", BoundId.NC_INNER_T1, Axis.SM),
        _objective("shannon_strategy", BoundId.C_CASE1, Axis.SM),
        _objective("m1", BoundId.C_CASE2A, Axis.SM),
        _objective("k1", BoundId.C_CASE2A, Axis.SK),
        _objective("m2", BoundId.C_CASE2B, Axis.SM),
        _objective("k2", BoundId.C_CASE2B, Axis.SK),
        _objective("m1p", BoundId.C_ED_COR4, Axis.SM),
        _objective("k1p", BoundId.C_ED_COR4, Axis.SK),
        _objective("m2p", BoundId.C_ED_COR5, Axis.SM),
        _objective("k2p", BoundId.C_ED_COR5, Axis.SK),
    ]
)

INEQUALITY_LABELS = {
    "M1": "m1",
    "K1": "k1",
    "M2": "m2",
    "K2": "k2",
    "M1'": "m1p",
    "K1'": "k1p",
    "M2'": "m2p",
    "K2'": "k2p",
}


def objective_catalog() -> dict[str, Objective]:
    """All named objectives, keyed by label."""
    return dict(_CATALOG)


def get_objective(label: str) -> Objective:
    """
    Raises:
        ValidationError: On an unknown label.
    """
    try:
        return _CATALOG[label]
    except KeyError as err:
        raise ValidationError(
            f"unknown objective {label!r}; expected one of {', '.join(sorted(_CATALOG))}"
        ) from err


def maximize(ch: WiretapChannel, label: str, cfg: SearchConfig | None = None) -> ScalarResult:
    """Run :func:`optimize_scalar` for a catalog objective."""
    objective = get_objective(label)
    return optimize_scalar(ch, objective.bound, objective.axis, cfg)


def example_inequalities(
    ch: WiretapChannel, cfg: SearchConfig | None = None
) -> dict[str, ScalarResult]:
    """
    Message and key maxima of the four restricted causal bounds.

    Keys are ``M1, K1, M2, K2`` (Case 2A, Case 2B) and the primed values
    for CSI at Bob (V-only and U-only designs). Comparisons between them
    must use ``signed``.
    """
    report = {}
    for name, label in INEQUALITY_LABELS.items():
        report[name] = maximize(ch, label, cfg)
        logger.info("%s on %s: %s", name, ch, report[name].signed)
    return report


class Fig7Row(NamedTuple):
    flip: float
    k1: float | None
    k2: float | None
    exhibits: bool


def search_fig7_family(
    flips: Iterable[float] = FIG7_FLIPS, cfg: SearchConfig | None = None
) -> list[Fig7Row]:
    """Compare the Case 2A and Case 2B key maxima along the reversely degraded family."""
    rows = []
    for flip in flips:
        ch = fig7(flip=flip)
        k1 = maximize(ch, "k1", cfg).signed
        k2 = maximize(ch, "k2", cfg).signed
        exhibits = k1 is not None and k2 is not None and k1 < k2 - COMPARE_TOL
        rows.append(Fig7Row(flip, k1, k2, exhibits))
        logger.debug("fig7 flip=%g: K1=%s K2=%s", flip, k1, k2)
    return rows


@dataclass
class CompareReport:
    """
    Pairwise containment of searched frontiers.

    ``matrix[a][b]`` is true when the frontier of ``a`` dominates that
    of ``b`` within ``tol``.
    """

    bounds: list[BoundId]
    frontiers: dict[BoundId, RegionFrontier]
    matrix: dict[BoundId, dict[BoundId, bool]]
    signed: dict[BoundId, dict[Axis, float | None]] = field(default_factory=dict)
    tol: float = COMPARE_TOL

    def endpoints(self) -> dict[BoundId, tuple[float, float]]:
        """(SM endpoint, SK endpoint) of each frontier."""
        return {b: (f.sm_endpoint, f.sk_endpoint) for b, f in self.frontiers.items()}

    def as_dict(self) -> dict:
        return {
            "tol": self.tol,
            "bounds": [b.value for b in self.bounds],
            "dominates": {
                a.value: {b.value: self.matrix[a][b] for b in self.bounds} for a in self.bounds
            },
            "endpoints": {
                b.value: {"SM": sm, "SK": sk} for b, (sm, sk) in self.endpoints().items()
            },
            "signed": {
                b.value: {axis.value: value for axis, value in values.items()}
                for b, values in self.signed.items()
            },
        }


def compare_bounds(
    ch: WiretapChannel,
    bounds: Sequence[BoundId | str],
    cfg: SearchConfig | None = None,
    tol: float = COMPARE_TOL,
) -> CompareReport:
    """Search each bound's frontier and signed maxima, then cross-check containment."""
    ids = [BoundId.parse(b) if isinstance(b, str) else b for b in bounds]
    frontiers = {b: optimize_region(ch, b, cfg) for b in ids}
    matrix = {
        a: {b: frontier_dominates(frontiers[a], frontiers[b], tol) for b in ids} for a in ids
    }
    signed = {
        b: {axis: optimize_scalar(ch, b, axis, cfg).signed for axis in Axis} for b in ids
    }
    return CompareReport(ids, frontiers, matrix, signed, tol)
