"""
Pareto frontiers of unions of rate polytopes.

A raw frontier lists polytope corners: each vertex ``(m, k)`` stands for
the polytope ``{R_M <= m, R_M + R_K <= m + k}``, so between vertices the
boundary runs with slope -1 and drops vertically. A hull frontier is the
upper concave envelope and is read by linear interpolation.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence, TextIO

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .bounds import BoundId, RatePolytope
from .scheme import AuxiliaryScheme, scheme_to_dict
from .service.constants import HAUSDORFF_GRID, PAST_VERTEX_STEP
from .service.provenance import Provenance

logger = logging.getLogger(__name__)

Vertex = tuple[float, float]

_CSV_HEADER = ("R_M", "R_K", "provenance_id")


@dataclass(frozen=True)
class RegionFrontier:
    """
    Frontier vertices sorted by R_M, with the design behind each one.

    Attributes:
        vertices: (R_M, R_K) pairs, R_M ascending and R_K non-increasing.
        provenance: Design id per vertex.
        designs: Designs keyed by id.
        hull: Whether the frontier is a concave envelope.
        bound: Bound the frontier was built from, if any.
    """

    vertices: tuple[Vertex, ...]
    provenance: tuple[str, ...]
    designs: dict[str, AuxiliaryScheme | None] = field(default_factory=dict, compare=False)
    hull: bool = False
    bound: BoundId | None = None

    def __str__(self):
        kind = "hull" if self.hull else "raw"
        return f"<{self.__class__.__name__} {kind} {len(self.vertices)} vertices>"

    @property
    def sm_endpoint(self) -> float:
        """Largest secret-message rate on the frontier."""
        return max(m for m, _ in self.vertices)

    @property
    def sk_endpoint(self) -> float:
        """Largest key rate, reached at R_M = 0."""
        return self.rk_at(0.0)

    def rk_at(self, r_m: float, tol: float = 0.0) -> float:
        """
        Largest R_K in the region at message rate ``r_m``.

        Returns ``-inf`` beyond the frontier's R_M range (widened by ``tol``).
        """
        if not self.vertices:
            return -np.inf
        if self.hull:
            ms = np.array([m for m, _ in self.vertices])
            ks = np.array([k for _, k in self.vertices])
            if r_m > ms[-1] + tol:
                return -np.inf
            return float(np.interp(min(r_m, ms[-1]), ms, ks))
        best = -np.inf
        for m, k in self.vertices:
            if m >= r_m:
                best = max(best, k + m - r_m)
            elif m >= r_m - tol:
                best = max(best, k)
        return float(best)


TRIVIAL_FRONTIER = RegionFrontier(vertices=((0.0, 0.0),), provenance=("origin",))


def _pareto_filter(points: Sequence[tuple[Vertex, str]]) -> list[tuple[Vertex, str]]:
    order = sorted(range(len(points)), key=lambda i: (-points[i][0][0], -points[i][0][1], i))
    kept: list[tuple[Vertex, str]] = []
    best_k = -np.inf
    for i in order:
        point, pid = points[i]
        if point[1] > best_k:
            kept.append((point, pid))
            best_k = point[1]
    kept.reverse()
    return kept


def pareto_union(
    polys: Iterable[RatePolytope], ids: Sequence[str] | None = None
) -> RegionFrontier:
    """
    Frontier of the union of ``polys``.

    Each polytope contributes the segment from ``(0, cSum)`` to its
    corner. Dominated corners and their designs are dropped.

    Args:
        polys: Polytopes to merge.
        ids: Design ids, defaults to ``p0, p1, ...``.
    """
    polys = list(polys)
    if not polys:
        return TRIVIAL_FRONTIER
    ids = list(ids) if ids is not None else [f"p{i}" for i in range(len(polys))]
    points: list[tuple[Vertex, str]] = []
    designs: dict[str, AuxiliaryScheme | None] = {}
    for poly, pid in zip(polys, ids):
        _, c_sum = poly.caps
        corner = poly.corner
        points.append(((0.0, c_sum), pid))
        points.append((corner, pid))
        designs[pid] = poly.design
    kept = _pareto_filter(points)
    used = {pid for _, pid in kept}
    bounds = {poly.bound for poly in polys}
    return RegionFrontier(
        vertices=tuple(point for point, _ in kept),
        provenance=tuple(pid for _, pid in kept),
        designs={pid: design for pid, design in designs.items() if pid in used},
        bound=bounds.pop() if len(bounds) == 1 else None,
    )


def upper_concave_envelope(f: RegionFrontier) -> RegionFrontier:
    """Concave envelope of the region under ``f`` (time-sharing closure)."""
    if f.hull:
        return f
    raw = np.array(f.vertices, dtype=float)
    right = float(raw[:, 0].max())
    top = float((raw[:, 0] + raw[:, 1]).max())
    anchors = np.array([[0.0, 0.0], [right, 0.0], [0.0, top]])
    points = np.vstack([raw, anchors])
    labels = list(f.provenance) + ["origin", f.provenance[-1], f.provenance[0]]
    try:
        hull = ConvexHull(points)
    except (QhullError, ValueError):
        logger.debug("degenerate frontier, envelope equals input")
        return RegionFrontier(f.vertices, f.provenance, dict(f.designs), True, f.bound)

    order = list(hull.vertices)
    pts = points[order]
    start = max(range(len(order)), key=lambda i: (pts[i][0], pts[i][1]))
    stop = min(range(len(order)), key=lambda i: (pts[i][0], -pts[i][1]))
    chain = []
    i = start
    while True:
        chain.append(order[i])
        if i == stop:
            break
        i = (i + 1) % len(order)
    chain.reverse()
    vertices = tuple((float(points[i][0]), float(points[i][1])) for i in chain)
    provenance = tuple(labels[i] for i in chain)
    used = set(provenance)
    return RegionFrontier(
        vertices=vertices,
        provenance=provenance,
        designs={pid: d for pid, d in f.designs.items() if pid in used},
        hull=True,
        bound=f.bound,
    )


def frontier_dominates(a: RegionFrontier, b: RegionFrontier, tol: float = 0.0) -> bool:
    """
    True iff the region of ``b`` lies inside the region of ``a`` up to ``tol``.

    A raw ``b`` is covered once its vertices are. A hull ``b`` is linear
    between vertices, so it is also sampled just past every vertex of ``a``,
    where a raw boundary of ``a`` drops.
    """
    points = list(b.vertices)
    if b.hull and b.vertices:
        top = b.vertices[-1][0]
        for m, _ in a.vertices:
            past = m + PAST_VERTEX_STEP
            if past <= top:
                points.append((past, b.rk_at(past)))
    return all(a.rk_at(m, tol) >= k - tol for m, k in points)


def _profile(f: RegionFrontier, grid: np.ndarray) -> np.ndarray:
    return np.array([max(f.rk_at(r), 0.0) for r in grid])


def hausdorff_frontier_distance(
    a: RegionFrontier, b: RegionFrontier, points: int = HAUSDORFF_GRID
) -> float:
    """
    Max over an R_M grid of the gap between the two frontiers.

    Outside a frontier's R_M range its key rate counts as zero.
    """
    top = max(a.sm_endpoint, b.sm_endpoint)
    grid = np.linspace(0.0, top, points)
    return float(np.abs(_profile(a, grid) - _profile(b, grid)).max())


def _fmt(value: float) -> str:
    return f"{value:.12f}"


def write_frontier_csv(
    f: RegionFrontier, stream: TextIO, provenance: Provenance | None = None
) -> None:
    """Write ``R_M,R_K,provenance_id`` rows, preceded by the provenance header."""
    if provenance is not None:
        stream.write(provenance.header() + "\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(_CSV_HEADER)
    for (m, k), pid in zip(f.vertices, f.provenance):
        writer.writerow((_fmt(m), _fmt(k), pid))


def frontier_to_dict(f: RegionFrontier, provenance: Provenance | None = None) -> dict[str, Any]:
    """Companion JSON document: vertices plus designs keyed by id."""
    payload: dict[str, Any] = {
        "bound": f.bound.value if f.bound else None,
        "hull": f.hull,
        "vertices": [
            {"R_M": m, "R_K": k, "provenance_id": pid}
            for (m, k), pid in zip(f.vertices, f.provenance)
        ],
        "designs": {
            pid: scheme_to_dict(design) for pid, design in sorted(f.designs.items()) if design
        },
    }
    if provenance is not None:
        payload["provenance"] = provenance.as_dict()
    return payload


def write_frontier_json(
    f: RegionFrontier, path: str | Path, provenance: Provenance | None = None
) -> None:
    with open(path, "w", encoding="utf-8") as stream:
        json.dump(frontier_to_dict(f, provenance), stream, indent=2, sort_keys=True)
        stream.write("\n")
