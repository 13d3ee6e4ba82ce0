# pylint: disable=R0201, R0903

"""Frontier construction unit tests."""

import io
import json
import math

import pytest

from wiretap_core.bounds import BoundId, RatePolytope
from wiretap_core.frontier import (
    TRIVIAL_FRONTIER,
    frontier_dominates,
    frontier_to_dict,
    hausdorff_frontier_distance,
    pareto_union,
    upper_concave_envelope,
    write_frontier_csv,
    write_frontier_json,
)
from wiretap_core.service.provenance import Provenance

BOUND = BoundId.C_CASE1


def polys(*caps):
    return [RatePolytope(c_m, c_sum, BOUND) for c_m, c_sum in caps]


def flat(vertices):
    return [value for vertex in vertices for value in vertex]


@pytest.fixture
def staircase():
    return pareto_union(polys((0.5, 0.6), (0.2, 0.8)))


@pytest.fixture
def dented():
    return pareto_union(polys((0.2, 1.0), (0.8, 0.8)))


class TestParetoUnion:

    def test_vertices(self, staircase):
        assert flat(staircase.vertices) == pytest.approx([0.0, 0.8, 0.2, 0.6, 0.5, 0.1])
        assert staircase.provenance == ("p1", "p1", "p0")
        assert staircase.bound is BOUND
        assert not staircase.hull

    def test_endpoints(self, staircase):
        assert staircase.sm_endpoint == pytest.approx(0.5)
        assert staircase.sk_endpoint == pytest.approx(0.8)

    def test_rk_at(self, staircase):
        assert staircase.rk_at(0.3) == pytest.approx(0.3)
        assert staircase.rk_at(0.1) == pytest.approx(0.7)
        assert staircase.rk_at(0.6) == -math.inf

    def test_dominated_dropped(self):
        frontier = pareto_union(polys((0.5, 0.6), (0.2, 0.3)), ids=["big", "small"])
        assert set(frontier.provenance) == {"big"}
        assert "small" not in frontier.designs

    def test_empty(self):
        assert pareto_union([]) is TRIVIAL_FRONTIER

    def test_closed_gate(self):
        frontier = pareto_union(polys((-0.5, 0.9)))
        assert frontier.vertices == ((0.0, 0.0),)

    def test_mixed_bounds(self):
        mixed = [RatePolytope(0.3, 0.3, BoundId.C_CASE1), RatePolytope(0.1, 0.5, BoundId.C_CASE2A)]
        assert pareto_union(mixed).bound is None


class TestEnvelope:

    def test_hull_of_staircase(self, staircase):
        hull = upper_concave_envelope(staircase)
        assert hull.hull
        assert flat(hull.vertices) == pytest.approx([0.0, 0.8, 0.2, 0.6, 0.5, 0.1])
        assert hull.rk_at(0.1) == pytest.approx(0.7)

    def test_hull_fills_dent(self, dented):
        hull = upper_concave_envelope(dented)
        assert dented.rk_at(0.5) == pytest.approx(0.3)
        assert hull.rk_at(0.5) == pytest.approx(0.4)

    def test_idempotent(self, dented):
        hull = upper_concave_envelope(dented)
        assert upper_concave_envelope(hull) is hull

    def test_degenerate(self):
        hull = upper_concave_envelope(TRIVIAL_FRONTIER)
        assert hull.hull
        assert hull.vertices == ((0.0, 0.0),)


class TestComparisons:

    def test_dominates(self, dented):
        hull = upper_concave_envelope(dented)
        assert frontier_dominates(hull, dented)
        assert not frontier_dominates(dented, hull)
        assert frontier_dominates(dented, dented)

    def test_dominates_tolerance(self):
        a = pareto_union(polys((0.5, 0.5)))
        b = pareto_union(polys((0.5 + 1e-9, 0.5 + 1e-9)))
        assert not frontier_dominates(a, b)
        assert frontier_dominates(a, b, tol=1e-6)

    def test_hausdorff(self, dented):
        hull = upper_concave_envelope(dented)
        assert hausdorff_frontier_distance(dented, dented) == 0.0
        assert hausdorff_frontier_distance(dented, hull) == pytest.approx(0.2, abs=1e-2)


class TestFrontierOutput:

    provenance = Provenance(seed=7, config="abc", argv=("wiretap-core", "region"))

    def test_csv(self, staircase):
        stream = io.StringIO()
        write_frontier_csv(staircase, stream, self.provenance)
        lines = stream.getvalue().splitlines()
        assert lines[0] == "# wiretap-core 0.1.0 seed=7 config=abc argv=wiretap-core region"
        assert lines[1] == "R_M,R_K,provenance_id"
        assert lines[2] == "0.000000000000,0.800000000000,p1"
        assert len(lines) == 5

    def test_csv_without_header(self, staircase):
        stream = io.StringIO()
        write_frontier_csv(staircase, stream)
        assert stream.getvalue().startswith("R_M,R_K,provenance_id\n")

    def test_dict(self, staircase):
        payload = frontier_to_dict(staircase, self.provenance)
        assert payload["bound"] == "C_Case1"
        assert payload["vertices"][1]["provenance_id"] == "p1"
        assert payload["designs"] == {}
        assert payload["provenance"]["seed"] == 7

    def test_json_file(self, staircase, tmp_path):
        path = tmp_path / "frontier.json"
        write_frontier_json(staircase, path, self.provenance)
        data = json.loads(path.read_text(encoding="utf-8"))
        assert len(data["vertices"]) == 3
        assert data["hull"] is False
