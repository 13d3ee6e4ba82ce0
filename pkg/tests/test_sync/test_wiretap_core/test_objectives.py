# pylint: disable=R0201, R0903

"""Named objectives and bound comparison tests."""

import pytest

from wiretap_core.bounds import Axis, BoundId
from wiretap_core.measures import binary_entropy
from wiretap_core.objectives import (
    INEQUALITY_LABELS,
    compare_bounds,
    example_inequalities,
    get_objective,
    maximize,
    objective_catalog,
    search_fig7_family,
)
from wiretap_core.optimizer import SearchConfig
from wiretap_core.service.exceptions import ValidationError

H_01 = binary_entropy(0.1)
SMALL = SearchConfig(u_size=2, v_size=2, restarts=1, iterations=5, directions=5)


class TestCatalog:

    def test_labels(self):
        catalog = objective_catalog()
        assert set(INEQUALITY_LABELS.values()) <= set(catalog)
        assert catalog["cor8_sm"].bound is BoundId.D_REGION_T4
        assert catalog["k2p"].axis is Axis.SK

    def test_unknown(self):
        with pytest.raises(ValidationError, match="unknown objective"):
            get_objective("cor99")

    def test_catalog_is_a_copy(self):
        objective_catalog().clear()
        assert get_objective("m1").bound is BoundId.C_CASE2A


class TestMaximize:

    def test_degraded_capacity(self, fig6):
        result = maximize(fig6, "cor8_sm", SMALL)
        assert result.value == pytest.approx(H_01, abs=1e-3)

    def test_dirty_paper(self, xor_channel):
        cfg = SearchConfig(u_size=1, v_size=2, restarts=1, iterations=5)
        assert maximize(xor_channel, "gelfand_pinsker", cfg).value == pytest.approx(1.0, abs=1e-6)
        assert maximize(xor_channel, "shannon_strategy", cfg).value == pytest.approx(1.0, abs=1e-6)

    def test_signed_key_rates(self, fig5):
        k1 = maximize(fig5, "k1", SMALL)
        k2 = maximize(fig5, "k2", SMALL)
        assert k1.feasible and k2.feasible
        assert k1.signed == pytest.approx(-H_01, abs=1e-3)
        assert k1.value == 0.0
        assert k2.signed == pytest.approx(0.0, abs=1e-3)
        assert k1.signed < k2.signed - 0.4


class TestExampleInequalities:

    def test_fig5(self, fig5):
        report = example_inequalities(fig5, SMALL)
        assert set(report) == set(INEQUALITY_LABELS)
        assert report["M2'"].signed >= 1.0 - H_01 - 1e-3
        assert report["M2'"].signed > report["M1'"].signed

    def test_fig6_keys(self, fig6):
        report = example_inequalities(fig6, SMALL)
        assert report["K1'"].signed >= H_01 - 1e-3
        assert report["K2'"].signed == pytest.approx(0.0, abs=1e-6)


class TestFig7Family:

    def test_single_flip(self):
        (row,) = search_fig7_family([0.1], SMALL)
        assert row.flip == 0.1
        assert row.exhibits
        assert row.k1 < row.k2


class TestCompareBounds:

    def test_report(self, fig6):
        report = compare_bounds(fig6, ["D_Region_T4", BoundId.E_OUTER_T5], SMALL)
        assert report.bounds == [BoundId.D_REGION_T4, BoundId.E_OUTER_T5]
        assert report.matrix[BoundId.D_REGION_T4][BoundId.D_REGION_T4]
        sm, sk = report.endpoints()[BoundId.D_REGION_T4]
        assert sm == pytest.approx(H_01, abs=1e-3)
        assert sk == pytest.approx(H_01, abs=1e-3)
        payload = report.as_dict()
        assert set(payload["dominates"]) == {"D_Region_T4", "E_Outer_T5"}
        assert payload["signed"]["D_Region_T4"]["SK"] == pytest.approx(H_01, abs=1e-3)

    def test_unknown_bound(self, fig6):
        with pytest.raises(ValidationError):
            compare_bounds(fig6, ["T99"], SMALL)
