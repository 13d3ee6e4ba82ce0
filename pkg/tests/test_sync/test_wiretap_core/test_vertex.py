# pylint: disable=R0201, R0903

"""Frontier vertex model tests."""

import pytest

from wiretap_core import Run, Vertex
from wiretap_core.scheme import SchemeMode, scheme_from_dict


@pytest.mark.usefixtures("db_session")
class TestVertex:

    def test_str(self, db_session):
        vertex = Vertex.get_by_id(db_session, 1)
        assert str(vertex) == '<BaseVertex run 1 #0 (0.000000, 0.468996)>'

    def test_run(self, db_session):
        vertex = Vertex.get_by_id(db_session, 3)
        assert isinstance(vertex.run, Run)
        assert vertex.run.hull

    def test_design_round_trip(self, db_session):
        vertex = Vertex.get_by_id(db_session, 4)
        assert scheme_from_dict(vertex.design).mode is SchemeMode.NON_CAUSAL

    def test_no_design(self, db_session):
        assert Vertex.get_by_id(db_session, 2).design is None

    def test_foreign_keys(self):
        assert Vertex.foreign_keys() == {'run_id'}
