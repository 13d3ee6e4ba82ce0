# pylint: disable=R0201, R0903

"""Declarative base helpers, exercised through the run model."""

import pytest

from wiretap_core import Run


@pytest.mark.usefixtures("db_session")
class TestBase:

    def test_get_by_id(self, db_session):
        third_run: Run = Run.get_by_id(db_session, 3)
        assert third_run.id == 3

    def test_get_by_missing_id(self, db_session):
        assert Run.get_by_id(db_session, 99) is None

    def test_get_all(self, db_session):
        runs = Run.get_all(db_session)
        assert len(runs) == 4
        assert isinstance(runs[0], Run)

    def test_export(self, db_session):
        run: Run = db_session.query(Run).filter(Run.objective == "gelfand_pinsker").first()
        assert run.export() == {
            'argv': None, 'bound': 'NC_Inner_T1', 'channel_id': 2,
            'command': 'capacity', 'config_hash': '1122334455667788',
            'hull': False, 'id': 3, 'objective': 'gelfand_pinsker',
            'seed': 11, 'signed': 1.0, 'sk_endpoint': None,
            'sm_endpoint': None, 'value': 1.0, 'version': '0.1.0'}

    def test_repr(self, db_session):
        run: Run = Run.get_by_id(db_session, 4)
        text = repr(run)
        assert text.startswith("BaseRun(")
        assert "command='simulate'" in text
        assert "bound" not in text

    def test_attributes_all(self):
        assert Run.attributes_all() == {
            'argv', 'bound', 'channel', 'channel_id', 'command',
            'config_hash', 'created', 'hull', 'id', 'is_region',
            'objective', 'seed', 'signed', 'simulations', 'sk_endpoint',
            'sm_endpoint', 'updated', 'value', 'version', 'vertices'}

    def test_attributes_basic(self):
        assert Run.attributes_basic() == {
            'argv', 'bound', 'channel_id', 'command', 'config_hash',
            'created', 'hull', 'id', 'objective', 'seed', 'signed',
            'sk_endpoint', 'sm_endpoint', 'updated', 'value', 'version'}

    def test_relationships(self):
        assert Run.relationships() == {'channel', 'simulations', 'vertices'}

    def test_foreign_keys(self):
        assert Run.foreign_keys() == {'channel_id'}

    def test_hybrid_properties(self):
        assert Run.hybrid_properties() == {'is_region'}
