"""Ledger database and builtin channel fixtures."""

import pytest
from sqlalchemy import create_engine
from sqlalchemy.orm import Session

from wiretap_core import Base, builtin_example
from ..objects import create_db


@pytest.fixture(scope="function")
def ledger_engine():
    """In-memory ledger schema, dropped after the test."""
    engine = create_engine("sqlite://", echo=False)
    Base.metadata.create_all(engine)
    yield engine
    Base.metadata.drop_all(engine)
    engine.dispose()


@pytest.fixture(scope="function")
def db_session(ledger_engine):
    """Session on a ledger seeded with the rows of ``tests.data``."""
    with Session(ledger_engine) as session:
        create_db(session)
        yield session
        session.rollback()


@pytest.fixture(scope="session")
def fig5():
    return builtin_example("fig5")


@pytest.fixture(scope="session")
def fig6():
    return builtin_example("fig6")


@pytest.fixture(scope="session")
def xor_channel():
    return builtin_example("xor_state")
