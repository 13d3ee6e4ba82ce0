"""Async ledger fixtures on an in-memory aiosqlite database."""

from typing import AsyncGenerator

import pytest
from sqlalchemy.ext.asyncio import AsyncConnection, AsyncEngine, AsyncSession, create_async_engine

from wiretap_core import Base
from ..objects import add_objects

LEDGER_URL = "sqlite+aiosqlite://"


@pytest.fixture(scope="session")
async def ledger_engine() -> AsyncGenerator[AsyncEngine, None]:
    engine = create_async_engine(LEDGER_URL)
    yield engine
    await engine.dispose()


@pytest.fixture(scope="session")
async def connection(ledger_engine: AsyncEngine) -> AsyncGenerator[AsyncConnection, None]:
    async with ledger_engine.connect() as conn:
        async with conn.begin():
            await conn.run_sync(Base.metadata.create_all)
        yield conn


@pytest.fixture()
async def session(connection: AsyncConnection) -> AsyncGenerator[AsyncSession, None]:
    """Ledger rows seeded inside a transaction that every test rolls back."""
    async with connection.begin() as transaction:
        ledger = AsyncSession(bind=connection, join_transaction_mode="create_savepoint")
        await ledger.run_sync(add_objects)
        await ledger.flush()
        yield ledger
        await ledger.close()
        await transaction.rollback()
