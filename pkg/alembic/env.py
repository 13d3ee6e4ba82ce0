"""
Migration environment of the run ledger.

The database URL comes from ``alembic -x db=<url>`` (the same URL the
command line takes through ``--db``) or from ``sqlalchemy.url`` in the
ini file.
"""

from logging.config import fileConfig

from sqlalchemy import create_engine, pool

from alembic import context
from wiretap_core import Base

config = context.config

if config.config_file_name is not None:
    fileConfig(config.config_file_name)

target_metadata = Base.metadata


def ledger_url() -> str:
    url = context.get_x_argument(as_dictionary=True).get("db") or config.get_main_option(
        "sqlalchemy.url"
    )
    if not url:
        raise RuntimeError("no ledger database given; pass -x db=<sqlalchemy-url>")
    return url


def configure(**kwargs) -> None:
    # SQLite cannot ALTER most constraints; batch mode rebuilds the table
    context.configure(
        target_metadata=target_metadata,
        compare_type=True,
        render_as_batch=ledger_url().startswith("sqlite"),
        **kwargs,
    )
    with context.begin_transaction():
        context.run_migrations()


def run_migrations_offline() -> None:
    """Emit the ledger DDL as SQL without connecting."""
    configure(url=ledger_url(), literal_binds=True, dialect_opts={"paramstyle": "named"})


def run_migrations_online() -> None:
    """Apply the ledger migrations on a live connection."""
    engine = create_engine(ledger_url(), poolclass=pool.NullPool)
    with engine.connect() as connection:
        configure(connection=connection)
    engine.dispose()


if context.is_offline_mode():
    run_migrations_offline()
else:
    run_migrations_online()
