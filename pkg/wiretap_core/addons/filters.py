"""
Reusable SQL conditions for the run selectors.
"""

from sqlalchemy import func, select, true
from sqlalchemy.sql.expression import ColumnElement

from ..channel_record import BaseChannelRecord
from ..run import BaseRun


def filter_run_by_channel_hash(channel_hash: str) -> ColumnElement[bool]:
    """
    Runs performed on the channel whose body hashes to ``channel_hash``.

    Args:
        channel_hash: Full stored hash, or a prefix of it.
    """
    channel_ids = select(BaseChannelRecord.id).where(
        BaseChannelRecord.config_hash.startswith(channel_hash)
    )
    return BaseRun.channel_id.in_(channel_ids)


def filter_run_by_bound(bound: str | None = None) -> ColumnElement[bool]:
    """Runs on ``bound``, matched against the bound and the objective label."""
    if not bound:
        return true()
    return (BaseRun.bound == bound) | (BaseRun.objective == bound)


def filter_latest_run() -> ColumnElement[bool]:
    """The most recently created run."""
    latest = select(func.max(BaseRun.id)).scalar_subquery()
    return BaseRun.id == latest
