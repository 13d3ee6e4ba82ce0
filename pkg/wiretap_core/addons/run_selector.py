"""
This module provides the RunSelector for querying stored runs by
command, bound, channel, seed and recency.
"""

from __future__ import annotations

from typing import Type

from typing_extensions import Self

from ..run import BaseRun
from .base_selector import BaseSelector
from .filters import filter_latest_run, filter_run_by_bound, filter_run_by_channel_hash


class RunSelector(BaseSelector):
    """
    Chainable query over :class:`BaseRun`.

    Example:
        ``RunSelector().by_command("region").by_bound("D_Region_T4").all(session)``
    """

    def __init__(
        self,
        model: Type[BaseRun] = BaseRun,
        is_sqlite: bool = False,
        case_sensitive: bool = False,
        disable_model_check: bool = False,
    ):
        """
        Raises:
            ValueError: If ``model`` is not a subclass of BaseRun.
        """
        super().__init__(
            model=model,
            is_sqlite=is_sqlite,
            case_sensitive=case_sensitive,
            disable_model_check=disable_model_check,
        )

        if not self.disable_model_check:
            self._is_model_accepted(model, BaseRun)

    def by_command(self, command: str) -> Self:
        """Runs of one subcommand; ``*`` acts as a wildcard."""
        self._statement = self._statement.where(
            self.get_like_condition(self.model.command, command)
        )
        return self

    def by_bound(self, bound: str | None) -> Self:
        """Runs that evaluated ``bound`` or the objective labelled ``bound``."""
        self._statement = self._statement.where(filter_run_by_bound(bound))
        return self

    def by_channel_hash(self, channel_hash: str) -> Self:
        self._statement = self._statement.where(filter_run_by_channel_hash(channel_hash))
        return self

    def by_seed(self, seed: int) -> Self:
        self._statement = self._statement.where(self.model.seed == seed)
        return self

    def regions_only(self) -> Self:
        """Runs that stored a frontier."""
        self._statement = self._statement.where(self.model.is_region)
        return self

    def latest(self) -> Self:
        """Restrict to the most recent run."""
        self._statement = self._statement.where(filter_latest_run())
        return self
