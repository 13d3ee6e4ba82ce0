"""
This module provides a chainable base selector over the ledger models
"""

from typing import Any, Iterable, Type

from sqlalchemy import Select, select
from sqlalchemy.ext.asyncio import AsyncSession
from sqlalchemy.orm import InstrumentedAttribute, Session, selectinload
from sqlalchemy.types import Integer, String
from typing_extensions import Self

from ..base import BaseModel


class BaseSelector:
    """
    Wraps a ``select(model)`` statement. Filtering methods return the
    selector itself so calls chain; the execution methods run the
    statement on a sync or async session.
    """

    def __init__(
        self,
        model: Type[BaseModel],
        is_sqlite: bool = False,
        case_sensitive: bool = False,
        disable_model_check: bool = False,
    ):
        """
        Args:
            model (Type): Ledger model to select from.
            is_sqlite (bool): Use ``GLOB`` for case-sensitive patterns.
            case_sensitive (bool): Whether pattern filters respect case.
            disable_model_check (bool): Skip the BaseModel subclass check.

        Raises:
            ValueError: If ``model`` is not a ledger model.
        """
        self.disable_model_check = disable_model_check
        if not self.disable_model_check:
            self._is_model_accepted(model, BaseModel)

        self.model = model
        self._statement = select(self.model)
        self.is_sqlite = is_sqlite
        self.case_sensitive = case_sensitive

    def limit(self, limit: int) -> Self:
        self._statement = self._statement.limit(limit)
        return self

    def offset(self, offset: int) -> Self:
        self._statement = self._statement.offset(offset)
        return self

    def order_by(self, *columns) -> Self:
        self._statement = self._statement.order_by(*columns)
        return self

    def filter_by(self, **kwargs) -> Self:
        """Equality filters on column names."""
        self._statement = self._statement.filter_by(**kwargs)
        return self

    def where(self, *args) -> Self:
        """Arbitrary SQL conditions."""
        self._statement = self._statement.where(*args)
        return self

    def where_like(self, **kwargs) -> Self:
        """
        Pattern filters where ``*`` is a wildcard, honouring the
        ``case_sensitive`` and ``is_sqlite`` settings.
        """
        for key, value in kwargs.items():
            self._statement = self._statement.where(self.get_like_condition(key, value))
        return self

    def get_like_condition(self, key: str | InstrumentedAttribute, value: Any):
        """
        Args:
            key (str | InstrumentedAttribute): Column name or attribute.
            value (Any): Pattern, or plain value for non-string columns.

        Returns:
            The SQL condition.
        """
        column = self._get_column(key)

        if isinstance(column.type, Integer):
            return column == int(value)

        if not isinstance(column.type, String):
            return column == value

        if self.case_sensitive and self.is_sqlite:
            return column.op("GLOB")(str(value))

        pattern = str(value).replace("*", "%")
        return column.like(pattern) if self.case_sensitive else column.ilike(pattern)

    def get_statement(self) -> Select:
        return self._statement

    def with_relationships(self, selected: Iterable[str] | None = None) -> Self:
        """
        Eager-load relationships.

        Args:
            selected: Relationship names to load; all of them when None.
        """
        options = [
            selectinload(getattr(self.model, name))
            for name in sorted(self.model.relationships())
            if not selected or name in selected
        ]
        self._statement = self._statement.options(*options)
        return self

    @staticmethod
    def _is_model_accepted(model, parent: type[BaseModel] = BaseModel):
        """
        Raises:
            ValueError: If ``model`` is not ``parent`` or a subclass of it.
        """
        if not (isinstance(model, type) and issubclass(model, parent)):
            raise ValueError(f"Provided model={model} is not inherited from {parent}")

    def _get_column(self, key: str | InstrumentedAttribute) -> InstrumentedAttribute:
        """
        Raises:
            AttributeError: If the model has no such attribute.
        """
        column = getattr(self.model, key, None) if isinstance(key, str) else key
        if column is None:
            raise AttributeError(f"Model {self.model} has no attribute {key}")
        return column

    def execute(self, session: Session, unique: bool = False) -> Any:
        result = session.execute(self._statement)
        return result.unique() if unique else result

    def all(self, session: Session, unique: bool = False):
        """
        Returns:
            list: Every matching row.
        """
        return self.execute(session, unique).scalars().all()

    def scalar(self, session: Session):
        """
        Returns:
            The first matching row or None.
        """
        return self.execute(session).scalar()

    def fetchmany(self, session: Session, size: int | None = None, unique: bool = False):
        return self.execute(session, unique).scalars().fetchmany(size)

    async def execute_async(self, session: AsyncSession, unique: bool = False):
        result = await session.execute(self._statement)
        return result.unique() if unique else result

    async def all_async(self, session: AsyncSession, unique: bool = False):
        """Async counterpart of :meth:`all`."""
        result = await self.execute_async(session, unique)
        return result.scalars().all()

    async def scalar_async(self, session: AsyncSession):
        """Async counterpart of :meth:`scalar`."""
        result = await self.execute_async(session)
        return result.scalar()

    async def fetchmany_async(
        self, session: AsyncSession, size: int | None = None, unique: bool = False
    ):
        result = await self.execute_async(session, unique)
        return result.scalars().fetchmany(size)
