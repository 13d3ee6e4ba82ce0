"""
Common declarative base of the run-ledger models
"""

from __future__ import annotations

from datetime import datetime
from typing import Any

from sqlalchemy import String, func, inspect, select
from sqlalchemy.ext.asyncio import AsyncAttrs
from sqlalchemy.ext.hybrid import hybrid_property
from sqlalchemy.orm import DeclarativeBase, Mapped, Session, mapped_column
from sqlalchemy.orm import registry as rg

from wiretap_core.service.annotated_types import str_016, str_032, str_064, str_255

TIMESTAMPS = ("created", "updated")


class BaseModel(AsyncAttrs, DeclarativeBase):
    """
    Parent of every ledger model: id and timestamp columns, column export
    and the introspection used by selectors and the exporter.
    """

    registry = rg(
        type_annotation_map={
            annotation: String(annotation.__metadata__[0])
            for annotation in (str_016, str_032, str_064, str_255)
        }
    )

    __abstract__ = True

    id: Mapped[int] = mapped_column(primary_key=True)
    """
    :type: int
    """

    created: Mapped[datetime] = mapped_column(default=datetime.now, nullable=False)
    """
    Time the row was written by the ledger.

    :type: datetime
    """

    updated: Mapped[datetime | None] = mapped_column(
        onupdate=func.now()  # pylint: disable=E1102
    )
    """
    Last update time, ``null`` for rows the ledger never touched again.

    :type: datetime
    """

    def __repr__(self):
        shown = ", ".join(f"{k}={v!r}" for k, v in self.export().items() if v is not None)
        return f"{type(self).__name__}({shown})"

    @classmethod
    def get_by_id(cls, session: Session, cid: int):
        """
        Returns:
            The row with primary key ``cid``, or None.
        """
        return session.get(cls, cid)

    @classmethod
    def get_all(cls, session: Session):
        """
        Returns:
            list: Every row of the table in id order.
        """
        return session.scalars(select(cls).order_by(cls.id)).all()

    def export(self) -> dict[str, Any]:
        """
        Loaded column values sorted by key, timestamps excluded.

        Relationships and hybrids are never part of the export, so the
        result is a flat record ready for JSON or the line exporter.
        """
        loaded = inspect(self).dict
        return {
            key: loaded[key]
            for key in sorted(self.columns())
            if key in loaded and key not in TIMESTAMPS
        }

    @classmethod
    def columns(cls) -> set[str]:
        """
        Returns:
            set[str]: Keys of the mapped columns.
        """
        return set(cls.__mapper__.column_attrs.keys())

    @classmethod
    def attributes_all(cls) -> set[str]:
        """
        Returns:
            set[str]: Columns, relationships and hybrid properties.
        """
        return cls.columns() | cls.relationships() | cls.hybrid_properties()

    @classmethod
    def attributes_basic(cls) -> set[str]:
        return cls.columns()

    @classmethod
    def relationships(cls) -> set[str]:
        return set(cls.__mapper__.relationships.keys())

    @classmethod
    def foreign_keys(cls) -> set[str]:
        """
        Returns:
            set[str]: Column keys that reference another ledger table.
        """
        return {
            key
            for key, attr in cls.__mapper__.column_attrs.items()
            if any(column.foreign_keys for column in attr.columns)
        }

    @classmethod
    def hybrid_properties(cls) -> set[str]:
        return {
            key
            for key, descriptor in inspect(cls).all_orm_descriptors.items()
            if isinstance(descriptor, hybrid_property)
        }
