"""
This module contains the Run Model
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from sqlalchemy import ForeignKey
from sqlalchemy.ext.hybrid import hybrid_property
from sqlalchemy.orm import Mapped, mapped_column, relationship

from .base import BaseModel
from .channel_record import BaseChannelRecord
from .service.annotated_types import str_016, str_032, str_064, str_255
from .service.table_names import T_NAME_CHANNELS, T_NAME_RUNS

if TYPE_CHECKING:
    from .sim_record import BaseSimRecord
    from .vertex import BaseVertex


class BaseRun(BaseModel):
    """One CLI or library invocation.

    Attributes:
        command (str_032): Subcommand that produced the run.
        bound (str_032 | None): Bound the run evaluated.
        objective (str_032 | None): Scalar objective label.
        seed (int): Master seed.
        config_hash (str_064): Hash of the run parameters and channel body.
        version (str_016): Package version that produced the run.
        argv (str_255 | None): Recorded invocation.
        sm_endpoint (float | None): Largest R_M of a region run.
        sk_endpoint (float | None): Largest R_M + R_K of a region run.
        value (float | None): Clamped scalar maximum.
        signed (float | None): Unclamped scalar maximum.
        hull (bool): Whether the stored frontier is the concave envelope.
        channel_id (int | None): Foreign key of the channel.
    """

    __tablename__ = T_NAME_RUNS

    def __init__(  # pylint: disable=too-many-positional-arguments,too-many-arguments
        self,
        command: Mapped[str_032],
        seed: Mapped[int],
        config_hash: Mapped[str_064],
        version: Mapped[str_016],
        bound: Mapped[str_032] | None = None,
        objective: Mapped[str_032] | None = None,
        argv: Mapped[str_255] | None = None,
        sm_endpoint: Mapped[float] | None = None,
        sk_endpoint: Mapped[float] | None = None,
        value: Mapped[float] | None = None,
        signed: Mapped[float] | None = None,
        hull: Mapped[bool] = False,
        channel_id: Mapped[int] | None = None,
    ):
        super().__init__()
        self.command = command
        self.seed = seed
        self.config_hash = config_hash
        self.version = version
        self.bound = bound
        self.objective = objective
        self.argv = argv
        self.sm_endpoint = sm_endpoint
        self.sk_endpoint = sk_endpoint
        self.value = value
        self.signed = signed
        self.hull = hull
        self.channel_id = channel_id

    def __str__(self):
        target = self.bound or self.objective or ""
        return (
            f"<{self.__class__.__name__}"
            f"{' ID ' + str(self.id) + ' ' if self.id else ' '}"
            f"{self.command} {target} seed={self.seed}>"
        )

    command: Mapped[str_032] = mapped_column(nullable=False)
    """*Subcommand name*
        **str** : max_length=32, nullable=False"""
    bound: Mapped[str_032 | None]
    """*Evaluated bound*
        **str** : max_length=32, nullable=True"""
    objective: Mapped[str_032 | None]
    """*Scalar objective label*
        **str** : max_length=32, nullable=True"""
    seed: Mapped[int] = mapped_column(nullable=False)
    """*Master seed*
        **int** : nullable=False"""
    config_hash: Mapped[str_064] = mapped_column(nullable=False, index=True)
    """*Hash of the run parameters*
        **str** : max_length=64, nullable=False"""
    version: Mapped[str_016] = mapped_column(nullable=False)
    """*Producing package version*
        **str** : max_length=16, nullable=False"""
    argv: Mapped[str_255 | None]
    """*Recorded invocation*
        **str** : max_length=255, nullable=True"""
    sm_endpoint: Mapped[float | None]
    sk_endpoint: Mapped[float | None]
    value: Mapped[float | None]
    signed: Mapped[float | None]
    hull: Mapped[bool] = mapped_column(nullable=False, default=False)
    """*Frontier is the concave envelope*
        **bool** : nullable=False"""

    channel_id: Mapped[int | None] = mapped_column(ForeignKey(f"{T_NAME_CHANNELS}.id"))
    """*Channel the run used*
        **int** : ForeignKey, nullable=True"""

    channel: Mapped[BaseChannelRecord | None] = relationship(
        BaseChannelRecord,
        back_populates="runs",
    )

    vertices: Mapped[list[BaseVertex]] = relationship(
        "BaseVertex",
        back_populates="run",
        order_by="BaseVertex.position",
        cascade="all, delete-orphan",
    )
    """Frontier vertices of a region run, in frontier order"""

    simulations: Mapped[list[BaseSimRecord]] = relationship(
        "BaseSimRecord",
        back_populates="run",
        cascade="all, delete-orphan",
    )

    @hybrid_property
    def is_region(self) -> bool:
        """Whether the run stored a frontier rather than a scalar."""
        return self.sm_endpoint is not None

    @is_region.inplace.expression
    @classmethod
    def _is_region_expression(cls):
        return cls.sm_endpoint.is_not(None)
