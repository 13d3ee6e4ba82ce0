"""
This module contains the ChannelRecord Model
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from sqlalchemy import JSON
from sqlalchemy.orm import Mapped, mapped_column, relationship

from .base import BaseModel
from .channel import WiretapChannel, channel_from_dict, channel_to_dict
from .service.annotated_types import str_064
from .service.provenance import config_hash
from .service.table_names import T_NAME_CHANNELS

if TYPE_CHECKING:
    from .run import BaseRun


class BaseChannelRecord(BaseModel):
    """Stored channel specification

    One row per distinct channel body; rows are unique by the hash of the
    canonical JSON body so repeated runs on one channel share it.

    <details><summary>Show Examples</summary><p>
    ```python
    {'id': 1, 'name': 'fig6', 's_size': 2, 'x_size': 2, 'y_size': 2,
     'z_size': 2, 'config_hash': '5f0d2c1e9a4b7c33', 'body': {...}}
    ```
    </p></details>
    """

    __tablename__ = T_NAME_CHANNELS

    def __init__(  # pylint: disable=too-many-positional-arguments
        self,
        name: Mapped[str_064],
        s_size: Mapped[int],
        x_size: Mapped[int],
        y_size: Mapped[int],
        z_size: Mapped[int],
        config_hash: Mapped[str_064],  # pylint: disable=redefined-outer-name
        body: Mapped[dict[str, Any]],
    ):
        super().__init__()
        self.name = name
        self.s_size = s_size
        self.x_size = x_size
        self.y_size = y_size
        self.z_size = z_size
        self.config_hash = config_hash
        self.body = body

    def __str__(self):
        return (
            f"<{self.__class__.__name__}"
            f"{' ID ' + str(self.id) + ' ' if self.id else ' '}"
            f"{self.name} |S|={self.s_size} |X|={self.x_size} "
            f"|Y|={self.y_size} |Z|={self.z_size}>"
        )

    @classmethod
    def from_channel(cls, ch: WiretapChannel) -> BaseChannelRecord:
        """Build an unsaved record from a channel."""
        body = channel_to_dict(ch)
        return cls(
            name=ch.name or "unnamed",
            s_size=ch.s_size,
            x_size=ch.x_size,
            y_size=ch.y_size,
            z_size=ch.z_size,
            config_hash=config_hash(body),
            body=body,
        )

    def to_channel(self) -> WiretapChannel:
        """Rebuild the validated channel from the stored body."""
        return channel_from_dict(self.body)

    name: Mapped[str_064] = mapped_column(nullable=False)
    """*Channel name*
        **str** : max_length=64, nullable=False, unique=False"""
    s_size: Mapped[int] = mapped_column(nullable=False)
    """*State alphabet size*
        **int** : nullable=False"""
    x_size: Mapped[int] = mapped_column(nullable=False)
    """*Input alphabet size*
        **int** : nullable=False"""
    y_size: Mapped[int] = mapped_column(nullable=False)
    """*Legitimate output alphabet size*
        **int** : nullable=False"""
    z_size: Mapped[int] = mapped_column(nullable=False)
    """*Eavesdropper output alphabet size*
        **int** : nullable=False"""
    config_hash: Mapped[str_064] = mapped_column(nullable=False, unique=True)
    """*Hash of the canonical JSON body*
        **str** : max_length=64, nullable=False, unique=True"""
    body: Mapped[dict[str, Any]] = mapped_column(JSON, nullable=False)
    """*Channel specification in the file layout*
        **dict** : JSON, nullable=False"""

    runs: Mapped[list[BaseRun]] = relationship(
        "BaseRun",
        back_populates="channel",
    )
    """Runs performed on this channel"""
