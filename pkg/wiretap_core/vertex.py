"""
This module contains the Vertex Model
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from sqlalchemy import JSON, ForeignKey
from sqlalchemy.orm import Mapped, mapped_column, relationship

from .base import BaseModel
from .service.annotated_types import str_064
from .service.table_names import T_NAME_RUNS, T_NAME_VERTICES

if TYPE_CHECKING:
    from .run import BaseRun


class BaseVertex(BaseModel):
    """Frontier vertex of a region run

    <details><summary>Show Examples</summary><p>
    ```python
    {'id': 3, 'run_id': 1, 'position': 0, 'r_m': 0.0,
     'r_k': 0.531004406410719, 'provenance_id': 'r0u0d4', 'design': None}
    ```
    </p></details>
    """

    __tablename__ = T_NAME_VERTICES

    def __init__(  # pylint: disable=too-many-positional-arguments
        self,
        run_id: Mapped[int],
        position: Mapped[int],
        r_m: Mapped[float],
        r_k: Mapped[float],
        provenance_id: Mapped[str_064],
        design: Mapped[dict[str, Any]] | None = None,
    ):
        super().__init__()
        self.run_id = run_id
        self.position = position
        self.r_m = r_m
        self.r_k = r_k
        self.provenance_id = provenance_id
        self.design = design

    def __str__(self):
        return (
            f"<{self.__class__.__name__} run {self.run_id} #{self.position}"
            f" ({self.r_m:.6f}, {self.r_k:.6f})>"
        )

    run_id: Mapped[int] = mapped_column(ForeignKey(f"{T_NAME_RUNS}.id"), nullable=False)
    """*Owning run*
        **int** : ForeignKey, nullable=False"""
    position: Mapped[int] = mapped_column(nullable=False)
    """*Index along the frontier, R_M ascending*
        **int** : nullable=False"""
    r_m: Mapped[float] = mapped_column(nullable=False)
    """*Secret-message rate*
        **float** : nullable=False"""
    r_k: Mapped[float] = mapped_column(nullable=False)
    """*Secret-key rate*
        **float** : nullable=False"""
    provenance_id: Mapped[str_064] = mapped_column(nullable=False)
    """*Identifier of the design that produced the vertex*
        **str** : max_length=64, nullable=False"""
    design: Mapped[dict[str, Any] | None] = mapped_column(JSON)
    """*Auxiliary design in the file layout*
        **dict** : JSON, nullable=True"""

    run: Mapped[BaseRun] = relationship(
        "BaseRun",
        back_populates="vertices",
    )
