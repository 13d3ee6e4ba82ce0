"""
This module contains the SimRecord Model
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from sqlalchemy import JSON, ForeignKey
from sqlalchemy.orm import Mapped, mapped_column, relationship

from .base import BaseModel
from .service.annotated_types import str_016
from .service.table_names import T_NAME_RUNS, T_NAME_SIMULATIONS

if TYPE_CHECKING:
    from .run import BaseRun


class BaseSimRecord(BaseModel):
    """Stored simulation report

    Rates and headline metrics are columns so sweeps can be filtered in
    SQL; decode failure fractions and interval half-widths live in
    ``metrics``.
    """

    __tablename__ = T_NAME_SIMULATIONS

    def __init__(  # pylint: disable=too-many-positional-arguments,too-many-arguments
        self,
        run_id: Mapped[int],
        mode: Mapped[str_016],
        n: Mapped[int],
        r1: Mapped[float],
        r2: Mapped[float],
        rk: Mapped[float],
        rm: Mapped[float],
        error_prob: Mapped[float],
        key_tv: Mapped[float],
        leakage_bits: Mapped[float] | None = None,
        semantic_leakage_bits: Mapped[float] | None = None,
        covering_div_bits: Mapped[float] | None = None,
        trials: Mapped[int] = 0,
        metrics: Mapped[dict[str, Any]] | None = None,
    ):
        super().__init__()
        self.run_id = run_id
        self.mode = mode
        self.n = n
        self.r1 = r1
        self.r2 = r2
        self.rk = rk
        self.rm = rm
        self.error_prob = error_prob
        self.key_tv = key_tv
        self.leakage_bits = leakage_bits
        self.semantic_leakage_bits = semantic_leakage_bits
        self.covering_div_bits = covering_div_bits
        self.trials = trials
        self.metrics = metrics

    def __str__(self):
        return (
            f"<{self.__class__.__name__}"
            f"{' ID ' + str(self.id) + ' ' if self.id else ' '}"
            f"{self.mode} n={self.n} error={self.error_prob:.4g}>"
        )

    run_id: Mapped[int] = mapped_column(ForeignKey(f"{T_NAME_RUNS}.id"), nullable=False)
    """*Owning run*
        **int** : ForeignKey, nullable=False"""
    mode: Mapped[str_016] = mapped_column(nullable=False)
    """*exact or mc*
        **str** : max_length=16, nullable=False"""
    n: Mapped[int] = mapped_column(nullable=False)
    """*Blocklength*
        **int** : nullable=False"""
    r1: Mapped[float] = mapped_column(nullable=False)
    r2: Mapped[float] = mapped_column(nullable=False)
    rk: Mapped[float] = mapped_column(nullable=False)
    rm: Mapped[float] = mapped_column(nullable=False)
    error_prob: Mapped[float] = mapped_column(nullable=False)
    """*Maximal error probability over messages*
        **float** : nullable=False"""
    key_tv: Mapped[float] = mapped_column(nullable=False)
    """*Distance of the key from uniform*
        **float** : nullable=False"""
    leakage_bits: Mapped[float | None]
    semantic_leakage_bits: Mapped[float | None]
    covering_div_bits: Mapped[float | None]
    trials: Mapped[int] = mapped_column(nullable=False, default=0)
    metrics: Mapped[dict[str, Any] | None] = mapped_column(JSON)
    """*Decode failure fractions and half-widths*
        **dict** : JSON, nullable=True"""

    run: Mapped[BaseRun] = relationship(
        "BaseRun",
        back_populates="simulations",
    )
