"""
Text export of ledger records: one separator-joined line per record.
"""

from typing import Callable, Iterable, Type

from ..channel_record import BaseChannelRecord
from ..run import BaseRun
from ..sim_record import BaseSimRecord
from ..vertex import BaseVertex

DEFAULT_SEPARATOR = "@"


class Exporter:
    """
    Exports channel, run, vertex and simulation records as text lines.

    Raises:
        ValueError: If the object type is not supported for export.
    """

    FORMAT_RATE = "{:.12f}"
    FORMAT_DATE = "%Y-%m-%d %H:%M:%S"

    @classmethod
    def export(cls, obj, separator: str = DEFAULT_SEPARATOR) -> str:
        """
        Args:
            obj: Ledger record.
            separator: Field separator.

        Returns:
            str: The exported line.

        Raises:
            ValueError: If the object type is not supported.
        """
        exporters: dict[Type, Callable] = {
            BaseChannelRecord: cls.export_channel,
            BaseRun: cls.export_run,
            BaseVertex: cls.export_vertex,
            BaseSimRecord: cls.export_simulation,
        }

        exporter_func = next(
            (func for base_class, func in exporters.items() if isinstance(obj, base_class)),
            None,
        )
        if not exporter_func:
            raise ValueError(f"Unsupported object type: {obj.__class__}")

        return cls.merge_by(exporter_func(obj), separator)

    @staticmethod
    def merge_by(items: Iterable, separator: str = DEFAULT_SEPARATOR) -> str:
        """Join ``items``; None becomes an empty field."""
        return separator.join("" if i is None else str(i) for i in items)

    @classmethod
    def rate(cls, value: float | None) -> str | None:
        return None if value is None else cls.FORMAT_RATE.format(value)

    @staticmethod
    def export_channel(obj: BaseChannelRecord) -> tuple:
        sizes = f"{obj.s_size}x{obj.x_size}x{obj.y_size}x{obj.z_size}"
        return obj.name, sizes, obj.config_hash

    @classmethod
    def export_run(cls, obj: BaseRun) -> tuple:
        return (
            obj.id,
            obj.command,
            obj.bound or obj.objective,
            obj.seed,
            obj.config_hash,
            obj.version,
            cls.rate(obj.sm_endpoint),
            cls.rate(obj.sk_endpoint),
            cls.rate(obj.value),
            int(bool(obj.hull)),
            obj.created.strftime(cls.FORMAT_DATE) if obj.created else None,
        )

    @classmethod
    def export_vertex(cls, obj: BaseVertex) -> tuple:
        return (
            obj.run_id,
            obj.position,
            cls.rate(obj.r_m),
            cls.rate(obj.r_k),
            obj.provenance_id,
        )

    @classmethod
    def export_simulation(cls, obj: BaseSimRecord) -> tuple:
        return (
            obj.run_id,
            obj.mode,
            obj.n,
            cls.rate(obj.r1),
            cls.rate(obj.r2),
            cls.rate(obj.rk),
            cls.rate(obj.rm),
            obj.error_prob,
            obj.key_tv,
            obj.leakage_bits,
            obj.covering_div_bits,
        )
