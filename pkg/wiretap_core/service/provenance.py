"""
Provenance helpers: canonical hashing of run parameters and the
header line written at the top of every artifact.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .constants import VERSION


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if hasattr(obj, "value") and hasattr(obj, "name"):
        return obj.value
    raise TypeError(f"Object of type {obj.__class__.__name__} is not serializable")


def canonical_json(payload: Any) -> str:
    """Serialize ``payload`` with sorted keys and no whitespace."""
    return json.dumps(
        payload, sort_keys=True, separators=(",", ":"), default=_jsonable
    )


def config_hash(payload: Any, length: int = 16) -> str:
    """
    SHA-256 of the canonical JSON form of ``payload``.

    Args:
        payload: Any JSON-compatible structure (numpy arrays allowed).
        length: Number of hex digits kept.

    Returns:
        str: Hex digest prefix.
    """
    digest = hashlib.sha256(canonical_json(payload).encode("utf-8"))
    return digest.hexdigest()[:length]


@dataclass(frozen=True)
class Provenance:
    """Everything needed to reproduce an artifact."""

    seed: int
    config: str
    argv: Sequence[str] = field(default_factory=tuple)
    version: str = VERSION

    def header(self) -> str:
        """Comment line placed at the top of CSV and text artifacts."""
        invocation = " ".join(self.argv)
        return (
            f"# wiretap-core {self.version} seed={self.seed} "
            f"config={self.config} argv={invocation}"
        )

    def as_dict(self) -> dict[str, Any]:
        """Mapping embedded into JSON artifacts."""
        return {
            "version": self.version,
            "seed": self.seed,
            "config": self.config,
            "argv": list(self.argv),
        }
