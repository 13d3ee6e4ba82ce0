"""
Writers that persist channels, runs, frontiers and simulation reports.

Every writer adds to the given session and flushes so ids are assigned;
committing is left to the caller.
"""

from __future__ import annotations

import logging

from sqlalchemy import select
from sqlalchemy.orm import Session

from ..channel import WiretapChannel
from ..channel_record import BaseChannelRecord
from ..coding.trials import SimReport
from ..frontier import RegionFrontier
from ..optimizer import ScalarResult
from ..run import BaseRun
from ..scheme import scheme_to_dict
from ..service.provenance import Provenance
from ..sim_record import BaseSimRecord
from ..vertex import BaseVertex

logger = logging.getLogger(__name__)

ARGV_LENGTH = 255


def _argv(provenance: Provenance) -> str:
    return " ".join(provenance.argv)[:ARGV_LENGTH]


def _new_run(
    session: Session,
    command: str,
    provenance: Provenance,
    channel: BaseChannelRecord | None,
    **values,
) -> BaseRun:
    run = BaseRun(
        command=command,
        seed=provenance.seed,
        config_hash=provenance.config,
        version=provenance.version,
        argv=_argv(provenance),
        channel_id=channel.id if channel is not None else None,
        **values,
    )
    session.add(run)
    session.flush()
    return run


def record_channel(session: Session, ch: WiretapChannel) -> BaseChannelRecord:
    """
    Stored record of ``ch``, created on first use.

    Returns:
        BaseChannelRecord: The existing row with the same body hash, or a new one.
    """
    candidate = BaseChannelRecord.from_channel(ch)
    existing = session.scalars(
        select(BaseChannelRecord).where(
            BaseChannelRecord.config_hash == candidate.config_hash
        )
    ).first()
    if existing is not None:
        return existing
    session.add(candidate)
    session.flush()
    logger.debug("stored channel %s as %s", candidate.name, candidate.config_hash)
    return candidate


def record_region_run(
    session: Session,
    frontier: RegionFrontier,
    provenance: Provenance,
    channel: BaseChannelRecord | None = None,
    command: str = "region",
) -> BaseRun:
    """
    Store a region run with one vertex row per frontier vertex.

    Designs are embedded when the frontier kept them.
    """
    run = _new_run(
        session,
        command,
        provenance,
        channel,
        bound=frontier.bound.value if frontier.bound is not None else None,
        sm_endpoint=frontier.sm_endpoint,
        sk_endpoint=frontier.sk_endpoint,
        hull=frontier.hull,
    )
    for position, ((r_m, r_k), pid) in enumerate(zip(frontier.vertices, frontier.provenance)):
        design = frontier.designs.get(pid)
        session.add(
            BaseVertex(
                run_id=run.id,
                position=position,
                r_m=float(r_m),
                r_k=float(r_k),
                provenance_id=pid,
                design=scheme_to_dict(design) if design is not None else None,
            )
        )
    session.flush()
    logger.info("recorded %s run %d with %d vertices", command, run.id, len(frontier.vertices))
    return run


def record_scalar_run(
    session: Session,
    result: ScalarResult,
    objective: str,
    provenance: Provenance,
    channel: BaseChannelRecord | None = None,
    bound: str | None = None,
    command: str = "capacity",
) -> BaseRun:
    """Store a scalar maximum under its objective label."""
    run = _new_run(
        session,
        command,
        provenance,
        channel,
        bound=bound,
        objective=objective,
        value=result.value,
        signed=result.signed,
    )
    logger.info("recorded %s run %d: %s = %.6f", command, run.id, objective, result.value)
    return run


def record_simulation(
    session: Session,
    report: SimReport,
    provenance: Provenance,
    channel: BaseChannelRecord | None = None,
    command: str = "simulate",
) -> BaseSimRecord:
    """Store a simulation report under a new run."""
    run = _new_run(session, command, provenance, channel)
    record = BaseSimRecord(
        run_id=run.id,
        mode=report.mode,
        n=report.n,
        r1=report.rates.r1,
        r2=report.rates.r2,
        rk=report.rates.rk,
        rm=report.rates.rm,
        error_prob=report.error_prob,
        key_tv=report.key_tv,
        leakage_bits=report.leakage_bits,
        semantic_leakage_bits=report.semantic_leakage_bits,
        covering_div_bits=report.covering_div_bits,
        trials=report.trials,
        metrics={
            "atypical_prob": report.atypical_prob,
            "decode_failures": dict(report.decode_failures),
            "halfwidths": dict(report.halfwidths),
        },
    )
    session.add(record)
    session.flush()
    return record
