"""
Command-line entry point.

Every artifact starts with a provenance header (CSV) or carries a
``provenance`` object (JSON). Exit codes: 0 success, 1 I/O error,
2 invalid input, 3 infeasible configuration, 4 guard exceeded.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import sys
from typing import Any, Iterator, Sequence, TextIO

from sqlalchemy import create_engine
from sqlalchemy.orm import Session

from .addons.ledger import record_channel, record_region_run, record_scalar_run, record_simulation
from .base import BaseModel
from .bounds import Axis, BoundId
from .builtin import BUILTINS, builtin_example
from .channel import (
    WiretapChannel,
    channel_to_dict,
    check_degraded,
    load_channel,
    load_side_info,
    transform_general_csi,
)
from .coding.codebook import Rates
from .coding.covering import covering_thresholds, soft_cover_divergence
from .coding.trials import MODES, SimConfig, run_trials
from .frontier import frontier_to_dict, write_frontier_csv
from .objectives import compare_bounds, example_inequalities, get_objective, search_fig7_family
from .optimizer import ScalarResult, SearchConfig, optimize_region, optimize_scalar
from .scheme import build_joint, load_scheme, scheme_to_dict
from .service.constants import DEFAULT_EPS, DEFAULT_SEED, EXACT_GUARD, VERSION
from .service.exceptions import ValidationError, WiretapError
from .service.provenance import Provenance, canonical_json, config_hash

logger = logging.getLogger(__name__)

PROG = "wiretap-core"
EXIT_IO = 1
LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)
SWEEPS = ("none", "n", "R1", "R2")


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("channel", nargs="?", help="channel spec file (JSON)")
    parser.add_argument("--builtin", choices=sorted(BUILTINS), help="use a registry channel instead of a file")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="repeat for more detail")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--out", help="output file, standard output when omitted")


def _search_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--grid", type=int, default=4, help="lattice points per unit mass")
    parser.add_argument("--restarts", type=int, default=4)
    parser.add_argument("--iterations", type=int, default=20)
    parser.add_argument("--directions", type=int, default=None)
    parser.add_argument("--u-size", type=int, default=None)
    parser.add_argument("--v-size", type=int, default=None)
    parser.add_argument("--hull", action="store_true", help="emit the concave envelope")
    parser.add_argument("--stochastic-selectors", action="store_true")
    parser.add_argument("--db", help="SQLAlchemy URL of the run ledger")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PROG, description="SM-SK rate regions of wiretap channels with state")
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    validate = sub.add_parser("validate", help="check a channel file")
    _common(validate)
    validate.add_argument("--aux-file", help="also check a design against the channel")

    region = sub.add_parser("region", help="search the frontier of one bound")
    _common(region)
    _search_flags(region)
    region.add_argument("--bound", required=True)
    region.add_argument("--json", help="companion JSON with the designs")

    capacity = sub.add_parser("capacity", help="maximize a named scalar objective")
    _common(capacity)
    _search_flags(capacity)
    target = capacity.add_mutually_exclusive_group(required=True)
    target.add_argument("--objective", help="catalog label, e.g. cor8_sk")
    target.add_argument("--bound", help="bound to project, with --axis")
    target.add_argument("--inequalities", action="store_true", help="M1..K2' report")
    target.add_argument("--fig7-family", action="store_true", help="K1 vs K2 along the reversely degraded family")
    capacity.add_argument("--axis", choices=[a.value for a in Axis], default=Axis.SM.value)

    compare = sub.add_parser("compare", help="pairwise containment of bounds")
    _common(compare)
    _search_flags(compare)
    compare.add_argument("--bounds", nargs="+", required=True)

    simulate = sub.add_parser("simulate", help="measure a random code for a design")
    _common(simulate)
    simulate.add_argument("--aux-file", required=True)
    simulate.add_argument("--n", type=int, required=True)
    simulate.add_argument("--rates", type=float, nargs=4, metavar=("R1", "R2", "RK", "RM"), required=True)
    simulate.add_argument("--trials", type=int, default=1000)
    simulate.add_argument("--mode", choices=MODES, default="auto")
    simulate.add_argument("--eps", type=float, default=DEFAULT_EPS)
    simulate.add_argument("--guard", type=int, default=EXACT_GUARD)
    simulate.add_argument("--db", help="SQLAlchemy URL of the run ledger")

    softcover = sub.add_parser("softcover", help="covering divergence of a design")
    _common(softcover)
    softcover.add_argument("--aux-file", required=True)
    softcover.add_argument("--n", type=int, default=1)
    softcover.add_argument("--R1", type=float, default=0.0)
    softcover.add_argument("--R2", type=float, default=0.0)
    softcover.add_argument("--mode", choices=("exact", "mc"), default="exact")
    softcover.add_argument("--samples", type=int, default=200)
    softcover.add_argument("--guard", type=int, default=EXACT_GUARD)
    softcover.add_argument(
        "--sweep", choices=SWEEPS, default="none", help="n runs 1..--n; R1/R2 take --values"
    )
    softcover.add_argument("--values", type=float, nargs="+", default=())

    transform = sub.add_parser("transform", help="reduce general side information to CSI at Alice")
    _common(transform)
    transform.add_argument("--side-info", required=True)
    return parser


def _configure_logging(verbose: int) -> None:
    logging.basicConfig(
        level=LOG_LEVELS[min(verbose, len(LOG_LEVELS) - 1)],
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _channel(args: argparse.Namespace) -> WiretapChannel:
    if args.builtin:
        return builtin_example(args.builtin)
    if not args.channel:
        raise ValidationError("a channel file or --builtin is required")
    return load_channel(args.channel)


def _search_config(args: argparse.Namespace) -> SearchConfig:
    extra: dict[str, Any] = {}
    if args.directions is not None:
        extra["directions"] = args.directions
    return SearchConfig(
        u_size=args.u_size,
        v_size=args.v_size,
        resolution=args.grid,
        restarts=args.restarts,
        iterations=args.iterations,
        seed=args.seed,
        hull=args.hull,
        threads=args.threads,
        stochastic_selectors=args.stochastic_selectors,
        **extra,
    )


def _provenance(argv: Sequence[str], seed: int, payload: dict[str, Any]) -> Provenance:
    return Provenance(seed=seed, config=config_hash(payload), argv=(PROG, *argv))


@contextlib.contextmanager
def _output(path: str | None) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="") as stream:
        yield stream


def _write_json(path: str | None, payload: dict[str, Any]) -> None:
    with _output(path) as stream:
        json.dump(payload, stream, indent=2, sort_keys=True)
        stream.write("\n")


@contextlib.contextmanager
def _ledger(url: str | None) -> Iterator[Session | None]:
    """Session on the run ledger, or None when no URL was given."""
    if not url:
        yield None
        return
    engine = create_engine(url)
    BaseModel.metadata.create_all(engine)
    try:
        with Session(engine) as session:
            yield session
            session.commit()
    finally:
        engine.dispose()


def _scalar_payload(result: ScalarResult) -> dict[str, Any]:
    return {
        "value": result.value,
        "signed": result.signed,
        "feasible": result.feasible,
        "evaluated": result.evaluated,
        "design": scheme_to_dict(result.argmax) if result.argmax is not None else None,
    }


def cmd_validate(args: argparse.Namespace, argv: Sequence[str]) -> int:
    ch = _channel(args)
    report: dict[str, Any] = {
        "valid": True,
        "name": ch.name,
        "alphabets": dict(zip("SXYZ", ch.sizes)),
        "degradedness": check_degraded(ch).value,
    }
    if args.aux_file:
        aux = load_scheme(args.aux_file)
        build_joint(ch, aux)
        report["design"] = {"mode": aux.mode.value, "U": aux.u_size, "V": aux.v_size}
    report["provenance"] = _provenance(argv, args.seed, channel_to_dict(ch)).as_dict()
    _write_json(args.out, report)
    return 0


def cmd_region(args: argparse.Namespace, argv: Sequence[str]) -> int:
    ch = _channel(args)
    bound = BoundId.parse(args.bound)
    cfg = _search_config(args)
    provenance = _provenance(
        argv,
        args.seed,
        {"command": "region", "bound": bound.value, "search": cfg.as_dict(), "channel": channel_to_dict(ch)},
    )
    frontier = optimize_region(ch, bound, cfg)
    with _output(args.out) as stream:
        write_frontier_csv(frontier, stream, provenance)
    if args.json:
        _write_json(args.json, frontier_to_dict(frontier, provenance))
    print(
        f"{bound.value}: SM endpoint {frontier.sm_endpoint:.5f}, SK endpoint {frontier.sk_endpoint:.5f}",
        file=sys.stderr,
    )
    with _ledger(args.db) as session:
        if session is not None:
            record_region_run(session, frontier, provenance, record_channel(session, ch))
    return 0


def cmd_capacity(args: argparse.Namespace, argv: Sequence[str]) -> int:
    cfg = _search_config(args)
    if args.fig7_family:
        provenance = _provenance(argv, args.seed, {"command": "capacity", "family": "fig7", "search": cfg.as_dict()})
        rows = search_fig7_family(cfg=cfg)
        _write_json(
            args.out,
            {"rows": [row._asdict() for row in rows], "provenance": provenance.as_dict()},
        )
        return 0

    ch = _channel(args)
    body = {"command": "capacity", "search": cfg.as_dict(), "channel": channel_to_dict(ch)}
    if args.inequalities:
        provenance = _provenance(argv, args.seed, {**body, "inequalities": True})
        report = example_inequalities(ch, cfg)
        payload = {name: _scalar_payload(result) for name, result in report.items()}
        _write_json(args.out, {"inequalities": payload, "provenance": provenance.as_dict()})
        return 0

    if args.objective:
        objective = get_objective(args.objective)
        bound, axis, label = objective.bound, objective.axis, objective.label
    else:
        bound, axis = BoundId.parse(args.bound), Axis(args.axis)
        label = f"{bound.value}:{axis.value}"
    provenance = _provenance(argv, args.seed, {**body, "bound": bound.value, "axis": axis.value})
    result = optimize_scalar(ch, bound, axis, cfg)
    _write_json(
        args.out,
        {
            "objective": label,
            "bound": bound.value,
            "axis": axis.value,
            **_scalar_payload(result),
            "provenance": provenance.as_dict(),
        },
    )
    with _ledger(args.db) as session:
        if session is not None:
            record_scalar_run(
                session, result, label, provenance, record_channel(session, ch), bound=bound.value
            )
    return 0


def cmd_compare(args: argparse.Namespace, argv: Sequence[str]) -> int:
    ch = _channel(args)
    bounds = [BoundId.parse(b) for b in args.bounds]
    cfg = _search_config(args)
    provenance = _provenance(
        argv,
        args.seed,
        {
            "command": "compare",
            "bounds": [b.value for b in bounds],
            "search": cfg.as_dict(),
            "channel": channel_to_dict(ch),
        },
    )
    report = compare_bounds(ch, bounds, cfg)
    width = max(len(b.value) for b in bounds)
    lines = [provenance.header(), " " * width + " " + " ".join(b.value for b in bounds)]
    for a in bounds:
        cells = " ".join(
            ("yes" if report.matrix[a][b] else "no").rjust(len(b.value)) for b in bounds
        )
        lines.append(f"{a.value.ljust(width)} {cells}")
    print("\n".join(lines))
    if args.out:
        _write_json(args.out, {**report.as_dict(), "provenance": provenance.as_dict()})
    with _ledger(args.db) as session:
        if session is not None:
            record = record_channel(session, ch)
            for bound in bounds:
                record_region_run(session, report.frontiers[bound], provenance, record, command="compare")
    return 0


def cmd_simulate(args: argparse.Namespace, argv: Sequence[str]) -> int:
    ch = _channel(args)
    aux = load_scheme(args.aux_file)
    rates = Rates(*args.rates)
    if any(r < 0 for r in rates):
        raise ValidationError(f"rates {list(rates)} must be nonnegative")
    cfg = SimConfig(
        eps=args.eps, guard=args.guard, mode=args.mode, trials=args.trials, threads=args.threads
    )
    provenance = _provenance(
        argv,
        args.seed,
        {
            "command": "simulate",
            "n": args.n,
            "rates": rates.as_dict(),
            "sim": {"eps": cfg.eps, "guard": cfg.guard, "mode": cfg.mode, "trials": cfg.trials},
            "design": scheme_to_dict(aux),
            "channel": channel_to_dict(ch),
        },
    )
    report = run_trials(ch, build_joint(ch, aux), args.n, rates, args.seed, cfg)
    _write_json(args.out, {**report.as_dict(), "provenance": provenance.as_dict()})
    with _ledger(args.db) as session:
        if session is not None:
            record_simulation(session, report, provenance, record_channel(session, ch))
    return 0


def _sweep_points(args: argparse.Namespace) -> list[tuple[str, float, int, float, float]]:
    if args.sweep == "none":
        return [("n", args.n, args.n, args.R1, args.R2)]
    if args.sweep == "n":
        return [("n", n, n, args.R1, args.R2) for n in range(1, args.n + 1)]
    if not args.values:
        raise ValidationError(f"--sweep {args.sweep} needs --values")
    if args.sweep == "R1":
        return [("R1", r, args.n, r, args.R2) for r in args.values]
    return [("R2", r, args.n, args.R1, r) for r in args.values]


def cmd_softcover(args: argparse.Namespace, argv: Sequence[str]) -> int:
    ch = _channel(args)
    aux = load_scheme(args.aux_file)
    j = build_joint(ch, aux)
    provenance = _provenance(
        argv,
        args.seed,
        {
            "command": "softcover",
            "n": args.n,
            "R1": args.R1,
            "R2": args.R2,
            "mode": args.mode,
            "sweep": args.sweep,
            "values": list(args.values),
            "design": scheme_to_dict(aux),
            "channel": channel_to_dict(ch),
        },
    )
    t_u, t_uv = covering_thresholds(j)
    with _output(args.out) as stream:
        stream.write(provenance.header() + "\n")
        stream.write(f"# thresholds I(U;S)={t_u:.12f} I(UV;S)={t_uv:.12f}\n")
        stream.write("variable,value,L,N,divergence_bits,stderr\n")
        for variable, value, n, r1, r2 in _sweep_points(args):
            estimate = soft_cover_divergence(
                j, n, r1, r2, mode=args.mode, seed=args.seed, samples=args.samples, guard=args.guard
            )
            L, N = estimate.sizes
            stream.write(
                f"{variable},{value:g},{L},{N},{estimate.bits:.12f},{estimate.stderr:.12f}\n"
            )
    return 0


def cmd_transform(args: argparse.Namespace, argv: Sequence[str]) -> int:
    ch = _channel(args)
    side_info = load_side_info(args.side_info, ch.s_size)
    reduced = transform_general_csi(ch, side_info)
    body = channel_to_dict(reduced)
    provenance = _provenance(argv, args.seed, {"command": "transform", "channel": channel_to_dict(ch), "side_info": side_info})
    _write_json(args.out, {**body, "provenance": provenance.as_dict()})
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "region": cmd_region,
    "capacity": cmd_capacity,
    "compare": cmd_compare,
    "simulate": cmd_simulate,
    "softcover": cmd_softcover,
    "transform": cmd_transform,
}


def _diagnostic(err: BaseException, code: int) -> None:
    payload = {"error": err.__class__.__name__, "message": str(err), "exit_code": code}
    print(canonical_json(payload), file=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    """
    Run one subcommand.

    Returns:
        int: Process exit code.
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args, argv)
    except WiretapError as err:
        _diagnostic(err, err.exit_code)
        return err.exit_code
    except OSError as err:
        _diagnostic(err, EXIT_IO)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
