"""
Derivative-free search over auxiliary designs.

A design is a list of probability simplices ("blocks") plus an optional
deterministic selector table. The search evaluates a stratified lattice
of designs, then refines seeds by pairwise mass moves with a halving
step, one work unit per (direction, start). Every visited polytope feeds
the frontier; only polytopes not contained in another one are kept.
"""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, NamedTuple, Sequence

import numpy as np
from numpy.typing import NDArray

from .bounds import (
    BOUND_TABLE,
    Axis,
    BoundId,
    RatePolytope,
    evaluate_design,
    scalar_projection,
)
from .channel import WiretapChannel
from .frontier import RegionFrontier, pareto_union, upper_concave_envelope
from .scheme import AuxiliaryScheme, SchemeMode
from .service.constants import (
    DEFAULT_DIRECTIONS,
    DEFAULT_SEED,
    EXACT_GUARD,
    MAX_GRID_POINTS,
    MAX_SELECTORS,
)
from .service.exceptions import InfeasibleConfigError

logger = logging.getLogger(__name__)

MIN_STEP = 1e-4
IMPROVE_TOL = 1e-12
MAX_MOVES = 24
INFEASIBLE_PENALTY = 1e6
REDUCE_EVERY = 512


def cardinality_caps(s_size: int, x_size: int) -> tuple[int, int]:
    """Default |U| and |V| limits for a channel with the given |S| and |X|."""
    a = (x_size - 1) * s_size
    return a + 3, a * a + 3 * a + 2


@dataclass(frozen=True)
class SearchConfig:
    """
    Tunables of the design search.

    Attributes:
        u_size: |U|; ``None`` takes the cardinality cap.
        v_size: |V|; ``None`` takes the cardinality cap.
        resolution: Lattice points per unit mass on each simplex axis.
        restarts: Random starts per direction.
        iterations: Refinement iterations per start.
        seed: Root seed of all substreams.
        hull: Return the concave envelope instead of the raw union.
        directions: Weighted-sum directions in [0, 90] degrees.
        threads: Worker threads for the refinement units.
        stochastic_selectors: Refine p(x|s,u,v) as free simplices after
            the deterministic phase.
        warm_start: Extra designs evaluated before the search.
    """

    u_size: int | None = None
    v_size: int | None = None
    resolution: int = 4
    restarts: int = 4
    iterations: int = 20
    seed: int = DEFAULT_SEED
    hull: bool = False
    directions: int = DEFAULT_DIRECTIONS
    threads: int = 1
    stochastic_selectors: bool = False
    warm_start: tuple[AuxiliaryScheme, ...] = field(default=(), compare=False)

    def __post_init__(self):
        for name in ("restarts", "iterations", "directions", "threads"):
            value = getattr(self, name)
            if value < 1:
                raise InfeasibleConfigError(f"{name} must be at least 1, got {value}")
        if self.resolution < 2:
            raise InfeasibleConfigError(f"resolution must be at least 2, got {self.resolution}")
        for name in ("u_size", "v_size"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise InfeasibleConfigError(f"{name} must be at least 1, got {value}")
        if self.seed < 0:
            raise InfeasibleConfigError(f"seed must be nonnegative, got {self.seed}")

    def as_dict(self) -> dict:
        """Parameters recorded in provenance (designs excluded)."""
        return {
            "u_size": self.u_size,
            "v_size": self.v_size,
            "resolution": self.resolution,
            "restarts": self.restarts,
            "iterations": self.iterations,
            "seed": self.seed,
            "hull": self.hull,
            "directions": self.directions,
            "stochastic_selectors": self.stochastic_selectors,
            "warm_start": len(self.warm_start),
        }


class Design(NamedTuple):
    blocks: tuple[NDArray[np.float64], ...]
    table: NDArray[np.int_] | None


@dataclass
class ScalarResult:
    """
    Outcome of a scalar maximization.

    Attributes:
        value: Best feasible value clamped at zero.
        signed: Best feasible value before clamping; ``None`` when no
            feasible design was visited.
        feasible: Whether any design cleared the gate.
        argmax: Design attaining ``signed``.
        evaluated: Number of designs evaluated.
    """

    value: float
    signed: float | None
    feasible: bool
    argmax: AuxiliaryScheme | None
    evaluated: int


class DesignSpace:
    """Parametrization of the designs searched for one bound on one channel."""

    def __init__(self, ch: WiretapChannel, bound: BoundId, cfg: SearchConfig):
        self.channel = ch
        self.bound = bound
        self.cfg = cfg
        info = BOUND_TABLE[bound]
        self.on_input = info.on_input
        self.mode = info.search_mode
        cap_u, cap_v = cardinality_caps(ch.s_size, ch.x_size)
        u_size = cfg.u_size if cfg.u_size is not None else cap_u
        v_size = cfg.v_size if cfg.v_size is not None else cap_v
        if self.on_input:
            u_size = v_size = 1
        if self.mode is SchemeMode.CASE2A:
            u_size = 1
        if self.mode is SchemeMode.CASE2B:
            v_size = 1
        self.u_size, self.v_size = u_size, v_size
        self.stochastic = cfg.stochastic_selectors and not self.on_input
        cells = ch.s_size * u_size * v_size * ch.x_size * ch.y_size * ch.z_size
        if cells > EXACT_GUARD:
            raise InfeasibleConfigError(
                f"joint tensor of {cells} cells exceeds the guard {EXACT_GUARD}; cap |U| or |V|"
            )

    def __str__(self):
        return (
            f"<{self.__class__.__name__} {self.bound.value} {self.mode.value} "
            f"U={self.u_size} V={self.v_size}>"
        )

    @property
    def block_sizes(self) -> list[int]:
        """Lengths of the free simplices of a design."""
        ch = self.channel
        if self.on_input:
            return [ch.x_size] * ch.s_size
        uv = self.u_size * self.v_size
        sizes = [uv] * ch.s_size if self.mode is SchemeMode.NON_CAUSAL else [uv]
        if self.stochastic:
            sizes += [ch.x_size] * (ch.s_size * uv)
        return sizes

    @property
    def table_shape(self) -> tuple[int, int, int]:
        return self.channel.s_size, self.u_size, self.v_size

    @property
    def n_input_blocks(self) -> int:
        if self.on_input or self.mode is SchemeMode.NON_CAUSAL:
            return self.channel.s_size
        return 1

    def scheme(self, design: Design) -> AuxiliaryScheme:
        """Materialize ``design`` as an :class:`AuxiliaryScheme`."""
        ch = self.channel
        w_s = ch.state_dist
        if self.on_input:
            rows = np.stack(design.blocks)
            return AuxiliaryScheme(SchemeMode.NON_CAUSAL, w_s[:, None, None], rows[:, None, None, :])
        shape = (self.u_size, self.v_size)
        inputs = design.blocks[: self.n_input_blocks]
        if self.mode is SchemeMode.NON_CAUSAL:
            dist = np.stack([w_s[s] * inputs[s].reshape(shape) for s in range(ch.s_size)])
        else:
            dist = inputs[0].reshape(shape)
        if design.table is not None:
            selector = np.eye(ch.x_size)[design.table]
        else:
            rows = np.stack(design.blocks[self.n_input_blocks :])
            selector = rows.reshape(self.table_shape + (ch.x_size,))
        return AuxiliaryScheme(self.mode, dist, selector)

    def evaluate(self, design: Design) -> RatePolytope:
        return evaluate_design(self.bound, self.channel, self.scheme(design))

    def selectors(self, rng: np.random.Generator) -> list[NDArray[np.int_] | None]:
        """Deterministic selector tables, enumerated or sampled."""
        if self.on_input:
            return [None]
        cells = int(np.prod(self.table_shape))
        x_size = self.channel.x_size
        count = x_size**cells
        if count <= MAX_SELECTORS:
            return [
                np.array(values, dtype=int).reshape(self.table_shape)
                for values in itertools.product(range(x_size), repeat=cells)
            ]
        logger.warning(
            "%s: %d deterministic selectors, sampling %d of them", self, count, MAX_SELECTORS
        )
        return [rng.integers(0, x_size, size=self.table_shape) for _ in range(MAX_SELECTORS)]

    def _with_table(self, blocks: list[NDArray[np.float64]], table) -> Design:
        if self.stochastic and table is not None:
            onehot = np.eye(self.channel.x_size)[table].reshape(-1, self.channel.x_size)
            return Design(tuple(blocks) + tuple(onehot), None)
        return Design(tuple(blocks), table)

    def _input_sizes(self) -> list[int]:
        return self.block_sizes[: self.n_input_blocks]

    def grid(self, tables: Sequence, rng: np.random.Generator) -> list[Design]:
        """Stratified lattice of input blocks crossed with the selector tables."""
        res = self.cfg.resolution
        sizes = self._input_sizes()
        per_block = [math.comb(res + d - 1, d - 1) for d in sizes]
        total = math.prod(per_block) * len(tables)
        if total <= MAX_GRID_POINTS:
            lattices = [_lattice(d, res) for d in sizes]
            return [
                self._with_table(list(blocks), table)
                for table in tables
                for blocks in itertools.product(*lattices)
            ]
        logger.warning(
            "%s: %d lattice designs, sampling %d of them", self, total, MAX_GRID_POINTS
        )
        designs = []
        for idx in range(MAX_GRID_POINTS):
            table = tables[idx % len(tables)]
            blocks = [rng.multinomial(res, np.full(d, 1.0 / d)) / res for d in sizes]
            designs.append(self._with_table(blocks, table))
        return designs

    def random_design(self, tables: Sequence, rng: np.random.Generator) -> Design:
        """Dirichlet start with a random selector table."""
        blocks = [rng.dirichlet(np.ones(d)) for d in self._input_sizes()]
        table = tables[int(rng.integers(len(tables)))]
        return self._with_table(blocks, table)

    def neighbours(self, design: Design, step: float, rng: np.random.Generator) -> list[Design]:
        """Pairwise mass moves of size ``step`` and single-entry selector changes."""
        moves: list[tuple[str, int, int, int]] = []
        for b, block in enumerate(design.blocks):
            for i in np.flatnonzero(block > 0.0):
                for j in range(block.size):
                    if j != i:
                        moves.append(("mass", b, int(i), j))
        if design.table is not None:
            x_size = self.channel.x_size
            for cell in range(design.table.size):
                current = int(design.table.flat[cell])
                for x in range(x_size):
                    if x != current:
                        moves.append(("table", cell, x, 0))
        if len(moves) > MAX_MOVES:
            picks = rng.choice(len(moves), size=MAX_MOVES, replace=False)
            moves = [moves[int(i)] for i in sorted(picks)]
        out = []
        for kind, a, b, c in moves:
            if kind == "mass":
                blocks = list(design.blocks)
                block = blocks[a].copy()
                amount = min(step, block[b])
                block[b] -= amount
                block[c] += amount
                blocks[a] = block
                out.append(Design(tuple(blocks), design.table))
            else:
                table = design.table.copy()
                table.flat[a] = b
                out.append(Design(design.blocks, table))
        return out


def _lattice(dim: int, res: int) -> list[NDArray[np.float64]]:
    """All points of the simplex in ``dim`` coordinates with denominators ``res``."""
    points = []
    for bars in itertools.combinations(range(res + dim - 1), dim - 1):
        edges = (-1,) + bars + (res + dim - 1,)
        counts = [edges[i + 1] - edges[i] - 1 for i in range(dim)]
        points.append(np.array(counts, dtype=float) / res)
    return points


ScoreFn = Callable[[RatePolytope], float]


def _penalized(poly: RatePolytope, value: float) -> float:
    if poly.gate_open:
        return value
    return poly.c_m - INFEASIBLE_PENALTY


def direction_score(angle: float) -> ScoreFn:
    """Weighted sum ``cos(a) R_M + sin(a) R_K`` maximized over a polytope."""
    w_m, w_k = math.cos(angle), math.sin(angle)

    def score(poly: RatePolytope) -> float:
        r_m, r_k = poly.corner
        _, c_sum = poly.caps
        return _penalized(poly, max(w_k * c_sum, w_m * r_m + w_k * r_k))

    return score


def projection_score(axis: Axis) -> ScoreFn:
    """Signed projection on ``axis``; designs behind a closed gate are penalized."""

    def score(poly: RatePolytope) -> float:
        return _penalized(poly, scalar_projection(poly, axis).signed)

    return score


class _Visited:
    """Polytopes seen by one work unit, plus the best feasible projection."""

    def __init__(self, axis: Axis | None = None):
        self.axis = axis
        self.polys: list[RatePolytope] = []
        self.count = 0
        self.best: tuple[float, AuxiliaryScheme | None] | None = None

    def offer(self, poly: RatePolytope) -> None:
        self.count += 1
        self.polys.append(poly)
        if len(self.polys) >= REDUCE_EVERY:
            self.polys = reduce_polytopes(self.polys)
        if self.axis is not None:
            proj = scalar_projection(poly, self.axis)
            if proj.feasible and (self.best is None or proj.signed > self.best[0]):
                self.best = (proj.signed, poly.design)

    def merge(self, other: _Visited) -> None:
        self.count += other.count
        self.polys = reduce_polytopes(self.polys + other.polys)
        if other.best is not None and (self.best is None or other.best[0] > self.best[0]):
            self.best = other.best


def reduce_polytopes(polys: Sequence[RatePolytope]) -> list[RatePolytope]:
    """Drop polytopes contained in another one; first occurrence wins ties."""
    keyed = []
    for idx, poly in enumerate(polys):
        c_m, c_sum = poly.caps
        keyed.append((min(c_m, c_sum), c_sum, idx))
    keyed.sort(key=lambda item: (-item[0], -item[1], item[2]))
    kept, best_sum = [], -np.inf
    for _, c_sum, idx in keyed:
        if c_sum > best_sum:
            kept.append(idx)
            best_sum = c_sum
    return [polys[i] for i in sorted(kept)]


def _refine(
    space: DesignSpace,
    start: Design,
    score: ScoreFn,
    rng: np.random.Generator,
    visited: _Visited,
) -> tuple[float, Design]:
    current = start
    poly = space.evaluate(current)
    visited.offer(poly)
    current_score = score(poly)
    current_entropy = poly.design.entropy_bits() if poly.design else 0.0
    step = 1.0 / space.cfg.resolution
    for _ in range(space.cfg.iterations):
        if step < MIN_STEP:
            break
        best = None
        for candidate in space.neighbours(current, step, rng):
            cand_poly = space.evaluate(candidate)
            visited.offer(cand_poly)
            cand_score = score(cand_poly)
            if best is None or cand_score > best[0]:
                best = (cand_score, candidate, cand_poly)
        if best is None:
            break
        cand_score, candidate, cand_poly = best
        cand_entropy = cand_poly.design.entropy_bits() if cand_poly.design else 0.0
        if cand_score > current_score + IMPROVE_TOL or (
            abs(cand_score - current_score) <= IMPROVE_TOL
            and cand_entropy < current_entropy - IMPROVE_TOL
        ):
            current, current_score, current_entropy = candidate, cand_score, cand_entropy
        else:
            step /= 2.0
    return current_score, current


class _Unit(NamedTuple):
    score: ScoreFn
    start: Design | None
    seed: np.random.SeedSequence


def _run_units(
    space: DesignSpace,
    units: Sequence[_Unit],
    tables: Sequence,
    axis: Axis | None,
) -> list[_Visited]:
    def work(unit: _Unit) -> _Visited:
        rng = np.random.default_rng(unit.seed)
        visited = _Visited(axis)
        start = unit.start if unit.start is not None else space.random_design(tables, rng)
        _refine(space, start, unit.score, rng, visited)
        visited.polys = reduce_polytopes(visited.polys)
        return visited

    if space.cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=space.cfg.threads) as pool:
            return list(pool.map(work, units))
    return [work(unit) for unit in units]


def _search(
    ch: WiretapChannel,
    bound: BoundId,
    cfg: SearchConfig,
    scores: Sequence[ScoreFn],
    axis: Axis | None,
) -> _Visited:
    """
    Lattice pass plus refinement units at ``cfg.resolution``.

    An even resolution first runs the whole search at half the resolution
    and keeps everything it visited, so doubling the resolution never
    shrinks the frontier or lowers a scalar maximum.
    """
    space = DesignSpace(ch, bound, cfg)
    total = _Visited(axis)
    if cfg.resolution % 2 == 0 and cfg.resolution // 2 >= 2:
        coarse = replace(cfg, resolution=cfg.resolution // 2, warm_start=())
        total.merge(_search(ch, bound, coarse, scores, axis))
    root = np.random.SeedSequence(cfg.seed)
    grid_seed, *unit_seeds = root.spawn(1 + len(scores) * (1 + cfg.restarts))
    grid_rng = np.random.default_rng(grid_seed)

    tables = space.selectors(grid_rng)
    designs = space.grid(tables, grid_rng)
    logger.debug("%s: evaluating %d lattice designs", space, len(designs))

    for aux in cfg.warm_start:
        total.offer(evaluate_design(bound, ch, aux))

    grid_polys = []
    for design in designs:
        poly = space.evaluate(design)
        total.offer(poly)
        grid_polys.append(poly)

    units = []
    seeds = iter(unit_seeds)
    for score in scores:
        best_idx = max(range(len(designs)), key=lambda i: (score(grid_polys[i]), -i))
        units.append(_Unit(score, designs[best_idx], next(seeds)))
        units.extend(_Unit(score, None, next(seeds)) for _ in range(cfg.restarts))
    logger.debug("%s: running %d refinement units", space, len(units))

    for visited in _run_units(space, units, tables, axis):
        total.merge(visited)
    total.polys = reduce_polytopes(total.polys)
    logger.info("%s: %d designs evaluated, %d polytopes kept", space, total.count, len(total.polys))
    return total


def optimize_region(
    ch: WiretapChannel, bound: BoundId | str, cfg: SearchConfig | None = None
) -> RegionFrontier:
    """
    Frontier of the union of polytopes over searched designs.

    Raises:
        InfeasibleConfigError: If the configured alphabets exceed the guard.
    """
    cfg = cfg or SearchConfig()
    bound = BoundId.parse(bound) if isinstance(bound, str) else bound
    angles = np.linspace(0.0, math.pi / 2, cfg.directions) if cfg.directions > 1 else [math.pi / 4]
    total = _search(ch, bound, cfg, [direction_score(float(a)) for a in angles], None)
    frontier = pareto_union(total.polys, [f"d{i}" for i in range(len(total.polys))])
    return upper_concave_envelope(frontier) if cfg.hull else frontier


def optimize_scalar(
    ch: WiretapChannel,
    bound: BoundId | str,
    axis: Axis | str,
    cfg: SearchConfig | None = None,
) -> ScalarResult:
    """Maximize the signed projection of ``bound`` on ``axis`` over feasible designs."""
    cfg = cfg or SearchConfig()
    bound = BoundId.parse(bound) if isinstance(bound, str) else bound
    axis = Axis(axis)
    total = _search(ch, bound, cfg, [projection_score(axis)], axis)
    if total.best is None:
        logger.info("%s %s: no feasible design visited", bound.value, axis.value)
        return ScalarResult(0.0, None, False, None, total.count)
    signed, design = total.best
    return ScalarResult(max(signed, 0.0), signed, True, design, total.count)
