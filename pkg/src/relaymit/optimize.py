"""Deterministic box/ball-constrained maximizer used by all rate evaluators.

The search spaces here are small boxes ``[lo, hi]^d`` intersected with unit
power balls (``sum_i x_i^2 <= 1`` over index groups) and optional named
coupled constraints. Objectives are vectorized: they take an ``(n, d)`` array
of candidate points and return an ``(n,)`` array of values, using ``-inf``
for points they consider infeasible.

The algorithm is a budgeted cartesian lattice scan (feasibility filtered),
followed by deterministic compass-search refinement from the best lattice
points plus a few curated seeds, optionally finished by a Nelder-Mead polish
whose result is only accepted when it is feasible and strictly better. Every
step is deterministic, so repeated calls are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import DomainError

__all__ = [
    "Dim",
    "ParamSpace",
    "OptimizerConfig",
    "SchemeParams",
    "InfeasibleSpaceError",
    "feasible",
    "project",
    "maximize",
]

Objective = Callable[[np.ndarray], np.ndarray]

#: slack used by every feasibility comparison in this module
FEAS_TOL = 1e-12

_EVAL_CHUNK = 65536


class InfeasibleSpaceError(ValueError):
    """Raised when a search space contains no feasible grid point."""


@dataclass(frozen=True)
class Dim:
    """One box dimension ``lo <= x <= hi`` with a diagnostic name."""

    name: str
    lo: float
    hi: float

    def __post_init__(self) -> None:
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainError(f"dim {self.name!r} bounds must be finite")
        if lo > hi:
            raise DomainError(f"dim {self.name!r} has lo {lo} > hi {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)


@dataclass(frozen=True)
class ParamSpace:
    """Box dims, unit-ball index groups, and named coupled constraints.

    ``quadratic_groups``: tuples of dim indices g with ``sum_{i in g} x_i^2 <= 1``.
    ``coupled_constraints``: ``(name, predicate)`` pairs where ``predicate``
    maps an ``(n, d)`` array to an ``(n,)`` boolean mask.
    """

    dims: tuple[Dim, ...]
    quadratic_groups: tuple[tuple[int, ...], ...] = ()
    coupled_constraints: tuple[tuple[str, Callable[[np.ndarray], np.ndarray]], ...] = ()

    def __post_init__(self) -> None:
        if len(self.dims) == 0:
            raise DomainError("ParamSpace needs at least one dimension")
        d = len(self.dims)
        for g in self.quadratic_groups:
            if len(g) == 0:
                raise DomainError("empty quadratic group")
            for i in g:
                if not (0 <= i < d):
                    raise DomainError(f"quadratic group index {i} out of range")

    @property
    def ndim(self) -> int:
        return len(self.dims)

    @property
    def lo(self) -> np.ndarray:
        return np.array([dm.lo for dm in self.dims])

    @property
    def hi(self) -> np.ndarray:
        return np.array([dm.hi for dm in self.dims])


@dataclass(frozen=True)
class OptimizerConfig:
    """Tuning knobs for :func:`maximize`.

    ``grid_resolution``: target lattice spacing for the scan stage;
    ``refine_iterations``: compass-search iteration budget per start;
    ``refine_tolerance``: stop once every compass step is below this;
    ``multistart_count``: number of best lattice points kept as starts;
    ``max_grid_points``: lattice budget; the per-dim counts are shrunk
    proportionally when the full cartesian product would exceed it;
    ``polish``: run a Nelder-Mead finish accepted only on strict improvement.
    """

    grid_resolution: float = 0.05
    refine_iterations: int = 200
    refine_tolerance: float = 1e-6
    multistart_count: int = 8
    max_grid_points: int = 1_500_000
    polish: bool = True

    def __post_init__(self) -> None:
        if not (self.grid_resolution > 0 and math.isfinite(self.grid_resolution)):
            raise DomainError("grid_resolution must be positive and finite")
        if self.refine_iterations < 0 or self.multistart_count < 1:
            raise DomainError("refine_iterations must be >= 0, multistart_count >= 1")
        if not (self.refine_tolerance > 0):
            raise DomainError("refine_tolerance must be positive")
        if self.max_grid_points < 1:
            raise DomainError("max_grid_points must be >= 1")


@dataclass(frozen=True)
class SchemeParams:
    """Named optimizer variables of a scheme evaluation.

    Fields a scheme does not use stay at their empty defaults: ``gamma`` is
    the source power split toward its own transmission, ``rho`` the source
    amplitude weights, ``rho_bar`` the relay amplitude weights, ``r_q`` the
    quantization rate, ``alpha`` the dirty-paper inflation factor.
    """

    gamma: float | None = None
    rho: tuple[float, ...] = ()
    rho_bar: tuple[float, ...] = ()
    r_q: float | None = None
    alpha: float | None = None


def _feasible_mask(space: ParamSpace, pts: np.ndarray, tol: float = FEAS_TOL) -> np.ndarray:
    """Boolean feasibility of each row of ``pts`` against box, balls, couplings."""
    lo, hi = space.lo, space.hi
    mask = np.all((pts >= lo - tol) & (pts <= hi + tol), axis=1)
    for g in space.quadratic_groups:
        mask &= np.einsum("ij,ij->i", pts[:, g], pts[:, g]) <= 1.0 + tol
    for _name, pred in space.coupled_constraints:
        idx = np.flatnonzero(mask)
        if idx.size == 0:
            break
        ok = np.asarray(pred(pts[idx]), dtype=bool)
        mask[idx] &= ok
    return mask


def feasible(space: ParamSpace, point, tol: float = FEAS_TOL) -> bool:
    """True iff ``point`` satisfies box, ball, and coupled constraints within ``tol``."""
    p = np.asarray(point, dtype=float)
    if p.shape != (space.ndim,):
        raise DomainError(
            f"point has {p.shape} entries, space has {space.ndim} dimensions"
        )
    return bool(_feasible_mask(space, p[None, :], tol)[0])


def project(space: ParamSpace, pts: np.ndarray) -> np.ndarray:
    """Clip rows of ``pts`` into the box and rescale each ball group inside."""
    out = np.clip(np.atleast_2d(np.asarray(pts, dtype=float)), space.lo, space.hi)
    for g in space.quadratic_groups:
        sq = np.einsum("ij,ij->i", out[:, g], out[:, g])
        bad = sq > 1.0
        if np.any(bad):
            scale = np.ones_like(sq)
            scale[bad] = 1.0 / np.sqrt(sq[bad])
            out[:, g] = out[:, g] * scale[:, None]
    return out


def _eval_chunked(objective: Objective, pts: np.ndarray) -> np.ndarray:
    vals = np.empty(pts.shape[0])
    for start in range(0, pts.shape[0], _EVAL_CHUNK):
        chunk = pts[start : start + _EVAL_CHUNK]
        v = np.asarray(objective(chunk), dtype=float)
        if v.shape != (chunk.shape[0],):
            raise DomainError("objective must return one value per candidate row")
        vals[start : start + _EVAL_CHUNK] = v
    return np.where(np.isnan(vals), -np.inf, vals)


def _axis_counts(space: ParamSpace, cfg: OptimizerConfig) -> list[int]:
    counts = []
    for dm in space.dims:
        width = dm.hi - dm.lo
        if width <= 0:
            counts.append(1)
        else:
            counts.append(max(2, int(math.ceil(width / cfg.grid_resolution - 1e-9)) + 1))
    total = math.prod(counts)
    if total > cfg.max_grid_points:
        # shrink proportionally, keeping >= 2 points on non-degenerate dims
        free = [i for i, c in enumerate(counts) if c > 2]
        f = (cfg.max_grid_points / total) ** (1.0 / max(1, len(free)))
        for i in free:
            counts[i] = max(2, int(counts[i] * f))
        while math.prod(counts) > cfg.max_grid_points:
            i = max(range(len(counts)), key=lambda j: counts[j])
            if counts[i] <= 2:
                break
            counts[i] -= 1
    return counts


def _lattice(space: ParamSpace, counts: list[int]) -> np.ndarray:
    axes = [
        np.linspace(dm.lo, dm.hi, c) if c > 1 else np.array([dm.lo])
        for dm, c in zip(space.dims, counts)
    ]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.reshape(-1) for m in mesh], axis=1)


def _lex_order(pts: np.ndarray, vals: np.ndarray) -> np.ndarray:
    """Indices sorted by value descending, ties toward lexicographically smaller points."""
    keys = tuple(pts[:, j] for j in range(pts.shape[1] - 1, -1, -1)) + (-vals,)
    return np.lexsort(keys)


def _lex_less(a: np.ndarray, b: np.ndarray) -> bool:
    for x, y in zip(a, b):
        if x != y:
            return x < y
    return False


def _curated_seeds(space: ParamSpace) -> np.ndarray:
    """Deterministic starting points: midpoint, corners, ball axis vertices."""
    lo, hi = space.lo, space.hi
    d = space.ndim
    seeds = [0.5 * (lo + hi), lo.copy(), hi.copy()]
    if d <= 10:
        for bits in range(2**d):
            corner = np.where([(bits >> j) & 1 for j in range(d)], hi, lo)
            seeds.append(corner.astype(float))
    for g in space.quadratic_groups:
        for i in g:
            v = 0.5 * (lo + hi)
            v[list(g)] = 0.0
            v[i] = min(1.0, hi[i])
            seeds.append(v)
        v = 0.5 * (lo + hi)
        v[list(g)] = np.minimum(1.0 / math.sqrt(len(g)), hi[list(g)])
        seeds.append(v)
    return project(space, np.array(seeds))


def _compass(
    objective: Objective,
    space: ParamSpace,
    cfg: OptimizerConfig,
    x0: np.ndarray,
    v0: float,
    steps0: np.ndarray,
) -> tuple[np.ndarray, float]:
    """Deterministic pattern search from ``x0``; strict-improvement moves only."""
    x, v = x0.copy(), v0
    steps = steps0.copy()
    active = np.flatnonzero(steps > 0)
    if active.size == 0:
        return x, v

    def _try(probes: list[np.ndarray]) -> "tuple[np.ndarray, float] | None":
        # projection turns moves that leave a power ball into moves along
        # its surface, where many optima sit
        pts = np.unique(project(space, np.array(probes)), axis=0)
        mask = _feasible_mask(space, pts)
        if not np.any(mask):
            return None
        cand = pts[mask]
        vals = _eval_chunked(objective, cand)
        best = _lex_order(cand, vals)[0]
        if vals[best] > v:
            return cand[best].copy(), float(vals[best])
        return None

    for _ in range(cfg.refine_iterations):
        if np.max(steps[active]) < cfg.refine_tolerance:
            break
        axis_probes = []
        for j in active:
            for sgn in (1.0, -1.0):
                p = x.copy()
                p[j] += sgn * steps[j]
                axis_probes.append(p)
        hit = _try(axis_probes)
        if hit is None and active.size > 1:
            # two-axis moves walk ridges (e.g. a quantization rate coupled
            # to the power shares that carry it) that stall axis moves
            pair_probes = []
            for a_pos, i in enumerate(active):
                for j in active[a_pos + 1 :]:
                    for si in (1.0, -1.0):
                        for sj in (1.0, -1.0):
                            p = x.copy()
                            p[i] += si * steps[i]
                            p[j] += sj * steps[j]
                            pair_probes.append(p)
            hit = _try(pair_probes)
        if hit is not None:
            x, v = hit
        else:
            steps = steps * 0.5
    return x, v


def maximize(
    objective: Objective,
    space: ParamSpace,
    cfg: OptimizerConfig | None = None,
) -> tuple[float, np.ndarray]:
    """Maximize a deterministic vectorized objective over ``space``.

    Returns ``(value, argmax)`` with ``value == objective(argmax)`` exactly
    (re-evaluated), ``argmax`` feasible, and ``value`` at least the maximum
    of the feasibility-filtered scan lattice. Exact value ties are broken
    toward the lexicographically smallest argmax. Raises
    :class:`InfeasibleSpaceError` when no lattice point is feasible.
    """
    if cfg is None:
        cfg = OptimizerConfig()
    counts = _axis_counts(space, cfg)
    pts = _lattice(space, counts)
    mask = _feasible_mask(space, pts)
    if not np.any(mask):
        raise InfeasibleSpaceError(
            f"no feasible grid point at resolution {cfg.grid_resolution}"
        )
    pts = pts[mask]
    vals = _eval_chunked(objective, pts)
    order = _lex_order(pts, vals)
    n_starts = min(cfg.multistart_count, pts.shape[0])
    starts = [(pts[i].copy(), float(vals[i])) for i in order[:n_starts]]

    seeds = _curated_seeds(space)
    smask = _feasible_mask(space, seeds)
    if np.any(smask):
        seeds = seeds[smask]
        svals = _eval_chunked(objective, seeds)
        sorder = _lex_order(seeds, svals)
        for i in sorder[: cfg.multistart_count]:
            starts.append((seeds[i].copy(), float(svals[i])))

    # grid-stage incumbent: guarantees value >= feasibility-filtered grid max
    best_x, best_v = starts[0][0].copy(), starts[0][1]

    steps0 = np.array(
        [
            (dm.hi - dm.lo) / (c - 1) if c > 1 else 0.0
            for dm, c in zip(space.dims, counts)
        ]
    )
    refined: list[tuple[np.ndarray, float]] = []
    for x0, v0 in starts:
        if not math.isfinite(v0):
            continue
        x, v = _compass(objective, space, cfg, x0, v0, steps0)
        refined.append((x, v))
        if v > best_v or (v == best_v and _lex_less(x, best_x)):
            best_x, best_v = x, v

    if cfg.polish and math.isfinite(best_v):
        refined.sort(key=lambda xv: (-xv[1], tuple(xv[0])))
        seen: set[tuple[float, ...]] = set()
        tops: list[tuple[np.ndarray, float]] = []
        for x, v in refined:
            key = tuple(np.round(x, 9))
            if math.isfinite(v) and key not in seen:
                seen.add(key)
                tops.append((x, v))
            if len(tops) == 3:
                break
        for x, v in tops:
            cur_x, cur_v = x, v
            # alternating simplex and pattern rounds follow curved ridges
            # (a quantization rate trading against a power split) that
            # stall any single pass; stop on the first non-improving round
            for _ in range(8):
                polished = _nm_polish(objective, space, cfg, cur_x, steps0)
                if polished is None:
                    break
                px, pv = polished
                if math.isfinite(pv):
                    px, pv = _compass(objective, space, cfg, px, pv, steps0 * 0.25)
                if pv <= cur_v:
                    break
                cur_x, cur_v = px, pv
            if cur_v > best_v or (cur_v == best_v and _lex_less(cur_x, best_x)):
                best_x, best_v = cur_x, cur_v

    final_v = float(_eval_chunked(objective, best_x[None, :])[0])
    return final_v, best_x


def _nm_polish(
    objective: Objective,
    space: ParamSpace,
    cfg: OptimizerConfig,
    x0: np.ndarray,
    scale: np.ndarray,
) -> tuple[np.ndarray, float] | None:
    try:
        from scipy.optimize import minimize
    except ImportError:  # pragma: no cover - scipy is a hard dependency
        return None

    def neg(z: np.ndarray) -> float:
        p = project(space, z[None, :])
        if not _feasible_mask(space, p)[0]:
            return 1e18
        return -float(_eval_chunked(objective, p)[0])

    # simplex spanning one scan cell: large enough to cross into the
    # neighboring basin, small enough to stay local
    simplex = np.vstack([x0] + [x0 + np.eye(space.ndim)[j] * max(scale[j], 1e-3) for j in range(space.ndim)])
    res = minimize(
        neg,
        x0,
        method="Nelder-Mead",
        options={
            "maxiter": max(50, cfg.refine_iterations) * space.ndim,
            "xatol": cfg.refine_tolerance * 0.1,
            "fatol": cfg.refine_tolerance * 0.01,
            "adaptive": space.ndim >= 4,
            "initial_simplex": simplex,
        },
    )
    cand = project(space, res.x[None, :])[0]
    if not _feasible_mask(space, cand[None, :])[0]:
        return None
    val = float(_eval_chunked(objective, cand[None, :])[0])
    return cand, val
