"""Deterministic derivative-free optimization kernels.

Three entry points back the schemes and bounds: scalar maximization on an
interval, box-constrained maximization, and constrained minimization with
projection. All of them evaluate a uniform grid plus a set of mandatory
seed points and then refine locally, so the returned value can never be
worse than the objective at any seed. Tie-breaks are lexicographic on the
argument, which makes results reproducible across runs and platforms.

Objectives may optionally provide a vectorized twin (``f_vec``) used for
the grid phase; seeds, the best grid cells and all refinement steps are
always re-evaluated through the scalar objective, which is authoritative.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstraintError, DomainError, InfeasibleError, NumericError

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OptConfig:
    """Grid resolution, refinement tolerance and mandatory seed points."""

    grid_points_per_axis: int = 101
    refine_tolerance: float = 1e-6
    max_refine_iters: int = 100
    seeds: tuple = ()

    def __post_init__(self):
        if self.grid_points_per_axis < 2:
            raise DomainError("grid_points_per_axis must be >= 2")
        if not (self.refine_tolerance > 0.0 and math.isfinite(self.refine_tolerance)):
            raise DomainError("refine_tolerance must be a positive real")
        if self.max_refine_iters < 0:
            raise DomainError("max_refine_iters must be >= 0")


@dataclass(frozen=True)
class OptResult:
    """Optimizer output: argument, objective value and run diagnostics."""

    arg: object
    value: float
    evaluations: int
    status: str

    def diagnostics(self) -> dict:
        return {"evaluations": self.evaluations, "status": self.status}


def _checked_max(f, x) -> float:
    v = float(f(x))
    if not math.isfinite(v):
        raise NumericError(f"objective is not finite at {x!r}: {v!r}")
    return v


def _golden_max(f, lo, hi, width_tol, max_iters):
    """Golden-section ascent on [lo, hi]; ties prefer the smaller argument."""
    a, b = float(lo), float(hi)
    evals = 0

    best_x, best_v = a, _checked_max(f, a)
    evals += 1

    def consider(x, v):
        nonlocal best_x, best_v
        if v > best_v or (v == best_v and x < best_x):
            best_x, best_v = x, v

    vb = _checked_max(f, b)
    evals += 1
    consider(b, vb)

    c = b - (b - a) * _INV_PHI
    d = a + (b - a) * _INV_PHI
    fc = _checked_max(f, c)
    fd = _checked_max(f, d)
    evals += 2
    consider(c, fc)
    consider(d, fd)

    it = 0
    while (b - a) > width_tol and it < max_iters:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - (b - a) * _INV_PHI
            fc = _checked_max(f, c)
            consider(c, fc)
        else:
            a, c, fc = c, d, fd
            d = a + (b - a) * _INV_PHI
            fd = _checked_max(f, d)
            consider(d, fd)
        evals += 1
        it += 1
    return best_x, best_v, evals


def _grid_values(f, f_vec, pts, to_point=None, allow_posinf=False):
    """Evaluate the grid, preferring the vectorized path when available."""
    if f_vec is not None:
        values = np.asarray(f_vec(pts), dtype=float)
    else:
        convert = to_point if to_point is not None else float
        values = np.array([float(f(convert(p))) for p in pts], dtype=float)
    bad = ~np.isfinite(values)
    if allow_posinf:
        bad &= ~np.isposinf(values)
    if np.any(bad):
        idx = int(np.flatnonzero(bad)[0])
        raise NumericError(
            f"objective is not finite at grid point index {idx}: {values[idx]!r}"
        )
    return values


def _top_indices(values, k):
    """Indices of the k largest values, ordered by value then by index.

    Uses a partial partition so million-point grids avoid a full sort; the
    selection is deterministic for identical inputs.
    """
    n = values.size
    k = min(k, n)
    if k == 0:
        return []
    if n > 4 * k:
        idx = np.argpartition(-values, k - 1)[:k]
    else:
        idx = np.arange(n)
    idx = idx[np.lexsort((idx, -values[idx]))][:k]
    return [int(i) for i in idx]


def maximize_scalar(f, lo: float, hi: float, cfg: OptConfig | None = None,
                    f_vec=None) -> OptResult:
    """Maximize ``f`` on [lo, hi] by grid search plus golden-section refinement.

    The candidate set is a uniform grid of ``cfg.grid_points_per_axis``
    points, every point in ``cfg.seeds`` (each must lie inside the
    interval), and golden-section refinements launched from the best three
    grid cells. The returned value is never below the objective at any seed.
    """
    cfg = cfg if cfg is not None else OptConfig()
    lo, hi = float(lo), float(hi)
    if not lo < hi:
        raise DomainError(f"need lo < hi, got [{lo!r}, {hi!r}]")

    evals = 0
    grid = np.linspace(lo, hi, cfg.grid_points_per_axis)
    gv = _grid_values(f, f_vec, grid)
    evals += grid.size

    candidates: list[tuple[float, float]] = []  # (value, arg), scalar-evaluated
    for s in cfg.seeds:
        s = float(s)
        if not lo <= s <= hi:
            raise DomainError(f"seed {s!r} lies outside [{lo!r}, {hi!r}]")
        candidates.append((_checked_max(f, s), s))
        evals += 1

    for i in _top_indices(gv, 3):
        x = float(grid[i])
        if f_vec is not None:
            candidates.append((_checked_max(f, x), x))
            evals += 1
        else:
            candidates.append((float(gv[i]), x))
        a = float(grid[max(i - 1, 0)])
        b = float(grid[min(i + 1, grid.size - 1)])
        if a < b:
            xb, vb, e = _golden_max(f, a, b, cfg.refine_tolerance,
                                    cfg.max_refine_iters)
            candidates.append((vb, xb))
            evals += e

    best_v = max(v for v, _ in candidates)
    best_x = min(x for v, x in candidates if v == best_v)
    return OptResult(arg=best_x, value=best_v, evaluations=evals,
                     status="grid+golden")


def _box_corners(upper):
    seen = set()
    corners = []
    for corner in itertools.product(*[(0.0, float(b)) for b in upper]):
        if corner not in seen:
            seen.add(corner)
            corners.append(corner)
    return corners


def maximize_box(f, upper, cfg: OptConfig | None = None, f_vec=None) -> OptResult:
    """Maximize ``f`` on the box ``prod_i [0, upper[i]]``.

    Evaluates a per-axis uniform grid, all corners of the box (mandatory
    seeds) and ``cfg.seeds``, then refines the best candidate by cyclic
    golden-section line searches with shrinking trust intervals. Ties break
    to the lexicographically smallest point.
    """
    cfg = cfg if cfg is not None else OptConfig()
    upper = tuple(float(b) for b in upper)
    if any(not math.isfinite(b) or b < 0.0 for b in upper):
        raise DomainError(f"box bounds must be finite and >= 0, got {upper!r}")
    ndim = len(upper)

    axes = [np.unique(np.linspace(0.0, b, cfg.grid_points_per_axis)) for b in upper]
    sizes = [a.size for a in axes]
    total = int(np.prod(sizes))
    pts = np.empty((total, ndim))
    for i, axis in enumerate(axes):
        inner = int(np.prod(sizes[i + 1:])) if i + 1 < ndim else 1
        outer = total // (axis.size * inner)
        pts[:, i] = np.tile(np.repeat(axis, inner), outer)
    evals = 0

    gv = _grid_values(f, f_vec, pts, to_point=tuple)
    evals += pts.shape[0]

    candidates: list[tuple[float, tuple]] = []
    for seed in list(_box_corners(upper)) + [tuple(map(float, s)) for s in cfg.seeds]:
        if len(seed) != ndim or any(not 0.0 <= seed[i] <= upper[i] for i in range(ndim)):
            raise DomainError(f"seed {seed!r} lies outside the box {upper!r}")
        candidates.append((_checked_max(f, seed), seed))
        evals += 1

    for i in _top_indices(gv, 3):
        p = tuple(float(v) for v in pts[int(i)])
        if f_vec is not None:
            candidates.append((_checked_max(f, p), p))
            evals += 1
        else:
            candidates.append((float(gv[int(i)]), p))

    best_v = max(v for v, _ in candidates)
    best_p = min((p for v, p in candidates if v == best_v))

    # Cyclic line-search refinement around the incumbent.
    steps = [axes[i][1] - axes[i][0] if axes[i].size > 1 else max(upper[i], 1.0)
             for i in range(ndim)]
    x = list(best_p)
    vx = best_v
    scale = max(max(upper), 1.0)
    for _ in range(cfg.max_refine_iters):
        gained = 0.0
        for i in range(ndim):
            a = max(0.0, x[i] - steps[i])
            b = min(upper[i], x[i] + steps[i])
            if not a < b:
                continue

            def g(t, i=i):
                trial = list(x)
                trial[i] = t
                return f(tuple(trial))

            xt, vt, e = _golden_max(g, a, b, cfg.refine_tolerance,
                                    cfg.max_refine_iters)
            evals += e
            if vt > vx:
                gained += vt - vx
                x[i] = xt
                vx = vt
        if gained < cfg.refine_tolerance:
            steps = [s * 0.5 for s in steps]
        if max(steps) < 1e-12 * scale:
            break

    if vx > best_v:
        best_v, best_p = vx, tuple(x)
    return OptResult(arg=best_p, value=best_v, evaluations=evals,
                     status="grid+coordinate-descent")


def _checked_min(f, x) -> float:
    v = float(f(x))
    if math.isnan(v) or v == -math.inf:
        raise NumericError(f"objective is not usable at {x!r}: {v!r}")
    return v


def minimize_constrained(f, candidates, cfg: OptConfig | None = None, *,
                         project, feasible=None, f_vec=None,
                         step_init=None,
                         candidates_feasible: bool = False) -> OptResult:
    """Minimize ``f`` over a feasible set given by a predicate and projection.

    ``candidates`` is the caller-supplied grid (array of shape (n, d));
    infeasible entries are skipped. ``cfg.seeds`` are mandatory starting
    points and must be feasible. Objective values of ``+inf`` are legal and
    simply discarded, so a degenerate plateau cannot poison the result; if
    no finite feasible value is ever seen, InfeasibleError is raised. The
    best point then seeds a compass pattern search whose trial moves are
    projected back onto the feasible set (step halves on stalls).
    """
    cfg = cfg if cfg is not None else OptConfig()
    pts = np.asarray(candidates, dtype=float)
    if pts.ndim != 2:
        raise DomainError("candidates must be a 2-D array of points")
    ndim = pts.shape[1]
    evals = 0

    pool: list[tuple[float, tuple]] = []

    for s in cfg.seeds:
        s = tuple(map(float, s))
        if feasible is not None and not feasible(s):
            raise ConstraintError(f"mandatory seed {s!r} is infeasible")
        v = _checked_min(f, s)
        evals += 1
        if v < math.inf:
            pool.append((v, s))

    if pts.shape[0]:
        if feasible is not None and not candidates_feasible:
            mask = np.fromiter((feasible(tuple(p)) for p in pts), dtype=bool,
                               count=pts.shape[0])
            pts = pts[mask]
    if pts.shape[0]:
        values = _grid_values(f, f_vec, pts, to_point=tuple, allow_posinf=True)
        evals += pts.shape[0]
        finite = np.isfinite(values)
        if np.any(finite):
            fin_idx = np.flatnonzero(finite)
            # Re-evaluate the best few through the scalar objective, which
            # is the authoritative value for the returned point.
            best_of = [fin_idx[i] for i in _top_indices(-values[fin_idx], 3)]
            for i in best_of:
                p = tuple(float(v) for v in pts[int(i)])
                v = _checked_min(f, p) if f_vec is not None else float(values[int(i)])
                evals += 1 if f_vec is not None else 0
                if v < math.inf:
                    pool.append((v, p))

    if not pool:
        raise InfeasibleError("no feasible point with a finite objective value")

    vx = min(v for v, _ in pool)
    x = min(p for v, p in pool if v == vx)

    steps = np.full(ndim, 0.1) if step_init is None else np.asarray(step_init, float).copy()
    gained_since_shrink = math.inf
    shrinks = 0
    for _ in range(cfg.max_refine_iters):
        best_trial = None
        best_trial_v = vx
        for i in range(ndim):
            for sgn in (1.0, -1.0):
                trial = list(x)
                trial[i] += sgn * steps[i]
                t = tuple(map(float, project(tuple(trial))))
                if t == x:
                    continue
                v = _checked_min(f, t)
                evals += 1
                if v < best_trial_v or (v == best_trial_v and best_trial is not None
                                        and t < best_trial):
                    best_trial, best_trial_v = t, v
        if best_trial is not None and best_trial_v < vx:
            if gained_since_shrink is math.inf:
                gained_since_shrink = 0.0
            gained_since_shrink += vx - best_trial_v
            x, vx = best_trial, best_trial_v
        else:
            if shrinks >= 2 and gained_since_shrink < cfg.refine_tolerance:
                break
            steps *= 0.5
            shrinks += 1
            gained_since_shrink = 0.0
            if float(np.max(steps)) < 1e-9:
                break

    return OptResult(arg=x, value=vx, evaluations=evals,
                     status="grid+pattern-search")
