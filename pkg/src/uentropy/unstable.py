"""Unstable (leafwise) Bowen and upper-capacity entropy.

The set ``Z`` is given by a predicate evaluated at the points of a uniform
leaf sample.  For every base point ``x`` of a grid the leaf segment
``W^u(x, delta)`` is sampled, intersected with the predicate, and handed to
the estimators of :mod:`uentropy.caratheodory` under the Bowen u-metric.  The
report keeps the per-leaf values, their maximum over the grid, and the values
at ``2 delta`` and ``delta / 2`` so that independence of ``delta`` can be
inspected.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from .caratheodory import (SubsetSample, bowen_entropy_estimate, upper_capacity_entropy)
from .errors import ValidationError
from .systems import (MAX_TORAL_DELTA, CylinderLeaf, LinearLeaf, SymbolicSystem,
                      ToralAutomorphism, leaf_segment)

MIN_LEAF_POINTS = 10


@dataclass(frozen=True)
class EntropySchedule:
    """Scales and depths used by the leafwise estimators.

    Attributes
    ----------
    eps : tuple of float
        Decreasing scales; the last one gives the reported value.
    n : tuple of int
        Depths at which separated sets are counted.
    N : int
        Minimal Bowen-ball depth for the cover estimate.
    depth_step : int
        Depth offset used by the cover growth test.
    grid : int
        Points per leaf sample.
    """

    eps: tuple = (0.2, 0.1)
    n: tuple = tuple(range(1, 19))
    N: int = 2
    depth_step: int = 2
    grid: int = 4001

    def cover_pairs(self):
        return [(self.N, e) for e in self.eps]


def default_schedule(system, grid: int | None = None) -> EntropySchedule:
    """Defaults tuned for the shipped systems (see the README for the rationale)."""
    if isinstance(system, SymbolicSystem):
        g = grid or 4096
        D = _symbolic_depth(system, np.zeros(0, np.int64), g)
        return EntropySchedule(eps=(system.metric_base,), n=tuple(range(1, D + 1)), N=2,
                               depth_step=2, grid=g)
    return EntropySchedule(grid=grid or 4001)


def default_delta(system) -> float:
    return 1.0 if isinstance(system, SymbolicSystem) else 0.1


@dataclass
class LeafEntropyReport:
    """Leafwise entropy estimates.

    ``per_leaf`` holds ``(x, delta, h)`` triples for every base point and every
    delta examined; ``sup_estimate`` is their maximum.
    """

    per_leaf: list
    sup_estimate: float
    delta_schedule: list
    kind: str
    flags: list = field(default_factory=list)
    details: list = field(default_factory=list)

    def values_at(self, delta):
        return [h for _, d, h in self.per_leaf if d == delta]


def _symbolic_depth(system, prefix, m):
    """Largest depth D >= len(prefix) with at most m admissible extensions."""
    c = len(prefix)
    if c == 0:
        vec = np.ones(system.alphabet_size, dtype=object)
        D = 1
    else:
        vec = np.zeros(system.alphabet_size, dtype=object)
        vec[int(prefix[-1])] = 1
        D = c
    if int(vec.sum()) > m:
        return max(c, 1)
    T = system.transition.astype(object)
    while D < 60:
        nxt = vec @ T
        if int(nxt.sum()) > m:
            break
        vec = nxt
        D += 1
    return D


def leaf_sample(seg, m: int) -> SubsetSample:
    """Uniform sample of a leaf segment.

    Linear leaves get ``m`` chart-equispaced points (resolution
    ``2 delta / (m - 1)``).  Cylinder leaves get every admissible extension of
    the leaf prefix to the largest length with at most ``m`` words.
    """
    if m < 2:
        raise ValidationError("leaf sample needs at least two points")
    if isinstance(seg, LinearLeaf):
        t = np.linspace(-seg.radius, seg.radius, m)
        return SubsetSample(seg.chart(t), 2 * seg.radius / (m - 1), "leaf", coords=t)
    if isinstance(seg, CylinderLeaf):
        D = _symbolic_depth(seg.system, seg.prefix, m)
        W = seg.system.words(D, seg.prefix if len(seg.prefix) else None)
        return SubsetSample(W, seg.system.metric_base ** D, "leaf")
    raise ValidationError(f"unsupported leaf type {type(seg).__name__}")


def default_x_grid(system, count: int = 8, seed: int = 42):
    """Low-discrepancy base points (Halton) on the torus, random words for shifts."""
    if isinstance(system, SymbolicSystem):
        rng = np.random.default_rng(seed)
        return [system.random_word(64, rng) for _ in range(count)]
    h = qmc.Halton(d=system.dim, scramble=False)
    return list(h.random(count))


def _apply_predicate(predicate, points):
    if predicate is None:
        return np.ones(len(points), dtype=bool)
    return np.fromiter((bool(predicate(p)) for p in points), dtype=bool, count=len(points))


def _deltas(system, delta):
    if isinstance(system, SymbolicSystem):
        return [delta, 2 * delta, delta / 2]
    out = [delta, delta / 2]
    if 2 * delta < MAX_TORAL_DELTA:
        out.insert(1, 2 * delta)
    return out


def _leaf_key(seg, predicate):
    if isinstance(seg, CylinderLeaf):
        return ("cyl", tuple(int(v) for v in seg.prefix))
    if predicate is None:
        # without a predicate a linear leaf sample is the same in chart coordinates
        return ("lin", seg.radius)
    return ("lin", tuple(np.round(seg.base_point, 15)), seg.radius)


def _run(kind, system, predicate, x_grid, delta, schedule, threads):
    if isinstance(system, ToralAutomorphism) and not 0 < delta < MAX_TORAL_DELTA:
        raise ValidationError(f"delta must lie in (0, {MAX_TORAL_DELTA}), got {delta}")
    if delta <= 0:
        raise ValidationError("delta must be positive")
    schedule = schedule or default_schedule(system)
    x_grid = default_x_grid(system) if x_grid is None else list(x_grid)
    deltas = _deltas(system, delta)
    flags: list = []
    if isinstance(system, ToralAutomorphism) and 2 * delta >= MAX_TORAL_DELTA:
        flags.append("companion_skipped")

    tasks = []
    for x in x_grid:
        for d in deltas:
            tasks.append((x, d, leaf_segment(system, x, d)))

    def work(task):
        x, d, seg = task
        sample = leaf_sample(seg, schedule.grid)
        mask = _apply_predicate(predicate, sample.points)
        sub = sample.take(np.flatnonzero(mask))
        metric = seg.bowen_metric()
        lflags = []
        if sub.is_empty:
            res = (0.0, ["empty_intersection"], None)
        else:
            if len(sub) < MIN_LEAF_POINTS and len(sample) >= MIN_LEAF_POINTS:
                lflags.append("unreliable_delta")
            if kind == "bowen":
                rep = bowen_entropy_estimate(sub, schedule.cover_pairs(), metric,
                                             schedule.depth_step)
                res = (rep.s_star, lflags + rep.flags, rep)
            else:
                est = upper_capacity_entropy(sub, schedule.eps, schedule.n, metric)
                res = (est.value, lflags + est.flags, est)
        return res

    # identical leaves (e.g. all base points in one cylinder) are computed once
    uniq = {}
    for t in tasks:
        uniq.setdefault(_leaf_key(t[2], predicate), t)
    keys = list(uniq)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(work, [uniq[k] for k in keys]))
    else:
        results = [work(uniq[k]) for k in keys]
    cache = dict(zip(keys, results))

    per_leaf, details = [], []
    any_nonempty = False
    for x, d, seg in tasks:
        h, lf, rep = cache[_leaf_key(seg, predicate)]
        per_leaf.append((x, d, float(h)))
        details.append({"x": x, "delta": d, "flags": lf, "report": rep})
        if "empty_intersection" not in lf:
            any_nonempty = True
        for f in lf:
            if f != "empty_intersection" and f not in flags:
                flags.append(f)
    if not any_nonempty:
        flags.append("empty_intersection")
    sup = max(h for _, _, h in per_leaf) if per_leaf else 0.0
    return LeafEntropyReport(per_leaf, sup, deltas, kind, flags, details)


def unstable_bowen_entropy(system, predicate=None, x_grid=None, delta: float | None = None,
                           schedule: EntropySchedule | None = None, threads: int = 1
                           ) -> LeafEntropyReport:
    """Leafwise Bowen entropy ``sup_x h_B(f, Z cap W^u(x, delta))``.

    Parameters
    ----------
    system : SymbolicSystem or ToralAutomorphism
    predicate : callable, optional
        ``point -> bool`` selecting ``Z``; ``None`` selects everything.
    x_grid : list of points, optional
        Base points; defaults to 8 low-discrepancy points.
    delta : float, optional
        Leaf radius (default 0.1 on tori, 1 -- the whole space -- for shifts).
    schedule : EntropySchedule, optional
    threads : int
        Leaves are processed in a thread pool; results do not depend on it.
    """
    delta = default_delta(system) if delta is None else delta
    return _run("bowen", system, predicate, x_grid, delta, schedule, threads)


def unstable_upper_capacity_entropy(system, predicate=None, x_grid=None,
                                    delta: float | None = None,
                                    schedule: EntropySchedule | None = None,
                                    threads: int = 1) -> LeafEntropyReport:
    """Leafwise upper-capacity entropy from (n, eps) u-separated counts.

    Same arguments as :func:`unstable_bowen_entropy`.
    """
    delta = default_delta(system) if delta is None else delta
    return _run("upper_capacity", system, predicate, x_grid, delta, schedule, threads)


def delta_independence_check(report: LeafEntropyReport) -> float:
    """Largest spread (max - min over delta) of the estimates at one base point."""
    groups: dict = {}
    for x, d, h in report.per_leaf:
        key = tuple(np.asarray(x).ravel().tolist())
        groups.setdefault(key, []).append(h)
    spreads = [max(v) - min(v) for v in groups.values() if v]
    return float(max(spreads)) if spreads else 0.0


def closed_form_unstable_entropy(system) -> float:
    """Reference value: log of the expansion rate, or the topological entropy of a shift."""
    if isinstance(system, SymbolicSystem):
        return system.topological_entropy()
    return system.topological_unstable_entropy()


def is_resolution_limited(report) -> bool:
    return "resolution_limited" in getattr(report, "flags", [])
