"""Bowen-ball covers, separated/spanning counts and entropy estimates for
finite samples of arbitrary subsets.

Two estimators are provided.

* :func:`upper_capacity_entropy` -- growth rate of maximal (n, eps)-separated
  subsets, least-squares slope of ``log count`` against ``n``.
* :func:`bowen_entropy_estimate` -- Caratheodory critical exponent built from
  :func:`weighted_cover_infimum`, the infimum of ``sum exp(-s n_i)`` over covers
  by Bowen balls of depth ``n_i >= N`` centred at sample points.

On finite data the cover weight never truly jumps from infinity to zero, so
the critical exponent is read off as the smallest ``s`` at which allowing only
deeper balls (``N + depth_step`` instead of ``N``) no longer increases the
optimal weight.  Below the entropy deeper covers cost more; above it they cost
less.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleCover, ValidationError
from .metrics import BowenMetric, CylinderMetric
from .systems import as_word

BISECT_TOL = 1e-3
BISECT_MAXITER = 40
EXACT_BALL_LIMIT = 15
GROWTH_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class SubsetSample:
    """Finite sample of a set ``Z`` at a declared resolution.

    Attributes
    ----------
    points : ndarray
        ``(m, d)`` float array for toral points or ``(m, D)`` int array of words.
    resolution : float
        Every point of ``Z`` is (declared to be) within this distance of a
        sample point.
    label : str
    coords : ndarray, optional
        Chart coordinates when the sample lies on a linear leaf.
    """

    points: np.ndarray
    resolution: float
    label: str = ""
    coords: np.ndarray | None = None

    def __post_init__(self):
        if not self.resolution > 0:
            raise ValidationError("sample resolution must be positive")

    def __len__(self):
        return len(self.points)

    @property
    def is_empty(self) -> bool:
        return len(self.points) == 0

    def take(self, idx) -> "SubsetSample":
        idx = np.asarray(idx)
        coords = None if self.coords is None else self.coords[idx]
        return SubsetSample(self.points[idx], self.resolution, self.label, coords)

    def union(self, other: "SubsetSample", label: str | None = None) -> "SubsetSample":
        """Concatenate two samples, dropping exact duplicates (first occurrence kept)."""
        P = np.concatenate([self.points, other.points])
        coords = None
        if self.coords is not None and other.coords is not None:
            coords = np.concatenate([self.coords, other.coords])
        _, first = np.unique(P.reshape(len(P), -1), axis=0, return_index=True)
        keep = np.sort(first)
        return SubsetSample(P[keep], min(self.resolution, other.resolution),
                            label or f"{self.label}+{other.label}",
                            None if coords is None else coords[keep])


def word_sample(words, base: float = 0.5, label: str = "") -> SubsetSample:
    """Sample made of equal-length words; resolution ``base**length``."""
    if isinstance(words, np.ndarray):
        W = np.atleast_2d(words.astype(np.int64, copy=False))
    else:
        W = np.stack([as_word(w) for w in words])
    return SubsetSample(W, base ** W.shape[1], label)


@dataclass(frozen=True)
class BowenBallCover:
    """Cover of a sample by Bowen balls ``B_{n_i}(x_i, eps)``."""

    centers: tuple            # sample indices of the centres
    depths: tuple
    eps: float
    N: int

    def weight(self, s: float) -> float:
        return float(np.sum(np.exp(-s * np.asarray(self.depths, dtype=float))))

    def __len__(self):
        return len(self.centers)


@dataclass
class CriticalExponentReport:
    """Result of :func:`bowen_entropy_estimate`."""

    s_star: float
    N_used: int
    eps_used: float
    method: str
    weight_at_s_star: float
    per_schedule: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    def record(self) -> dict:
        return {
            "s_star": self.s_star,
            "method": self.method,
            "schedule": [(p["N"], p["eps"]) for p in self.per_schedule],
            "per_eps_slopes": [p["s"] for p in self.per_schedule],
            "flags": list(self.flags),
        }


@dataclass
class CapacityEstimate:
    """Result of :func:`upper_capacity_entropy`; ``float()`` gives the value."""

    value: float
    per_eps_slopes: dict
    counts: dict
    used_n: dict
    flags: list = field(default_factory=list)

    def __float__(self):
        return float(self.value)

    def record(self) -> dict:
        return {
            "value": self.value,
            "per_eps_slopes": dict(self.per_eps_slopes),
            "flags": list(self.flags),
        }


def _flag(flags, name):
    if name not in flags:
        flags.append(name)


# --------------------------------------------------------------------------
# separated and spanning counts
# --------------------------------------------------------------------------

def _line_sorted(X):
    order = np.argsort(X, kind="stable")
    return order, X[order]


def _line_greedy_separated(xs, r):
    """Greedy left-to-right (n, eps)-separated subset of sorted coordinates."""
    idx = [0]
    m = len(xs)
    while True:
        j = int(np.searchsorted(xs, xs[idx[-1]] + r, side="right"))
        if j >= m:
            return idx
        idx.append(j)


def _line_min_cover(xs, r):
    """Optimal cover of sorted points by intervals ``[c - r, c + r]`` centred at points."""
    centers = []
    i, m = 0, len(xs)
    while i < m:
        c = int(np.searchsorted(xs, xs[i] + r, side="right")) - 1
        centers.append(c)
        i = int(np.searchsorted(xs, xs[c] + r, side="right"))
    return centers


def _prefix_classes(X, L):
    """Class id of each word by its length-``L`` prefix (first-occurrence order)."""
    m = X.shape[0]
    if L <= 0 or X.shape[1] == 0:
        return np.zeros(m, dtype=np.int64), np.array([0])
    _, first, inv = np.unique(X[:, :L], axis=0, return_index=True, return_inverse=True)
    inv = inv.ravel()
    # relabel classes by first occurrence so witnesses come out in index order
    order = np.argsort(first, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(len(order))
    return rank[inv], np.sort(first)


def max_separated_count(sample: SubsetSample, n: int, eps: float, metric: BowenMetric):
    """Size and members of a maximal (n, eps)-separated subset.

    Separation means ``d_n(y, z) > eps``.  Insertion order is sample-index
    order, except on line metrics where it is chart order (left to right).
    Symbolic samples give exact counts by prefix classes.

    Returns
    -------
    count : int
    witnesses : ndarray
        Sample indices of the separated subset.
    """
    if eps <= 0 or n < 1:
        raise ValidationError("need eps > 0 and n >= 1")
    if sample.is_empty:
        return 0, np.zeros(0, dtype=np.int64)
    X = metric.embed(sample)
    if metric.structure == "line":
        order, xs = _line_sorted(X)
        idx = _line_greedy_separated(xs, metric.radius(n, eps))
        return len(idx), order[idx]
    if metric.structure == "cylinder":
        _, first = _prefix_classes(X, metric.class_depth(n, eps))
        return len(first), first
    chosen = []
    for i in range(len(X)):
        if not chosen or np.all(metric.bowen(X, i, np.asarray(chosen), n) > eps):
            chosen.append(i)
    return len(chosen), np.asarray(chosen, dtype=np.int64)


def _ball_matrix(X, metric, n, eps):
    m = len(X)
    return np.stack([metric.bowen(X, i, np.arange(m), n) <= eps for i in range(m)])


def min_spanning_count(sample: SubsetSample, n: int, eps: float, metric: BowenMetric) -> int:
    """Size of a small (n, eps)-spanning subset (balls centred at sample points).

    Exact for line and cylinder metrics and for generic samples of at most 15
    points.  Otherwise the smaller of a greedy set cover and a maximal
    separated subset (which is itself spanning) is returned, so the sandwich
    ``N(2 eps) <= S(eps) <= N(eps)`` holds for every sample.
    """
    if eps <= 0 or n < 1:
        raise ValidationError("need eps > 0 and n >= 1")
    if sample.is_empty:
        return 0
    X = metric.embed(sample)
    if metric.structure == "line":
        _, xs = _line_sorted(X)
        return len(_line_min_cover(xs, metric.radius(n, eps)))
    if metric.structure == "cylinder":
        _, first = _prefix_classes(X, metric.class_depth(n, eps))
        return len(first)
    m = len(X)
    B = _ball_matrix(X, metric, n, eps)
    if m <= EXACT_BALL_LIMIT:
        masks = [sum(1 << int(j) for j in np.flatnonzero(row)) for row in B]
        full = (1 << m) - 1
        for size in range(1, m + 1):
            for combo in itertools.combinations(range(m), size):
                acc = 0
                for c in combo:
                    acc |= masks[c]
                if acc == full:
                    return size
    covered = np.zeros(m, dtype=bool)
    count = 0
    while not covered.all():
        gain = (B & ~covered).sum(axis=1)
        c = int(np.argmax(gain))
        covered |= B[c]
        count += 1
    sep, _ = max_separated_count(sample, n, eps, metric)
    return min(count, sep)


# --------------------------------------------------------------------------
# upper-capacity entropy
# --------------------------------------------------------------------------

def _lsq_slope(n, y):
    n = np.asarray(n, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(n) < 2:
        return float("nan")
    return float(np.polyfit(n, y, 1)[0])


def upper_capacity_entropy(sample: SubsetSample, eps_schedule, n_schedule,
                           metric: BowenMetric) -> CapacityEstimate:
    """Growth rate of maximal (n, eps)-separated counts.

    For each ``eps`` the least-squares slope of ``log count`` against ``n`` is
    taken over the last half of the usable ``n``; the reported value is the
    slope at the smallest ``eps``.  An ``n`` is unusable when the count has
    reached the sample size or the Bowen balls are finer than the sample can
    resolve; such ``n`` are flagged ``resolution_limited``.
    """
    eps_schedule = [float(e) for e in eps_schedule]
    n_schedule = [int(v) for v in n_schedule]
    if not eps_schedule or not n_schedule:
        raise ValidationError("schedules must be nonempty")
    if any(b <= a for a, b in zip(n_schedule, n_schedule[1:])):
        raise ValidationError("n schedule must be increasing")
    if any(b > a for a, b in zip(eps_schedule, eps_schedule[1:])):
        raise ValidationError("eps schedule must be decreasing")
    flags: list = []
    if sample.is_empty:
        _flag(flags, "empty_sample")
        zeros = {e: 0.0 for e in eps_schedule}
        return CapacityEstimate(0.0, zeros, {e: [0] * len(n_schedule) for e in eps_schedule},
                                {e: [] for e in eps_schedule}, flags)
    m = len(sample)
    slopes, counts, used = {}, {}, {}
    for eps in eps_schedule:
        cap = metric.reliable_depth(eps, sample)
        cs = [max_separated_count(sample, n, eps, metric)[0] for n in n_schedule]
        ok = [n for n, c in zip(n_schedule, cs) if c < m and (cap is None or n <= cap)]
        if len(ok) < len(n_schedule):
            _flag(flags, "resolution_limited")
        if len(ok) < 2:
            ok = list(n_schedule)
            _flag(flags, "insufficient_range")
        tail = ok[len(ok) // 2:] if len(ok) >= 4 else ok
        logs = [math.log(cs[n_schedule.index(n)]) for n in tail]
        slope = _lsq_slope(tail, logs) if len(tail) >= 2 else 0.0
        slopes[eps] = max(slope, 0.0) if np.isfinite(slope) else 0.0
        counts[eps] = cs
        used[eps] = tail
    return CapacityEstimate(slopes[eps_schedule[-1]], slopes, counts, used, flags)


# --------------------------------------------------------------------------
# weighted covers
# --------------------------------------------------------------------------

class _LineCover:
    """Exact minimum-weight interval cover of sorted leaf coordinates."""

    method = "exact_cover"

    def __init__(self, X, metric, eps, depths):
        self.order, self.xs = _line_sorted(X)
        self.depths = np.asarray(depths)
        xs = self.xs
        los, cen = [], []
        for n in self.depths:
            r = metric.radius(int(n), eps)
            c = np.searchsorted(xs, xs - r, side="left")
            lo = np.searchsorted(xs, xs[c] - r, side="left")
            los.append(lo)
            cen.append(c)
        self.lo = np.asarray(los)          # (depths, m): lo[d, i] for ball covering point i
        self.cen = np.asarray(cen)
        self.lomax = self.lo.max(axis=0)

    def solve(self, s, first=0):
        lo = self.lo[first:]
        w = np.exp(-s * self.depths[first:].astype(float))[:, None]
        m = len(self.xs)
        cost = np.zeros(m + 1)
        arg = np.zeros(m + 1, dtype=np.int64)
        a = 0
        while a < m:
            # cost[a+1 .. b] only depend on cost[0 .. a]
            b = int(np.searchsorted(self.lomax, a, side="right"))
            b = max(b, a + 1)
            cand = cost[lo[:, a:b]] + w
            k = np.argmin(cand, axis=0)
            cost[a + 1:b + 1] = cand[k, np.arange(b - a)]
            arg[a + 1:b + 1] = k
            a = b
        return float(cost[m]), lambda: self._rebuild(arg, first)

    def _rebuild(self, arg, first):
        centers, depths = [], []
        i = len(self.xs)
        while i > 0:
            d = first + arg[i]
            centers.append(int(self.order[self.cen[d, i - 1]]))
            depths.append(int(self.depths[d]))
            i = int(self.lo[d, i - 1])
        return centers[::-1], depths[::-1]


class _CylinderCover:
    """Exact minimum-weight cover of words by cylinders (tree dynamic programme)."""

    method = "exact_cover"

    def __init__(self, X, metric, eps, depths):
        self.depths = np.asarray(depths)
        self.levels = [metric.class_depth(int(n), eps) for n in self.depths]
        self.ids = []
        for L in self.levels:
            cls, first = _prefix_classes(X, L)
            self.ids.append((cls, first))
        # parent of each class at level d within level d-1
        self.parent = [None]
        for d in range(1, len(self.levels)):
            cls, first = self.ids[d]
            prev, _ = self.ids[d - 1]
            self.parent.append(prev[first])

    def solve(self, s, first=0):
        w = np.exp(-s * self.depths.astype(float))
        top = len(self.levels) - 1
        cost = np.full(len(self.ids[top][1]), w[top])
        choice = [None] * len(self.levels)
        choice[top] = np.ones(len(cost), dtype=bool)
        for d in range(top - 1, first - 1, -1):
            nparent = len(self.ids[d][1])
            sub = np.bincount(self.parent[d + 1], weights=cost, minlength=nparent)
            single = w[d] <= sub
            choice[d] = single
            cost = np.where(single, w[d], sub)
        return float(cost.sum()), lambda: self._rebuild(choice, first)

    def _rebuild(self, choice, first):
        centers, depths = [], []
        active = np.ones(len(self.ids[first][1]), dtype=bool)
        for d in range(first, len(self.levels)):
            take = active & choice[d]
            _, firsts = self.ids[d]
            centers += [int(c) for c in firsts[take]]
            depths += [int(self.depths[d])] * int(take.sum())
            if d + 1 < len(self.levels):
                active = (active & ~choice[d])[self.parent[d + 1]]
        return centers, depths


def _exact_weighted_cover(masks, weights, full):
    """Branch and bound over candidate balls (bitmask sets)."""
    order = np.argsort(weights, kind="stable")
    best = [math.inf, ()]

    def rec(covered, cost, chosen):
        if cost >= best[0]:
            return
        if covered == full:
            best[0], best[1] = cost, tuple(chosen)
            return
        low = (~covered & full) & -(~covered & full)
        for b in order:
            if masks[b] & low:
                chosen.append(int(b))
                rec(covered | masks[b], cost + weights[b], chosen)
                chosen.pop()

    rec(0, 0.0, [])
    return best[0], list(best[1])


class _GenericCover:
    """Dominance-pruned candidate balls; exact search when few remain, else greedy."""

    def __init__(self, X, metric, eps, depths):
        self.depths = np.asarray(depths)
        m = len(X)
        self.m = m
        cands = []
        for i in range(m):
            for n in self.depths:
                row = metric.bowen(X, i, np.arange(m), int(n)) <= eps
                cands.append((i, int(n), sum(1 << int(j) for j in np.flatnonzero(row)), row))
        self.cands = cands

    def _pruned(self, s, N):
        cs = [c for c in self.cands if c[1] >= N]
        best = {}
        for c in cs:
            w = math.exp(-s * c[1])
            if c[2] not in best or w < best[c[2]][0]:
                best[c[2]] = (w, c)
        items = sorted(best.items(), key=lambda kv: (kv[1][1][0], kv[1][1][1]))
        keep = []
        for mask, (w, c) in items:
            dominated = any(
                (mask | m2) == m2 and m2 != mask and w2 <= w for m2, (w2, _) in items)
            if not dominated:
                keep.append((w, c))
        return keep

    def solve(self, s, first=0):
        N = int(self.depths[first])
        keep = self._pruned(s, N)
        full = (1 << self.m) - 1
        if len(keep) <= EXACT_BALL_LIMIT:
            self.method = "exact_cover"
            weight, sel = _exact_weighted_cover([c[2] for _, c in keep],
                                                np.array([w for w, _ in keep]), full)
            if not math.isfinite(weight):
                raise InfeasibleCover("no cover within the depth budget")
            chosen = [keep[k][1] for k in sel]
        else:
            self.method = "greedy_cover"
            covered = np.zeros(self.m, dtype=bool)
            chosen, weight = [], 0.0
            while not covered.all():
                best, bestval = None, math.inf
                for w, c in keep:
                    gain = int((c[3] & ~covered).sum())
                    if gain and w / gain < bestval:
                        best, bestval = (w, c), w / gain
                if best is None:
                    raise InfeasibleCover("no cover within the depth budget")
                covered |= best[1][3]
                chosen.append(best[1])
                weight += best[0]
        return float(weight), lambda: ([c[0] for c in chosen], [c[1] for c in chosen])


def _depth_budget(sample, N, eps, metric, extra=0):
    m = max(len(sample), 1)
    budget = N + 2 * int(math.ceil(math.log2(m))) if m > 1 else N
    cap = metric.reliable_depth(eps, sample)
    n_max = budget if cap is None else min(budget, cap)
    return max(n_max, N + extra), (cap is not None and N + extra > cap)


def _cover_problem(sample, eps, depths, metric):
    X = metric.embed(sample)
    if metric.structure == "line":
        return _LineCover(X, metric, eps, depths)
    if metric.structure == "cylinder":
        return _CylinderCover(X, metric, eps, depths)
    return _GenericCover(X, metric, eps, depths)


def weighted_cover_infimum(sample: SubsetSample, s: float, N: int, eps: float,
                           metric: BowenMetric, N_max: int | None = None):
    """Minimum of ``sum exp(-s n_i)`` over Bowen-ball covers with ``n_i`` in [N, N_max].

    Centres are sample points.  Line and cylinder metrics are solved exactly
    by dynamic programming; generic metrics by branch and bound when at most
    15 candidate balls survive dominance pruning, else by greedy weighted set
    cover.  ``N_max`` defaults to ``N + 2 ceil(log2 m)`` capped at the depth
    the sample resolves.

    Returns
    -------
    weight : float
    cover : BowenBallCover
    """
    if s < 0 or N < 1:
        raise ValidationError("need s >= 0 and N >= 1")
    if sample.is_empty:
        return 0.0, BowenBallCover((), (), eps, N)
    if N_max is None:
        N_max, _ = _depth_budget(sample, N, eps, metric)
    if N_max < N:
        raise InfeasibleCover("depth budget below N")
    prob = _cover_problem(sample, eps, np.arange(N, N_max + 1), metric)
    weight, rebuild = prob.solve(s)
    centers, depths = rebuild()
    return weight, BowenBallCover(tuple(centers), tuple(depths), eps, N)


def cover_is_valid(sample: SubsetSample, cover: BowenBallCover, metric: BowenMetric) -> bool:
    """Check that every sample point lies in some ball of ``cover``."""
    X = metric.embed(sample)
    m = len(X)
    hit = np.zeros(m, dtype=bool)
    for c, n in zip(cover.centers, cover.depths):
        if metric.structure == "line":
            hit |= np.abs(X - X[c]) <= metric.radius(n, cover.eps)
        else:
            hit |= metric.bowen(X, c, np.arange(m), n) <= cover.eps
    return bool(hit.all())


# --------------------------------------------------------------------------
# Bowen entropy
# --------------------------------------------------------------------------

def _critical_exponent(prob, s_hi, depth_step, flags):
    """Smallest s at which deeper covers stop costing more than shallow ones."""
    evals = {}

    def weights(s):
        if s not in evals:
            evals[s] = (prob.solve(s, 0)[0], prob.solve(s, depth_step)[0])
        return evals[s]

    def grows(s):
        w0, w1 = weights(s)
        return w1 > w0 * (1 + GROWTH_RTOL)

    lo, hi = 0.0, s_hi
    if not grows(lo):
        return 0.0, weights(0.0)[1], evals
    widen = 0
    while grows(hi) and widen < 4:
        lo, hi = hi, 2 * hi
        widen += 1
        _flag(flags, "bracket_widened")
    it = 0
    while hi - lo > BISECT_TOL and it < BISECT_MAXITER:
        mid = 0.5 * (lo + hi)
        if grows(mid):
            lo = mid
        else:
            hi = mid
        it += 1
    s_star = 0.5 * (lo + hi)
    return s_star, prob.solve(s_star, depth_step)[0], evals


def _check_monotone(evals, flags):
    ss = sorted(evals)
    for k in (0, 1):
        vals = [evals[s][k] for s in ss]
        if any(b > a * (1 + 1e-12) for a, b in zip(vals, vals[1:])):
            _flag(flags, "greedy_nonmonotone")


def bowen_entropy_estimate(sample: SubsetSample, schedule, metric: BowenMetric,
                           depth_step: int = 2) -> CriticalExponentReport:
    """Critical exponent of the Bowen-ball cover weights.

    Parameters
    ----------
    sample : SubsetSample
    schedule : sequence of (N, eps)
        Evaluated in order; the last pair gives ``s_star``.
    metric : BowenMetric
    depth_step : int
        Depth offset compared against ``N`` in the growth test.

    Notes
    -----
    For each pair the depth budget ``[N, N_max]`` is shared by the ``N`` and
    ``N + depth_step`` covers.  When the sample cannot resolve balls that deep,
    ``N`` is lowered to fit and the report is flagged ``resolution_limited``.
    """
    schedule = [(int(N), float(e)) for N, e in schedule]
    if not schedule:
        raise ValidationError("schedule must be nonempty")
    flags: list = []
    if sample.is_empty:
        _flag(flags, "empty_sample")
        per = [{"N": N, "eps": e, "s": 0.0, "weight": 0.0, "method": "exact_cover"}
               for N, e in schedule]
        return CriticalExponentReport(0.0, schedule[-1][0], schedule[-1][1], "exact_cover",
                                      0.0, per, flags)
    per = []
    s_hi = metric.entropy_ceiling + 1.0
    for N, eps in schedule:
        need = depth_step + 1
        n_max, _ = _depth_budget(sample, N, eps, metric)
        cap = metric.reliable_depth(eps, sample)
        if n_max < N + need:
            if cap is not None and cap - need >= 1:
                N = cap - need
                n_max = cap
            else:
                n_max = N + need
            _flag(flags, "resolution_limited")
        prob = _cover_problem(sample, eps, np.arange(N, n_max + 1), metric)
        s, w, evals = _critical_exponent(prob, s_hi, depth_step, flags)
        method = getattr(prob, "method", "exact_cover")
        if method == "greedy_cover":
            _check_monotone(evals, flags)
        per.append({"N": N, "eps": eps, "N_max": int(n_max), "s": s, "weight": w,
                    "method": method})
    last = per[-1]
    method = "greedy_cover" if any(p["method"] == "greedy_cover" for p in per) else "exact_cover"
    return CriticalExponentReport(last["s"], last["N"], last["eps"], method, last["weight"],
                                  per, flags)


def symbolic_metric(system) -> CylinderMetric:
    """Cylinder metric of a symbolic system (whole space as one leaf)."""
    return CylinderMetric(system.metric_base, system.alphabet_size)
