"""Hamming combinatorics, (rho, n, eps)-separation and orbit gluing.

Words are integer arrays over ``{0, ..., k-1}``; sets of words are 2-D arrays
with one word per row.  On a symbolic system with ``eps = metric_base`` two
orbit points are ``eps``-apart at time ``j`` exactly when their words differ
at position ``j``, so (rho, n, eps)-separation becomes a Hamming condition.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import logsumexp

from .caratheodory import SubsetSample
from .errors import DomainError, NotMixing, ValidationError
from .measures import MarkovMeasure
from .multifractal import Potential, WeakStarNeighborhood, log_counts_by_sums
from .systems import SymbolicSystem, as_word, word_str

EXACT_WORD_LIMIT = 24


# --------------------------------------------------------------------------
# words and Hamming geometry
# --------------------------------------------------------------------------

def as_word_array(words) -> np.ndarray:
    """Stack words (strings, sequences or arrays) of equal length into a 2-D array."""
    if isinstance(words, np.ndarray) and words.ndim == 2:
        return words.astype(np.int64, copy=False)
    rows = [as_word(w) for w in words]
    if not rows:
        return np.zeros((0, 0), dtype=np.int64)
    if len({len(r) for r in rows}) != 1:
        raise ValidationError("words must have a common length")
    return np.stack(rows)


def read_words(path) -> np.ndarray:
    """Newline-delimited symbol strings; blank lines are ignored."""
    with open(path) as fh:
        return as_word_array([ln.strip() for ln in fh if ln.strip()])


def write_words(path, words) -> None:
    with open(path, "w") as fh:
        for w in (words if isinstance(words, list) else np.atleast_2d(words)):
            fh.write(word_str(w) + "\n")


def binary_entropy(rho: float) -> float:
    """``-rho log rho - (1 - rho) log(1 - rho)`` (natural log, 0 at the endpoints)."""
    if not 0.0 <= rho <= 1.0:
        raise DomainError(f"binary entropy needs rho in [0, 1], got {rho}")
    if rho in (0.0, 1.0):
        return 0.0
    return -rho * math.log(rho) - (1 - rho) * math.log1p(-rho)


def hamming_distance(w, v) -> int:
    w, v = as_word(w), as_word(v)
    if len(w) != len(v):
        raise ValidationError("Hamming distance needs words of equal length")
    return int(np.count_nonzero(w != v))


def pairwise_hamming(W: np.ndarray, V: np.ndarray | None = None) -> np.ndarray:
    """Matrix of Hamming distances between rows (chunked to bound memory)."""
    V = W if V is None else V
    out = np.empty((len(W), len(V)), dtype=np.int32)
    chunk = max(1, 4_000_000 // max(1, len(V) * max(W.shape[1], 1)))
    for s in range(0, len(W), chunk):
        out[s:s + chunk] = (W[s:s + chunk, None, :] != V[None, :, :]).sum(axis=2)
    return out


@lru_cache(maxsize=None)
def _ball_exact(n: int, r: int, k: int) -> int:
    return sum(math.comb(n, i) * (k - 1) ** i for i in range(r + 1))


def hamming_ball_size(n: int, r: int, k: int = 2):
    """Exact size of a Hamming ball and the entropy bound ``e^{n phi(r/n)} (k-1)^r``.

    Returns
    -------
    exact : int
    bound : float

    Raises
    ------
    ArithmeticError
        If the bound fails where it is claimed, ``0 < r/n <= 1 - 1/k``.
    """
    if not 0 <= r <= n:
        raise ValidationError("radius must lie in [0, n]")
    exact = _ball_exact(int(n), int(r), int(k))
    bound = math.exp(n * binary_entropy(r / n)) * (k - 1) ** r if n else 1.0
    if 0 < r / max(n, 1) <= 1 - 1 / k and exact > bound * (1 + 1e-12):
        raise ArithmeticError(f"Hamming bound violated at n={n}, r={r}, k={k}")
    return exact, bound


def _conflicts(W, t):
    D = pairwise_hamming(W)
    C = D <= t
    np.fill_diagonal(C, False)
    return C


def _lex_order(W):
    return np.lexsort(W.T[::-1]) if W.size else np.arange(len(W))


def _pack(W: np.ndarray):
    """Pack words into uint64 codes, ``b`` bits per symbol; ``None`` if they do not fit."""
    k = int(W.max()) + 1 if W.size else 2
    b = max(1, (k - 1).bit_length())
    if W.shape[1] * b > 64:
        return None, b
    shifts = (np.arange(W.shape[1], dtype=np.uint64) * np.uint64(b))
    codes = (W.astype(np.uint64) << shifts[None, :]).sum(axis=1, dtype=np.uint64)
    mask = np.uint64(sum(1 << (b * i) for i in range(W.shape[1])))
    return (codes, mask), b


def _packed_distances(packed, b, i):
    codes, mask = packed
    x = codes ^ codes[i]
    y = x
    for s in range(1, b):
        y = y | (x >> np.uint64(s))
    return np.bitwise_count(y & mask)


def greedy_hamming_separated(W: np.ndarray, t: int) -> np.ndarray:
    """Lexicographic greedy subset with pairwise distance ``> t`` (row indices)."""
    order = _lex_order(W)
    Ws = W[order]
    packed, b = _pack(Ws)
    blocked = np.zeros(len(Ws), dtype=bool)
    chosen: list = []
    for i in range(len(Ws)):
        if blocked[i]:
            continue
        chosen.append(i)
        if packed is not None:
            d = _packed_distances(packed, b, i)
        else:
            d = (Ws != Ws[i]).sum(axis=1)
        blocked |= d <= t
    return order[np.asarray(chosen, dtype=np.int64)]


def exact_hamming_separated(W: np.ndarray, t: int) -> np.ndarray:
    """Maximum subset with pairwise distance ``> t`` by branch and bound."""
    m = len(W)
    if m == 0:
        return np.zeros(0, dtype=np.int64)
    order = _lex_order(W)
    C = _conflicts(W[order], t)
    nb = [sum(1 << int(j) for j in np.flatnonzero(C[i])) for i in range(m)]
    best = [0, 0]

    def rec(cand, chosen, size):
        if cand == 0:
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        if size + bin(cand).count("1") <= best[0]:
            return
        v = (cand & -cand).bit_length() - 1
        rec(cand & ~nb[v] & ~(1 << v), chosen | (1 << v), size + 1)
        rec(cand & ~(1 << v), chosen, size)

    rec((1 << m) - 1, 0, 0)
    idx = [i for i in range(m) if best[1] >> i & 1]
    return order[np.asarray(idx, dtype=np.int64)]


def max_hamming_separated(words, t: int, method: str = "auto") -> np.ndarray:
    """Subset of ``words`` with pairwise Hamming distance greater than ``t``.

    ``method="auto"`` returns an exact maximum for at most 24 distinct words
    and the lexicographic greedy (maximal, not extendable) subset otherwise.
    """
    W = as_word_array(words)
    if len(W):
        _, first = np.unique(W, axis=0, return_index=True)
        W = W[np.sort(first)]
    if method == "exact" or (method == "auto" and len(W) <= EXACT_WORD_LIMIT):
        return W[exact_hamming_separated(W, t)]
    if method not in ("auto", "greedy"):
        raise ValidationError(f"unknown method {method!r}")
    return W[greedy_hamming_separated(W, t)]


def is_hamming_separated(W, t: int) -> bool:
    W = as_word_array(W)
    if len(W) < 2:
        return True
    packed, b = _pack(W)
    if packed is not None:
        return all((_packed_distances(packed, b, i)[i + 1:] > t).all() for i in range(len(W)))
    D = pairwise_hamming(W)
    iu = np.triu_indices(len(W), 1)
    return bool((D[iu] > t).all())


def is_maximal_separated(subset, words, t: int) -> bool:
    """No word outside ``subset`` can be added without breaking separation."""
    S, W = as_word_array(subset), as_word_array(words)
    if len(S) == 0:
        return len(W) == 0
    D = pairwise_hamming(W, S)
    inside = (D == 0).any(axis=1)
    return bool(((D <= t).any(axis=1) | inside).all())


# --------------------------------------------------------------------------
# (rho, n, eps)-separation
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SeparationConfig:
    rho: float
    eps: float
    n: int

    def __post_init__(self):
        if not 0 < self.rho <= 1:
            raise ValidationError("rho must lie in (0, 1]")
        if self.eps <= 0 or self.n < 1:
            raise ValidationError("need eps > 0 and n >= 1")
        if math.ceil(self.rho * self.n) < 1:
            raise ValidationError("ceil(rho n) must be at least 1")

    @property
    def required(self) -> int:
        return math.ceil(self.rho * self.n - 1e-12)


@dataclass
class SeparatedCount:
    count: int
    witnesses: np.ndarray
    method: str
    flags: list = field(default_factory=list)

    def __int__(self):
        return self.count


def _membership(system, sample, n, F, family):
    if F is None:
        return np.ones(len(sample), dtype=bool)
    from .multifractal import birkhoff_average
    fam = family if family is not None else symbol_indicators(system)
    keep = []
    for p in sample.points:
        vals = np.array([birkhoff_average(system, f, p, n) for f in fam])
        keep.append(bool(np.all(np.abs(vals - F.center) < F.tolerance)))
    return np.asarray(keep, dtype=bool)


def symbol_indicators(system) -> list:
    k = system.alphabet_size
    return [Potential.cylinder_indicator([a], k) for a in range(k)]


def rho_separated_count(system, seg, F: WeakStarNeighborhood | None, config: SeparationConfig,
                        sample: SubsetSample, family=None) -> SeparatedCount:
    """Maximal (rho, n, eps) u-separated subset of ``sample`` inside ``M_{n,F}``.

    Two points are separated when ``d^u(f^j y, f^j z) > eps`` for at least
    ``ceil(rho n)`` times ``j < n``.  The restriction to ``M_{n,F}`` uses the
    Birkhoff averages of ``family`` (default: symbol indicators).  Exact
    (branch and bound) for at most 24 restricted points, greedy in index
    order otherwise.
    """
    flags: list = []
    mask = _membership(system, sample, config.n, F, family)
    sub = sample.take(np.flatnonzero(mask))
    if sub.is_empty:
        return SeparatedCount(0, np.zeros(0, dtype=np.int64), "empty", ["neighborhood_empty"])
    metric = seg.bowen_metric()
    X = metric.embed(sub)
    m = len(X)
    need = config.required
    sep = np.zeros((m, m), dtype=bool)
    for i in range(m):
        steps = metric.step_distances(X, i, np.arange(m), config.n)
        sep[i] = (steps > config.eps).sum(axis=1) >= need
    np.fill_diagonal(sep, False)
    if m <= EXACT_WORD_LIMIT:
        nb = [sum(1 << int(j) for j in np.flatnonzero(~sep[i])) & ~(1 << i) for i in range(m)]
        best = [0, 0]

        def rec(cand, chosen, size):
            if cand == 0:
                if size > best[0]:
                    best[0], best[1] = size, chosen
                return
            if size + bin(cand).count("1") <= best[0]:
                return
            v = (cand & -cand).bit_length() - 1
            rec(cand & ~nb[v] & ~(1 << v), chosen | (1 << v), size + 1)
            rec(cand & ~(1 << v), chosen, size)

        rec((1 << m) - 1, 0, 0)
        idx = np.asarray([i for i in range(m) if best[1] >> i & 1], dtype=np.int64)
        method = "exact"
    else:
        chosen: list = []
        for i in range(m):
            if all(sep[i, j] for j in chosen):
                chosen.append(i)
        idx = np.asarray(chosen, dtype=np.int64)
        method = "greedy"
    orig = np.flatnonzero(mask)[idx]
    return SeparatedCount(len(idx), orig, method, flags)


# --------------------------------------------------------------------------
# lower and upper separated-count rates
# --------------------------------------------------------------------------

DEFAULT_TAUS = (0.05, 0.02, 0.01, 0.005, 0.002)
DEFAULT_S_N = tuple(range(500, 1001, 50))


@dataclass
class SQuantities:
    s_lower: float
    s_upper: float
    per_tau: dict
    plain: float
    method: str
    flags: list = field(default_factory=list)

    def __iter__(self):
        yield self.s_lower
        yield self.s_upper


def _target_center(system, target):
    k = system.alphabet_size
    if isinstance(target, MarkovMeasure):
        return target.symbol_frequencies()
    if isinstance(target, WeakStarNeighborhood):
        return np.asarray(target.center, dtype=float)
    arr = np.asarray(target)
    if arr.dtype.kind in "iu" or isinstance(target, str):
        w = as_word(target)
        return np.bincount(w, minlength=k) / len(w)
    return arr.astype(float)


def _tail_rates(ns, logN):
    ns = np.asarray(ns, dtype=float)
    rates = np.where(np.isfinite(logN), logN / ns, 0.0)
    tail = rates[len(rates) // 2:]
    return float(tail.min()), float(tail.max())


def s_quantities(system, target, eps: float | None = None, x_grid=None, delta=None,
                 taus=DEFAULT_TAUS, n_schedule=DEFAULT_S_N, family=None) -> SQuantities:
    """Lower and upper growth rates of ``M_{n,F}`` separated counts.

    ``F`` is the neighbourhood of ``target`` (a Markov measure, a word whose
    orbit frequencies define the centre, or explicit centres) of radius
    ``tau``.  For each ``tau`` the quantities ``(1/n) log N(n)`` are reduced to
    their minimum and maximum over the last half of the ``n`` schedule; the
    results are the infima over ``tau``.

    On a symbolic system with symbol-frequency neighbourhoods and
    ``eps = metric_base`` the counts are exact (no sampling).
    """
    taus = tuple(sorted(taus, reverse=True))
    if any(t <= 0 for t in taus):
        raise ValidationError("tolerances must be positive")
    ns = tuple(int(v) for v in n_schedule)
    flags: list = []
    if isinstance(system, SymbolicSystem) and family is None and (
            eps is None or math.isclose(eps, system.metric_base)):
        k = system.alphabet_size
        center = _target_center(system, target)
        tabs = [np.eye(k, dtype=np.int64)[a] for a in range(1, k)]
        counts = log_counts_by_sums(system, tabs, ns)
        per = {}
        lows, highs = [], []
        for tau in taus:
            logN = []
            for n in ns:
                lc = counts[n]
                grids = np.meshgrid(*[np.arange(s) for s in lc.shape], indexing="ij")
                freqs = [g / n for g in grids]
                f0 = 1.0 - sum(freqs)
                ok = np.abs(f0 - center[0]) < tau
                for a in range(1, k):
                    ok &= np.abs(freqs[a - 1] - center[a]) < tau
                vals = lc[ok & np.isfinite(lc)]
                logN.append(float(logsumexp(vals)) if vals.size else -np.inf)
            logN = np.asarray(logN)
            if not np.isfinite(logN).all() and "neighborhood_empty" not in flags:
                flags.append("neighborhood_empty")
            lo, hi = _tail_rates(ns, logN)
            per[tau] = (lo, hi)
            lows.append(lo)
            highs.append(hi)
        allN = np.asarray([float(logsumexp(counts[n][np.isfinite(counts[n])])) for n in ns])
        plain = _tail_rates(ns, allN)[1]
        return SQuantities(min(lows), min(highs), per, plain, "exact_count", flags)
    return _sampled_s_quantities(system, target, eps, x_grid, delta, taus, ns, family)


def _sampled_s_quantities(system, target, eps, x_grid, delta, taus, ns, family):
    from .caratheodory import max_separated_count
    from .multifractal import symbol_family, trig_family
    from .systems import leaf_segment
    from .unstable import default_delta, default_schedule, default_x_grid, leaf_sample

    sched = default_schedule(system)
    eps = sched.eps[-1] if eps is None else eps
    delta = default_delta(system) if delta is None else delta
    x_grid = default_x_grid(system, 2) if x_grid is None else x_grid
    if family is None:
        family = (symbol_family(system.alphabet_size) if isinstance(system, SymbolicSystem)
                  else trig_family(system.dim))
    center = np.asarray(target, dtype=float)
    per, lows, highs = {}, [], []
    plain_best = -np.inf
    for tau in taus:
        lo_x, hi_x = [], []
        for x in x_grid:
            seg = leaf_segment(system, x, delta)
            sample = leaf_sample(seg, sched.grid)
            metric = seg.bowen_metric()
            logN = []
            for n in ns:
                F = WeakStarNeighborhood(center, tau)
                mask = _membership(system, sample, n, F, family)
                sub = sample.take(np.flatnonzero(mask))
                c = max_separated_count(sub, n, eps, metric)[0] if not sub.is_empty else 0
                logN.append(math.log(c) if c else -np.inf)
                if tau == taus[0]:
                    call = max_separated_count(sample, n, eps, metric)[0]
                    plain_best = max(plain_best, math.log(call) / n)
            lo, hi = _tail_rates(ns, np.asarray(logN))
            lo_x.append(lo)
            hi_x.append(hi)
        per[tau] = (max(lo_x), max(hi_x))
        lows.append(max(lo_x))
        highs.append(max(hi_x))
    return SQuantities(min(lows), min(highs), per, float(plain_best), "sampled", [])


# --------------------------------------------------------------------------
# gluing
# --------------------------------------------------------------------------

@dataclass
class GluingPlan:
    """Blocks ``Gamma'_1 .. Gamma'_k`` to be concatenated on a host subshift."""

    block_sets: list
    system: SymbolicSystem | None = None

    def __post_init__(self):
        self.block_sets = [as_word_array(b) for b in self.block_sets]
        if not self.block_sets or any(len(b) == 0 for b in self.block_sets):
            raise ValidationError("every block set must be nonempty")
        if self.system is None:
            k = int(max(b.max() for b in self.block_sets)) + 1
            self.system = SymbolicSystem(np.ones((max(k, 2),) * 2, dtype=np.int64))
        for b in self.block_sets:
            if not self.system.contains(b).all():
                raise ValidationError("block words must be admissible in the host")

    @property
    def block_lengths(self):
        return [b.shape[1] for b in self.block_sets]

    @property
    def offsets(self):
        return list(np.cumsum([0] + self.block_lengths[:-1]))

    @property
    def gap(self) -> int:
        """Bridge budget: 0 on full shifts, the mixing constant otherwise."""
        if self.system.is_full_shift:
            return 0
        p = self.system.mixing_constant()
        if p is None:
            raise NotMixing(f"{self.system.name} is not topologically mixing")
        return p


@dataclass
class GluingResult:
    words: list
    cardinality: int
    expected: int
    collision_free: bool
    bridges_used: int
    uniform_bridges: bool
    min_distance: int | None = None
    separation_ok: bool | None = None
    required: int | None = None


def _uniform_bridge(system, a, b, length):
    """Word ``u`` of exactly ``length`` symbols with ``a u b`` admissible."""
    k = system.alphabet_size
    T = system.transition
    reach = [np.zeros(k, dtype=bool) for _ in range(length + 2)]
    reach[0][a] = True
    for i in range(1, length + 2):
        reach[i] = (T[reach[i - 1]].any(axis=0))
    if not reach[length + 1][b]:
        raise DomainError("no bridge of that length")
    # walk backwards choosing the smallest admissible symbol
    path = [b]
    for i in range(length, 0, -1):
        cands = [s for s in range(k) if reach[i][s] and T[s, path[-1]]]
        path.append(min(cands))
    return np.asarray(path[1:][::-1], dtype=np.int64)


def _glue(plan, uniform):
    sysm = plan.system
    out, bridges = [], 0
    p = plan.gap
    for combo in itertools.product(*[range(len(b)) for b in plan.block_sets]):
        parts = []
        for j, c in enumerate(combo):
            w = plan.block_sets[j][c]
            if parts:
                a, b = int(parts[-1][-1]), int(w[0])
                if uniform and p:
                    br = _uniform_bridge(sysm, a, b, p - 1)
                    parts.append(br)
                    bridges += 1
                elif not sysm.transition[a, b]:
                    parts.append(sysm.bridge(a, b))
                    bridges += 1
            parts.append(w)
        out.append(np.concatenate(parts))
    return out, bridges


def glue_orbits(plan: GluingPlan, rho: float | None = None) -> GluingResult:
    """All concatenations of one word per block, with a cardinality certificate.

    Seams that are inadmissible get the shortest bridge; if that ever merges
    two glued words, every seam is instead bridged by a word of length
    ``mixing constant - 1``.  With ``rho`` given (or derived from the block
    distances), distinct glued words are checked pairwise to differ in at
    least ``ceil(rho n)`` positions of their common length ``n``.
    """
    expected = int(np.prod([len(b) for b in plan.block_sets], dtype=object))
    words, bridges = _glue(plan, uniform=False)
    uniform = False
    keys = {word_str(w) for w in words}
    if len(keys) != expected and plan.gap:
        words, bridges = _glue(plan, uniform=True)
        uniform = True
        keys = {word_str(w) for w in words}
    res = GluingResult(words, len(keys), expected, len(keys) == expected, bridges, uniform)
    if expected <= 1 or expected * (expected - 1) // 2 > 10 ** 4:
        return res
    n = min(len(w) for w in words)
    W = np.stack([w[:n] for w in words])
    D = pairwise_hamming(W)
    iu = np.triu_indices(len(W), 1)
    res.min_distance = int(D[iu].min())
    if rho is None:
        dmins = []
        for b in plan.block_sets:
            if len(b) > 1:
                Db = pairwise_hamming(b)
                dmins.append(int(Db[np.triu_indices(len(b), 1)].min()))
        rho = (min(dmins) / n) if dmins else None
    if rho is not None:
        res.required = math.ceil(rho * n - 1e-12)
        res.separation_ok = res.min_distance >= res.required
    return res


# --------------------------------------------------------------------------
# uniform separation
# --------------------------------------------------------------------------

@dataclass
class UniformSeparationResult:
    achieved: float
    target: float
    passed: bool
    kappa: float
    kappa_prime: float | None
    rho_star: float | None
    threshold: float | None
    n: int
    size_typical: int
    size_extracted: int
    verified: bool
    min_feasible_kappa: float | None = None
    flags: list = field(default_factory=list)


def choose_constants(kappa: float, k: int, grid: float = 1e-3):
    """Largest ``rho*`` (then smallest ``kappa'``) on a grid satisfying
    ``phi(rho* + 2 kappa') + (rho* + 2 kappa') log(2k - 1) < kappa - kappa'``
    and ``2 kappa' + rho* < 1/2``.  Returns ``None`` if nothing on the grid fits.
    """
    best = None
    L = math.log(2 * k - 1)
    kp = grid
    while kp < kappa:
        rho = grid
        ok_rho = None
        while 2 * kp + rho < 0.5:
            x = rho + 2 * kp
            if binary_entropy(x) + x * L < kappa - kp:
                ok_rho = rho
                rho += grid
            else:
                break
        if ok_rho is not None and (best is None or ok_rho > best[1] + 1e-15):
            best = (kp, ok_rho)
        kp += grid
    return best


def minimal_feasible_kappa(k: int, grid: float = 1e-3) -> float:
    kappa = grid
    while choose_constants(kappa, k, grid) is None:
        kappa += grid
    return kappa


def typical_words(system: SymbolicSystem, mu: MarkovMeasure, n: int, tau: float) -> np.ndarray:
    """Admissible ``n``-words whose symbol frequencies are within ``tau`` of ``mu``'s."""
    W = system.words(n)
    freq = np.stack([(W == a).mean(axis=1) for a in range(system.alphabet_size)], axis=1)
    ok = np.all(np.abs(freq - mu.symbol_frequencies()[None, :]) < tau, axis=1)
    return W[ok]


def uniform_separation_probe(system: SymbolicSystem, mu: MarkovMeasure, kappa: float,
                             n: int = 14, tau: float = 0.05) -> UniformSeparationResult:
    """Extract a Hamming-separated subset of ``mu``-typical words and compare
    its exponential size with ``h(mu) - kappa``.

    The separation threshold is ``n (2 kappa' + rho*)`` with constants from
    :func:`choose_constants`.
    """
    if kappa <= 0:
        raise ValidationError("kappa must be positive")
    k = system.alphabet_size
    target = mu.entropy() - kappa
    consts = choose_constants(kappa, k)
    if consts is None:
        return UniformSeparationResult(math.nan, target, False, kappa, None, None, None, n, 0,
                                       0, False, minimal_feasible_kappa(k), ["unsatisfiable"])
    kp, rho = consts
    t = n * (2 * kp + rho)
    Xi = typical_words(system, mu, n, tau)
    if len(Xi) == 0:
        return UniformSeparationResult(math.nan, target, False, kappa, kp, rho, t, n, 0, 0,
                                       False, None, ["neighborhood_empty"])
    sub = max_hamming_separated(Xi, int(math.floor(t)), method="greedy")
    verified = is_hamming_separated(sub, int(math.floor(t)))
    achieved = math.log(len(sub)) / n
    return UniformSeparationResult(achieved, target, achieved >= target and verified, kappa, kp,
                                   rho, t, n, len(Xi), len(sub), verified)
