"""Birkhoff averages, level-set entropy, pressure and the multifractal spectrum.

Exact counting
--------------
For a locally constant potential whose values sit on a lattice
``offset + step * j`` the number of admissible words with a given Birkhoff
sum is computed by a dynamic programme over (last symbols, lattice sum).
Counts are kept as logarithms so ``n`` in the thousands is routine.

Spectrum
--------
The variational side ``sup{h(mu) : int phi dmu = a}`` is the Legendre
transform ``inf_q P(q phi) - q a`` of the pressure, the log of the leading
eigenvalue of the tilted transfer matrix.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.sparse.csgraph import connected_components
from scipy.special import gammaln, logsumexp

from .errors import (LevelUnreachable, NotIrreducible, NotMixing, UnsupportedConfiguration,
                     ValidationError)
from .systems import SymbolicSystem, as_word, iterate

Q_RANGE = 50.0
POWER_TOL = 1e-12
POWER_MAXITER = 10000


# --------------------------------------------------------------------------
# potentials
# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Potential:
    """Observable ``phi`` evaluated along orbits.

    Symbolic potentials are locally constant: ``table[w_0, ..., w_{m-1}]``.
    Toral potentials are trigonometric polynomials
    ``sum c * cos(2 pi k.x)`` / ``sin``.
    """

    kind: str
    table: np.ndarray | None = None
    word: tuple | None = None
    terms: tuple = ()
    const: float = 0.0

    @classmethod
    def cylinder_indicator(cls, word, alphabet: int = 2) -> "Potential":
        w = as_word(word)
        table = np.zeros((alphabet,) * len(w))
        table[tuple(w)] = 1.0
        return cls("cylinder_indicator", table, tuple(int(v) for v in w))

    @classmethod
    def locally_constant(cls, table) -> "Potential":
        T = np.asarray(table, dtype=float)
        if T.ndim < 1 or len(set(T.shape)) != 1:
            raise ValidationError("table must have shape (k,) * m")
        return cls("locally_constant", T)

    @classmethod
    def constant(cls, c: float, alphabet: int | None = 2) -> "Potential":
        if alphabet is None:
            return cls("trig_poly", None, None, (), float(c))
        return cls("locally_constant", np.full(alphabet, float(c)))

    @classmethod
    def trig_poly(cls, terms, const: float = 0.0) -> "Potential":
        """``terms``: iterable of ``(coef, wavevector, "cos" | "sin")``."""
        parsed = tuple((float(c), tuple(int(v) for v in k), f) for c, k, f in terms)
        for _, _, f in parsed:
            if f not in ("cos", "sin"):
                raise ValidationError("trig terms are 'cos' or 'sin'")
        return cls("trig_poly", None, None, parsed, float(const))

    @property
    def depth(self) -> int:
        return 0 if self.table is None else self.table.ndim

    @property
    def symbolic(self) -> bool:
        return self.table is not None

    def bounds(self):
        if self.symbolic:
            return float(self.table.min()), float(self.table.max())
        amp = sum(abs(c) for c, _, _ in self.terms)
        return self.const - amp, self.const + amp

    def values_along(self, w, n: int) -> np.ndarray:
        """``phi(sigma^j w)`` for ``j < n`` (needs ``len(w) >= n + depth - 1``)."""
        w = as_word(w)
        m = self.depth
        if len(w) < n + m - 1:
            raise ValidationError(
                f"word of length {len(w)} too short for {n} windows of depth {m}")
        idx = tuple(w[j: j + n] for j in range(m))
        return self.table[idx]

    def evaluate_points(self, P) -> np.ndarray:
        P = np.atleast_2d(np.asarray(P, dtype=float))
        out = np.full(len(P), self.const)
        for c, k, f in self.terms:
            arg = 2 * np.pi * (P @ np.asarray(k, dtype=float))
            out += c * (np.cos(arg) if f == "cos" else np.sin(arg))
        return out

    def __call__(self, x) -> float:
        if self.symbolic:
            return float(self.values_along(x, 1)[0])
        return float(self.evaluate_points(x)[0])

    def lattice(self):
        """``(offset, step, int_table)`` with ``table = offset + step * int_table``."""
        if not self.symbolic:
            raise UnsupportedConfiguration("lattice form needs a locally constant potential")
        T = self.table
        lo = float(T.min())
        d = T - lo
        nz = np.unique(np.round(d[d > 1e-12], 12))
        if nz.size == 0:
            return lo, 1.0, np.zeros(T.shape, dtype=np.int64)
        base = float(nz.min())
        fr = [Fraction(float(v / base)).limit_denominator(24) for v in nz]
        den = math.lcm(*[f.denominator for f in fr])
        step = base / den
        ints = np.round(d / step)
        if np.abs(ints * step - d).max() > 1e-9 or ints.max() > 64:
            raise UnsupportedConfiguration("potential values are not on a small lattice")
        return lo, step, ints.astype(np.int64)


def symbol_family(alphabet: int, max_len: int = 2, count: int = 6):
    """Cylinder indicators in shortlex order (default weak* test family)."""
    fam = []
    for L in range(1, max_len + 1):
        for code in range(alphabet ** L):
            w = np.array([(code // alphabet ** (L - 1 - i)) % alphabet for i in range(L)])
            fam.append(Potential.cylinder_indicator(w, alphabet))
            if len(fam) == count:
                return fam
    return fam


def trig_family(dim: int = 2, count: int = 6):
    """Low-order trigonometric monomials on the torus."""
    ks = []
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        ks.append(tuple(e))
    ks.append(tuple([1] * dim))
    fam = []
    for k in ks:
        for f in ("cos", "sin"):
            fam.append(Potential.trig_poly([(1.0, k, f)]))
    return fam[:count]


# --------------------------------------------------------------------------
# Birkhoff averages and empirical measures
# --------------------------------------------------------------------------

def birkhoff_values(system, phi: Potential, x, n: int) -> np.ndarray:
    if isinstance(system, SymbolicSystem):
        return phi.values_along(system.check_word(x), n)
    if phi.symbolic:
        raise ValidationError("symbolic potential on a toral system")
    orb = iterate(system, x, n)
    return phi.evaluate_points(orb.points)


def birkhoff_average(system, phi: Potential, x, n: int) -> float:
    """``(1/n) sum_{j<n} phi(f^j x)``."""
    if n < 1:
        raise ValidationError("n must be positive")
    return float(birkhoff_values(system, phi, x, n).mean())


@dataclass(frozen=True)
class EmpiricalMeasureProxy:
    """Birkhoff averages of a finite test family along an orbit segment."""

    n: int
    test_values: np.ndarray


@dataclass(frozen=True)
class WeakStarNeighborhood:
    """``{nu : |int f_i dnu - c_i| < tau for all i}``."""

    center: np.ndarray
    tolerance: float

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValidationError("tolerance must be positive")

    def contains(self, proxy: EmpiricalMeasureProxy) -> bool:
        return bool(np.all(np.abs(proxy.test_values - self.center) < self.tolerance))


def empirical_proxy(system, x, n: int, family) -> EmpiricalMeasureProxy:
    vals = np.array([birkhoff_average(system, f, x, n) for f in family])
    return EmpiricalMeasureProxy(n, vals)


@dataclass
class ProbeResult:
    classification: str
    checkpoints: tuple
    averages: np.ndarray
    witness: tuple | None = None


def limit_set_probe(system, x, family, checkpoints, tau: float = 0.02) -> ProbeResult:
    """Classify the empirical measures of ``x`` as ``convergent`` or ``oscillating``.

    Oscillating means some test function's averages move by more than
    ``2 tau`` between consecutive checkpoints in the last third of the list.
    The classification is relative to the finite family and ``tau``.
    """
    cps = [int(c) for c in checkpoints]
    if any(b <= a for a, b in zip(cps, cps[1:])):
        raise ValidationError("checkpoints must increase")
    N = cps[-1]
    avgs = np.empty((len(cps), len(family)))
    idx = np.asarray(cps) - 1
    for i, f in enumerate(family):
        cs = np.cumsum(birkhoff_values(system, f, x, N))
        avgs[:, i] = cs[idx] / np.asarray(cps)
    start = max(len(cps) - max(len(cps) // 3, 2), 0)
    tail = avgs[start:]
    jumps = np.abs(np.diff(tail, axis=0))
    if jumps.size and jumps.max() > 2 * tau:
        j, i = np.unravel_index(int(np.argmax(jumps)), jumps.shape)
        return ProbeResult("oscillating", tuple(cps), avgs,
                           (int(i), cps[start + j], cps[start + j + 1]))
    return ProbeResult("convergent", tuple(cps), avgs)


def doubling_schedule(length: int, first: int = 1):
    out, L, total = [], first, 0
    while total < length:
        out.append(L)
        total += L
        L *= 2
    return out


def irregular_orbit_constructor(system: SymbolicSystem, proxy1, proxy2, schedule=None,
                                length: int = 1 << 16) -> np.ndarray:
    """Concatenate ever longer blocks copied cyclically from two proxy words.

    Blocks alternate between the proxies; block lengths follow ``schedule``
    (default: doubling, whole blocks until at least ``length`` symbols).
    Inadmissible seams get the shortest bridge word.  Hosts other than full shifts must be topologically mixing.
    """
    p1, p2 = system.check_word(proxy1), system.check_word(proxy2)
    if not system.is_full_shift and not system.is_mixing():
        raise NotMixing(f"{system.name} is not topologically mixing")
    for p in (p1, p2):
        if len(p) > 1 and not system.transition[p[-1], p[0]]:
            raise ValidationError(f"proxy {p} cannot be repeated periodically")
    sched = doubling_schedule(length) if schedule is None else [int(s) for s in schedule]
    if any(b <= a for a, b in zip(sched, sched[1:])):
        raise ValidationError("block lengths must increase strictly")
    parts = []
    for j, L in enumerate(sched):
        p = p1 if j % 2 == 0 else p2
        block = np.resize(p, L)
        if parts and not system.transition[parts[-1][-1], block[0]]:
            parts.append(system.bridge(int(parts[-1][-1]), int(block[0])))
        parts.append(block)
    parts = [q for q in parts if len(q)]
    return np.concatenate(parts)


# --------------------------------------------------------------------------
# exact log-counts of words by Birkhoff sum
# --------------------------------------------------------------------------

def _shift_add(dst, src, inc):
    """``dst[..., j + inc] = logaddexp(dst[..., j + inc], src[..., j])`` on the last axes."""
    sl_dst = tuple(slice(i, None) for i in inc)
    sl_src = tuple(slice(None, s - i if i else None) for s, i in zip(src.shape, inc))
    np.logaddexp(dst[sl_dst], src[sl_src], out=dst[sl_dst])


def log_counts_by_sums(system: SymbolicSystem, int_tables, n_values):
    """Log-number of admissible words carrying each vector of lattice sums.

    Parameters
    ----------
    system : SymbolicSystem
    int_tables : list of int arrays, each of shape ``(k,) * m`` (common depth)
    n_values : iterable of int
        Numbers of windows; a word with ``n`` windows has ``n + m - 1`` symbols.

    Returns
    -------
    dict
        ``n -> ndarray`` with one axis per table; entry ``j`` is
        ``log #{words : sums == j}`` (``-inf`` if none).
    """
    tabs = [np.asarray(t, dtype=np.int64) for t in int_tables]
    m = tabs[0].ndim
    if any(t.ndim != m for t in tabs):
        raise ValidationError("tables must share one depth")
    targets = sorted(set(int(v) for v in n_values))
    if not targets or targets[0] < 1:
        raise ValidationError("n must be positive")
    nmax = targets[-1]
    span = [int(t.max()) * nmax + 1 for t in tabs]
    slen = max(m - 1, 1)
    states = system.words(slen)
    code = {tuple(s): i for i, s in enumerate(states.tolist())}
    S = len(states)
    arr = np.full((S, *span), -np.inf)
    zero = (0,) * len(tabs)
    if m == 1:
        for i, s in enumerate(states):
            inc = tuple(int(t[s[0]]) for t in tabs)
            arr[(i, *inc)] = 0.0
        done = 1
    else:
        arr[(slice(None), *zero)] = 0.0
        done = 0
    trans = []
    for i, s in enumerate(states.tolist()):
        for a in np.flatnonzero(system.transition[s[-1]]):
            w = s + [int(a)]
            inc = tuple(int(t[tuple(w[-m:])]) for t in tabs)
            trans.append((i, code[tuple(w[-slen:])], inc))
    out = {}
    if done in targets:
        out[done] = logsumexp(arr, axis=0)
    while done < nmax:
        new = np.full_like(arr, -np.inf)
        for i, j, inc in trans:
            _shift_add(new[j], arr[i], inc)
        arr = new
        done += 1
        if done in targets:
            with np.errstate(divide="ignore"):
                out[done] = logsumexp(arr, axis=0)
    return out


def _full_shift_indicator_counts(k, n_values):
    """``log(C(n, j) (k-1)^(n-j))``: words with ``j`` occurrences of one symbol."""
    out = {}
    for n in n_values:
        j = np.arange(n + 1)
        out[n] = (gammaln(n + 1) - gammaln(j + 1) - gammaln(n - j + 1)
                  + (n - j) * math.log(k - 1))
    return out


def _is_symbol_indicator(system, phi):
    return (system.is_full_shift and phi.kind == "cylinder_indicator"
            and len(phi.word) == 1)


def level_log_counts(system: SymbolicSystem, phi: Potential, n_values):
    """``n -> (levels, log_counts)``: possible Birkhoff averages and their word counts."""
    if _is_symbol_indicator(system, phi):
        raw = _full_shift_indicator_counts(system.alphabet_size, n_values)
        return {n: (np.arange(n + 1) / n, v) for n, v in raw.items()}
    offset, step, T = phi.lattice()
    raw = log_counts_by_sums(system, [T], n_values)
    return {n: ((n * offset + step * np.arange(len(v))) / n, v) for n, v in raw.items()}


# --------------------------------------------------------------------------
# level-set entropy
# --------------------------------------------------------------------------

DEFAULT_WINDOW = 1e-3
DEFAULT_LEVEL_N = tuple(range(1000, 2001, 100))


@dataclass
class LevelSetEstimate:
    value: float
    n_schedule: tuple
    log_counts: np.ndarray
    window: float
    method: str
    flags: list = field(default_factory=list)

    def __float__(self):
        return float(self.value)


def level_set_entropy(system, phi: Potential, a: float, window: float = DEFAULT_WINDOW,
                      n_schedule=None, **sample_kw) -> LevelSetEstimate:
    """Entropy of the words whose Birkhoff average is within ``window`` of ``a``.

    Symbolic lattice potentials use exact log-counts; the estimate is the
    least-squares slope of ``log N(n)`` over the last half of the ``n``
    schedule.  Other systems fall back to leaf samples with the membership
    predicate re-evaluated at each ``n`` (see :func:`sampled_level_set_entropy`).
    """
    if window <= 0:
        raise ValidationError("window must be positive")
    if not isinstance(system, SymbolicSystem) or not phi.symbolic:
        return sampled_level_set_entropy(system, phi, a, window, n_schedule, **sample_kw)
    ns = tuple(DEFAULT_LEVEL_N if n_schedule is None else n_schedule)
    counts = level_log_counts(system, phi, ns)
    logN = []
    for n in ns:
        lev, lc = counts[n]
        sel = np.abs(lev - a) < window
        logN.append(float(logsumexp(lc[sel])) if sel.any() and np.isfinite(lc[sel]).any()
                    else -np.inf)
    logN = np.asarray(logN)
    flags = []
    ok = np.isfinite(logN)
    if not ok.any():
        return LevelSetEstimate(0.0, ns, logN, window, "exact_count", ["empty_level"])
    if not ok.all():
        flags.append("partially_empty")
    n_ok = np.asarray(ns)[ok]
    y = logN[ok]
    h = len(n_ok) // 2 if len(n_ok) >= 4 else 0
    if len(n_ok) - h >= 2:
        slope = float(np.polyfit(n_ok[h:], y[h:], 1)[0])
    else:
        slope = float(y[-1] / n_ok[-1])
    method = "log_binomial" if _is_symbol_indicator(system, phi) else "transfer_count"
    return LevelSetEstimate(max(slope, 0.0), ns, logN, window, method, flags)


def sampled_level_set_entropy(system, phi, a, window, n_schedule=None, x_grid=None,
                              delta=None, grid=None, eps=None) -> LevelSetEstimate:
    """Sample-based level-set entropy for systems without exact counts.

    On each leaf the sample is restricted, separately for every ``n``, to
    points whose ``n``-step average is within ``window`` of ``a``; the maximal
    (n, eps) u-separated count of that restriction gives ``N(n)``.
    """
    from .caratheodory import max_separated_count
    from .unstable import default_delta, default_schedule, default_x_grid, leaf_sample
    from .systems import leaf_segment

    sched = default_schedule(system, grid)
    ns = tuple(sched.n if n_schedule is None else n_schedule)
    eps = sched.eps[-1] if eps is None else eps
    delta = default_delta(system) if delta is None else delta
    x_grid = default_x_grid(system, 2) if x_grid is None else x_grid
    best = np.full(len(ns), -np.inf)
    for x in x_grid:
        seg = leaf_segment(system, x, delta)
        sample = leaf_sample(seg, sched.grid)
        metric = seg.bowen_metric()
        for i, n in enumerate(ns):
            if isinstance(system, SymbolicSystem):
                pts = sample.points
                if pts.shape[1] < n + phi.depth - 1:
                    continue
                avg = np.array([phi.values_along(p, n).mean() for p in pts])
            else:
                avg = np.zeros(len(sample))
                P = np.array(sample.points, dtype=float)
                for _ in range(n):
                    avg += phi.evaluate_points(P)
                    P = system.apply(P)
                avg /= n
            sub = sample.take(np.flatnonzero(np.abs(avg - a) < window))
            if sub.is_empty:
                continue
            c, _ = max_separated_count(sub, n, eps, metric)
            best[i] = max(best[i], math.log(c))
    ok = np.isfinite(best)
    if not ok.any():
        return LevelSetEstimate(0.0, ns, best, window, "sampled", ["empty_level"])
    n_ok = np.asarray(ns)[ok]
    y = best[ok]
    slope = float(np.polyfit(n_ok, y, 1)[0]) if len(n_ok) >= 2 else 0.0
    return LevelSetEstimate(max(slope, 0.0), ns, best, window, "sampled", [])


# --------------------------------------------------------------------------
# pressure and Legendre transform
# --------------------------------------------------------------------------

class _TransferData:
    """States (admissible depth-m words), successor structure and potential values."""

    def __init__(self, system: SymbolicSystem, phi: Potential):
        if not phi.symbolic:
            raise ValidationError("pressure needs a locally constant potential")
        m = phi.depth
        k = system.alphabet_size
        if phi.table.shape[0] != k:
            raise ValidationError("potential table does not match the alphabet")
        self.states = system.words(m)
        index = {tuple(s): i for i, s in enumerate(self.states.tolist())}
        S = len(self.states)
        A = np.zeros((S, S))
        for i, s in enumerate(self.states.tolist()):
            for b in np.flatnonzero(system.transition[s[-1]]):
                A[i, index[tuple(s[1:] + [int(b)])]] = 1.0
        ncomp, _ = connected_components(A, directed=True, connection="strong")
        if ncomp != 1:
            raise NotIrreducible("transition structure is not irreducible")
        self.A = A
        self.values = phi.table[tuple(self.states.T)]
        self.min_mean, self.max_mean = _cycle_mean_range(A, self.values)


def _karp(A, w):
    """Maximum cycle mean of vertex weights ``w`` (weight paid when leaving a vertex)."""
    S = len(w)
    D = np.full((S + 1, S), -np.inf)
    D[0] = 0.0
    for k in range(1, S + 1):
        # D[k][v] = max_u D[k-1][u] + w[u] over edges u -> v
        cand = np.where(A > 0, D[k - 1][:, None] + w[:, None], -np.inf)
        D[k] = cand.max(axis=0)
    with np.errstate(invalid="ignore"):
        ratios = (D[S][None, :] - D[:S]) / (S - np.arange(S))[:, None]
    ratios = np.where(np.isfinite(D[:S]), ratios, np.inf)
    vals = ratios.min(axis=0)
    vals = vals[np.isfinite(D[S])]
    return float(vals.max())


def _cycle_mean_range(A, w):
    return -_karp(A, -w), _karp(A, w)


def _power(M, transpose=False):
    """Leading eigenpair of a nonnegative irreducible matrix via power iteration on M + I."""
    B = (M.T if transpose else M) + np.eye(len(M))
    x = np.ones(len(M)) / len(M)
    lam = 0.0
    for _ in range(POWER_MAXITER):
        y = B @ x
        lam_new = float(y.sum() / x.sum())
        y /= y.sum()
        if np.abs(y - x).max() < POWER_TOL and abs(lam_new - lam) < POWER_TOL * lam_new:
            x = y
            lam = lam_new
            break
        x, lam = y, lam_new
    return lam - 1.0, x


def _tilted(td: _TransferData, q: float):
    shift = q * (td.max_mean if q >= 0 else td.min_mean)
    L = td.A * np.exp(q * td.values - shift)[:, None]
    return L, shift


def pressure_sft(system: SymbolicSystem, phi: Potential, q: float) -> float:
    """Topological pressure ``P(q phi)`` of a locally constant potential.

    Power iteration (tolerance 1e-12, at most 10000 steps) on the tilted
    transfer matrix over depth-``m`` words, normalised by the extreme cycle
    mean so its spectral radius is at least 1.
    """
    td = phi if isinstance(phi, _TransferData) else _TransferData(system, phi)
    L, shift = _tilted(td, q)
    rho, _ = _power(L)
    return float(math.log(rho) + shift)


def equilibrium_average(system: SymbolicSystem, phi: Potential, q: float) -> float:
    """``int phi d mu_q`` for the equilibrium state of ``q phi`` (equals ``P'(q)``)."""
    td = _TransferData(system, phi)
    L, _ = _tilted(td, q)
    _, v = _power(L)
    _, u = _power(L, transpose=True)
    wts = u * v
    return float(wts @ td.values / wts.sum())


def achievable_interval(system: SymbolicSystem, phi: Potential):
    """Range of ``int phi d mu`` over invariant measures (extreme cycle means)."""
    td = _TransferData(system, phi)
    return td.min_mean, td.max_mean


def legendre_spectrum(system: SymbolicSystem, phi: Potential, a: float) -> float:
    """``inf_{|q| <= 50} P(q phi) - q a`` by bounded scalar minimisation (xatol 1e-8)."""
    td = _TransferData(system, phi)
    lo, hi = td.min_mean, td.max_mean
    if a < lo - 1e-12 or a > hi + 1e-12:
        raise LevelUnreachable(f"level {a} outside achievable interval [{lo}, {hi}]")
    if hi - lo < 1e-12:
        return pressure_sft(system, td, 0.0)

    def f(q):
        return pressure_sft(system, td, q) - q * a

    res = minimize_scalar(f, bounds=(-Q_RANGE, Q_RANGE), method="bounded",
                          options={"xatol": 1e-8})
    vals = [res.fun, f(-Q_RANGE), f(Q_RANGE)]
    return float(max(min(vals), 0.0))


@dataclass
class SpectrumResult:
    grid: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    window: float
    status: list
    passed: bool
    two_sided: bool = False

    @property
    def gap(self) -> np.ndarray:
        return self.lhs - self.rhs

    def rows(self):
        for a, l, r, s in zip(self.grid, self.lhs, self.rhs, self.status):
            yield {"a": float(a), "lhs": float(l), "rhs": float(r), "gap": float(l - r),
                   "status": s}


def spectrum_identity_check(system: SymbolicSystem, phi: Potential, grid, window=DEFAULT_WINDOW,
                       n_schedule=None, tolerance: float = 0.03,
                       two_sided_tolerance: float = 0.05) -> SpectrumResult:
    """Level-set entropy against the variational value on a grid of levels.

    A level passes when ``lhs <= rhs + tolerance``; on full shifts it must
    also satisfy ``|lhs - rhs| <= two_sided_tolerance``.  Unreachable levels
    are marked ``level_unreachable`` and do not fail the check.
    """
    grid = np.asarray(grid, dtype=float)
    lhs = np.empty(len(grid))
    rhs = np.empty(len(grid))
    status = []
    two = system.is_full_shift
    for i, a in enumerate(grid):
        lhs[i] = level_set_entropy(system, phi, a, window, n_schedule).value
        try:
            rhs[i] = legendre_spectrum(system, phi, a)
        except LevelUnreachable:
            rhs[i] = np.nan
            status.append("level_unreachable")
            continue
        ok = lhs[i] <= rhs[i] + tolerance
        if two:
            ok = ok and abs(lhs[i] - rhs[i]) <= two_sided_tolerance
        status.append("PASS" if ok else "FAIL")
    passed = all(s != "FAIL" for s in status)
    return SpectrumResult(grid, lhs, rhs, window, status, passed, two)
