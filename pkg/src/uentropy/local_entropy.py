"""Local unstable entropy of leaf measures and the distribution-principle harnesses.

A :class:`LeafMeasure` lives on one leaf segment and answers Bowen-ball mass
queries exactly.  All masses are handled as logarithms so that depths far
beyond floating-point underflow (``n`` up to ``1e12`` on linear leaves) stay
usable.

The harnesses compare pointwise local entropies against the Bowen entropy of
a sample:

* :func:`distribution_principle_lower` -- local entropy ``>= s`` everywhere on
  ``Z`` should force ``h_B(Z) >= s``;
* :func:`distribution_principle_upper` -- local entropy ``<= s`` everywhere on
  ``Z`` should force ``h_B(Z) <= s``;
* :func:`subset_variational_gap` -- the Bowen entropy of a compact set against
  the best integrated local entropy over a family of measures carried by it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial.legendre import leggauss

from .caratheodory import SubsetSample, bowen_entropy_estimate
from .errors import DomainError, ValidationError
from .measures import MarkovMeasure
from .systems import CylinderLeaf, LinearLeaf, as_word
from .unstable import default_schedule

TOLERANCE = 0.05
HYPOTHESIS_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class LeafMeasure:
    """Probability measure on a leaf segment with exact ball masses.

    Build one with :meth:`lebesgue`, :meth:`from_density`, :meth:`cylinder` or
    :meth:`atomic`.
    """

    seg: object
    kind: str
    density: Polynomial | None = None
    markov: MarkovMeasure | None = None
    atoms: np.ndarray | None = None
    atom_weights: np.ndarray | None = None
    _norm: float = 1.0

    # constructors ------------------------------------------------------
    @classmethod
    def lebesgue(cls, seg: LinearLeaf) -> "LeafMeasure":
        """Normalised arclength on a linear leaf segment."""
        if not isinstance(seg, LinearLeaf):
            raise ValidationError("leaf Lebesgue measure needs a linear leaf")
        return cls(seg, "leaf_lebesgue")

    @classmethod
    def from_density(cls, seg: LinearLeaf, poly) -> "LeafMeasure":
        """Polynomial density in the chart coordinate ``t`` (normalised here)."""
        if not isinstance(seg, LinearLeaf):
            raise ValidationError("densities live on linear leaves")
        p = poly if isinstance(poly, Polynomial) else Polynomial(poly)
        probe = p(np.linspace(-seg.radius, seg.radius, 2001))
        if (probe < -1e-12).any():
            raise ValidationError("density must be nonnegative on the segment")
        P = p.integ()
        Z = float(P(seg.radius) - P(-seg.radius))
        if not Z > 0:
            raise ValidationError("density has zero mass on the segment")
        return cls(seg, "density", density=p, _norm=Z)

    @classmethod
    def cylinder(cls, seg: CylinderLeaf, mu: MarkovMeasure) -> "LeafMeasure":
        """Markov measure conditioned on the leaf cylinder."""
        if not isinstance(seg, CylinderLeaf):
            raise ValidationError("cylinder weights live on symbolic leaves")
        norm = 1.0 if len(seg.prefix) == 0 else float(np.exp(mu.log_cylinder(seg.prefix)))
        if not norm > 0:
            raise ValidationError("measure gives the leaf cylinder zero mass")
        return cls(seg, "cylinder_weights", markov=mu, _norm=norm)

    @classmethod
    def atomic(cls, seg, points, weights=None) -> "LeafMeasure":
        """Finitely many atoms on the segment (point masses, periodic orbits)."""
        if isinstance(seg, LinearLeaf):
            pts = np.atleast_1d(seg.coordinates(np.atleast_2d(points)))
        else:
            pts = [seg._check(p) for p in (points if isinstance(points, list) else [points])]
            L = min(len(p) for p in pts)
            pts = np.stack([p[:L] for p in pts])
        w = np.full(len(pts), 1.0 / len(pts)) if weights is None else np.asarray(weights, float)
        if not math.isclose(w.sum(), 1.0, abs_tol=1e-12):
            raise ValidationError("atom weights must sum to 1")
        return cls(seg, "atomic", atoms=pts, atom_weights=w)

    # mass queries --------------------------------------------------------
    def _line_log_masses(self, t, ns, eps):
        seg = self.seg
        delta = seg.radius
        log_r = math.log(eps) - (ns - 1) * math.log(seg.rate)
        r = np.exp(log_r)
        if self.kind == "atomic":
            inside = np.abs(self.atoms[None, :] - t) <= r[:, None]
            with np.errstate(divide="ignore"):
                return np.log((inside * self.atom_weights).sum(axis=1)), np.zeros(len(ns), bool)
        left, right = t + delta, delta - t          # room to each end
        if min(left, right) < -1e-12:
            raise DomainError("point is off the segment")
        left, right = max(left, 0.0), max(right, 0.0)
        cl, cr = r > left, r > right
        trunc = cl | cr
        lo = np.where(cl, -delta, t - r)
        hi = np.where(cr, delta, t + r)
        with np.errstate(divide="ignore"):
            log_len = np.where(
                cl & cr, math.log(2 * delta),
                np.where(cl, np.logaddexp(math.log(left) if left > 0 else -np.inf, log_r),
                         np.where(cr, np.logaddexp(math.log(right) if right > 0 else -np.inf,
                                                   log_r),
                                  math.log(2.0) + log_r)))
        if self.kind == "leaf_lebesgue":
            return log_len - math.log(2 * delta), trunc
        # polynomial density: Gauss-Legendre is exact for the polynomial degree
        deg = self.density.degree()
        x, w = leggauss(max(deg // 2 + 1, 1))
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        vals = self.density(mid[:, None] + half[:, None] * x[None, :]) @ w / 2.0
        with np.errstate(divide="ignore"):
            return log_len + np.log(vals) - math.log(self._norm), trunc

    def _cylinder_log_masses(self, x, ns, eps):
        seg = self.seg
        L = np.array([seg.class_depth(int(n), eps) for n in ns])
        c = len(seg.prefix)
        if self.kind == "atomic":
            out = np.empty(len(ns))
            for i, Li in enumerate(L):
                if Li > len(x) or Li > self.atoms.shape[1]:
                    raise DomainError("word too short for this Bowen-ball depth")
                hit = np.all(self.atoms[:, :Li] == x[:Li], axis=1) if Li > 0 else np.ones(
                    len(self.atoms), bool)
                with np.errstate(divide="ignore"):
                    out[i] = math.log(self.atom_weights[hit].sum()) if hit.any() else -np.inf
            return out, L <= c
        if L.max() > len(x):
            raise DomainError(
                f"word of length {len(x)} too short for Bowen-ball depth {int(L.max())}")
        pref = self.markov.log_prefix_masses(x)
        whole = L <= c
        vals = np.where(whole, 0.0, pref[np.maximum(L, 1) - 1] - math.log(self._norm))
        return vals, whole

    def log_ball_masses(self, x, ns, eps):
        """``log mu(B^u_n(x, eps))`` for every ``n`` in ``ns``.

        Returns
        -------
        log_mass : ndarray
        truncated : ndarray of bool
            Ball reaches past the segment (line) or covers the whole leaf
            cylinder (symbolic).
        """
        ns = np.atleast_1d(np.asarray(ns, dtype=float))
        if (ns < 1).any() or eps <= 0:
            raise ValidationError("need n >= 1 and eps > 0")
        if isinstance(self.seg, LinearLeaf):
            t = float(self.seg.coordinates(np.asarray(x, dtype=float)))
            return self._line_log_masses(t, ns, eps)
        w = self.seg._check(x)
        return self._cylinder_log_masses(w, ns, eps)

    def log_ball_masses_at(self, t: float, ns, eps):
        """Same as :meth:`log_ball_masses` but from a chart coordinate (linear leaves)."""
        return self._line_log_masses(float(t), np.atleast_1d(np.asarray(ns, float)), eps)

    def restrict(self, radius: float) -> "LeafMeasure":
        """Normalised restriction to the concentric segment of smaller radius."""
        if isinstance(self.seg, LinearLeaf):
            if not 0 < radius <= self.seg.radius:
                raise ValidationError("restriction must shrink the segment")
            sub = LinearLeaf(self.seg.system, self.seg.base_point, radius)
            if self.kind == "leaf_lebesgue":
                return LeafMeasure.lebesgue(sub)
            if self.kind == "density":
                return LeafMeasure.from_density(sub, self.density)
        elif self.kind == "cylinder_weights":
            sub = CylinderLeaf(self.seg.system, self.seg.base_point, radius)
            if sub.depth < self.seg.depth:
                raise ValidationError("restriction must shrink the segment")
            return LeafMeasure.cylinder(sub, self.markov)
        raise ValidationError(f"restriction not available for kind {self.kind}")


def bowen_ball_mass(mu: LeafMeasure, x, n: int, eps: float) -> float:
    """``mu(B^u_n(x, eps))``; boundary-truncated balls give the truncated mass."""
    lm, _ = mu.log_ball_masses(x, [n], eps)
    return float(np.exp(lm[0]))


# --------------------------------------------------------------------------
# local entropy
# --------------------------------------------------------------------------

@dataclass
class LocalEntropy:
    """Tail bounds of ``a_n = -(1/n) log mu(B^u_n(x, eps))``."""

    lower: float
    upper: float
    traces: dict
    n_schedule: tuple
    eps_schedule: tuple
    flags: list = field(default_factory=list)

    def __iter__(self):
        yield self.lower
        yield self.upper


def default_local_schedule(mu: LeafMeasure, x=None):
    """Scales and depths for local entropy.

    Linear leaves use geometric depths up to ``1e12`` (masses are logs).
    Symbolic leaves use depths up to the available word length.
    """
    if isinstance(mu.seg, LinearLeaf):
        return (0.05, 0.02), tuple(int(10 ** k) for k in range(1, 13))
    base = mu.seg.system.metric_base
    L = len(as_word(x)) if x is not None else 2000
    m = mu.seg.system.depth_for_radius(base)
    top = max(L - m + 1, 2)
    ns = np.unique(np.linspace(max(top // 10, 1), top, 20).astype(int))
    return (base,), tuple(int(v) for v in ns)


def _tail(v):
    return v[len(v) // 2:] if len(v) >= 2 else v


def local_unstable_entropy(mu: LeafMeasure, x, eps_schedule=None, n_schedule=None
                           ) -> LocalEntropy:
    """Lower and upper local unstable entropy of ``mu`` at ``x``.

    For each ``eps`` the trace ``a_n`` is computed over the ``n`` schedule; the
    lower (upper) value is the minimum (maximum) over the last half of the
    schedule at the smallest ``eps``.  A zero mass truncates the trace at that
    ``n`` and sets the flag ``zero_mass``.
    """
    de, dn = default_local_schedule(mu, x)
    eps_schedule = tuple(de if eps_schedule is None else eps_schedule)
    n_schedule = tuple(dn if n_schedule is None else n_schedule)
    flags: list = []
    traces = {}
    ns = np.asarray(n_schedule, dtype=float)
    for eps in eps_schedule:
        lm, trunc = mu.log_ball_masses(x, ns, eps)
        if trunc.any() and isinstance(mu.seg, LinearLeaf):
            if "boundary_truncated" not in flags:
                flags.append("boundary_truncated")
        a = -lm / ns
        if not np.isfinite(a).all():
            if "zero_mass" not in flags:
                flags.append("zero_mass")
            a = a[: int(np.argmax(~np.isfinite(a)))]
        traces[eps] = a
    a = _tail(traces[eps_schedule[-1]])
    if len(a) == 0:
        return LocalEntropy(math.inf, math.inf, traces, n_schedule, eps_schedule, flags)
    return LocalEntropy(float(a.min()), float(a.max()), traces, n_schedule, eps_schedule, flags)


@dataclass
class LocalEntropyField:
    points: list
    lower: np.ndarray
    upper: np.ndarray
    eps_schedule: tuple
    n_schedule: tuple
    flags: list = field(default_factory=list)


def local_entropy_field(mu: LeafMeasure, points, eps_schedule=None, n_schedule=None
                        ) -> LocalEntropyField:
    """Local entropies over many points."""
    lo, hi, flags = [], [], []
    es = ns = None
    for p in points:
        le = local_unstable_entropy(mu, p, eps_schedule, n_schedule)
        lo.append(le.lower)
        hi.append(le.upper)
        es, ns = le.eps_schedule, le.n_schedule
        for f in le.flags:
            if f not in flags:
                flags.append(f)
    return LocalEntropyField(list(points), np.asarray(lo), np.asarray(hi), es, ns, flags)


# --------------------------------------------------------------------------
# Vitali selection
# --------------------------------------------------------------------------

def _ball_extent(seg, center, n, eps):
    """(kind-specific) description of a Bowen ball: interval or cylinder prefix."""
    if isinstance(seg, LinearLeaf):
        t = float(seg.coordinates(np.asarray(center, dtype=float)))
        r = seg.ball_radius(n, eps)
        return ("interval", t, r)
    w = seg._check(center)
    L = seg.class_depth(n, eps)
    if L > len(w):
        raise DomainError("word too short for the ball depth")
    return ("cylinder", tuple(int(v) for v in w[:L]), seg.system.metric_base ** L)


def _disjoint(a, b):
    if a[0] == "interval":
        return abs(a[1] - b[1]) > a[2] + b[2]
    p, q = a[1], b[1]
    m = min(len(p), len(q))
    return p[:m] != q[:m]


def vitali_select(seg, balls):
    """Disjoint subfamily whose 3-eps enlargements cover every input ball.

    Parameters
    ----------
    seg : LeafSegment
    balls : list of (center, n, eps)

    Returns
    -------
    list of int
        Indices of the selected balls, largest radius first (ties by index).
    """
    ext = [_ball_extent(seg, c, n, e) for c, n, e in balls]
    order = sorted(range(len(balls)), key=lambda i: (-ext[i][2], i))
    chosen = []
    for i in order:
        if all(_disjoint(ext[i], ext[j]) for j in chosen):
            chosen.append(i)
    return chosen


def enlarged_ball_contains(seg, big, small) -> bool:
    """Is Bowen ball ``small`` inside the 3-eps enlargement of ``big`` (probe-free check)?"""
    c, n, e = big
    B = _ball_extent(seg, c, n, 3 * e)
    S = _ball_extent(seg, *small)
    if B[0] == "interval":
        return abs(S[1] - B[1]) + S[2] <= B[2] * (1 + 1e-12)
    return len(B[1]) <= len(S[1]) and S[1][: len(B[1])] == B[1]


# --------------------------------------------------------------------------
# harnesses
# --------------------------------------------------------------------------

@dataclass
class Verdict:
    """One row of a theorem check."""

    name: str
    status: str
    lhs: float
    rhs: float
    tolerance: float
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "PASS"


def _hypothesis_points(mu: LeafMeasure, Z: SubsetSample, limit: int = 64):
    """Sample points used to check pointwise hypotheses (middle half of line segments)."""
    if isinstance(mu.seg, LinearLeaf):
        t = mu.seg.coordinates(Z.points) if Z.coords is None else Z.coords
        idx = np.flatnonzero(np.abs(t) <= mu.seg.radius / 2)
        if idx.size == 0:
            idx = np.arange(len(Z))
    else:
        idx = np.arange(len(Z))
    if idx.size > limit:
        idx = idx[np.linspace(0, idx.size - 1, limit).astype(int)]
    return idx


def _extend(seg, w, length):
    """Extend a word to ``length`` symbols with the smallest admissible continuation."""
    w = as_word(w)
    if len(w) >= length:
        return w
    T = seg.system.transition
    out = list(w)
    while len(out) < length:
        out.append(int(np.flatnonzero(T[out[-1]])[0]))
    return np.asarray(out, dtype=np.int64)


def _pointwise(mu, Z, eps_schedule, n_schedule, limit=64):
    idx = _hypothesis_points(mu, Z, limit)
    vals = []
    for i in idx:
        p = Z.points[i]
        if isinstance(mu.seg, CylinderLeaf):
            _, ns = default_local_schedule(mu, np.zeros(2000))
            p = _extend(mu.seg, p, 2000)
            le = local_unstable_entropy(mu, p, eps_schedule, n_schedule or ns)
        else:
            le = local_unstable_entropy(mu, p, eps_schedule, n_schedule)
        vals.append(le.lower)
    return np.asarray(vals), idx


def _z_estimate(mu, Z, schedule):
    sched = schedule or default_schedule(mu.seg.system)
    rep = bowen_entropy_estimate(Z, sched.cover_pairs(), mu.seg.bowen_metric(),
                                 sched.depth_step)
    return rep


def distribution_principle_lower(mu: LeafMeasure, Z: SubsetSample, s: float, *,
                                 schedule=None, eps_schedule=None, n_schedule=None,
                                 tolerance: float = TOLERANCE, name: str = "") -> Verdict:
    """Check that local entropy ``>= s`` on ``Z`` comes with ``h_B(Z) >= s - tol``."""
    h, idx = _pointwise(mu, Z, eps_schedule, n_schedule)
    rep = _z_estimate(mu, Z, schedule)
    details = {"min_local_entropy": float(h.min()) if h.size else math.nan,
               "points_checked": int(idx.size), "resolution": Z.resolution,
               "flags": rep.flags, "method": rep.method}
    if h.size and h.min() < s - HYPOTHESIS_TOL:
        return Verdict(name, "hypothesis_not_met", rep.s_star, s, tolerance, details)
    status = "PASS" if rep.s_star >= s - tolerance else "FAIL"
    return Verdict(name, status, rep.s_star, s, tolerance, details)


def distribution_principle_upper(mu: LeafMeasure, Z: SubsetSample, s: float, *,
                                 schedule=None, eps_schedule=None, n_schedule=None,
                                 tolerance: float = TOLERANCE, name: str = "") -> Verdict:
    """Check that local entropy ``<= s`` on ``Z`` comes with ``h_B(Z) <= s + tol``."""
    h, idx = _pointwise(mu, Z, eps_schedule, n_schedule)
    rep = _z_estimate(mu, Z, schedule)
    details = {"max_local_entropy": float(h.max()) if h.size else math.nan,
               "points_checked": int(idx.size), "resolution": Z.resolution,
               "flags": rep.flags, "method": rep.method}
    if h.size and h.max() > s + HYPOTHESIS_TOL:
        return Verdict(name, "hypothesis_not_met", rep.s_star, s, tolerance, details)
    status = "PASS" if rep.s_star <= s + tolerance else "FAIL"
    return Verdict(name, status, rep.s_star, s, tolerance, details)


def integrated_local_entropy(mu: LeafMeasure, n_nodes: int = 16, n_words: int = 48,
                             word_length: int = 2000, seed: int = 42) -> float:
    """``int lower-local-entropy d mu`` by quadrature over the support.

    Gauss-Legendre nodes weighted by the density on linear leaves, the atoms
    themselves for atomic measures, and ``n_words`` seeded ``mu``-random words
    for cylinder measures.
    """
    seg = mu.seg
    if mu.kind == "atomic":
        if isinstance(seg, LinearLeaf):
            vals = [local_unstable_entropy(mu, seg.chart(t)).lower for t in mu.atoms]
        else:
            vals = []
            for a in mu.atoms:
                le = local_unstable_entropy(mu, a, (seg.system.metric_base,),
                                            tuple(range(1, len(a) // 2)))
                vals.append(le.lower)
        return float(np.dot(mu.atom_weights, vals))
    if isinstance(seg, LinearLeaf):
        x, w = leggauss(n_nodes)
        t = x * seg.radius
        dens = np.ones_like(t) if mu.kind == "leaf_lebesgue" else mu.density(t) / mu._norm * (
            2 * seg.radius)
        vals = np.array([local_unstable_entropy(mu, seg.chart(ti)).lower for ti in t])
        return float(np.sum(w * dens * vals) / np.sum(w * dens))
    rng = np.random.default_rng(seed)
    vals = []
    c = len(seg.prefix)
    for _ in range(n_words):
        if c:
            tail = mu.markov.sample_word(word_length - c + 1, rng, start=int(seg.prefix[-1]))
            word = np.concatenate([seg.prefix, tail[1:]])
        else:
            word = mu.markov.sample_word(word_length, rng)
        vals.append(local_unstable_entropy(mu, word).lower)
    return float(np.mean(vals))


@dataclass
class GapResult:
    estimate: float
    lower_bound: float
    per_measure: dict
    status: str
    tolerance: float
    flags: list = field(default_factory=list)


def subset_variational_gap(K: SubsetSample, family, *, seg=None, schedule=None,
                           tolerance: float = TOLERANCE) -> GapResult:
    """Bowen entropy of ``K`` against ``max_mu int lower-local-entropy d mu``.

    The lower bound must not exceed the estimate by more than ``tolerance``.
    """
    if seg is None:
        if not family:
            raise ValidationError("pass seg when the family is empty")
        seg = family[0].seg
    sched = schedule or default_schedule(seg.system)
    rep = bowen_entropy_estimate(K, sched.cover_pairs(), seg.bowen_metric(), sched.depth_step)
    per = {}
    for mu in family:
        label = mu.markov.name if mu.markov is not None else mu.kind
        per[label] = integrated_local_entropy(mu)
    lower = max(per.values()) if per else 0.0
    status = "PASS" if lower <= rep.s_star + tolerance else "FAIL"
    return GapResult(rep.s_star, lower, per, status, tolerance, rep.flags)
