"""Dynamical systems: one-sided subshifts of finite type and toral automorphisms.

Two families are supported.

* :class:`SymbolicSystem` -- a one-sided subshift of finite type given by a 0/1
  transition matrix.  Points are finite words (integer arrays) standing in for
  the cylinders they determine, and ``d(x, y) = base**k`` where ``k`` is the
  first index of disagreement.  The whole space is a single unstable leaf.
* :class:`ToralAutomorphism` -- ``x -> A x + b (mod 1)`` on the torus with an
  integer matrix of determinant +-1 and an optional translation (used to build
  the product of the cat map with an irrational rotation).

Leaf segments (:class:`LinearLeaf`, :class:`CylinderLeaf`) carry the intrinsic
unstable metric ``d^u`` and the Bowen u-metric ``d^u_n``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError, UnsupportedConfiguration, ValidationError

EIGEN_TOL = 1e-9
CHART_TOL = 1e-9
MAX_TORAL_DELTA = 0.25


# --------------------------------------------------------------------------
# words
# --------------------------------------------------------------------------

def as_word(w) -> np.ndarray:
    """Convert a string of digits, a sequence or an array into an int array."""
    if isinstance(w, str):
        w = w.strip()
        if not w.isdigit() and w != "":
            raise ValidationError(f"word {w!r} contains non-digit symbols")
        return np.fromiter((int(c) for c in w), dtype=np.int64, count=len(w))
    arr = np.asarray(w, dtype=np.int64)
    if arr.ndim != 1:
        raise ValidationError("a word must be one-dimensional")
    return arr


def word_str(w) -> str:
    """Render a word as a digit string (alphabets up to 10 symbols)."""
    return "".join(str(int(c)) for c in np.asarray(w).ravel())


# --------------------------------------------------------------------------
# symbolic systems
# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SymbolicSystem:
    """One-sided subshift of finite type.

    Parameters
    ----------
    transition : array_like
        ``k x k`` 0/1 matrix; ``transition[a, b] == 1`` allows ``b`` after ``a``.
    metric_base : float
        Base of the cylinder metric, in (0, 1).
    name : str
        Label used in reports.
    """

    transition: np.ndarray
    metric_base: float = 0.5
    name: str = "sft"

    def __post_init__(self):
        T = np.asarray(self.transition)
        if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] < 1:
            raise ValidationError("transition must be a square k x k matrix")
        if not np.isin(T, (0, 1)).all():
            raise ValidationError("transition must be a 0/1 matrix")
        T = T.astype(np.int64)
        if (T.sum(axis=1) == 0).any() or (T.sum(axis=0) == 0).any():
            raise ValidationError(
                "transition has an all-zero row or column (every symbol must be extendable)")
        if not 0.0 < self.metric_base < 1.0:
            raise ValidationError("metric_base must lie in (0, 1)")
        T.setflags(write=False)
        object.__setattr__(self, "transition", T)

    @property
    def alphabet_size(self) -> int:
        return self.transition.shape[0]

    @property
    def is_full_shift(self) -> bool:
        return bool(self.transition.all())

    # membership ---------------------------------------------------------
    def is_admissible(self, w) -> bool:
        w = as_word(w)
        if w.size == 0:
            return True
        if w.min() < 0 or w.max() >= self.alphabet_size:
            return False
        return bool(self.transition[w[:-1], w[1:]].all())

    def check_word(self, w) -> np.ndarray:
        w = as_word(w)
        if not self.is_admissible(w):
            raise ValidationError(f"word {word_str(w)} is not admissible for {self.name}")
        return w

    def contains(self, points) -> np.ndarray:
        """Vectorised admissibility for a 2-D array of equal-length words."""
        P = np.atleast_2d(np.asarray(points, dtype=np.int64))
        ok = (P >= 0).all(axis=1) & (P < self.alphabet_size).all(axis=1)
        if P.shape[1] > 1:
            Pc = np.clip(P, 0, self.alphabet_size - 1)
            ok &= self.transition[Pc[:, :-1], Pc[:, 1:]].all(axis=1)
        return ok

    # dynamics and metric -------------------------------------------------
    def apply(self, w) -> np.ndarray:
        """Shift map (drops the first symbol)."""
        return as_word(w)[1:]

    def distance(self, y, z) -> float:
        y, z = as_word(y), as_word(z)
        k = first_disagreement(y, z)
        return 0.0 if k is None else self.metric_base ** k

    def depth_for_radius(self, r: float) -> int:
        """Smallest m >= 0 with ``base**m <= r`` (m = 0 when r >= 1)."""
        if r <= 0:
            raise DomainError("radius must be positive")
        if r >= 1.0:
            return 0
        m = int(math.ceil(math.log(r) / math.log(self.metric_base) - 1e-12))
        return max(m, 1)

    # counting -----------------------------------------------------------
    def count_words(self, n: int) -> int:
        """Exact number of admissible words of length ``n`` (Python integers)."""
        if n <= 0:
            return 1
        T = [[int(v) for v in row] for row in self.transition]
        vec = [1] * self.alphabet_size
        for _ in range(n - 1):
            vec = [sum(T[a][b] * vec[b] for b in range(len(vec))) for a in range(len(vec))]
        return sum(vec)

    def words(self, n: int, prefix=None) -> np.ndarray:
        """All admissible words of length ``n`` (optionally extending ``prefix``)
        in lexicographic order, as an ``(count, n)`` int array."""
        k = self.alphabet_size
        if prefix is None or len(prefix) == 0:
            cur = np.arange(k, dtype=np.int64)[:, None]
        else:
            cur = self.check_word(prefix)[None, :].copy()
        if n < cur.shape[1]:
            raise DomainError("n shorter than prefix")
        if n == 0:
            return np.zeros((1, 0), dtype=np.int64)
        while cur.shape[1] < n:
            last = cur[:, -1]
            rows, syms = np.nonzero(self.transition[last])
            cur = np.concatenate([cur[rows], syms[:, None]], axis=1)
        return cur

    def spectral_radius(self) -> float:
        return float(np.max(np.abs(np.linalg.eigvals(self.transition.astype(float)))))

    def topological_entropy(self) -> float:
        return math.log(self.spectral_radius())

    def is_irreducible(self) -> bool:
        from scipy.sparse.csgraph import connected_components
        n, _ = connected_components(self.transition, directed=True, connection="strong")
        return n == 1

    def mixing_constant(self) -> int | None:
        """Smallest p with all entries of ``transition**p`` positive, or None."""
        k = self.alphabet_size
        B = (self.transition > 0).astype(np.int64)
        P = B.copy()
        for p in range(1, (k - 1) ** 2 + 2):
            if P.all():
                return p
            P = ((P @ B) > 0).astype(np.int64)
        return None

    def is_mixing(self) -> bool:
        return self.mixing_constant() is not None

    def bridge(self, a: int, b: int, min_len: int = 0) -> np.ndarray:
        """Shortest word ``u`` (length >= min_len) with ``a u b`` admissible."""
        k = self.alphabet_size
        T = self.transition
        # layered BFS: frontier[s] = a path from a ending in s
        paths = {a: []}
        for length in range(0, k * k + min_len + 2):
            if length >= min_len:
                for s, path in sorted(paths.items()):
                    if T[s, b]:
                        return np.asarray(path, dtype=np.int64)
            nxt = {}
            for s, path in sorted(paths.items()):
                for t in range(k):
                    if T[s, t] and t not in nxt:
                        nxt[t] = path + [t]
            paths = nxt
        raise DomainError(f"no admissible bridge from {a} to {b}")

    def random_word(self, n: int, rng=None) -> np.ndarray:
        """Uniform-branching random admissible word (for base points)."""
        rng = np.random.default_rng(rng)
        w = np.empty(n, dtype=np.int64)
        w[0] = rng.integers(self.alphabet_size)
        for i in range(1, n):
            opts = np.flatnonzero(self.transition[w[i - 1]])
            w[i] = opts[rng.integers(len(opts))]
        return w


def first_disagreement(y: np.ndarray, z: np.ndarray):
    """Index of the first differing symbol, None for identical words.

    Words of different lengths that agree on their common prefix disagree at
    the common length.
    """
    m = min(len(y), len(z))
    diff = np.flatnonzero(y[:m] != z[:m])
    if diff.size:
        return int(diff[0])
    if len(y) == len(z):
        return None
    return m


def full_shift(k: int = 2, metric_base: float = 0.5) -> SymbolicSystem:
    return SymbolicSystem(np.ones((k, k), dtype=np.int64), metric_base, name=f"full_{k}_shift")


def sft(k: int, forbidden: Sequence[str] = (), metric_base: float = 0.5,
        name: str | None = None) -> SymbolicSystem:
    """Subshift defined by forbidden two-letter words such as ``"11"``."""
    T = np.ones((k, k), dtype=np.int64)
    for f in forbidden:
        w = as_word(f)
        if len(w) == 1:
            raise UnsupportedConfiguration("forbidden single symbols: shrink the alphabet instead")
        if len(w) != 2:
            raise UnsupportedConfiguration(
                f"forbidden word {f!r}: only length-2 forbidden words are supported")
        if w.max() >= k:
            raise ValidationError(f"forbidden word {f!r} uses a symbol outside the alphabet")
        T[w[0], w[1]] = 0
    label = name or ("sft_" + "_".join(forbidden) if forbidden else f"full_{k}_shift")
    return SymbolicSystem(T, metric_base, name=label)


def golden_mean_shift(metric_base: float = 0.5) -> SymbolicSystem:
    return sft(2, ["11"], metric_base, name="golden_mean")


# --------------------------------------------------------------------------
# toral automorphisms
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Splitting:
    """Eigen-classification of a linear map into stable, center, unstable parts."""

    moduli: np.ndarray
    stable: np.ndarray
    center: np.ndarray
    unstable: np.ndarray

    @property
    def dims(self):
        return len(self.stable), len(self.center), len(self.unstable)


@dataclass(frozen=True, eq=False)
class ToralAutomorphism:
    """Affine map ``x -> A x + b (mod 1)`` on the d-torus.

    Parameters
    ----------
    matrix : array_like
        Integer ``d x d`` matrix with determinant +-1.
    translation : array_like, optional
        Translation vector ``b``; used for products with rotations.
    name : str
    """

    matrix: np.ndarray
    translation: np.ndarray | None = None
    name: str = "toral"
    splitting: Splitting = field(init=False, repr=False)

    def __post_init__(self):
        A = np.asarray(self.matrix)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValidationError("matrix must be square")
        if not np.all(np.asarray(A, dtype=float) == np.round(np.asarray(A, dtype=float))):
            raise ValidationError("matrix must have integer entries")
        A = np.asarray(np.round(np.asarray(A, dtype=float)), dtype=np.int64)
        det = round(float(np.linalg.det(A)))
        if abs(det) != 1:
            raise ValidationError(
                f"invariant |det(matrix)| = 1 violated (det = {det}); not a torus automorphism")
        d = A.shape[0]
        b = np.zeros(d) if self.translation is None else np.asarray(self.translation, float)
        if b.shape != (d,):
            raise ValidationError("translation must have one entry per dimension")
        A.setflags(write=False)
        b = np.mod(b, 1.0)
        b.setflags(write=False)
        object.__setattr__(self, "matrix", A)
        object.__setattr__(self, "translation", b)
        w = np.linalg.eigvals(A.astype(float))
        mod = np.abs(w)
        order = np.argsort(mod)
        w, mod = w[order], mod[order]
        stab = w[mod < 1 - EIGEN_TOL]
        cent = w[np.abs(mod - 1) <= EIGEN_TOL]
        unst = w[mod > 1 + EIGEN_TOL]
        object.__setattr__(self, "splitting", Splitting(mod, stab, cent, unst))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def unstable_dim(self) -> int:
        return len(self.splitting.unstable)

    def _require_1d_unstable(self):
        if self.unstable_dim != 1:
            raise UnsupportedConfiguration(
                f"dim E^u = {self.unstable_dim}; only one-dimensional unstable leaves are supported")

    @property
    def unstable_rate(self) -> float:
        """Modulus of the (single) expanding eigenvalue."""
        self._require_1d_unstable()
        return float(abs(self.splitting.unstable[0]))

    @property
    def unstable_eigenvalue(self) -> float:
        self._require_1d_unstable()
        lam = self.splitting.unstable[0]
        if abs(lam.imag) > EIGEN_TOL:
            raise UnsupportedConfiguration("complex unstable eigenvalue")
        return float(lam.real)

    @property
    def unstable_direction(self) -> np.ndarray:
        """Unit eigenvector spanning E^u (first nonzero entry positive)."""
        lam = self.unstable_eigenvalue
        A = self.matrix.astype(float)
        _, _, vh = np.linalg.svd(A - lam * np.eye(self.dim))
        v = vh[-1]
        v = v / np.linalg.norm(v)
        if v[np.flatnonzero(np.abs(v) > 1e-12)[0]] < 0:
            v = -v
        return v

    @property
    def unstable_functional(self) -> np.ndarray:
        """Left eigenvector ``l`` with ``l @ v_u == 1``; reads E^u coordinates."""
        lam = self.unstable_eigenvalue
        A = self.matrix.astype(float)
        _, _, vh = np.linalg.svd(A.T - lam * np.eye(self.dim))
        ell = vh[-1]
        return ell / (ell @ self.unstable_direction)

    def topological_unstable_entropy(self) -> float:
        """Sum of log-moduli of expanding eigenvalues."""
        return float(np.sum(np.log(np.abs(self.splitting.unstable))))

    def contains(self, points) -> np.ndarray:
        P = np.atleast_2d(np.asarray(points, dtype=float))
        return (P.shape[1] == self.dim) & np.all((P >= 0) & (P < 1), axis=1)

    def apply(self, x) -> np.ndarray:
        """One step on the torus; works on a point or an array of points."""
        x = np.asarray(x, dtype=float)
        y = x @ self.matrix.T.astype(float) + self.translation
        return np.mod(y, 1.0)


def cat_map() -> ToralAutomorphism:
    return ToralAutomorphism(np.array([[2, 1], [1, 1]]), name="cat_map")


GOLDEN_ROTATION = (math.sqrt(5.0) - 1.0) / 2.0


def cat_rotation_product(alpha: float = GOLDEN_ROTATION) -> ToralAutomorphism:
    """Cat map on T^2 times the circle rotation by ``alpha``."""
    A = np.array([[2, 1, 0], [1, 1, 0], [0, 0, 1]])
    return ToralAutomorphism(A, translation=np.array([0.0, 0.0, alpha]), name="cat_x_rotation")


def automorphism_3d() -> ToralAutomorphism:
    """``[[2,1,0],[1,1,0],[0,0,1]]``: cat map with an explicit neutral direction."""
    return ToralAutomorphism(np.array([[2, 1, 0], [1, 1, 0], [0, 0, 1]]), name="cat_x_identity")


DynSystem = SymbolicSystem | ToralAutomorphism


# --------------------------------------------------------------------------
# orbits
# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Orbit:
    """Forward orbit ``x, f(x), ..., f^{n-1}(x)``.

    For toral systems ``points`` is an ``(n, d)`` array.  For symbolic systems
    it is a list of words (successive suffixes of the starting word).
    """

    points: object
    n: int

    def __len__(self):
        return self.n


def iterate(system: DynSystem, x, n: int) -> Orbit:
    """Length-``n`` forward orbit of ``x``.

    Toral points are reduced mod 1 after every step; symbolic points must be
    admissible and long enough to shift ``n - 1`` times.
    """
    if n < 0:
        raise ValidationError("n must be nonnegative")
    if isinstance(system, SymbolicSystem):
        w = system.check_word(x)
        if n == 0:
            return Orbit([], 0)
        if len(w) < n - 1:
            raise ValidationError(f"word of length {len(w)} cannot be shifted {n - 1} times")
        return Orbit([w[j:] for j in range(n)], n)
    x = np.mod(np.asarray(x, dtype=float), 1.0)
    if x.shape != (system.dim,):
        raise ValidationError(f"point must have {system.dim} coordinates")
    pts = np.empty((n, system.dim))
    for j in range(n):
        pts[j] = x
        x = system.apply(x)
    return Orbit(pts, n)


# --------------------------------------------------------------------------
# leaf segments
# --------------------------------------------------------------------------

class LeafSegment:
    """Closed piece ``W^u(x, delta)`` of an unstable leaf with metric ``d^u``.

    Use :func:`leaf_segment` to construct one for either kind of system.
    """

    system: DynSystem
    base_point: object
    radius: float

    def u_metric(self, y, z) -> float:
        raise NotImplementedError

    def bowen_u_distance(self, y, z, n: int) -> float:
        raise NotImplementedError


class LinearLeaf(LeafSegment):
    """Segment of a one-dimensional unstable leaf of a toral automorphism.

    The chart ``t -> x + t v_u (mod 1)`` for ``t`` in ``[-delta, delta]`` is an
    isometry onto the segment with ``d^u = |t_y - t_z|``.
    """

    def __init__(self, system: ToralAutomorphism, base_point, radius: float):
        system._require_1d_unstable()
        if not 0 < radius < MAX_TORAL_DELTA:
            raise ValidationError(
                f"leaf radius must lie in (0, {MAX_TORAL_DELTA}) for toral systems, got {radius}")
        x = np.mod(np.asarray(base_point, dtype=float), 1.0)
        if x.shape != (system.dim,):
            raise ValidationError(f"base point must have {system.dim} coordinates")
        self.system = system
        self.base_point = x
        self.radius = float(radius)
        self.direction = system.unstable_direction
        self.rate = system.unstable_rate
        self._functional = system.unstable_functional

    def __repr__(self):
        return f"LinearLeaf({self.system.name}, x={self.base_point.tolist()}, delta={self.radius})"

    def chart(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return np.mod(self.base_point + t[..., None] * self.direction, 1.0)

    def coordinates(self, points, strict: bool = True) -> np.ndarray:
        """Invert the chart; raises :class:`DomainError` for points off the segment."""
        P = np.asarray(points, dtype=float)
        single = P.ndim == 1
        P = np.atleast_2d(P)
        w = P - self.base_point
        w -= np.round(w)
        t = w @ self.direction
        resid = np.max(np.abs(w - t[:, None] * self.direction), axis=1)
        bad = (resid > CHART_TOL) | (np.abs(t) > self.radius + CHART_TOL)
        if strict and bad.any():
            raise DomainError("point does not lie on the leaf segment (chart inversion failed)")
        return t[0] if single else t

    def contains(self, points) -> np.ndarray:
        P = np.atleast_2d(np.asarray(points, dtype=float))
        w = P - self.base_point
        w -= np.round(w)
        t = w @ self.direction
        resid = np.max(np.abs(w - t[:, None] * self.direction), axis=1)
        return (resid <= CHART_TOL) & (np.abs(t) <= self.radius + CHART_TOL)

    def u_metric(self, y, z) -> float:
        return float(abs(self.coordinates(y) - self.coordinates(z)))

    def bowen_u_distance(self, y, z, n: int) -> float:
        """``max_{j<n} d^u(f^j y, f^j z)``, propagating the lifted difference."""
        if n < 1:
            raise ValidationError("n must be positive")
        diff = (self.coordinates(y) - self.coordinates(z)) * self.direction
        A = self.system.matrix.astype(float)
        best = 0.0
        for _ in range(n):
            best = max(best, abs(float(self._functional @ diff)))
            diff = A @ diff
        return best

    def ball_radius(self, n: int, eps: float) -> float:
        return u_ball_radius_linear(self.system, n, eps)

    def image(self) -> "LinearLeaf":
        """The segment ``f(W^u(x, delta)) = W^u(f x, lambda delta)`` (radius capped)."""
        r = min(self.radius * self.rate, MAX_TORAL_DELTA * (1 - 1e-9))
        return LinearLeaf(self.system, self.system.apply(self.base_point), r)

    def bowen_metric(self):
        from .metrics import LineMetric
        return LineMetric(self.rate, embed=self.coordinates)


class CylinderLeaf(LeafSegment):
    """Symbolic "leaf": the cylinder of words sharing the first ``depth`` symbols
    of the base point.  Radius ``delta`` maps to the smallest depth ``c`` with
    ``base**c <= delta``; ``delta >= 1`` gives the whole space."""

    def __init__(self, system: SymbolicSystem, base_point, radius: float = 1.0):
        if radius <= 0:
            raise ValidationError("leaf radius must be positive")
        self.system = system
        self.radius = float(radius)
        self.depth = system.depth_for_radius(radius)
        w = system.check_word(base_point) if base_point is not None else np.zeros(0, np.int64)
        if len(w) < self.depth:
            raise ValidationError("base word shorter than the leaf cylinder depth")
        self.base_point = w
        self.prefix = w[: self.depth]

    def __repr__(self):
        return f"CylinderLeaf({self.system.name}, prefix={word_str(self.prefix)!r})"

    def contains(self, points) -> np.ndarray:
        P = np.atleast_2d(np.asarray(points, dtype=np.int64))
        if P.shape[1] < self.depth:
            return np.zeros(P.shape[0], dtype=bool)
        return np.all(P[:, : self.depth] == self.prefix, axis=1) & self.system.contains(P)

    def _check(self, y):
        y = self.system.check_word(y)
        if len(y) < self.depth or not np.array_equal(y[: self.depth], self.prefix):
            raise DomainError(f"word {word_str(y)} is not in the leaf cylinder")
        return y

    def u_metric(self, y, z) -> float:
        return self.system.distance(self._check(y), self._check(z))

    def bowen_u_distance(self, y, z, n: int) -> float:
        if n < 1:
            raise ValidationError("n must be positive")
        k = first_disagreement(self._check(y), self._check(z))
        if k is None:
            return 0.0
        return self.system.metric_base ** max(k - n + 1, 0)

    def class_depth(self, n: int, eps: float) -> int:
        """Prefix length L such that ``d^u_n(y, z) <= eps`` iff y, z share L symbols."""
        m = self.system.depth_for_radius(eps)
        return 0 if m == 0 else n - 1 + m

    def image(self) -> "CylinderLeaf":
        c = max(self.depth - 1, 0)
        r = self.system.metric_base ** c if c > 0 else 1.0
        return CylinderLeaf(self.system, self.base_point[1:], r)

    def bowen_metric(self):
        from .metrics import CylinderMetric
        return CylinderMetric(self.system.metric_base, self.system.alphabet_size)


def leaf_segment(system: DynSystem, x, delta: float) -> LeafSegment:
    """Leaf segment ``W^u(x, delta)`` for either kind of system."""
    if isinstance(system, SymbolicSystem):
        return CylinderLeaf(system, x, delta)
    return LinearLeaf(system, x, delta)


def u_metric(seg: LeafSegment, y, z) -> float:
    """Intrinsic unstable distance ``d^u(y, z)`` on a leaf segment."""
    return seg.u_metric(y, z)


def bowen_u_distance(seg: LeafSegment, y, z, n: int) -> float:
    """Bowen u-metric ``d^u_n(y, z) = max_{j<n} d^u(f^j y, f^j z)``."""
    return seg.bowen_u_distance(y, z, n)


def u_ball_radius_linear(system: ToralAutomorphism, n: int, eps: float) -> float:
    """d^u-radius ``eps * lambda_u**-(n-1)`` of the u-Bowen ball of a linear map."""
    if not isinstance(system, ToralAutomorphism):
        raise UnsupportedConfiguration("closed-form ball radius needs a linear toral system")
    system._require_1d_unstable()
    if eps <= 0 or n < 1:
        raise ValidationError("need eps > 0 and n >= 1")
    return float(eps * system.unstable_rate ** (-(n - 1)))


# --------------------------------------------------------------------------
# configuration
# --------------------------------------------------------------------------

def system_from_config(cfg: dict) -> DynSystem:
    """Build a system from a ``[system]`` table.

    Keys: ``kind`` in {full_shift, sft, toral, product}; ``alphabet``;
    ``forbidden`` (list of two-letter words); ``matrix``; ``rotation``
    (product only); ``metric_base`` (symbolic only).
    """
    kind = cfg.get("kind")
    base = float(cfg.get("metric_base", 0.5))
    if kind == "full_shift":
        return full_shift(int(cfg.get("alphabet", 2)), base)
    if kind == "sft":
        forbidden = cfg.get("forbidden", [])
        k = int(cfg.get("alphabet", 2))
        if forbidden == ["11"] and k == 2:
            return golden_mean_shift(base)
        return sft(k, forbidden, base)
    if kind == "toral":
        if "matrix" not in cfg:
            raise ValidationError("toral system needs system.matrix")
        return ToralAutomorphism(np.asarray(cfg["matrix"]), name=cfg.get("name", "toral"))
    if kind == "product":
        A = np.asarray(cfg.get("matrix", [[2, 1], [1, 1]]))
        alpha = float(cfg.get("rotation", GOLDEN_ROTATION))
        d = A.shape[0]
        M = np.zeros((d + 1, d + 1), dtype=np.int64)
        M[:d, :d] = A
        M[d, d] = 1
        b = np.zeros(d + 1)
        b[d] = alpha
        return ToralAutomorphism(M, translation=b, name=cfg.get("name", "product"))
    raise ValidationError(f"unknown system.kind {kind!r}; expected full_shift, sft, toral or product")
