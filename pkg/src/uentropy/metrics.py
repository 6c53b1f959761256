"""Bowen-metric accessors used by the counting and cover engines.

An accessor knows how to turn the points of a :class:`SubsetSample` into an
array representation (``embed``), how to evaluate ``d_n`` between one point and
many, and how deep a Bowen ball can go before the sample stops resolving it.
The ``structure`` tag selects a specialised exact algorithm:

``"line"``
    one-dimensional leaf of a linear map, ``d_n = rate**(n-1) |t_y - t_z|``;
``"cylinder"``
    symbolic ultrametric, balls are cylinders;
``"generic"``
    any callable distance, handled by brute force / greedy search.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

DEFAULT_MARGIN = 16.0


class BowenMetric:
    structure = "generic"
    entropy_ceiling = 1.0

    def embed(self, sample) -> np.ndarray:
        raise NotImplementedError

    def bowen(self, X, i: int, J, n: int) -> np.ndarray:
        raise NotImplementedError

    def step_distances(self, X, i: int, J, n: int) -> np.ndarray:
        """``(len(J), n)`` array of ``d(f^j x_i, f^j x_J)`` for ``j < n``."""
        raise NotImplementedError

    def reliable_depth(self, eps: float, sample) -> int | None:
        """Deepest ``n`` at which Bowen balls are still resolved by the sample."""
        return None


class LineMetric(BowenMetric):
    """Expanding one-dimensional leaf: ``d_n(y, z) = rate**(n-1) * |t_y - t_z|``.

    Parameters
    ----------
    rate : float
        Expansion factor along the leaf (> 1).
    embed : callable, optional
        Maps sample points to chart coordinates.  Samples that already carry
        ``coords`` skip it.
    margin : float
        Balls narrower than ``margin`` sample spacings are treated as
        unresolved.
    """

    structure = "line"

    def __init__(self, rate: float, embed=None, margin: float = DEFAULT_MARGIN):
        if rate <= 1:
            raise DomainError("line metric needs an expansion rate > 1")
        self.rate = float(rate)
        self._embed = embed
        self.margin = margin
        self.entropy_ceiling = math.log(rate)

    def embed(self, sample) -> np.ndarray:
        if getattr(sample, "coords", None) is not None:
            return np.asarray(sample.coords, dtype=float)
        P = np.asarray(sample.points, dtype=float)
        if self._embed is None:
            return P.reshape(len(P))
        return np.atleast_1d(self._embed(P))

    def radius(self, n: int, eps: float) -> float:
        return float(eps * self.rate ** (-(n - 1)))

    def bowen(self, X, i, J, n):
        return self.rate ** (n - 1) * np.abs(X[J] - X[i])

    def step_distances(self, X, i, J, n):
        d = np.abs(np.atleast_1d(X[J]) - X[i])
        return d[:, None] * self.rate ** np.arange(n)[None, :]

    def reliable_depth(self, eps, sample):
        res = sample.resolution
        if not np.isfinite(res) or res <= 0:
            return None
        ratio = eps / (self.margin * res)
        if ratio < 1:
            return 1
        return 1 + int(math.floor(math.log(ratio) / math.log(self.rate) + 1e-12))


class CylinderMetric(BowenMetric):
    """Cylinder ultrametric ``d(y, z) = base**k`` on words.

    ``d_n(y, z) = base**max(k - n + 1, 0)`` where ``k`` is the first index of
    disagreement, so ``d_n <= eps`` iff the words share a prefix of length
    ``class_depth(n, eps)``.
    """

    structure = "cylinder"

    def __init__(self, base: float = 0.5, alphabet: int = 2):
        self.base = float(base)
        self.alphabet = int(alphabet)
        self.entropy_ceiling = math.log(max(alphabet, 2))

    def embed(self, sample) -> np.ndarray:
        P = sample.points
        if isinstance(P, np.ndarray) and P.ndim == 2:
            return P.astype(np.int64, copy=False)
        words = [np.asarray(w, dtype=np.int64) for w in P]
        if not words:
            return np.zeros((0, 0), dtype=np.int64)
        D = min(len(w) for w in words)
        return np.stack([w[:D] for w in words])

    def eps_depth(self, eps: float) -> int:
        if eps >= 1.0:
            return 0
        return max(1, int(math.ceil(math.log(eps) / math.log(self.base) - 1e-12)))

    def class_depth(self, n: int, eps: float) -> int:
        m = self.eps_depth(eps)
        return 0 if m == 0 else n - 1 + m

    def _first_diff(self, X, i, J):
        Y = X[J] != X[i]
        has = Y.any(axis=1)
        k = np.where(has, Y.argmax(axis=1), X.shape[1])
        return k, has

    def bowen(self, X, i, J, n):
        J = np.atleast_1d(J)
        k, has = self._first_diff(X, i, J)
        d = self.base ** np.maximum(k - n + 1, 0).astype(float)
        return np.where(has, d, 0.0)

    def step_distances(self, X, i, J, n):
        J = np.atleast_1d(J)
        Y = X[J] != X[i]
        D = X.shape[1]
        out = np.zeros((len(J), n))
        for j in range(n):
            if j >= D:
                break
            tail = Y[:, j:]
            has = tail.any(axis=1)
            k = tail.argmax(axis=1)
            out[:, j] = np.where(has, self.base ** k.astype(float), 0.0)
        return out

    def reliable_depth(self, eps, sample):
        X = self.embed(sample)
        D = X.shape[1]
        m = self.eps_depth(eps)
        if m == 0:
            return None
        return max(D - m + 1, 1)


class CallableMetric(BowenMetric):
    """Wraps ``dist(X, i, J, n) -> array`` for arbitrary point sets.

    ``step`` (optional) returns per-step distances with the same signature,
    needed only for rho-separation counts.
    """

    structure = "generic"

    def __init__(self, dist, step=None, entropy_ceiling: float = 1.0, embed=None):
        self._dist = dist
        self._step = step
        self._embed = embed
        self.entropy_ceiling = entropy_ceiling

    def embed(self, sample):
        P = np.asarray(sample.points)
        return P if self._embed is None else self._embed(P)

    def bowen(self, X, i, J, n):
        return np.asarray(self._dist(X, i, np.atleast_1d(J), n), dtype=float)

    def step_distances(self, X, i, J, n):
        if self._step is None:
            raise NotImplementedError("this metric does not expose per-step distances")
        return np.asarray(self._step(X, i, np.atleast_1d(J), n), dtype=float)
