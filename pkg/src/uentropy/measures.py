"""Markov measures on subshifts (Bernoulli, Parry, uniform branching)."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotIrreducible, ValidationError
from .systems import SymbolicSystem, as_word


def _stationary(P):
    w, V = np.linalg.eig(P.T)
    i = int(np.argmin(np.abs(w - 1)))
    pi = np.real(V[:, i])
    pi = np.abs(pi) / np.abs(pi).sum()
    return pi


@dataclass(frozen=True, eq=False)
class MarkovMeasure:
    """Stationary Markov measure with transition matrix ``P``.

    Parameters
    ----------
    P : array_like
        Row-stochastic ``k x k`` matrix.
    pi : array_like, optional
        Initial (stationary) distribution; computed when omitted.
    name : str
    """

    P: np.ndarray
    pi: np.ndarray | None = None
    name: str = "markov"

    def __post_init__(self):
        P = np.asarray(self.P, dtype=float)
        if P.ndim != 2 or P.shape[0] != P.shape[1]:
            raise ValidationError("transition matrix must be square")
        if (P < 0).any() or not np.allclose(P.sum(axis=1), 1.0, atol=1e-12):
            raise ValidationError("transition matrix must be row-stochastic")
        pi = _stationary(P) if self.pi is None else np.asarray(self.pi, dtype=float)
        if not np.isclose(pi.sum(), 1.0, atol=1e-12) or (pi < 0).any():
            raise ValidationError("pi must be a probability vector")
        P.setflags(write=False)
        pi.setflags(write=False)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "pi", pi)

    @property
    def alphabet_size(self) -> int:
        return self.P.shape[0]

    @classmethod
    def bernoulli(cls, probs, name: str | None = None) -> "MarkovMeasure":
        p = np.asarray(probs, dtype=float)
        return cls(np.tile(p, (len(p), 1)), p, name or "bernoulli(" + ", ".join(f"{v:g}" for v in p) + ")")

    @classmethod
    def parry(cls, system: SymbolicSystem) -> "MarkovMeasure":
        """Measure of maximal entropy of an irreducible subshift."""
        if not system.is_irreducible():
            raise NotIrreducible(f"{system.name} is not irreducible")
        A = system.transition.astype(float)
        w, V = np.linalg.eig(A)
        i = int(np.argmax(np.real(w)))
        lam = float(np.real(w[i]))
        v = np.abs(np.real(V[:, i]))
        wl, U = np.linalg.eig(A.T)
        u = np.abs(np.real(U[:, int(np.argmax(np.real(wl)))]))
        P = A * v[None, :] / (lam * v[:, None])
        pi = u * v / (u @ v)
        return cls(P, pi, f"parry({system.name})")

    @classmethod
    def uniform_branching(cls, system: SymbolicSystem) -> "MarkovMeasure":
        """Each allowed successor equally likely (the fair coin restricted to the subshift)."""
        A = system.transition.astype(float)
        return cls(A / A.sum(axis=1, keepdims=True), name=f"uniform({system.name})")

    @classmethod
    def dirac_fixed(cls, symbol: int, k: int) -> "MarkovMeasure":
        """Point mass on the fixed point ``symbol symbol symbol ...``."""
        P = np.zeros((k, k))
        P[:, symbol] = 1.0
        pi = np.zeros(k)
        pi[symbol] = 1.0
        return cls(P, pi, f"dirac({symbol})")

    def support(self) -> SymbolicSystem:
        return SymbolicSystem((self.P > 0).astype(np.int64), name=f"supp({self.name})")

    def entropy(self) -> float:
        """Entropy rate ``-sum_i pi_i sum_j P_ij log P_ij``."""
        with np.errstate(divide="ignore", invalid="ignore"):
            L = np.where(self.P > 0, self.P * np.log(self.P), 0.0)
        return float(-(self.pi @ L.sum(axis=1)))

    def log_cylinder(self, words) -> np.ndarray:
        """``log mu[w]`` for one word or a 2-D array of equal-length words."""
        W = np.asarray(words, dtype=np.int64) if not isinstance(words, str) else as_word(words)
        single = W.ndim == 1
        W = np.atleast_2d(W)
        with np.errstate(divide="ignore"):
            lp = np.log(self.pi)[W[:, 0]] if W.shape[1] else np.zeros(len(W))
            if W.shape[1] > 1:
                lp = lp + np.log(self.P)[W[:, :-1], W[:, 1:]].sum(axis=1)
        return lp[0] if single else lp

    def log_prefix_masses(self, word) -> np.ndarray:
        """``log mu[w_0 .. w_{L-1}]`` for every ``L = 1 .. len(word)``."""
        w = as_word(word)
        with np.errstate(divide="ignore"):
            steps = np.log(self.P)[w[:-1], w[1:]]
            return np.log(self.pi[w[0]]) + np.concatenate([[0.0], np.cumsum(steps)])

    def cylinder_probability(self, word) -> float:
        return float(np.exp(self.log_cylinder(as_word(word))))

    def symbol_frequencies(self) -> np.ndarray:
        return self.pi.copy()

    def sample_word(self, n: int, rng=None, start: int | None = None) -> np.ndarray:
        """Random word of length ``n`` from the chain (seeded generator)."""
        rng = np.random.default_rng(rng)
        k = self.alphabet_size
        out = np.empty(n, dtype=np.int64)
        if n == 0:
            return out
        out[0] = rng.choice(k, p=self.pi) if start is None else start
        cum = np.cumsum(self.P, axis=1)
        u = rng.random(n)
        for i in range(1, n):
            out[i] = min(int(np.searchsorted(cum[out[i - 1]], u[i], side="right")), k - 1)
        return out


def block_entropy(mu: MarkovMeasure, n: int) -> float:
    """Shannon entropy of the distribution of length-``n`` words (exact enumeration)."""
    k = mu.alphabet_size
    W = SymbolicSystem(np.ones((k, k), dtype=np.int64)).words(n)
    lp = mu.log_cylinder(W)
    p = np.exp(lp)
    keep = p > 0
    return float(-(p[keep] * lp[keep]).sum())


def entropy_rate_by_blocks(mu: MarkovMeasure, n: int = 6) -> float:
    """``H(n + 1) - H(n)``; exact for stationary Markov chains once ``n >= 1``."""
    return block_entropy(mu, n + 1) - block_entropy(mu, n)


def mixture_entropy(components, weights, n: int = 6) -> float:
    """Entropy of a convex combination of ergodic Markov measures through its
    ergodic decomposition: ``sum_i w_i h(mu_i)`` with each ``h(mu_i)`` obtained
    from block-entropy increments."""
    weights = np.asarray(weights, dtype=float)
    if (weights < 0).any() or not math.isclose(weights.sum(), 1.0, abs_tol=1e-12):
        raise ValidationError("mixture weights must form a probability vector")
    return float(sum(w * entropy_rate_by_blocks(mu, n) for w, mu in zip(weights, components)))
