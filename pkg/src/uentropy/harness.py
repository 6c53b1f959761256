"""Shipped instance sets for the theorem checks driven by ``uentropy check``.

Each ``check_*`` function runs one harness over its instances and returns a
list of :class:`~uentropy.local_entropy.Verdict` rows.  Statuses are
``PASS``, ``FAIL`` or ``hypothesis_not_met``; the last one means the
instance does not satisfy the hypothesis, not that the inequality failed.
"""
from __future__ import annotations

import math

import numpy as np

from .caratheodory import SubsetSample, word_sample
from .errors import ValidationError
from .local_entropy import (LeafMeasure, Verdict, distribution_principle_lower,
                            distribution_principle_upper, subset_variational_gap)
from .measures import MarkovMeasure
from .multifractal import (Potential, spectrum_identity_check, doubling_schedule,
                           irregular_orbit_constructor, limit_set_probe)
from .separation import s_quantities, uniform_separation_probe
from .systems import (CylinderLeaf, LinearLeaf, cat_map, full_shift, golden_mean_shift)
from .unstable import leaf_sample

THEOREMS = ("a_upper", "a_lower", "b", "c3", "d1", "d2")
LEAF_GRID = 4001


def _cat_leaf(delta=0.1):
    return LinearLeaf(cat_map(), np.array([0.3, 0.6]), delta)


def _shift_leaf(system):
    return CylinderLeaf(system, np.zeros(64, dtype=np.int64), 1.0)


def _golden_words(D=12):
    g = golden_mean_shift()
    return word_sample(g.words(D), label="golden-mean words")


def distribution_instances():
    """Six ``(name, mu, Z, s_lower, s_upper)`` instances.

    ``s_lower`` is used by the lower-bound check and ``s_upper`` by the upper
    one; both sit on the correct side of the true entropy of ``Z``.
    """
    lam = math.log((3 + math.sqrt(5)) / 2)
    seg = _cat_leaf()
    Z = leaf_sample(seg, LEAF_GRID)
    fs = full_shift(2)
    fseg = _shift_leaf(fs)
    golden = golden_mean_shift()
    out = [
        ("cat/lebesgue/leaf", LeafMeasure.lebesgue(seg), Z, 0.9, 1.0),
        ("cat/lebesgue/leaf@log-lambda", LeafMeasure.lebesgue(seg), Z, lam, lam),
        ("cat/density/leaf", LeafMeasure.from_density(seg, [1.0, 0.0, 20.0]), Z, 0.9, 1.0),
        ("shift2/bernoulli/all", LeafMeasure.cylinder(fseg, MarkovMeasure.bernoulli([0.5, 0.5])),
         leaf_sample(fseg, 4096), 0.65, math.log(2)),
        ("shift2/parry/golden", LeafMeasure.cylinder(fseg, MarkovMeasure.parry(golden)),
         _golden_words(), 0.45, 0.5),
    ]
    # a fixed point carrying a point mass
    pseg = LinearLeaf(cat_map(), np.zeros(2), 0.1)
    out.append(("cat/dirac/fixed-point", LeafMeasure.atomic(pseg, np.zeros(2)),
                SubsetSample(np.zeros((1, 2)), 1e-6, "fixed point", coords=np.zeros(1)), 0.0, 0.0))
    return out


def check_a_upper(names=None):
    return [distribution_principle_upper(mu, Z, su, name=name)
            for name, mu, Z, _, su in distribution_instances() if not names or name in names]


def check_a_lower(names=None):
    return [distribution_principle_lower(mu, Z, sl, name=name)
            for name, mu, Z, sl, _ in distribution_instances() if not names or name in names]


def variational_instances():
    """``(name, K, family, seg, maximal)``; ``maximal`` marks instances whose
    family contains the measure of maximal entropy on ``K``."""
    seg = _cat_leaf()
    fs = full_shift(2)
    fseg = _shift_leaf(fs)
    golden = golden_mean_shift()
    pseg = LinearLeaf(cat_map(), np.zeros(2), 0.1)
    return [
        ("cat/leaf", leaf_sample(seg, LEAF_GRID),
         [LeafMeasure.lebesgue(seg), LeafMeasure.from_density(seg, [1.0, 0.0, 20.0])], seg, True),
        ("shift2/golden", _golden_words(),
         [LeafMeasure.cylinder(fseg, MarkovMeasure.parry(golden)),
          LeafMeasure.cylinder(fseg, MarkovMeasure.uniform_branching(golden))], fseg, True),
        ("shift2/all", leaf_sample(fseg, 4096),
         [LeafMeasure.cylinder(fseg, MarkovMeasure.bernoulli([0.5, 0.5])),
          LeafMeasure.cylinder(fseg, MarkovMeasure.bernoulli([0.7, 0.3]))], fseg, True),
        ("cat/fixed-point", SubsetSample(np.zeros((1, 2)), 1e-6, "fixed point",
                                         coords=np.zeros(1)),
         [LeafMeasure.atomic(pseg, np.zeros(2))], pseg, False),
    ]


def check_b(names=None, equality_tolerance: float = 0.05):
    rows = []
    for name, K, family, seg, maximal in variational_instances():
        if names and name not in names:
            continue
        g = subset_variational_gap(K, family, seg=seg)
        ok = g.status == "PASS"
        if maximal:
            ok = ok and abs(g.estimate - g.lower_bound) <= equality_tolerance
        rows.append(Verdict(name, "PASS" if ok else "FAIL", g.lower_bound, g.estimate,
                            g.tolerance, {"per_measure": g.per_measure, "maximal": maximal,
                                          "flags": g.flags}))
    return rows


def spectrum_instances():
    grid = [round(0.1 * i, 1) for i in range(1, 10)]
    fs, g = full_shift(2), golden_mean_shift()
    return [
        ("shift2/frequency", fs, Potential.cylinder_indicator([1], 2), grid),
        ("golden/frequency", g, Potential.cylinder_indicator([1], 2), grid),
        ("shift2/constant", fs, Potential.constant(0.5, 2), [0.25, 0.5, 0.75]),
    ]


def check_c3(names=None):
    rows = []
    for name, system, phi, grid in spectrum_instances():
        if names and name not in names:
            continue
        res = spectrum_identity_check(system, phi, grid)
        finite = [(l, r) for l, r, s in zip(res.lhs, res.rhs, res.status)
                  if s != "level_unreachable"]
        lhs = max((l - r for l, r in finite), default=0.0)
        rows.append(Verdict(name, "PASS" if res.passed else "FAIL", lhs, 0.0, 0.03,
                            {"rows": list(res.rows()), "two_sided": res.two_sided}))
    return rows


def irregular_instances():
    fs, g = full_shift(2), golden_mean_shift()
    phi = Potential.cylinder_indicator([1], 2)
    rng = np.random.default_rng(42)
    return [
        ("shift2/doubling", fs, "0", "1", phi, "oscillating"),
        ("golden/0-vs-01", g, "0", "01", phi, "oscillating"),
        ("shift2/bernoulli-word", fs, MarkovMeasure.bernoulli([0.5, 0.5]).sample_word(65536, rng),
         None, phi, "convergent"),
    ]


def separation_instances():
    fs, g = full_shift(2), golden_mean_shift()
    half, parry = MarkovMeasure.bernoulli([0.5, 0.5]), MarkovMeasure.parry(g)
    return [(f"{label}/n={n}/kappa={k}", system, mu, k, n)
            for label, system, mu in (("bernoulli", fs, half), ("parry-golden", g, parry))
            for n in (14, 16) for k in (0.2, 0.3)]


def check_d1(names=None, tau: float = 0.02):
    """Irregular-orbit probes and the uniform separation extraction."""
    rows = []
    checkpoints = [2 ** j for j in range(6, 17)]
    for name, system, p1, p2, phi, expected in irregular_instances():
        if names and name not in names:
            continue
        if p2 is None:
            x = p1
        else:
            x = irregular_orbit_constructor(system, p1, p2, doubling_schedule(65536))
        pr = limit_set_probe(system, x, [phi], checkpoints, tau)
        tail = pr.averages[-max(len(checkpoints) // 3, 2):, 0]
        swing = float(np.abs(np.diff(tail)).max())
        rows.append(Verdict(name, "PASS" if pr.classification == expected else "FAIL",
                            swing, 2 * tau, 0.0,
                            {"classification": pr.classification, "expected": expected}))
    for name, system, mu, kappa, n in separation_instances():
        if names and name not in names:
            continue
        r = uniform_separation_probe(system, mu, kappa, n)
        rows.append(Verdict(name, "PASS" if r.passed else "FAIL", r.achieved, r.target, 0.0,
                            {"size_typical": r.size_typical, "size_extracted": r.size_extracted,
                             "rho_star": r.rho_star, "kappa_prime": r.kappa_prime}))
    return rows


def s_instances():
    fs, g = full_shift(2), golden_mean_shift()
    return [
        ("bernoulli(1/2)", fs, MarkovMeasure.bernoulli([0.5, 0.5])),
        ("bernoulli(0.3)", fs, MarkovMeasure.bernoulli([0.7, 0.3])),
        ("parry(golden)", g, MarkovMeasure.parry(g)),
    ]


def check_d2(names=None, tolerance: float = 0.05):
    rows = []
    for name, system, mu in s_instances():
        if names and name not in names:
            continue
        q = s_quantities(system, mu)
        h = mu.entropy()
        ok = abs(q.s_lower - h) <= tolerance and abs(q.s_upper - h) <= tolerance
        ok = ok and q.s_lower <= q.s_upper + 1e-12
        rows.append(Verdict(name, "PASS" if ok else "FAIL", q.s_lower, h, tolerance,
                            {"s_upper": q.s_upper, "plain": q.plain, "flags": q.flags}))
    return rows


CHECKS = {"a_upper": check_a_upper, "a_lower": check_a_lower, "b": check_b, "c3": check_c3,
          "d1": check_d1, "d2": check_d2}


def run_check(theorem: str, names=None):
    if theorem not in CHECKS:
        raise ValidationError(f"unknown theorem {theorem!r}; expected one of {', '.join(THEOREMS)}")
    rows = CHECKS[theorem](names)
    if names:
        missing = sorted(set(names) - {r.name for r in rows})
        if missing:
            raise ValidationError(f"unknown {theorem} instances: {', '.join(missing)}")
    return rows
