import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from uentropy.caratheodory import SubsetSample, word_sample
from uentropy.errors import ValidationError
from uentropy.local_entropy import (LeafMeasure, bowen_ball_mass, distribution_principle_lower,
                                    distribution_principle_upper, enlarged_ball_contains,
                                    integrated_local_entropy, local_entropy_field,
                                    local_unstable_entropy, subset_variational_gap,
                                    vitali_select)
from uentropy.measures import MarkovMeasure
from uentropy.systems import CylinderLeaf, LinearLeaf, cat_map, full_shift, golden_mean_shift
from uentropy.unstable import leaf_sample, unstable_bowen_entropy

LAM = (3 + math.sqrt(5)) / 2
LOG_LAM = math.log(LAM)
LOG_PHI = math.log((1 + math.sqrt(5)) / 2)


def h2(p):
    return -p * math.log(p) - (1 - p) * math.log(1 - p)


@pytest.fixture(scope="module")
def cat_seg():
    return LinearLeaf(cat_map(), [0.3, 0.6], 0.1)


@pytest.fixture(scope="module")
def shift_seg():
    return CylinderLeaf(full_shift(2), np.zeros(64, np.int64), 1.0)


class TestBallMass:
    def test_lebesgue_centre(self, cat_seg):
        mu = LeafMeasure.lebesgue(cat_seg)
        assert math.isclose(bowen_ball_mass(mu, cat_seg.chart(0.0), 1, 0.05), 0.5)

    def test_bernoulli_cylinder(self, shift_seg):
        mu = LeafMeasure.cylinder(shift_seg, MarkovMeasure.bernoulli([0.5, 0.5]))
        assert math.isclose(bowen_ball_mass(mu, np.zeros(20, np.int64), 5, 0.5), 0.03125)

    def test_whole_segment(self, cat_seg):
        mu = LeafMeasure.lebesgue(cat_seg)
        assert math.isclose(bowen_ball_mass(mu, cat_seg.chart(0.0), 1, 1.0), 1.0)

    def test_boundary_truncation(self, cat_seg):
        mu = LeafMeasure.lebesgue(cat_seg)
        _, trunc = mu.log_ball_masses(cat_seg.chart(0.09), [1], 0.05)
        assert trunc[0]
        assert math.isclose(bowen_ball_mass(mu, cat_seg.chart(0.09), 1, 0.05), 0.06 / 0.2)

    def test_density_is_normalised(self, cat_seg):
        mu = LeafMeasure.from_density(cat_seg, [1.0, 0.0, 20.0])
        assert math.isclose(bowen_ball_mass(mu, cat_seg.chart(0.0), 1, 0.2), 1.0)
        # exact integral of the polynomial over [-r, r], divided by the total
        r = 0.01
        ref = (2 * r + 40 * r ** 3 / 3) / (0.2 + 40 * 0.1 ** 3 / 3)
        assert math.isclose(bowen_ball_mass(mu, cat_seg.chart(0.0), 1, r), ref, rel_tol=1e-12)

    def test_density_must_be_nonnegative(self, cat_seg):
        with pytest.raises(ValidationError):
            LeafMeasure.from_density(cat_seg, [-1.0, 0.0, 1.0])


class TestLocalEntropy:
    def test_lebesgue_closed_form(self, cat_seg):
        mu = LeafMeasure.lebesgue(cat_seg)
        eps, delta = 0.05, 0.1
        ns = np.array([1, 2, 5, 10, 100, 1000])
        le = local_unstable_entropy(mu, cat_seg.chart(0.0), (eps,), tuple(ns))
        # a_n = ((n-1) log lambda + log(2 delta / 2 eps)) / n, only for unclipped balls
        ref = ((ns - 1) * LOG_LAM + math.log(2 * delta / (2 * eps))) / ns
        assert np.allclose(le.traces[eps], ref, rtol=0, atol=1e-9)

    def test_lebesgue_limit(self, cat_seg):
        lo, hi = local_unstable_entropy(LeafMeasure.lebesgue(cat_seg), cat_seg.chart(0.02))
        assert abs(lo - LOG_LAM) < 1e-6 and abs(hi - LOG_LAM) < 1e-6

    def test_point_mass(self, cat_seg):
        mu = LeafMeasure.atomic(cat_seg, cat_seg.chart(0.0))
        lo, hi = local_unstable_entropy(mu, cat_seg.chart(0.0))
        assert lo == 0.0 and hi == 0.0

    def test_bernoulli_typical_point(self, shift_seg):
        m = MarkovMeasure.bernoulli([0.7, 0.3])
        mu = LeafMeasure.cylinder(shift_seg, m)
        x = m.sample_word(4000, np.random.default_rng(42))
        lo, hi = local_unstable_entropy(mu, x)
        assert abs(lo - h2(0.3)) < 0.05 and abs(hi - h2(0.3)) < 0.05

    def test_field_order(self, cat_seg):
        mu = LeafMeasure.from_density(cat_seg, [1.0, 0.0, 20.0])
        pts = cat_seg.chart(np.linspace(-0.05, 0.05, 7))
        fld = local_entropy_field(mu, pts)
        assert (fld.lower <= fld.upper + 1e-9).all()

    def test_eta_independence(self, cat_seg):
        """Refining the segment rescales masses by a constant; finite-n values agree
        once the ball sits inside both segments."""
        mu = LeafMeasure.lebesgue(cat_seg)
        nu = mu.restrict(0.05)
        x = cat_seg.chart(0.01)
        ns = np.array([10, 100, 1000])
        a, _ = mu.log_ball_masses(x, ns, 0.02)
        b, _ = nu.log_ball_masses(x, ns, 0.02)
        diff = b - a
        assert np.allclose(diff, diff[0], atol=1e-9)
        la = local_unstable_entropy(mu, x, (0.02,), tuple(10 ** k for k in range(6, 13)))
        lb = local_unstable_entropy(nu, x, (0.02,), tuple(10 ** k for k in range(6, 13)))
        assert abs(la.lower - lb.lower) < 1e-6


def _probe_covered(seg, balls, chosen):
    radii = [seg.ball_radius(n, e) for _, n, e in balls]
    step = min(radii) / 100
    centers = [float(seg.coordinates(c)) for c, _, _ in balls]
    for t, r in zip(centers, radii):
        grid = np.arange(t - r, t + r + step / 2, step)
        inside = np.zeros(len(grid), dtype=bool)
        for j in chosen:
            tj, rj = centers[j], 3 * radii[j]
            inside |= np.abs(grid - tj) <= rj * (1 + 1e-12)
        if not inside.all():
            return False
    return True


class TestVitali:
    def test_single_and_disjoint(self, cat_seg):
        b = [(cat_seg.chart(0.0), 3, 0.01)]
        assert vitali_select(cat_seg, b) == [0]
        b2 = b + [(cat_seg.chart(0.08), 3, 0.01)]
        assert sorted(vitali_select(cat_seg, b2)) == [0, 1]

    def test_random_families(self, cat_seg):
        rng = np.random.default_rng(11)
        for _ in range(100):
            k = int(rng.integers(1, 50))
            balls = [(cat_seg.chart(rng.uniform(-0.08, 0.08)), int(rng.integers(1, 5)),
                      float(rng.uniform(0.002, 0.02))) for _ in range(k)]
            chosen = vitali_select(cat_seg, balls)
            # disjointness by exact interval arithmetic
            ts = [(float(cat_seg.coordinates(balls[i][0])),
                   cat_seg.ball_radius(balls[i][1], balls[i][2])) for i in chosen]
            for a in range(len(ts)):
                for b in range(a + 1, len(ts)):
                    assert abs(ts[a][0] - ts[b][0]) > ts[a][1] + ts[b][1]
            assert all(any(enlarged_ball_contains(cat_seg, balls[j], balls[i]) for j in chosen)
                       for i in range(k))
            assert _probe_covered(cat_seg, balls, chosen)

    def test_symbolic(self, shift_seg):
        balls = [(np.array([0, 1, 1, 0, 0, 0]), 2, 0.5), (np.array([0, 1, 0, 0, 0, 0]), 1, 0.5),
                 (np.array([1, 1, 1, 0, 0, 0]), 3, 0.5)]
        chosen = vitali_select(shift_seg, balls)
        assert chosen == [1, 2]
        assert all(any(enlarged_ball_contains(shift_seg, balls[j], balls[i]) for j in chosen)
                   for i in range(3))


class TestDistributionPrinciple:
    def test_lower_cat(self, cat_seg):
        Z = leaf_sample(cat_seg, 4001)
        v = distribution_principle_lower(LeafMeasure.lebesgue(cat_seg), Z, 0.9)
        assert v.status == "PASS"

    def test_lower_trivial(self, cat_seg):
        Z = leaf_sample(cat_seg, 4001)
        assert distribution_principle_lower(LeafMeasure.lebesgue(cat_seg), Z, 0.0).passed

    def test_upper_cat(self, cat_seg):
        Z = leaf_sample(cat_seg, 4001)
        mu = LeafMeasure.lebesgue(cat_seg)
        assert distribution_principle_upper(mu, Z, 1.0).passed
        assert distribution_principle_upper(mu, Z, LOG_LAM).passed

    def test_hypothesis_not_met(self, cat_seg):
        Z = leaf_sample(cat_seg, 4001)
        v = distribution_principle_upper(LeafMeasure.lebesgue(cat_seg), Z, 0.5)
        assert v.status == "hypothesis_not_met"

    def test_parry_inside_full_shift(self, shift_seg):
        Z = word_sample(golden_mean_shift().words(12))
        mu = LeafMeasure.cylinder(shift_seg, MarkovMeasure.parry(golden_mean_shift()))
        assert distribution_principle_lower(mu, Z, 0.45).passed

    def test_point_mass_upper(self):
        seg = LinearLeaf(cat_map(), [0.0, 0.0], 0.1)
        mu = LeafMeasure.atomic(seg, np.zeros(2))
        Z = SubsetSample(np.zeros((1, 2)), 1e-6, coords=np.zeros(1))
        assert distribution_principle_upper(mu, Z, 0.0).passed


class TestVariational:
    def test_cat_leaf(self, cat_seg):
        K = leaf_sample(cat_seg, 4001)
        g = subset_variational_gap(K, [LeafMeasure.lebesgue(cat_seg)])
        assert g.status == "PASS"
        assert abs(g.estimate - g.lower_bound) <= 0.05

    def test_periodic_orbit(self):
        seg = LinearLeaf(cat_map(), [0.0, 0.0], 0.1)
        K = SubsetSample(np.zeros((1, 2)), 1e-6, coords=np.zeros(1))
        g = subset_variational_gap(K, [LeafMeasure.atomic(seg, np.zeros(2))])
        assert g.estimate < 0.02 and g.lower_bound == 0.0

    def test_golden_parry_is_maximal(self, shift_seg):
        golden = golden_mean_shift()
        K = word_sample(golden.words(12))
        fam = [LeafMeasure.cylinder(shift_seg, MarkovMeasure.parry(golden)),
               LeafMeasure.cylinder(shift_seg, MarkovMeasure.uniform_branching(golden))]
        g = subset_variational_gap(K, fam)
        best = max(g.per_measure, key=g.per_measure.get)
        assert best.startswith("parry")
        assert abs(g.lower_bound - LOG_PHI) <= 0.05 and g.status == "PASS"

    def test_empty_family(self, cat_seg):
        K = leaf_sample(cat_seg, 101)
        assert subset_variational_gap(K, [], seg=cat_seg).lower_bound == 0.0

    def test_integrated_local_entropy_lower_bound(self, cat_seg):
        """Bowen entropy of a full-measure set is at least the integrated local entropy."""
        mu = LeafMeasure.from_density(cat_seg, [1.0, 0.0, 20.0])
        h = unstable_bowen_entropy(cat_map(), x_grid=[cat_seg.base_point]).sup_estimate
        assert h >= integrated_local_entropy(mu) - 0.05


@settings(max_examples=20, deadline=None)
@given(st.floats(-0.05, 0.05), st.integers(1, 200), st.floats(0.001, 0.04))
def test_mass_in_unit_interval(t, n, eps):
    seg = LinearLeaf(cat_map(), [0.3, 0.6], 0.1)
    m = bowen_ball_mass(LeafMeasure.from_density(seg, [1.0, 2.0, 30.0]), seg.chart(t), n, eps)
    assert 0.0 < m <= 1.0 + 1e-12
