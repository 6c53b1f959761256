import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from uentropy.errors import DomainError, UnsupportedConfiguration, ValidationError
from uentropy.systems import (CylinderLeaf, LinearLeaf, SymbolicSystem, ToralAutomorphism,
                              as_word, automorphism_3d, cat_map, cat_rotation_product,
                              first_disagreement, full_shift, golden_mean_shift, iterate,
                              leaf_segment, sft, system_from_config, u_ball_radius_linear,
                              word_str)

GOLDEN = (1 + math.sqrt(5)) / 2
CAT_LAMBDA = (3 + math.sqrt(5)) / 2

words3 = st.lists(st.integers(0, 1), min_size=1, max_size=12)


def brute_count(system, n):
    k = system.alphabet_size
    return sum(system.is_admissible(w) for w in itertools.product(range(k), repeat=n))


class TestSymbolic:
    def test_word_roundtrip(self):
        assert word_str(as_word("0110")) == "0110"
        assert as_word([1, 0]).dtype == np.int64

    def test_metric_examples(self):
        fs = full_shift(2)
        assert fs.distance("0101", "0101") == 0.0
        assert fs.distance("0100", "0110") == 0.25
        assert fs.distance("1", "0") == 1.0

    def test_depth_for_radius(self):
        fs = full_shift(2)
        assert fs.depth_for_radius(1.0) == 0
        assert fs.depth_for_radius(0.5) == 1
        assert fs.depth_for_radius(0.3) == 2
        assert fs.depth_for_radius(0.25) == 2
        with pytest.raises(DomainError):
            fs.depth_for_radius(0.0)

    @pytest.mark.parametrize("system", [full_shift(2), full_shift(3), golden_mean_shift(),
                                        sft(3, ["00", "12"])])
    def test_count_words_matches_enumeration(self, system):
        for n in range(1, 8):
            assert system.count_words(n) == brute_count(system, n) == len(system.words(n))

    def test_golden_counts_are_fibonacci(self):
        g = golden_mean_shift()
        fib = [1, 2]
        while len(fib) < 30:
            fib.append(fib[-1] + fib[-2])
        assert [g.count_words(n) for n in range(1, 30)] == fib[1:30]

    def test_entropies(self):
        assert math.isclose(full_shift(2).topological_entropy(), math.log(2), rel_tol=1e-12)
        assert math.isclose(full_shift(3).topological_entropy(), math.log(3), rel_tol=1e-12)
        assert math.isclose(golden_mean_shift().topological_entropy(), math.log(GOLDEN),
                            rel_tol=1e-12)

    def test_words_lexicographic_and_prefix(self):
        W = golden_mean_shift().words(4, prefix="01")
        assert [word_str(w) for w in W] == ["0100", "0101"]
        W = full_shift(2).words(3)
        assert [word_str(w) for w in W] == sorted(word_str(w) for w in W)

    def test_validation(self):
        with pytest.raises(ValidationError):
            SymbolicSystem(np.array([[1, 0], [0, 0]]))
        with pytest.raises(ValidationError):
            golden_mean_shift().check_word("0110")
        with pytest.raises(UnsupportedConfiguration):
            sft(2, ["011"])

    def test_mixing_and_bridges(self):
        g = golden_mean_shift()
        assert g.mixing_constant() == 2
        assert word_str(g.bridge(1, 1)) == "0"
        assert len(g.bridge(0, 1)) == 0
        flip = sft(2, ["00", "11"])
        assert flip.is_irreducible() and not flip.is_mixing()

    @given(words3, words3)
    def test_first_disagreement_symmetry(self, a, b):
        y, z = as_word(a), as_word(b)
        assert first_disagreement(y, z) == first_disagreement(z, y)

    @given(words3, words3, words3)
    def test_ultrametric(self, a, b, c):
        n = min(len(a), len(b), len(c))
        fs = full_shift(2)
        x, y, z = a[:n], b[:n], c[:n]
        assert fs.distance(x, z) <= max(fs.distance(x, y), fs.distance(y, z)) + 1e-15


class TestToral:
    def test_cat_map_splitting(self):
        f = cat_map()
        assert math.isclose(f.unstable_rate, CAT_LAMBDA, rel_tol=1e-12)
        assert math.isclose(f.topological_unstable_entropy(), math.log(CAT_LAMBDA), rel_tol=1e-12)
        v = f.unstable_direction
        assert np.allclose(f.matrix @ v, CAT_LAMBDA * v)
        assert math.isclose(np.linalg.norm(v), 1.0)

    def test_product_has_neutral_centre(self):
        p = cat_rotation_product()
        assert p.splitting.dims == (1, 1, 1)
        assert math.isclose(p.unstable_rate, CAT_LAMBDA, rel_tol=1e-12)

    def test_det_invariant_named(self):
        with pytest.raises(ValidationError, match="det"):
            ToralAutomorphism(np.array([[2, 1], [1, 2]]))

    def test_apply_mod_one(self):
        f = cat_map()
        assert np.allclose(f.apply([0.5, 0.5]), [0.5, 0.0])
        orb = iterate(f, [0.0, 0.0], 5)
        assert np.allclose(orb.points, 0.0)

    def test_3d_has_one_unstable_direction(self):
        f = automorphism_3d()
        assert f.splitting.dims[2] == 1


class TestLeaves:
    def test_chart_inverse(self):
        seg = LinearLeaf(cat_map(), [0.3, 0.6], 0.1)
        t = np.linspace(-0.1, 0.1, 11)
        assert np.allclose(seg.coordinates(seg.chart(t)), t)
        with pytest.raises(DomainError):
            seg.coordinates(np.array([0.31, 0.6]))

    def test_radius_bound(self):
        with pytest.raises(ValidationError):
            LinearLeaf(cat_map(), [0.0, 0.0], 0.25)

    def test_bowen_distance_against_orbit(self):
        # independent oracle: iterate both points on the torus and read the
        # unstable coordinate of the wrapped difference
        f = cat_map()
        seg = LinearLeaf(f, [0.3, 0.6], 0.1)
        y, z = seg.chart(0.001), seg.chart(-0.0005)
        v = f.unstable_direction
        for n in (1, 3, 6):
            oy, oz = iterate(f, y, n).points, iterate(f, z, n).points
            d = oy - oz
            d -= np.round(d)
            ref = max(abs(float(di @ v)) for di in d)
            assert math.isclose(seg.bowen_u_distance(y, z, n), ref, rel_tol=1e-9)

    def test_ball_radius(self):
        assert math.isclose(u_ball_radius_linear(cat_map(), 3, 0.1), 0.1 / CAT_LAMBDA ** 2)

    def test_cylinder_leaf(self):
        seg = CylinderLeaf(full_shift(2), "0110", 0.25)
        assert word_str(seg.prefix) == "01"
        assert seg.bowen_u_distance("0110", "0111", 1) == 0.125
        assert seg.bowen_u_distance("0110", "0111", 3) == 0.5
        assert seg.class_depth(3, 0.5) == 3
        with pytest.raises(DomainError):
            seg.u_metric("0110", "1110")

    def test_leaf_segment_dispatch(self):
        assert isinstance(leaf_segment(cat_map(), [0, 0], 0.1), LinearLeaf)
        assert isinstance(leaf_segment(full_shift(2), "00", 1.0), CylinderLeaf)


class TestConfig:
    def test_kinds(self):
        assert system_from_config({"kind": "full_shift", "alphabet": 3}).alphabet_size == 3
        g = system_from_config({"kind": "sft", "forbidden": ["11"]})
        assert g.count_words(5) == 13
        assert system_from_config({"kind": "toral", "matrix": [[2, 1], [1, 1]]}).dim == 2
        assert system_from_config({"kind": "product"}).dim == 3

    def test_unknown_kind(self):
        with pytest.raises(ValidationError):
            system_from_config({"kind": "nope"})


@settings(max_examples=30, deadline=None)
@given(st.floats(-0.09, 0.09), st.floats(-0.09, 0.09), st.integers(1, 8))
def test_bowen_u_distance_closed_form(a, b, n):
    seg = LinearLeaf(cat_map(), [0.2, 0.7], 0.1)
    d = seg.bowen_u_distance(seg.chart(a), seg.chart(b), n)
    assert math.isclose(d, abs(a - b) * CAT_LAMBDA ** (n - 1), rel_tol=1e-7, abs_tol=1e-12)
