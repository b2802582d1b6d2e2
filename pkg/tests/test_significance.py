import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pvlik import (DegenerateInputError, DomainError, Family, PValue,
                   SimConfig, Tails, TestSpec, ThetaFixed, central_t_cdf,
                   convert_tails, run_cloud, t_test)

from _oracles import ks_distance_uniform

SPEC2 = TestSpec(family=Family.TWO_SAMPLE, n=10, tails=Tails.TWO)


def test_spec_degrees_of_freedom():
    assert TestSpec(Family.TWO_SAMPLE, 10).df == 18.0
    assert TestSpec(Family.ONE_SAMPLE, 10).df == 9.0
    assert TestSpec(Family.PAIRED, 10).df == 9.0


def test_spec_noncentrality():
    assert TestSpec(Family.TWO_SAMPLE, 10).ncp(1.0) == pytest.approx(math.sqrt(5))
    assert TestSpec(Family.ONE_SAMPLE, 10).ncp(1.0) == pytest.approx(math.sqrt(10))


def test_spec_rejects_tiny_n():
    with pytest.raises(DomainError):
        TestSpec(Family.TWO_SAMPLE, 1)


def test_identical_groups_give_zero_effect():
    g = [float(i) for i in range(10)]
    t, p = t_test(g, g, SPEC2)
    assert t == 0.0
    assert p.value == pytest.approx(1.0, abs=1e-14)  # clamped below 1
    assert p.value < 1.0


def test_zero_variance_is_degenerate():
    with pytest.raises(DegenerateInputError):
        t_test([1.0] * 10, [1.0] * 10, SPEC2)


def test_size_mismatch():
    with pytest.raises(DomainError):
        t_test([1.0, 2.0, 3.0], [1.0] * 10, SPEC2)


def test_fixed_dataset_matches_hand_recomputation():
    # frozen dataset; recompute the pooled two-sample statistic by hand
    a = [4.17, 5.58, 5.18, 6.11, 4.50, 4.61, 5.17, 4.53, 5.33, 5.14]
    b = [4.81, 4.17, 4.41, 3.59, 5.87, 3.83, 6.03, 4.89, 4.32, 4.69]
    t, p = t_test(a, b, SPEC2)
    ma = sum(a) / 10
    mb = sum(b) / 10
    va = sum((x - ma) ** 2 for x in a) / 9
    vb = sum((x - mb) ** 2 for x in b) / 9
    t_hand = (ma - mb) / math.sqrt((va + vb) / 2 * 2 / 10)
    p_hand = 2 * (1 - central_t_cdf(abs(t_hand), 18.0))
    assert t == pytest.approx(t_hand, abs=1e-12)
    assert p.value == pytest.approx(p_hand, abs=1e-12)


def test_one_sample_and_paired():
    x = [0.3, -0.1, 0.8, 0.4, 0.2, 0.0, 0.5, 0.7, -0.2, 0.35]
    spec = TestSpec(Family.ONE_SAMPLE, 10, Tails.TWO)
    t, p = t_test(x, spec=spec)
    xa = np.array(x)
    t_hand = xa.mean() / math.sqrt(xa.var(ddof=1) / 10)
    assert t == pytest.approx(t_hand, abs=1e-12)
    # paired on (x + y, y) equals one-sample on x
    y = [1.0, 2.0, 0.5, -1.0, 3.0, 0.1, 0.2, 0.9, 1.5, -0.4]
    spec_p = TestSpec(Family.PAIRED, 10, Tails.TWO)
    t2, p2 = t_test(list(np.array(x) + np.array(y)), y, spec_p)
    assert t2 == pytest.approx(t, abs=1e-9)
    assert p2.value == pytest.approx(p.value, abs=1e-9)


def test_null_p_values_are_uniform():
    spec1 = TestSpec(Family.TWO_SAMPLE, 10, Tails.ONE)
    cloud = run_cloud(SimConfig(spec=spec1, runs=30_000,
                                theta_mode=ThetaFixed(0.0), seed=11))
    assert ks_distance_uniform(cloud.p) < 0.012  # ~2/sqrt(n)


class TestConvertTails:
    def test_paper_examples(self):
        one = convert_tails(PValue(0.01, Tails.TWO), t_sign=1)
        assert one.value == pytest.approx(0.005)
        one_neg = convert_tails(PValue(0.01, Tails.TWO), t_sign=-1)
        assert one_neg.value == pytest.approx(0.995)
        two = convert_tails(PValue(0.05, Tails.ONE))
        assert two.value == pytest.approx(0.1)
        assert two.direction == 1

    def test_ambiguous_half(self):
        out = convert_tails(PValue(0.5, Tails.ONE))
        assert out.tails is Tails.TWO
        assert out.direction == 0
        assert out.value < 1.0

    def test_missing_sign_raises(self):
        with pytest.raises(DomainError):
            convert_tails(PValue(0.3, Tails.TWO, direction=0))

    @given(p=st.floats(1e-6, 1.0 - 1e-6, exclude_max=True),
           sign=st.sampled_from([-1, 1]))
    @settings(max_examples=200)
    def test_involution(self, p, sign):
        two = PValue(p, Tails.TWO, direction=sign)
        back = convert_tails(convert_tails(two))
        assert back.tails is Tails.TWO
        assert back.value == pytest.approx(p, rel=1e-12)
        assert back.direction == sign

    @given(p=st.floats(1e-6, 0.999999))
    @settings(max_examples=200)
    def test_one_tailed_below_half_iff_positive(self, p):
        one = PValue(p, Tails.ONE)
        if p == 0.5:
            return
        two = convert_tails(one)
        assert (two.direction > 0) == (p < 0.5)


def test_two_tailed_is_twice_smaller_one_tail():
    rng = np.random.default_rng(3)
    spec1 = TestSpec(Family.TWO_SAMPLE, 10, Tails.ONE)
    for _ in range(20):
        a = rng.standard_normal(10) + rng.uniform(-1, 1)
        b = rng.standard_normal(10)
        _, p1 = t_test(a, b, spec1)
        _, p2 = t_test(a, b, SPEC2)
        assert p2.value == pytest.approx(
            2 * min(p1.value, 1 - p1.value), rel=1e-10)
