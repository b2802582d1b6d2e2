import numpy as np
import pytest

from pvlik import (DomainError, Family, SimConfig, Tails, TestSpec,
                   ThetaFixed, p_density, p_quantile, power, run_cloud)

from _oracles import log_simpson

SPEC1 = TestSpec(Family.TWO_SAMPLE, 10, Tails.ONE)
SPEC2 = TestSpec(Family.TWO_SAMPLE, 10, Tails.TWO)


def test_null_power_equals_alpha():
    for spec in (SPEC1, SPEC2):
        for alpha in [0.001, 0.05, 0.5, 0.9]:
            assert power(alpha, 0.0, spec) == pytest.approx(alpha, abs=1e-10)


def test_alpha_near_one_limit():
    assert power(0.9999, 0.5, SPEC1) >= 0.999
    assert power(0.9999, -3.0, SPEC2) >= 0.999


def test_alpha_domain():
    for bad in [0.0, 1.0, -0.1, 2.0]:
        with pytest.raises(DomainError):
            power(bad, 0.5, SPEC1)


def test_against_monte_carlo_oracle():
    cloud = run_cloud(SimConfig(spec=SPEC1, runs=200_000,
                                theta_mode=ThetaFixed(0.5), seed=42))
    emp = float((cloud.p <= 0.05).mean())
    se = np.sqrt(emp * (1 - emp) / len(cloud))
    assert abs(power(0.05, 0.5, SPEC1) - emp) < 3 * se


def test_monotone_in_alpha():
    alphas = np.linspace(0.01, 0.99, 40)
    for theta in [-1.0, 0.3, 2.0]:
        vals = [power(float(a), theta, SPEC2) for a in alphas]
        assert all(b > a for a, b in zip(vals, vals[1:]))


def test_one_tailed_monotone_in_theta():
    thetas = np.linspace(-3, 3, 31)
    vals = [power(0.05, float(t), SPEC1) for t in thetas]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_two_tailed_symmetric_and_monotone_in_abs_theta():
    thetas = np.linspace(0.1, 3, 15)
    vals = [power(0.05, float(t), SPEC2) for t in thetas]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    for t in thetas:
        assert power(0.05, float(t), SPEC2) == pytest.approx(
            power(0.05, -float(t), SPEC2), rel=1e-10)


@pytest.mark.parametrize("spec", [SPEC1, SPEC2], ids=["one", "two"])
@pytest.mark.parametrize("theta", [0.5, 1.0])
def test_power_is_integral_of_density(spec, theta):
    # ties power to the P-value density by quadrature (log mesh near 0)
    for alpha in [0.05, 0.5]:
        quad = log_simpson(lambda x: p_density(x, theta, spec),
                           1e-12, alpha, n=4000)
        assert quad == pytest.approx(power(alpha, theta, spec), abs=1e-6)


class TestPQuantile:
    def test_null_median(self):
        assert p_quantile(0.5, 0.0, SPEC1) == pytest.approx(0.5, abs=1e-9)

    def test_round_trip(self):
        for q in [0.1, 0.25, 0.5, 0.9]:
            for theta in [0.0, 0.5, 1.5]:
                x = p_quantile(q, theta, SPEC2)
                assert power(x, theta, SPEC2) == pytest.approx(q, abs=1e-9)

    def test_matches_empirical_median(self):
        cloud = run_cloud(SimConfig(spec=SPEC2, runs=100_000,
                                    theta_mode=ThetaFixed(1.0), seed=9))
        emp_median = float(np.median(cloud.p))
        analytic = p_quantile(0.5, 1.0, SPEC2)
        # SE of the sample median ~ 1/(2 f(m) sqrt(n)); f(m) ~ 2.9 here
        assert abs(emp_median - analytic) < 3 * 0.0006

    def test_domain(self):
        for bad in [0.0, 1.0]:
            with pytest.raises(DomainError):
                p_quantile(bad, 0.5, SPEC1)
