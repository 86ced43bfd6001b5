"""Core model tests: stationary chain, time partition, mixing, totals."""

from dataclasses import replace

import numpy as np
import pytest

from ltepower import (
    ClassicRegimeError,
    ContextProfile,
    DegenerateRateError,
    DeviceBandProfile,
    InvalidInputError,
    TrafficScenario,
    classic_uplink_total_power,
    mixed_state_power,
    service_rates,
    stationary_distribution,
    time_partition,
    total_power,
)

DEVICE = DeviceBandProfile(
    name="handset-a-800",
    frequency_mhz=800.0,
    p_idle_mw=97.0,
    p_low_mw=753.0,
    p_high_mw=1912.0,
    p_max_mw=3053.0,
    gamma_dbm=15.0,
    delta_ca_mw=190.0,
    rb_slope_mw_per_rb=0.8,
)


def ctmc_stationary(arrival_rates, service_rates_):
    """Independent oracle: stationary vector of the explicit 4x4 generator."""
    q = np.zeros((4, 4))
    q[0, 1:] = arrival_rates
    q[0, 0] = -np.sum(arrival_rates)
    for i, mu in enumerate(service_rates_, start=1):
        q[i, 0] = mu
        q[i, i] = -mu
    system = np.vstack([q.T, np.ones(4)])
    rhs = np.array([0.0, 0.0, 0.0, 0.0, 1.0])
    solution, *_ = np.linalg.lstsq(system, rhs, rcond=None)
    return solution


def scenario(**overrides) -> TrafficScenario:
    base = dict(
        lambda_per_s=1.0 / 300.0,
        d_dl_bit=1e9,
        d_dlul=0.02,
        r_dlul=0.5,
        r_dl_bit_per_s=20e6,
        a_ca=2.0,
        ca_enabled=True,
    )
    base.update(overrides)
    return TrafficScenario(**base)


class TestServiceRates:
    def test_direct_ratio(self):
        ctx = ContextProfile(theta=(0.5, 0.3, 0.2), max_state_rate_factor=1.0)
        mu = service_rates(scenario(r_dl_bit_per_s=50e6), ctx)
        assert mu == (0.05, 0.05, 0.05)

    def test_capped_state_scaling(self):
        ctx = ContextProfile(theta=(0.5, 0.3, 0.2), max_state_rate_factor=0.5)
        mu = service_rates(scenario(r_dl_bit_per_s=50e6), ctx)
        assert mu == (0.05, 0.05, 0.025)

    def test_mean_transfer_time_hand_value(self):
        ctx = ContextProfile(theta=(0.5, 0.3, 0.2), max_state_rate_factor=0.5)
        mu = service_rates(scenario(r_dl_bit_per_s=36e6), ctx)
        assert abs(1.0 / mu[0] - 27.78) < 5e-3


class TestStationaryDistribution:
    def test_no_arrivals_limit(self):
        dist = stationary_distribution(1e-12, (0.6, 0.3, 0.1), (0.05, 0.05, 0.025))
        assert abs(dist.p[0] - 1.0) < 1e-9

    def test_single_state_balance(self):
        dist = stationary_distribution(0.05, (1.0, 0.0, 0.0), (0.05, 0.05, 0.05))
        assert dist.p == (0.5, 0.5, 0.0, 0.0)

    def test_matches_generator_oracle(self):
        lam, theta, mu = 1.0 / 300.0, (0.6, 0.3, 0.1), (0.05, 0.05, 0.025)
        dist = stationary_distribution(lam, theta, mu)
        reference = ctmc_stationary([t * lam for t in theta], mu)
        assert np.max(np.abs(np.array(dist.p) - reference)) < 1e-10

    def test_matches_generator_oracle_randomized(self):
        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(1000):
            lam = rng.uniform(1e-4, 1.0)
            theta = tuple(rng.dirichlet((1.0, 1.0, 1.0)))
            mu = tuple(rng.uniform(1e-3, 10.0, 3))
            dist = stationary_distribution(lam, theta, mu)
            reference = ctmc_stationary([t * lam for t in theta], mu)
            worst = max(worst, float(np.max(np.abs(np.array(dist.p) - reference))))
        assert worst <= 1e-9

    def test_normalization_randomized(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            dist = stationary_distribution(
                rng.uniform(1e-6, 10.0),
                tuple(rng.dirichlet((2.0, 2.0, 2.0))),
                tuple(rng.uniform(1e-4, 100.0, 3)),
            )
            assert abs(sum(dist.p) - 1.0) <= 1e-12
            assert all(p >= 0.0 for p in dist.p)
            assert dist.p[0] > 0.0

    def test_zero_rate_rejected(self):
        with pytest.raises(DegenerateRateError):
            stationary_distribution(0.1, (0.5, 0.3, 0.2), (0.05, 0.0, 0.025))


class TestTimePartition:
    def test_no_boost(self):
        s = scenario(a_ca=1.0, ca_enabled=False)
        part = time_partition(s, 0.02, 10e6)
        assert part[0] == pytest.approx(0.04, abs=1e-12)
        assert part[1] == pytest.approx(0.96, abs=1e-12)
        assert part[2] == 0.0

    def test_stock_ratios_with_boost_two(self):
        s = scenario()
        part = time_partition(s, 0.02, 10e6)
        assert part[0] == pytest.approx(0.04, abs=1e-12)
        assert part[1] == pytest.approx(0.46, abs=1e-12)
        assert part[2] == pytest.approx(0.5, abs=1e-12)

    def test_boundary_leaves_no_pure_downlink(self):
        s = scenario(d_dlul=0.25, r_dlul=0.5)  # d/r equals 1/a exactly
        part = time_partition(s, 0.02, 10e6)
        assert part[1] == 0.0
        assert part[0] == pytest.approx(0.5, abs=1e-12)

    def test_uplink_dominated_scenario_rejected(self):
        with pytest.raises(ClassicRegimeError):
            scenario(d_dlul=0.6, r_dlul=0.5, a_ca=1.0, ca_enabled=False)

    def test_uplink_dominated_boost_rejected(self):
        with pytest.raises(ClassicRegimeError):
            scenario(d_dlul=0.3, r_dlul=0.5, a_ca=2.0)

    def test_uplink_fraction_identical_across_states(self):
        rng = np.random.default_rng(23)
        ctx = ContextProfile(theta=(0.5, 0.3, 0.2), max_state_rate_factor=0.7)
        for _ in range(1000):
            a_ca = rng.uniform(1.0, 2.5)
            r_dlul = rng.uniform(0.4, 1.0)
            s = scenario(
                lambda_per_s=rng.uniform(1e-4, 1.0),
                d_dl_bit=rng.uniform(1e6, 1e10),
                d_dlul=rng.uniform(0.001, 0.9 * r_dlul / a_ca),
                r_dlul=r_dlul,
                r_dl_bit_per_s=rng.uniform(1e6, 1e8),
                a_ca=a_ca,
            )
            from ltepower.model import uplink_rates

            mu = service_rates(s, ctx)
            r_ul = uplink_rates(s, ctx)
            fractions = [time_partition(s, m, r)[0] for m, r in zip(mu, r_ul)]
            expected = s.d_dlul / s.r_dlul
            assert max(abs(f - expected) for f in fractions) <= 1e-12
            for m, r in zip(mu, r_ul):
                triple = time_partition(s, m, r)
                assert abs(sum(triple) - 1.0) <= 1e-12
                assert all(f >= 0.0 for f in triple)


class TestMixedStatePower:
    def test_pure_uplink_recovers_state_powers(self):
        mixed = mixed_state_power(DEVICE, (1.0, 0.0, 0.0), ca_enabled=False)
        assert mixed == (753.0, 1912.0, 3053.0)

    def test_pure_downlink_costs_low_state(self):
        mixed = mixed_state_power(DEVICE, (0.0, 1.0, 0.0), ca_enabled=False)
        assert mixed == (753.0, 753.0, 753.0)

    def test_hand_computed_mix_with_carrier_penalty(self):
        mixed = mixed_state_power(DEVICE, (0.04, 0.46, 0.5), ca_enabled=True)
        assert mixed[0] == pytest.approx(520.0, abs=1e-9)

    def test_penalty_never_touches_idle_share(self):
        with_ca = mixed_state_power(DEVICE, (0.0, 0.0, 1.0), ca_enabled=True)
        without = mixed_state_power(DEVICE, (0.0, 0.0, 1.0), ca_enabled=False)
        assert with_ca == without == (97.0, 97.0, 97.0)


class TestTotalPower:
    def test_idle_limit(self, plain_context):
        report = total_power(
            DEVICE, plain_context, scenario(lambda_per_s=1e-12)
        )
        assert report.total_power_mw == pytest.approx(97.0, rel=1e-6)

    def test_savings_zero_without_aggregation(self, plain_context):
        report = total_power(
            DEVICE, plain_context, scenario(a_ca=1.0, ca_enabled=False)
        )
        assert report.savings_fraction == 0.0
        assert report.baseline_total_power_mw == report.total_power_mw

    def test_strictly_decreasing_in_boost(self, plain_context):
        boosts = np.linspace(1.0, 20.0, 40)
        totals = [
            total_power(DEVICE, plain_context, scenario(a_ca=float(a))).total_power_mw
            for a in boosts
        ]
        assert all(b < a for a, b in zip(totals, totals[1:]))

    def test_no_boost_no_penalty_recovers_plain_model(self, plain_context):
        quiet = replace(DEVICE, delta_ca_mw=0.0)
        with_flag = total_power(
            quiet, plain_context, scenario(a_ca=1.0, ca_enabled=True)
        )
        without = total_power(
            quiet, plain_context, scenario(a_ca=1.0, ca_enabled=False)
        )
        assert with_flag.total_power_mw == without.total_power_mw
        assert with_flag.mixed_power_mw == without.mixed_power_mw
        assert with_flag.savings_fraction == 0.0

    def test_bounds_randomized(self):
        rng = np.random.default_rng(31)
        for _ in range(1000):
            theta = tuple(rng.dirichlet((1.5, 1.5, 1.5)))
            ctx = ContextProfile(
                theta=theta, max_state_rate_factor=rng.uniform(0.2, 1.0)
            )
            s = scenario(
                lambda_per_s=rng.uniform(1e-5, 1.0),
                d_dl_bit=rng.uniform(1e5, 1e11),
                a_ca=rng.uniform(1.0, 5.0),
            )
            report = total_power(DEVICE, ctx, s)
            assert DEVICE.p_idle_mw <= report.total_power_mw
            assert report.total_power_mw <= DEVICE.p_max_mw + DEVICE.delta_ca_mw
            assert report.savings_fraction <= 1.0
            assert abs(sum(report.stationary.p) - 1.0) <= 1e-12

    def test_deterministic_bitwise(self, plain_context):
        first = total_power(DEVICE, plain_context, scenario())
        second = total_power(DEVICE, plain_context, scenario())
        assert first == second


class TestClassicUplinkPath:
    def test_idle_limit(self, plain_context):
        value = classic_uplink_total_power(
            DEVICE, plain_context, 1e-12, d_ul_bit=2e7, r_ul_bit_per_s=10e6
        )
        assert value == pytest.approx(97.0, rel=1e-6)

    def test_saturation_limit(self):
        ctx = ContextProfile(theta=(1.0, 0.0, 0.0))
        value = classic_uplink_total_power(
            DEVICE, ctx, 1.0, d_ul_bit=1e15, r_ul_bit_per_s=10e6
        )
        assert value == pytest.approx(753.0, rel=1e-6)

    def test_agrees_with_all_uplink_downlink_partition(self, plain_context):
        s = scenario(d_dlul=0.5, r_dlul=0.5, a_ca=1.0, ca_enabled=False)
        downlink = total_power(DEVICE, plain_context, s).total_power_mw
        classic = classic_uplink_total_power(
            DEVICE,
            plain_context,
            s.lambda_per_s,
            d_ul_bit=s.d_ul_bit,
            r_ul_bit_per_s=s.r_dlul * s.r_dl_bit_per_s,
        )
        assert abs(downlink - classic) < 1e-9

    def test_rejects_bad_sizes(self, plain_context):
        with pytest.raises(InvalidInputError):
            classic_uplink_total_power(DEVICE, plain_context, 0.1, 0.0, 1e6)


class TestProfileValidation:
    def test_state_power_ordering_enforced(self):
        with pytest.raises(InvalidInputError):
            DeviceBandProfile(
                frequency_mhz=800.0,
                p_idle_mw=500.0,
                p_low_mw=400.0,
                p_high_mw=1000.0,
                p_max_mw=2000.0,
                gamma_dbm=12.0,
                delta_ca_mw=0.0,
            )

    def test_breakpoint_range_enforced(self):
        with pytest.raises(InvalidInputError):
            DeviceBandProfile(
                frequency_mhz=800.0,
                p_idle_mw=50.0,
                p_low_mw=400.0,
                p_high_mw=1000.0,
                p_max_mw=2000.0,
                gamma_dbm=23.0,
                delta_ca_mw=0.0,
            )

    def test_theta_must_normalize(self):
        with pytest.raises(InvalidInputError):
            ContextProfile(theta=(0.5, 0.4, 0.2))

    def test_ca_flag_forces_unity_boost(self):
        with pytest.raises(InvalidInputError):
            scenario(a_ca=1.5, ca_enabled=False)
