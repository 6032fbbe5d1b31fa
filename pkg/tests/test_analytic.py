import math

import numpy as np
import pytest

from analytic.asymptotic import (
    asymptotic_outage_high_snr, asymptotic_outage_large_D,
    high_snr_coefficient
)
from analytic.diversity import fit_diversity_order, loglog_slope
from analytic.goodput import goodput, outage_free_goodput
from analytic.identity import combinatorial_identity
from analytic.outage import (
    AUTO_SERIES_LIMIT, avg_outage, avg_outage_given_K, conditional_outage,
    conditional_success, group_size_pmf, ordered_distance_pdf, poisson_tail
)
from analytic.results import GoodputMethod, Method, OutageQuery, OutageResult
from core.allocation import build_plan
from core.channel import stats_for
from core.exceptions import ParameterDomainError, RangeRefusalError
from core.models import SystemConfig
from special.functions import regularized_lower_gamma
from special.quadrature import integrate_adaptive


def setup_for(cfg):
    return cfg, stats_for(cfg), build_plan(cfg)


class TestOutageQuery:

    def test_indices(self, cfg, stats, plan):
        with pytest.raises(ParameterDomainError):
            OutageQuery(3, 1, cfg, stats, plan)
        with pytest.raises(ParameterDomainError):
            OutageQuery(1, 3, cfg, stats, plan, group_size=2)

    def test_series_argument(self, cfg, stats, plan):
        q = OutageQuery(1, 1, cfg, stats, plan, group_size=3)
        expected = (4 / 3) * 30 ** 3 / (1e6 * 0.015625 / 3)
        assert q.series_argument() == pytest.approx(expected), (
            'Проверьте аргумент X = beta D^alpha / (snr theta K)'
        )

    def test_asymptotic_needs_note(self):
        with pytest.raises(ParameterDomainError):
            OutageResult(value=1.5, method=Method.ASYMPTOTIC_HIGH_SNR)
        clipped = OutageResult(value=1 + 1e-15, method=Method.AVERAGED_SERIES)
        assert clipped.value == 1.0, 'Проверьте обрезку точных значений в [0, 1]'


class TestConditionalOutage:

    def test_default_point(self, cfg, stats, plan):
        q = OutageQuery(1, 1, cfg, stats, plan, group_size=2)
        x = (4 / 3) * 30 ** 3 / (1e6 * plan.theta(1, 2, 1))
        assert conditional_outage(q, 30.0) == pytest.approx(
            regularized_lower_gamma(2, x)
        )
        assert conditional_outage(q, 30.0) + conditional_success(
            q, 30.0
        ) == pytest.approx(1.0)

    def test_single_stream_diversity(self):
        cfg, stats, plan = setup_for(SystemConfig(n_rx=2))
        q = OutageQuery(1, 1, cfg, stats, plan, group_size=1)
        x = stats.beta_of(1) * 10.0 ** 3 / (cfg.avg_snr * plan.theta(1, 1, 1))
        assert conditional_outage(q, 10.0) == pytest.approx(
            1 - math.exp(-x)
        ), 'Проверьте случай delta = 1: 1 - exp(-x)'

    def test_infinite_snr(self, stats, plan):
        cfg = SystemConfig(avg_snr=1e300)
        q = OutageQuery(1, 1, cfg, stats, plan, group_size=1)
        assert conditional_outage(q, 30.0) < 1e-100

    def test_distance_domain(self, cfg, stats, plan):
        q = OutageQuery(1, 1, cfg, stats, plan, group_size=1)
        with pytest.raises(ParameterDomainError):
            conditional_outage(q, 31.0)


class TestOrderedDistance:

    def test_closed_forms(self):
        assert ordered_distance_pdf(1, 1, 30.0, 12.0) == pytest.approx(
            2 * 12 / 30 ** 2
        )
        assert ordered_distance_pdf(2, 2, 30.0, 12.0) == pytest.approx(
            4 * 12 ** 3 / 30 ** 4
        )

    @pytest.mark.parametrize('group_size', [1, 2, 3, 4])
    def test_normalized(self, group_size):
        for k in range(1, group_size + 1):
            total = integrate_adaptive(
                lambda x: ordered_distance_pdf(k, group_size, 30.0, x),
                0.0, 30.0,
            )
            assert total == pytest.approx(1.0, rel=1e-10), (
                f'Проверьте нормировку плотности d_{k} при K={group_size}'
            )


class TestAveragedOutage:

    def test_series_matches_quadrature(self, cfg, stats, plan):
        q = OutageQuery(1, 1, cfg, stats, plan, group_size=3)
        series = avg_outage_given_K(q, path='series')
        reference = avg_outage_given_K(q, path='quadrature')
        assert series.method == Method.AVERAGED_SERIES
        assert series.value == pytest.approx(reference.value, rel=1e-8), (
            'Проверьте совпадение ряда вычетов и квадратуры'
        )

    def test_switches_to_quadrature(self, cfg, stats, plan):
        low = cfg.replace(avg_snr=1e3)
        q = OutageQuery(1, 1, low, stats, plan, group_size=3)
        assert avg_outage_given_K(q).method == Method.AVERAGED_QUADRATURE
        with pytest.raises(RangeRefusalError):
            avg_outage_given_K(q, path='series')

    def test_auto_series_limit(self, cfg, stats, plan):
        mid = cfg.replace(avg_snr=4.6e5)
        q = OutageQuery(1, 1, mid, stats, plan, group_size=3)
        assert AUTO_SERIES_LIMIT < q.series_argument() < 20
        auto = avg_outage_given_K(q)
        assert auto.method == Method.AVERAGED_QUADRATURE, (
            'Проверьте, что auto берет квадратуру за пределом ряда'
        )
        series = avg_outage_given_K(q, path='series')
        assert series.method == Method.AVERAGED_SERIES
        assert series.value == pytest.approx(auto.value, rel=1e-5)

    def test_needs_group_size(self, cfg, stats, plan):
        with pytest.raises(ParameterDomainError):
            avg_outage_given_K(OutageQuery(1, 1, cfg, stats, plan))

    def test_pmf(self, cfg):
        pmf = group_size_pmf(cfg)
        assert pmf.shape == (4,)
        assert math.fsum(pmf) == pytest.approx(1.0, abs=1e-15)
        empty = group_size_pmf(cfg.replace(intensity=1e-15))
        assert empty[0] == pytest.approx(1.0), 'Проверьте, что при lambda -> 0 K = 0'

    def test_poisson_tail(self, cfg):
        pmf = group_size_pmf(cfg)
        assert poisson_tail(cfg, 0) == 1.0
        assert poisson_tail(cfg, 4) == 0.0
        assert poisson_tail(cfg, 2) == pytest.approx(pmf[2] + pmf[3])

    def test_empty_cell(self, cfg, stats, plan):
        q = OutageQuery(1, 1, cfg.replace(intensity=1e-15), stats, plan)
        assert avg_outage(q).value < 1e-10

    def test_single_group_size(self):
        cfg, stats, plan = setup_for(SystemConfig(group_cap=1))
        q = OutageQuery(1, 1, cfg, stats, plan)
        fixed = avg_outage_given_K(q.for_group(1)).value
        assert avg_outage(q).value == pytest.approx(
            poisson_tail(cfg, 1) * fixed
        ), 'Проверьте, что при Q = k остается одно слагаемое'

    def test_complement(self, cfg, stats, plan):
        for k in range(1, 4):
            result = avg_outage(OutageQuery(2, k, cfg, stats, plan))
            assert result.value + result.complement == pytest.approx(
                poisson_tail(cfg, k), rel=1e-9
            ), 'Проверьте, что дополнение равно Pr(Q >= k) - p'

    def test_monotone_in_snr(self, cfg, stats, plan):
        values = [
            avg_outage(OutageQuery(
                1, 1, cfg.replace(avg_snr=10 ** (db / 10)), stats, plan,
            )).value
            for db in (40, 50, 60, 70)
        ]
        assert all(a > b for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize('k', [1, 2, 3])
    def test_monotone_in_radius(self, cfg, stats, plan, k):
        values = [
            avg_outage_given_K(OutageQuery(
                2, k, cfg.replace(radius=radius), stats, plan, group_size=3,
            )).value
            for radius in (5.0, 10.0, 20.0, 30.0, 40.0, 60.0)
        ]
        assert all(a <= b for a, b in zip(values, values[1:])), (
            'Проверьте, что отказ не убывает с радиусом соты'
        )


class TestHighSnrAsymptote:

    def test_coefficient_unit_case(self):
        cfg, stats, plan = setup_for(
            SystemConfig(radius=1.0, rates=1.0, corr_coeff=0.0)
        )
        assert plan.theta(1, 1, 1) == pytest.approx(1.0)
        assert high_snr_coefficient(1, 1, 1, cfg, stats, plan) == (
            pytest.approx(0.125)
        ), 'Проверьте коэффициент 2k/Gamma(delta + 1) ...'
        doubled = cfg.replace(radius=2.0)
        ratio = high_snr_coefficient(
            1, 1, 1, doubled, stats, plan
        ) / high_snr_coefficient(1, 1, 1, cfg, stats, plan)
        assert ratio == pytest.approx(2 ** 6), 'Проверьте масштаб 2^(alpha delta)'

    def test_positive(self, cfg, stats, plan):
        for m in (1, 2):
            for group_size in (1, 2, 3):
                for k in range(1, group_size + 1):
                    assert high_snr_coefficient(
                        m, group_size, k, cfg, stats, plan
                    ) > 0

    def test_matches_exact_at_high_snr(self, cfg, stats, plan):
        high = cfg.replace(avg_snr=1e10)
        q = OutageQuery(1, 1, high, stats, plan)
        asymptotic = asymptotic_outage_high_snr(q).value
        assert asymptotic == pytest.approx(avg_outage(q).value, rel=0.01)

    def test_exact_slope(self, cfg, stats, plan):
        curve = []
        for db in np.linspace(70, 80, 6):
            snr = 10 ** (db / 10)
            q = OutageQuery(1, 1, cfg.replace(avg_snr=snr), stats, plan)
            curve.append((snr, asymptotic_outage_high_snr(q).value))
        assert fit_diversity_order(curve) == pytest.approx(2.0, abs=1e-10)

    def test_regime_note(self, cfg, stats, plan):
        q = OutageQuery(1, 1, cfg.replace(avg_snr=1.0), stats, plan)
        result = asymptotic_outage_high_snr(q)
        assert result.value > 1 and result.regime_note, (
            'Проверьте пометку значения вне области применимости'
        )


class TestLargeRadiusAsymptote:

    def test_tends_to_one(self, cfg, stats, plan):
        q = OutageQuery(1, 1, cfg.replace(radius=1000.0), stats, plan)
        result = asymptotic_outage_large_D(q)
        assert 0.99 < result.value < 1.0
        assert result.complement == pytest.approx(1 - result.value, rel=1e-9)

    def test_single_user(self):
        cfg, stats, plan = setup_for(
            SystemConfig(group_cap=1, radius=1000.0)
        )
        q = OutageQuery(1, 1, cfg, stats, plan)
        exact = avg_outage_given_K(q.for_group(1), path='quadrature')
        assert asymptotic_outage_large_D(q).complement == pytest.approx(
            exact.complement, rel=1e-6
        ), 'Проверьте разложение Gamma(delta + 2/alpha) X^(-2/alpha)'


class TestGoodput:

    def test_outage_free_bound(self, cfg, stats, plan):
        tails = sum(poisson_tail(cfg, k) for k in (1, 2, 3))
        assert outage_free_goodput(cfg) == pytest.approx(2 * 2.0 * tails)
        assert goodput(cfg, stats, plan).value < outage_free_goodput(cfg)

    def test_empty_cell(self, cfg, stats, plan):
        empty = cfg.replace(intensity=1e-15)
        assert goodput(empty, stats, plan).value < 1e-9

    def test_per_term(self, cfg, stats, plan):
        result = goodput(cfg, stats, plan)
        assert set(result.per_term) == {
            (m, k) for m in (1, 2) for k in (1, 2, 3)
        }
        assert math.fsum(result.per_term.values()) == pytest.approx(
            result.value
        )

    def test_small_radius_asymptote(self, cfg, stats, plan):
        small = cfg.replace(radius=2.0)
        exact = goodput(small, stats, plan).value
        asymptotic = goodput(
            small, stats, plan, GoodputMethod.ASYMPTOTIC_SMALL_D
        ).value
        assert asymptotic == pytest.approx(exact, rel=0.01)

    def test_large_radius_asymptote(self, cfg, stats, plan):
        large = cfg.replace(radius=1000.0)
        exact = goodput(large, stats, plan).value
        asymptotic = goodput(
            large, stats, plan, 'asymptotic-large-D'
        ).value
        assert asymptotic == pytest.approx(exact, rel=0.05)

    def test_unknown_method(self, cfg, stats, plan):
        with pytest.raises(ParameterDomainError):
            goodput(cfg, stats, plan, 'fastest')

    def test_regime_note(self, cfg, stats, plan):
        bound = outage_free_goodput(cfg)
        far = goodput(
            cfg.replace(radius=200.0), stats, plan,
            GoodputMethod.ASYMPTOTIC_SMALL_D,
        )
        assert far.value < 0 and far.regime_note, (
            'Проверьте пометку асимптотики вне [0, граница без отказов]'
        )
        near = goodput(
            cfg.replace(radius=2.0), stats, plan,
            GoodputMethod.ASYMPTOTIC_SMALL_D,
        )
        assert 0 <= near.value <= bound and not near.regime_note

    @pytest.mark.parametrize('radius', [2.0, 30.0, 200.0, 1000.0])
    def test_exact_within_bounds(self, cfg, stats, plan, radius):
        point = cfg.replace(radius=radius)
        result = goodput(point, stats, plan)
        assert 0 <= result.value <= outage_free_goodput(point), (
            'Проверьте, что 0 <= goodput <= sum Pr(Q >= k) R'
        )
        assert not result.regime_note
        assert all(term >= 0 for term in result.per_term.values()), (
            'Проверьте неотрицательность слагаемых goodput'
        )


class TestIdentity:

    @pytest.mark.parametrize('group_size,k', [(1, 1), (5, 5), (3, 2), (20, 7)])
    def test_equals_one(self, group_size, k):
        assert combinatorial_identity(group_size, k) == 1

    def test_domain(self):
        with pytest.raises(ParameterDomainError):
            combinatorial_identity(2, 3)


class TestDiversity:

    def test_synthetic_power_law(self):
        curve = [(s, 3.0 * s ** -2) for s in (1e5, 1e6, 1e7)]
        assert fit_diversity_order(curve) == pytest.approx(2.0)
        assert loglog_slope([(1, 1), (10, 100)]) == pytest.approx(2.0)

    def test_needs_positive_points(self):
        with pytest.raises(ParameterDomainError):
            loglog_slope([(1, 0), (2, 1)])
