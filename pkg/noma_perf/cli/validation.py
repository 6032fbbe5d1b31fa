"""Cross-check suite: Monte Carlo against the closed forms and the
closed forms against each other.

The report depends only on (cfg, n_trials, seed, block size); it never
records timings.
"""
import json
import logging
import math

import numpy as np
from django.conf import settings
from scipy import stats as scistats

from analytic.goodput import goodput
from analytic.identity import combinatorial_identity
from analytic.outage import avg_outage, avg_outage_given_K, group_size_pmf
from analytic.results import OutageQuery
from core.allocation import build_plan
from core.channel import stats_for
from core.exceptions import InfeasibleAllocationError
from montecarlo.engine import DEFAULT_BLOCK, simulate
from montecarlo.intervals import normal_interval, wilson_interval
from montecarlo.sampling import sample_schur_complements
from montecarlo.streams import SCHUR_SAMPLES, block_generator

from .config import db_to_linear

logger = logging.getLogger(__name__)

def bonferroni(level, comparisons):
    """Per-comparison level keeping the family-wise level."""
    return 1.0 - (1.0 - level) / max(comparisons, 1)


def check_plan(plan):
    for group_size, thresholds in sorted(plan.thresholds.items()):
        bad = np.argwhere(thresholds.theta <= 0)
        if bad.size:
            m, k = (int(v) + 1 for v in bad[0])
            raise InfeasibleAllocationError(
                f'theta[{m},{k}] <= 0 for K={group_size}',
                stream=m, user_order=k,
            )


def _outage_comparisons(cfg, tally, stats, plan, level, limits):
    n = tally.n_trials
    z = float(scistats.norm.ppf(0.5 + level / 2.0))
    rows = []
    for m in range(1, cfg.n_streams + 1):
        for k in range(1, cfg.group_cap + 1):
            exact = avg_outage(OutageQuery(m, k, cfg, stats, plan)).value
            failures = int(tally.outage_counts[m - 1, k - 1])
            lo, hi = wilson_interval(failures, n, level)
            mean = failures / n
            passed = lo <= exact <= hi
            gap = abs(mean - exact) / exact if exact > 0 else 0.0
            # the gap bound only binds where the run can resolve it
            resolvable = exact >= limits['relative_gap_floor'] and (
                z * math.sqrt((1.0 - exact) / (n * exact))
                < limits['relative_gap']
            )
            if resolvable:
                passed = passed and gap < limits['relative_gap']
            rows.append({
                'stream': m, 'user_order': k, 'analytic': exact,
                'montecarlo': mean, 'ci': [lo, hi],
                'relative_gap': gap, 'passed': passed,
            })
    return rows


def check_outage(cfg, n_trials, seed, limits, **run):
    snrs = limits['snr_db']
    level = bonferroni(
        limits['confidence'], len(snrs) * cfg.n_streams * cfg.group_cap,
    )
    points = []
    for snr_db in snrs:
        point = cfg.replace(avg_snr=db_to_linear(snr_db))
        stats, plan = stats_for(point), build_plan(point)
        tally = simulate(point, stats, plan, n_trials, seed, **run)
        for row in _outage_comparisons(point, tally, stats, plan, level,
                                       limits):
            points.append({'snr_db': snr_db, **row})
    return all(p['passed'] for p in points), {
        'level': level, 'points': points,
    }


def check_goodput(cfg, stats, plan, tally, limits):
    exact = goodput(cfg, stats, plan).value
    lo, hi = normal_interval(
        tally.payoff_sum, tally.payoff_sumsq, tally.n_trials,
        limits['confidence'],
    )
    mean = tally.payoff_sum / tally.n_trials
    return lo <= exact <= hi, {
        'analytic': exact, 'montecarlo': mean, 'ci': [lo, hi],
    }


def check_gamma_law(cfg, seed, limits):
    """1/[Z^-1]_mm against Gamma(delta, rate beta_m / sigma_h^2).

    One KS test per (rho, stream); each must pass ks_p_value divided by
    the number of tests, so the whole family keeps the ks_p_value level.
    """
    correlations = sorted({0.0, cfg.corr_coeff})
    tests = len(correlations) * cfg.n_streams
    threshold = limits['ks_p_value'] / tests
    results = []
    for index, rho in enumerate(correlations):
        point = cfg.replace(corr_coeff=rho)
        stats = stats_for(point)
        rng = block_generator(seed, SCHUR_SAMPLES, index)
        samples = sample_schur_complements(
            point, stats, limits['ks_samples'], rng,
        )
        for m in range(1, cfg.n_streams + 1):
            law = scistats.gamma(
                cfg.diversity, scale=cfg.fading_power / stats.beta_of(m),
            )
            p_value = float(scistats.kstest(samples[:, m - 1], law.cdf).pvalue)
            results.append({
                'corr_coeff': rho, 'stream': m, 'p_value': p_value,
                'passed': p_value > threshold,
            })
    return all(r['passed'] for r in results), {
        'threshold': threshold, 'tests': results,
    }


def check_identity(limits):
    limit = limits['identity_limit']
    failures = [
        [group_size, k]
        for group_size in range(1, limit + 1)
        for k in range(1, group_size + 1)
        if combinatorial_identity(group_size, k) != 1
    ]
    return not failures, {'limit': limit, 'failures': failures}


def check_series(cfg, stats, plan, limits):
    """Residue series against quadrature wherever the series argument
    stays within the agreement range."""
    compared, worst = 0, 0.0
    for group_size in range(1, cfg.group_cap + 1):
        for m in range(1, cfg.n_streams + 1):
            for k in range(1, group_size + 1):
                q = OutageQuery(m, k, cfg, stats, plan, group_size)
                if q.series_argument() > limits['series_x_limit']:
                    continue
                series = avg_outage_given_K(q, path='series').value
                reference = avg_outage_given_K(q, path='quadrature').value
                scale = max(abs(reference), np.finfo(float).tiny)
                worst = max(worst, abs(series - reference) / scale)
                compared += 1
    return worst < limits['series_rel_tol'], {
        'compared': compared, 'worst_relative_gap': worst,
    }


def check_group_sizes(cfg, tally, limits):
    """Chi-square of the simulated group sizes against the truncated
    Poisson pmf; bins expecting fewer than five trials are pooled."""
    expected = group_size_pmf(cfg) * tally.n_trials
    observed = tally.group_counts.astype(float)
    keep = expected >= 5
    if not keep.all():
        pooled_e, pooled_o = expected[~keep].sum(), observed[~keep].sum()
        expected, observed = expected[keep], observed[keep]
        if pooled_e >= 5:
            expected = np.append(expected, pooled_e)
            observed = np.append(observed, pooled_o)
        elif expected.size:
            largest = int(np.argmax(expected))
            expected[largest] += pooled_e
            observed[largest] += pooled_o
    if expected.size < 2:
        return True, {'bins': int(expected.size), 'p_value': None}
    # pmf sums to one; rescale so both totals match exactly
    expected *= observed.sum() / expected.sum()
    p_value = float(scistats.chisquare(observed, expected).pvalue)
    return p_value > limits['chi2_p_value'], {
        'bins': int(expected.size), 'p_value': p_value,
    }


def run_validation(setup, n_trials, seed, threads=1,
                   block_size=DEFAULT_BLOCK, thresholds=None):
    """Run every check and return the report as a dict.

    Limits come from settings.NOMA_VALIDATION; ``thresholds`` overrides
    single entries.

    Raises InfeasibleAllocationError when the plan has a non-positive
    threshold.
    """
    limits = dict(settings.NOMA_VALIDATION)
    limits.update(thresholds or {})
    cfg, stats, plan = setup.cfg, setup.stats, setup.plan
    check_plan(plan)
    run = {'threads': threads, 'block_size': block_size}

    tally = simulate(cfg, stats, plan, n_trials, seed, **run)
    checks = [
        ('outage-agreement', lambda: check_outage(
            cfg, n_trials, seed, limits, **run)),
        ('goodput-agreement', lambda: check_goodput(
            cfg, stats, plan, tally, limits)),
        ('gamma-law', lambda: check_gamma_law(cfg, seed, limits)),
        ('identity', lambda: check_identity(limits)),
        ('series-vs-quadrature', lambda: check_series(
            cfg, stats, plan, limits)),
        ('group-size-pmf', lambda: check_group_sizes(cfg, tally, limits)),
    ]
    report = []
    for name, check in checks:
        passed, details = check()
        logger.info('check %s: %s', name, 'passed' if passed else 'FAILED')
        report.append({'name': name, 'passed': bool(passed),
                       'details': details})
    return {
        'seed': seed,
        'n_trials': n_trials,
        'passed': all(item['passed'] for item in report),
        'checks': report,
    }


def render_report(report):
    return json.dumps(report, indent=2, sort_keys=True) + '\n'


def failed_checks(report):
    return [item['name'] for item in report['checks'] if not item['passed']]
