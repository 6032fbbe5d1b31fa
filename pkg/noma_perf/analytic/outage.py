"""Exact averaged outage: conditional law, distance order statistics,
fixed-K average and the Poisson mixture over the group size."""
import logging
import math

import numpy as np
from scipy import special, stats

from core.exceptions import ParameterDomainError, RangeRefusalError
from special.controls import QuadratureControl
from special.functions import (
    binomial, regularized_lower_gamma, regularized_upper_gamma
)
from special.quadrature import integrate_adaptive_with_error
from special.series import DEFAULT_SERIES, residue_series_with_error

from .results import Method, OutageResult

logger = logging.getLogger(__name__)

# relative accuracy matters here: averaged outages go down to 1e-12 and below
AVERAGING_QUADRATURE = QuadratureControl(abs_tol=1e-300, rel_tol=1e-10)
# past this argument the series only agrees with quadrature to about 1e-6
AUTO_SERIES_LIMIT = 10.0


def _require_group(q):
    if q.group_size is None:
        raise ParameterDomainError('query needs a group size K')
    return q.group_size


def conditional_outage(q, d):
    """Outage of user k on stream m given K users and d_k = d."""
    _require_group(q)
    if not 0 < d <= q.cfg.radius:
        raise ParameterDomainError(f'distance {d!r} outside (0, D]')
    return regularized_lower_gamma(q.delta, q.outage_argument(d))


def conditional_success(q, d):
    _require_group(q)
    if not 0 < d <= q.cfg.radius:
        raise ParameterDomainError(f'distance {d!r} outside (0, D]')
    return regularized_upper_gamma(q.delta, q.outage_argument(d))


def ordered_distance_pdf(k, group_size, radius, x):
    """Density of the k-th smallest of K i.i.d. distances with CDF x^2/D^2."""
    if not 1 <= k <= group_size:
        raise ParameterDomainError(
            f'need 1 <= k <= K, got k={k}, K={group_size}'
        )
    if not 0 <= x <= radius:
        raise ParameterDomainError(f'x={x!r} outside [0, D]')
    cdf = (x / radius) ** 2
    return (
        k * binomial(group_size, k) * cdf ** (k - 1)
        * (1.0 - cdf) ** (group_size - k) * 2.0 * x / radius ** 2
    )


def _averaged_by_series(q, x, series):
    k, group_size, delta = q.user_order, q.group_size, q.delta
    total, err = [], 0.0
    for j in range(group_size - k + 1):
        weight = binomial(group_size - k, j)
        value, term_err = residue_series_with_error(
            delta, x, k, j, q.cfg.path_loss_exp, series,
        )
        total.append((-1) ** j * weight * value)
        err += weight * term_err
    prefactor = 2 * k * binomial(group_size, k) / special.gamma(delta)
    return OutageResult(
        value=prefactor * math.fsum(total),
        method=Method.AVERAGED_SERIES,
        err_est=prefactor * err,
    )


def _averaged_by_quadrature(q, quadrature):
    k, group_size, radius = q.user_order, q.group_size, q.cfg.radius

    def failing(x):
        return conditional_outage(q, x) * ordered_distance_pdf(
            k, group_size, radius, x)

    def succeeding(x):
        return conditional_success(q, x) * ordered_distance_pdf(
            k, group_size, radius, x)

    # distance at which the gamma argument crosses 1
    knee = radius * q.series_argument() ** (-1.0 / q.cfg.path_loss_exp)
    value, err = integrate_adaptive_with_error(
        failing, 0.0, radius, quadrature, breakpoints=[knee],
    )
    complement, err_c = integrate_adaptive_with_error(
        succeeding, 0.0, radius, quadrature, breakpoints=[knee],
    )
    return OutageResult(
        value=value,
        method=Method.AVERAGED_QUADRATURE,
        err_est=max(err, err_c),
        complement=min(max(complement, 0.0), 1.0),
    )


def avg_outage_given_K(q, path='auto', series=DEFAULT_SERIES,
                       quadrature=AVERAGING_QUADRATURE):
    """Outage of the k-th nearest user averaged over d_k for fixed K.

    ``path`` is ``'series'`` (residue expansion, refused above the switch
    threshold), ``'quadrature'`` (reference) or ``'auto'``. The auto path
    takes the series only up to ``AUTO_SERIES_LIMIT``.
    """
    _require_group(q)
    if path not in ('auto', 'series', 'quadrature'):
        raise ParameterDomainError(f'unknown path {path!r}')
    x = q.series_argument()
    if path != 'quadrature':
        limit = series.switch_threshold
        if path == 'auto':
            limit = min(limit, AUTO_SERIES_LIMIT)
        if x <= limit:
            return _averaged_by_series(q, x, series)
        if path == 'series':
            raise RangeRefusalError(
                f'series argument {x!r} above {series.switch_threshold}'
            )
        logger.debug('series argument %.4g too large, using quadrature', x)
    return _averaged_by_quadrature(q, quadrature)


def group_size_pmf(cfg):
    """Pr(Q = K) for K = 0..Q under the truncated Poisson count."""
    mean = cfg.mean_users
    pmf = stats.poisson.pmf(np.arange(cfg.group_cap), mean)
    top = max(1.0 - math.fsum(pmf), 0.0)
    return np.append(pmf, top)


def poisson_tail(cfg, k):
    """Pr(Q >= k); zero beyond the group cap."""
    if k <= 0:
        return 1.0
    if k > cfg.group_cap:
        return 0.0
    return float(stats.poisson.sf(k - 1, cfg.mean_users))


def avg_outage(q, path='auto', series=DEFAULT_SERIES,
               quadrature=AVERAGING_QUADRATURE):
    """Outage of the k-th nearest user mixed over the group size.

    Realizations with fewer than k users contribute nothing; the result's
    complement is Pr(Q >= k) minus the outage.
    """
    if q.group_size is not None:
        q = q.for_group(None)
    pmf = group_size_pmf(q.cfg)
    values, complements, err = [], [], 0.0
    for group_size in range(q.user_order, q.cfg.group_cap + 1):
        weight = float(pmf[group_size])
        if weight == 0.0:
            continue
        result = avg_outage_given_K(
            q.for_group(group_size), path, series, quadrature,
        )
        values.append(weight * result.value)
        complements.append(weight * result.complement)
        err += weight * result.err_est
    return OutageResult(
        value=math.fsum(values),
        method=Method.POISSON_MIXED,
        err_est=err,
        complement=math.fsum(complements),
    )
