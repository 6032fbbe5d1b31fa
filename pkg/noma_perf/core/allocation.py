import logging
import math

import numpy as np

from .exceptions import InfeasibleAllocationError, ParameterDomainError
from .models import NomaPlan, PowerAllocation, SicThresholds

logger = logging.getLogger(__name__)


def _rate_matrix(rates, group_size):
    rates = np.asarray(rates, dtype=float)
    if rates.ndim == 0:
        rates = np.full((1, group_size), float(rates))
    if rates.ndim != 2 or rates.shape[1] < group_size:
        raise ParameterDomainError(
            f'rate matrix of shape {rates.shape} does not cover '
            f'{group_size} users'
        )
    return rates[:, :group_size]


def check_feasibility(alloc, rates):
    """First (m, i) with R_{m,i} >= log2(1 + zeta_i / sum_{l<i}) raises."""
    rates = _rate_matrix(rates, alloc.group_size)
    for i in range(2, alloc.group_size + 1):
        ceiling = math.log2(1.0 + alloc.zeta(i) / alloc.interference(i))
        for m in range(1, rates.shape[0] + 1):
            if not rates[m - 1, i - 1] < ceiling:
                raise InfeasibleAllocationError(
                    f'rate {rates[m - 1, i - 1]} of stream {m}, user {i} '
                    f'is not below log2(1 + zeta_i / sum) = {ceiling}',
                    stream=m, user_order=i,
                )


def default_power_allocation(group_size, rate, eps, rates=None):
    """Backward recursion zeta_k = (1 - sum_{l>k} zeta_l)(1 - eps 2^-R).

    zeta_1 takes what is left. Feasibility is checked against ``rates``
    (a stream x user matrix) or, when absent, against the common ``rate``.
    """
    if group_size < 1:
        raise ParameterDomainError('group size must be >= 1')
    if not rate > 0:
        raise ParameterDomainError('rate must be positive')
    if not 0 <= eps <= 1:
        raise ParameterDomainError('eps must lie in [0, 1]')

    share = 1.0 - eps * 2.0 ** (-rate)
    coeffs = [0.0] * group_size
    for k in range(group_size, 1, -1):
        coeffs[k - 1] = (1.0 - math.fsum(coeffs[k:])) * share
    coeffs[0] = 1.0 - math.fsum(coeffs[1:])

    for k, zeta in enumerate(coeffs, start=1):
        if not zeta > 0:
            raise InfeasibleAllocationError(
                f'user {k} receives no power (eps={eps})',
                stream=1, user_order=k,
            )
    alloc = PowerAllocation(coeffs=tuple(coeffs))
    check_feasibility(alloc, rate if rates is None else rates)
    return alloc


def sic_thresholds(alloc, rates):
    """theta_{m,k} = min_{i in [k, K]} zeta_i/(2^R_{m,i} - 1) - sum_{l<i}."""
    rates = _rate_matrix(rates, alloc.group_size)
    zeta = np.array(alloc.coeffs)
    before = np.concatenate(([0.0], np.cumsum(zeta)[:-1]))
    margins = zeta[None, :] / (np.power(2.0, rates) - 1.0) - before[None, :]
    # running minimum from the last user backwards
    theta = np.minimum.accumulate(margins[:, ::-1], axis=1)[:, ::-1]

    bad = np.argwhere(theta <= 0)
    if bad.size:
        m, k = (int(v) + 1 for v in bad[0])
        raise InfeasibleAllocationError(
            f'theta[{m},{k}] = {theta[m - 1, k - 1]!r} <= 0; SIC cannot '
            'remove the interference of the farther users',
            stream=m, user_order=k,
        )
    return SicThresholds(theta=theta)


def build_plan(cfg):
    """Allocation and thresholds for every realizable group size."""
    rate = float(np.max(cfg.rates))
    allocations, thresholds = {}, {}
    for group_size in range(1, cfg.group_cap + 1):
        alloc = default_power_allocation(
            group_size, rate, cfg.alloc_eps, rates=cfg.rates,
        )
        allocations[group_size] = alloc
        thresholds[group_size] = sic_thresholds(alloc, cfg.rates)
    logger.debug('plan built for Q=%s', cfg.group_cap)
    return NomaPlan(allocations=allocations, thresholds=thresholds)
