import math

from scipy import special

from special.functions import binomial, regularized_upper_gamma

from .outage import group_size_pmf
from .results import Method, OutageQuery, OutageResult


def high_snr_coefficient(m, group_size, k, cfg, stats, plan):
    """vartheta_{m,K,k}: outage ~ vartheta * avg_snr^-delta as avg_snr grows.

    Gamma(delta + 1) in the denominator absorbs the 1/(tau + delta) factor
    of the leading (tau = 0) residue.
    """
    delta, alpha = cfg.diversity, cfg.path_loss_exp
    theta = plan.theta(m, group_size, k)
    scale = (
        stats.beta_of(m) * cfg.radius ** alpha / (theta * cfg.path_loss_ref)
    )
    inner = math.fsum(
        (-1) ** j * binomial(group_size - k, j)
        / (alpha * delta + 2 * (k + j))
        for j in range(group_size - k + 1)
    )
    return (
        2 * k / special.gamma(delta + 1) * binomial(group_size, k)
        * scale ** delta * inner
    )


def _first_neglected_term(m, group_size, k, cfg, stats, plan):
    """|tau = 1| residue contribution, used as the error estimate."""
    delta, alpha = cfg.diversity, cfg.path_loss_exp
    q = OutageQuery(m, k, cfg, stats, plan, group_size)
    x = q.series_argument()
    total = math.fsum(
        binomial(group_size - k, j)
        / ((delta + 1) * (alpha * (delta + 1) + 2 * (k + j)))
        for j in range(group_size - k + 1)
    )
    return (
        2 * k / special.gamma(delta) * binomial(group_size, k)
        * x ** (delta + 1) * total
    )


def asymptotic_outage_high_snr(q):
    cfg = q.cfg
    pmf = group_size_pmf(cfg)
    mixture, err = [], 0.0
    for group_size in range(q.user_order, cfg.group_cap + 1):
        weight = float(pmf[group_size])
        args = (q.stream, group_size, q.user_order, cfg, q.stats, q.plan)
        mixture.append(weight * high_snr_coefficient(*args))
        err += weight * _first_neglected_term(*args)
    value = cfg.avg_snr ** (-q.delta) * math.fsum(mixture)
    note = ''
    if value > 1:
        note = (
            f'asymptotic value {value:.4g} exceeds 1: outside the high-SNR '
            '/ small-D regime'
        )
    return OutageResult(
        value=value,
        method=Method.ASYMPTOTIC_HIGH_SNR,
        err_est=err,
        regime_note=note,
    )


def asymptotic_outage_large_D(q):
    """Large-D / low-SNR expansion, evaluated at K = Q."""
    cfg, k = q.cfg, q.user_order
    group_cap, delta, alpha = cfg.group_cap, q.delta, cfg.path_loss_exp
    x = q.series_argument(group_cap)
    terms = []
    for j in range(group_cap - k + 1):
        n = k + j
        terms.append(
            (-1) ** j * binomial(group_cap - k, j)
            * special.gamma(delta + 2 * n / alpha) / n
            * x ** (-2 * n / alpha)
        )
    complement = (
        binomial(group_cap, k) * k / special.gamma(delta) * math.fsum(terms)
    )
    value = 1.0 - complement
    note = ''
    if not 0 <= value <= 1:
        note = (
            f'asymptotic value {value:.4g} outside [0, 1]: outside the '
            'large-D / low-SNR regime'
        )
    # the expansion neglects the cell-edge tail, of the order of Q(delta, x)
    err = binomial(group_cap, k) * regularized_upper_gamma(delta, x)
    return OutageResult(
        value=value,
        method=Method.ASYMPTOTIC_LARGE_D,
        err_est=err,
        regime_note=note,
        complement=complement,
    )
