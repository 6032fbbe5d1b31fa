import math

from scipy import special

from core.exceptions import ParameterDomainError
from special.functions import binomial

from .asymptotic import asymptotic_outage_high_snr
from .outage import avg_outage, poisson_tail
from .results import GoodputMethod, GoodputResult, OutageQuery


def outage_free_goodput(cfg):
    """sum_m sum_k Pr(Q >= k) R_{k,m}: the goodput with no outage at all."""
    return math.fsum(
        poisson_tail(cfg, k) * cfg.rate(m, k)
        for m in range(1, cfg.n_streams + 1)
        for k in range(1, cfg.group_cap + 1)
    )


def _exact_term(q):
    # Pr(Q >= k) - outage, accumulated without cancellation
    result = avg_outage(q)
    return max(result.complement, 0.0), result.err_est


def _small_d_term(q):
    outage = asymptotic_outage_high_snr(q).value
    return poisson_tail(q.cfg, q.user_order) - outage, 0.0


def _large_d_term(q):
    cfg, k = q.cfg, q.user_order
    delta, alpha = cfg.diversity, cfg.path_loss_exp
    theta = q.theta(cfg.group_cap)
    ratio = q.beta / (cfg.avg_snr * theta * cfg.path_loss_ref)
    value = (
        binomial(cfg.group_cap, k)
        * special.gamma(delta + 2 * k / alpha) / special.gamma(delta)
        * ratio ** (-2 * k / alpha) * cfg.radius ** (-2 * k)
    )
    return value, 0.0


TERMS = {
    GoodputMethod.EXACT: _exact_term,
    GoodputMethod.ASYMPTOTIC_SMALL_D: _small_d_term,
    GoodputMethod.ASYMPTOTIC_LARGE_D: _large_d_term,
}


def goodput(cfg, stats, plan, method=GoodputMethod.EXACT):
    """Average number of bits delivered per transmission."""
    try:
        method = GoodputMethod(method)
    except ValueError as exc:
        raise ParameterDomainError(
            f'unknown goodput method {method!r}'
        ) from exc
    term = TERMS[method]
    per_term, err = {}, 0.0
    for m in range(1, cfg.n_streams + 1):
        for k in range(1, cfg.group_cap + 1):
            q = OutageQuery(m, k, cfg, stats, plan)
            success, term_err = term(q)
            per_term[(m, k)] = success * cfg.rate(m, k)
            err += term_err * cfg.rate(m, k)
    value = math.fsum(per_term.values())
    bound = outage_free_goodput(cfg)
    note = ''
    if method == GoodputMethod.EXACT:
        # per-term rounding may step past the outage-free bound
        value = min(max(value, 0.0), bound)
    elif not 0 <= value <= bound:
        note = (
            f'asymptotic goodput {value:.4g} outside [0, {bound:.4g}]: '
            f'outside the {method.value} regime'
        )
    return GoodputResult(
        value=value,
        method=method,
        per_term=per_term,
        err_est=err,
        regime_note=note,
    )
