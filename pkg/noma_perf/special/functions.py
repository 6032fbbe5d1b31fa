"""Incomplete gamma and binomial helpers.

scipy's gammainc/gammaincc switch between the power series (x < a + 1) and
the continued fraction internally; the wrappers add domain checks.
"""
import math

import numpy as np
from scipy import special

from core.exceptions import ParameterDomainError

EXACT_BINOMIAL_LIMIT = 60


def _check_gamma_args(a, x):
    if np.any(np.asarray(a) <= 0):
        raise ParameterDomainError(f'gamma shape must be positive, got {a!r}')
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(np.isnan(x)):
        raise ParameterDomainError('gamma argument must be >= 0')
    return x


def _scalar(value):
    return float(value) if np.ndim(value) == 0 else value


def regularized_lower_gamma(a, x):
    """P(a, x) = gamma(a, x) / Gamma(a)."""
    x = _check_gamma_args(a, x)
    return _scalar(special.gammainc(a, x))


def regularized_upper_gamma(a, x):
    """Q(a, x) = 1 - P(a, x), without the cancellation for large x."""
    x = _check_gamma_args(a, x)
    return _scalar(special.gammaincc(a, x))


def binomial(n, k):
    if not 0 <= k <= n:
        raise ParameterDomainError(f'binomial({n}, {k}) needs 0 <= k <= n')
    return math.comb(n, k)


def log_binomial(n, k):
    if not 0 <= k <= n:
        raise ParameterDomainError(f'binomial({n}, {k}) needs 0 <= k <= n')
    if n <= EXACT_BINOMIAL_LIMIT:
        return math.log(math.comb(n, k))
    return float(
        special.gammaln(n + 1) - special.gammaln(k + 1)
        - special.gammaln(n - k + 1)
    )
