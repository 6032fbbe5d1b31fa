import math
import sys

from core.exceptions import (
    ConvergenceError, ParameterDomainError, RangeRefusalError
)

from .controls import SeriesControl

DEFAULT_SERIES = SeriesControl()


def residue_series_with_error(delta, x, k, j, alpha, ctrl=DEFAULT_SERIES):
    """Sum the residues at s = delta, delta + 1, ... of the averaged outage.

    Returns ``(value, err)`` for

        x^delta sum_tau (-x)^tau / (tau! (tau + delta)
            * (alpha (tau + delta) + 2 (k + j)))

    which equals the integral over u in [0, 1] of
    gamma(delta, x u^alpha) u^(2(k+j) - 1).
    """
    if delta < 1 or k < 1 or j < 0:
        raise ParameterDomainError('need delta >= 1, k >= 1 and j >= 0')
    if not alpha > 2:
        raise ParameterDomainError('alpha must be > 2')
    if x < 0:
        raise ParameterDomainError('series argument must be >= 0')
    if x > ctrl.switch_threshold:
        raise RangeRefusalError(
            f'series argument {x!r} above {ctrl.switch_threshold}; '
            'use quadrature'
        )
    if x == 0:
        return 0.0, 0.0

    order = 2 * (k + j)
    terms = []
    running = 0.0
    largest = 0.0
    power = 1.0  # (-x)^tau / tau!
    for tau in range(ctrl.max_terms):
        shift = tau + delta
        term = power / (shift * (alpha * shift + order))
        if tau > x and abs(term) < ctrl.rel_tol * abs(running):
            break
        terms.append(term)
        running += term
        largest = max(largest, abs(term))
        power *= -x / (tau + 1)
    else:
        raise ConvergenceError(
            f'residue series did not converge in {ctrl.max_terms} terms '
            f'(x={x!r})'
        )

    scale = x ** delta
    rounding = sys.float_info.epsilon * largest * len(terms)
    err = scale * (abs(term) + rounding)
    return scale * math.fsum(terms), err


def residue_series(delta, x, k, j, alpha, ctrl=DEFAULT_SERIES):
    return residue_series_with_error(delta, x, k, j, alpha, ctrl)[0]
