import logging

from scipy import integrate

from core.exceptions import AccuracyNotReachedError, ParameterDomainError

from .controls import QuadratureControl

logger = logging.getLogger(__name__)

DEFAULT_QUADRATURE = QuadratureControl()


def integrate_adaptive_with_error(f, lo, hi, ctrl=DEFAULT_QUADRATURE,
                                  breakpoints=None):
    """Adaptive Gauss-Kronrod (QUADPACK qags/qagp) with bisection.

    ``breakpoints`` inside (lo, hi) mark places where the integrand bends
    sharply. Returns ``(value, abs_error)``.
    """
    if not lo < hi:
        raise ParameterDomainError(f'need lo < hi, got [{lo}, {hi}]')
    points = None
    if breakpoints:
        points = sorted(p for p in breakpoints if lo < p < hi) or None

    result = integrate.quad(
        f, lo, hi,
        epsabs=ctrl.abs_tol, epsrel=ctrl.rel_tol,
        limit=ctrl.max_subdivisions, points=points, full_output=1,
    )
    value, error = result[0], result[1]
    if len(result) > 3:
        # quad appends a message only when ier > 0
        raise AccuracyNotReachedError(
            f'quadrature on [{lo}, {hi}] failed: {result[3]}',
            estimate=value, error_bound=error,
        )
    logger.debug(
        'quad [%s, %s]: %r +- %r in %s intervals',
        lo, hi, value, error, result[2]['last'],
    )
    return value, error


def integrate_adaptive(f, lo, hi, ctrl=DEFAULT_QUADRATURE, breakpoints=None):
    return integrate_adaptive_with_error(f, lo, hi, ctrl, breakpoints)[0]
