import numpy as np

from core.exceptions import ParameterDomainError


def loglog_slope(points):
    """Least-squares slope of log10(y) against log10(x)."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[0] < 2 or points.shape[1] != 2:
        raise ParameterDomainError('need at least two (x, y) pairs')
    if np.any(points <= 0):
        raise ParameterDomainError('log-log fit needs positive values')
    slope, _ = np.polyfit(np.log10(points[:, 0]), np.log10(points[:, 1]), 1)
    return float(slope)


def fit_diversity_order(curve):
    """Negated high-SNR slope of outage versus linear average SNR."""
    return -loglog_slope(curve)
