import math

from scipy import stats

CONFIDENCE = 0.99


def _z(level):
    return float(stats.norm.ppf(0.5 + level / 2.0))


def wilson_interval(successes, n, level=CONFIDENCE):
    """Wilson score interval for a binomial proportion."""
    if n <= 0:
        return 0.0, 1.0
    z = _z(level)
    phat = successes / n
    denom = 1.0 + z * z / n
    center = (phat + z * z / (2.0 * n)) / denom
    margin = z * math.sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n))
    margin /= denom
    lo = max(0.0, min(center - margin, phat))
    return lo, min(1.0, max(center + margin, phat))


def normal_interval(total, total_sq, n, level=CONFIDENCE):
    """Normal-approximation interval for the mean of a bounded payoff."""
    mean = total / n
    if n < 2:
        return mean, mean
    variance = max((total_sq - n * mean * mean) / (n - 1), 0.0)
    margin = _z(level) * math.sqrt(variance / n)
    return mean - margin, mean + margin
