from dataclasses import dataclass

import numpy as np

from core.exceptions import ConsistencyFault


@dataclass(frozen=True)
class TrialRecord:
    """One realization: sorted distances, ZF noise amplification per user
    and stream, and the outage flags of every served user."""

    user_count: int
    distances: np.ndarray
    zf_noise_amp: np.ndarray
    outage_flags: np.ndarray

    def __post_init__(self):
        if len(self.distances) != self.user_count:
            raise ConsistencyFault('one distance per served user expected')
        if np.any(np.diff(self.distances) < 0):
            raise ConsistencyFault('distances must be sorted ascending')
        if np.any(self.zf_noise_amp <= 0):
            raise ConsistencyFault('noise amplification must be positive')


@dataclass(frozen=True)
class Estimate:
    mean: float
    ci_lo: float
    ci_hi: float
    n_trials: int
    seed: int

    def __post_init__(self):
        if not self.ci_lo <= self.mean <= self.ci_hi:
            raise ConsistencyFault(
                f'interval [{self.ci_lo}, {self.ci_hi}] misses {self.mean}'
            )

    @property
    def half_width(self):
        return 0.5 * (self.ci_hi - self.ci_lo)

    def covers(self, value, widen=0.0):
        return self.ci_lo - widen <= value <= self.ci_hi + widen
