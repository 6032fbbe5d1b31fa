"""Immutable domain types shared by the analytic and Monte Carlo engines.

Indices of streams (m) and user orders (k, i) are 1-based in every public
method, as in the formulas; arrays are stored 0-based.
"""
import dataclasses
import math
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from .exceptions import ParameterDomainError

SUM_TOLERANCE = 1e-12


def _frozen(array, dtype=float):
    array = np.array(array, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class SystemConfig:
    n_tx: int = 2
    n_rx: int = 3
    n_streams: int = 2
    group_cap: int = 3
    intensity: float = 1e-3
    radius: float = 30.0
    path_loss_exp: float = 3.0
    path_loss_ref: float = 1.0
    fading_power: float = 1.0
    noise_power: float = 1.0
    avg_snr: float = 1e6
    rates: object = 2.0
    corr_coeff: float = 0.5
    alloc_eps: float = 0.5
    precoder: Optional[np.ndarray] = field(default=None, compare=False)

    def __post_init__(self):
        for name in ('n_tx', 'n_rx', 'n_streams', 'group_cap'):
            if int(getattr(self, name)) < 1:
                raise ParameterDomainError(f'{name} must be >= 1')
        if self.n_streams > min(self.n_tx, self.n_rx):
            raise ParameterDomainError(
                f'n_streams={self.n_streams} exceeds '
                f'min(n_tx, n_rx)={min(self.n_tx, self.n_rx)}'
            )
        if not self.path_loss_exp > 2:
            raise ParameterDomainError('path_loss_exp must be > 2')
        for name in ('intensity', 'radius', 'path_loss_ref', 'fading_power',
                     'noise_power', 'avg_snr'):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ParameterDomainError(f'{name} must be positive')
        if not 0 <= self.corr_coeff < 1:
            raise ParameterDomainError('corr_coeff must lie in [0, 1)')
        if not 0 <= self.alloc_eps <= 1:
            raise ParameterDomainError('alloc_eps must lie in [0, 1]')

        rates = np.array(self.rates, dtype=float)
        if rates.ndim == 0:
            rates = np.full((self.n_streams, self.group_cap), float(rates))
        if rates.shape != (self.n_streams, self.group_cap):
            raise ParameterDomainError(
                f'rates must have shape ({self.n_streams}, {self.group_cap}),'
                f' got {rates.shape}'
            )
        if not np.all(rates > 0):
            raise ParameterDomainError('all rates must be strictly positive')
        object.__setattr__(self, 'rates', _frozen(rates))

        if self.precoder is not None:
            precoder = np.array(self.precoder, dtype=complex)
            if precoder.shape != (self.n_tx, self.n_streams):
                raise ParameterDomainError(
                    f'precoder must have shape ({self.n_tx}, '
                    f'{self.n_streams}), got {precoder.shape}'
                )
            object.__setattr__(self, 'precoder', _frozen(precoder, complex))

    @property
    def diversity(self):
        """delta = N_r - M + 1, shape of the Schur-complement Gamma law."""
        return self.n_rx - self.n_streams + 1

    @property
    def mean_users(self):
        return math.pi * self.radius ** 2 * self.intensity

    @property
    def snr_db(self):
        return 10.0 * math.log10(self.avg_snr)

    def rate(self, stream, user_order):
        return float(self.rates[stream - 1, user_order - 1])

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class PowerAllocation:
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        if not coeffs:
            raise ParameterDomainError('allocation needs at least one user')
        if any(not 0 < c <= 1 for c in coeffs):
            raise ParameterDomainError(
                f'allocation coefficients must lie in (0, 1]: {coeffs}'
            )
        if abs(math.fsum(coeffs) - 1.0) > SUM_TOLERANCE:
            raise ParameterDomainError(
                f'allocation coefficients sum to {math.fsum(coeffs)!r}'
            )
        object.__setattr__(self, 'coeffs', coeffs)

    @property
    def group_size(self):
        return len(self.coeffs)

    def zeta(self, user_order):
        return self.coeffs[user_order - 1]

    def interference(self, user_order):
        """Power of the users decoded after user_order (sum over l < i)."""
        return math.fsum(self.coeffs[:user_order - 1])


@dataclass(frozen=True)
class EffectiveChannelStats:
    corr_tx: np.ndarray
    precoder: np.ndarray
    eff_cov: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'corr_tx', _frozen(self.corr_tx, complex))
        object.__setattr__(self, 'precoder', _frozen(self.precoder, complex))
        object.__setattr__(self, 'eff_cov', _frozen(self.eff_cov, complex))
        object.__setattr__(self, 'beta', _frozen(self.beta))
        # S with S^H S = R_T, so that H_w S has column covariance R_T
        sqrt = np.linalg.cholesky(self.corr_tx).conj().T
        object.__setattr__(self, 'corr_sqrt', _frozen(sqrt, complex))

    @property
    def n_streams(self):
        return self.beta.shape[0]

    def beta_of(self, stream):
        return float(self.beta[stream - 1])


@dataclass(frozen=True)
class SicThresholds:
    theta: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'theta', _frozen(self.theta))

    @property
    def group_size(self):
        return self.theta.shape[1]

    def value(self, stream, user_order):
        return float(self.theta[stream - 1, user_order - 1])


@dataclass(frozen=True)
class NomaPlan:
    """Allocation and SIC thresholds for every group size K in [1, Q]."""

    allocations: Dict[int, PowerAllocation]
    thresholds: Dict[int, SicThresholds]

    @property
    def group_cap(self):
        return max(self.allocations)

    def allocation(self, group_size):
        return self.allocations[group_size]

    def thresholds_for(self, group_size):
        return self.thresholds[group_size]

    def theta(self, stream, group_size, user_order):
        return self.thresholds[group_size].value(stream, user_order)
