import dataclasses
import enum
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from core.channel import path_loss
from core.exceptions import ParameterDomainError
from core.models import EffectiveChannelStats, NomaPlan, SystemConfig


class Method(str, enum.Enum):
    CONDITIONAL = 'conditional'
    AVERAGED_QUADRATURE = 'averaged-quadrature'
    AVERAGED_SERIES = 'averaged-series'
    POISSON_MIXED = 'poisson-mixed'
    ASYMPTOTIC_HIGH_SNR = 'asymptotic-high-snr'
    ASYMPTOTIC_LARGE_D = 'asymptotic-large-D'

    @property
    def is_asymptotic(self):
        return self in (Method.ASYMPTOTIC_HIGH_SNR, Method.ASYMPTOTIC_LARGE_D)


class GoodputMethod(str, enum.Enum):
    EXACT = 'exact'
    ASYMPTOTIC_SMALL_D = 'asymptotic-small-D'
    ASYMPTOTIC_LARGE_D = 'asymptotic-large-D'


@dataclass(frozen=True)
class OutageQuery:
    """Index triple (m, K, k); K is None for Poisson-mixed quantities."""

    stream: int
    user_order: int
    cfg: SystemConfig
    stats: EffectiveChannelStats
    plan: NomaPlan
    group_size: Optional[int] = None

    def __post_init__(self):
        if not 1 <= self.stream <= self.cfg.n_streams:
            raise ParameterDomainError(
                f'stream {self.stream} outside [1, {self.cfg.n_streams}]'
            )
        if not 1 <= self.user_order <= self.cfg.group_cap:
            raise ParameterDomainError(
                f'user order {self.user_order} outside '
                f'[1, {self.cfg.group_cap}]'
            )
        if self.group_size is not None and not (
            self.user_order <= self.group_size <= self.cfg.group_cap
        ):
            raise ParameterDomainError(
                f'need k <= K <= Q, got k={self.user_order}, '
                f'K={self.group_size}, Q={self.cfg.group_cap}'
            )

    @property
    def delta(self):
        return self.cfg.diversity

    @property
    def beta(self):
        return self.stats.beta_of(self.stream)

    def for_group(self, group_size):
        return dataclasses.replace(self, group_size=group_size)

    def theta(self, group_size=None):
        group_size = group_size or self.group_size
        if group_size is None:
            raise ParameterDomainError('group size needed for theta')
        return self.plan.theta(self.stream, group_size, self.user_order)

    def outage_argument(self, d, group_size=None):
        """Incomplete gamma argument beta_m / (avg_snr theta_{m,k} l(d))."""
        return self.beta / (
            self.cfg.avg_snr * self.theta(group_size) * path_loss(d, self.cfg)
        )

    def series_argument(self, group_size=None):
        """beta_m D^alpha / (avg_snr theta_{m,k} path_loss_ref), at d = D."""
        return self.outage_argument(self.cfg.radius, group_size)


@dataclass(frozen=True)
class OutageResult:
    value: float
    method: Method
    err_est: float = 0.0
    regime_note: str = ''
    complement: Optional[float] = None

    def __post_init__(self):
        value = float(self.value)
        if not self.method.is_asymptotic:
            # rounding of quadrature / series may step just outside [0, 1]
            value = min(max(value, 0.0), 1.0)
        elif not 0 <= value <= 1 and not self.regime_note:
            raise ParameterDomainError(
                'asymptotic value outside [0, 1] must carry a regime note'
            )
        object.__setattr__(self, 'value', value)
        if self.complement is None:
            object.__setattr__(self, 'complement', 1.0 - value)


@dataclass(frozen=True)
class GoodputResult:
    value: float
    method: GoodputMethod
    per_term: Dict[Tuple[int, int], float] = field(default_factory=dict)
    err_est: float = 0.0
    regime_note: str = ''
