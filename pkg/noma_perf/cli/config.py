"""Config files: flat ``key = value`` lines, ``#`` starts a comment.

Decibels are converted to linear here and nowhere else.
"""
import logging
from dataclasses import dataclass

from django.conf import settings

from core.allocation import build_plan
from core.channel import stats_for
from core.exceptions import ConfigError, ParameterDomainError
from core.models import EffectiveChannelStats, NomaPlan, SystemConfig

from .serializers import SystemConfigSerializer

logger = logging.getLogger(__name__)

OVERRIDE_LINE = '--set'


@dataclass(frozen=True)
class SystemSetup:
    cfg: SystemConfig
    stats: EffectiveChannelStats
    plan: NomaPlan


def db_to_linear(value_db):
    return 10.0 ** (value_db / 10.0)


def _split(text, line):
    if '=' not in text:
        raise ConfigError('expected "key = value"', line=line)
    key, value = (part.strip() for part in text.split('=', 1))
    if not key:
        raise ConfigError('empty key', line=line)
    if key not in SystemConfigSerializer().fields:
        raise ConfigError('unknown key', key=key, line=line)
    if not value:
        raise ConfigError('missing value', key=key, line=line)
    return key, value


def read_config_file(path):
    """Return {key: (value, line number)}; later lines win."""
    entries = {}
    with open(path, encoding='utf-8') as source:
        for number, raw in enumerate(source, start=1):
            text = raw.split('#', 1)[0].strip()
            if not text:
                continue
            key, value = _split(text, number)
            entries[key] = (value, number)
    return entries


def read_overrides(overrides):
    entries = {}
    for text in overrides or ():
        key, value = _split(text, OVERRIDE_LINE)
        entries[key] = (value, OVERRIDE_LINE)
    return entries


def _first_error(errors):
    # fields are declared in config-file order
    for key in SystemConfigSerializer().fields:
        if key in errors:
            return key, str(errors[key][0])
    key, messages = next(iter(errors.items()))
    return None, str(messages[0])


def to_system_config(data):
    return SystemConfig(
        n_tx=data['n_tx'],
        n_rx=data['n_rx'],
        n_streams=data['n_streams'],
        group_cap=data['group_cap'],
        intensity=data['intensity_per_m2'],
        radius=data['radius_m'],
        path_loss_exp=data['path_loss_exp'],
        path_loss_ref=data['path_loss_ref'],
        fading_power=data['fading_power'],
        noise_power=data['noise_power'],
        avg_snr=db_to_linear(data['snr_db']),
        rates=data['rate_bps_hz'],
        corr_coeff=data['corr_coeff'],
        alloc_eps=data['alloc_eps'],
    )


def parse_config(path=None, overrides=()):
    """Build the system configuration and its derived objects.

    Missing keys take the defaults of ``settings.NOMA_DEFAULT_CONFIG``;
    ``overrides`` are ``key=value`` strings applied after the file.
    Raises ConfigError naming the key and the line of the first problem.
    """
    entries = read_config_file(path) if path else {}
    entries.update(read_overrides(overrides))

    data = dict(settings.NOMA_DEFAULT_CONFIG)
    data.update({key: value for key, (value, _) in entries.items()})
    serializer = SystemConfigSerializer(data=data)
    if not serializer.is_valid():
        key, message = _first_error(serializer.errors)
        line = entries[key][1] if key in entries else None
        raise ConfigError(message, key=key, line=line)

    try:
        cfg = to_system_config(serializer.validated_data)
    except ParameterDomainError as exc:
        raise ConfigError(str(exc)) from exc
    logger.debug('config parsed from %s: %s', path or 'defaults', cfg)
    return SystemSetup(cfg=cfg, stats=stats_for(cfg), plan=build_plan(cfg))
