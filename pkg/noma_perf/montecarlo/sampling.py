import logging

import numpy as np

from .detection import zf_amplification_batch

logger = logging.getLogger(__name__)


def _shape(size):
    if isinstance(size, (int, np.integer)):
        return (int(size),)
    return tuple(size)


def sample_group(cfg, rng):
    """Served count min(Poisson(pi D^2 lambda), Q) and sorted distances."""
    count = min(int(rng.poisson(cfg.mean_users)), cfg.group_cap)
    distances = cfg.radius * np.sqrt(1.0 - rng.random(count))
    return count, np.sort(distances)


def sample_groups(cfg, rng, size):
    """Vectorized sample_group for ``size`` trials.

    Distances of all Q slots are always drawn, so the stream consumed does
    not depend on the realized counts; slots beyond the count hold inf.
    """
    counts = np.minimum(rng.poisson(cfg.mean_users, size), cfg.group_cap)
    uniform = 1.0 - rng.random((size, cfg.group_cap))
    distances = cfg.radius * np.sqrt(uniform)
    slots = np.arange(cfg.group_cap)
    distances = np.where(slots[None, :] < counts[:, None], distances, np.inf)
    return counts, np.sort(distances, axis=1)


def sample_channel(cfg, stats, rng, size=()):
    """H = H_w S, H_w i.i.d. CN(0, sigma_h^2) entries and S^H S = R_T."""
    shape = _shape(size) + (cfg.n_rx, cfg.n_tx)
    parts = rng.standard_normal(shape + (2,))
    white = np.sqrt(cfg.fading_power / 2.0) * (
        parts[..., 0] + 1j * parts[..., 1]
    )
    return white @ stats.corr_sqrt


def redraw_degenerate(cfg, stats, rng, amps, degenerate):
    """Replace numerically rank-deficient draws; returns (amps, redraws)."""
    redraws = 0
    while degenerate.any():
        bad = np.argwhere(degenerate)
        redraws += len(bad)
        channels = sample_channel(cfg, stats, rng, len(bad))
        fresh, still = zf_amplification_batch(channels, stats.precoder)
        amps[tuple(bad.T)] = fresh
        degenerate = np.zeros_like(degenerate)
        degenerate[tuple(bad.T)] = still
    if redraws:
        logger.warning('%d degenerate channel draws redrawn', redraws)
    return amps, redraws


def channel_amplification(cfg, stats, rng, shape):
    """sigma_h^2 [Z^-1]_mm for fresh channels, the quantity in the SINR."""
    channels = sample_channel(cfg, stats, rng, shape)
    amps, degenerate = zf_amplification_batch(channels, stats.precoder)
    amps, redraws = redraw_degenerate(cfg, stats, rng, amps, degenerate)
    return cfg.fading_power * amps, redraws


def sample_gamma_amplification(cfg, stats, rng, shape):
    """Noise amplification drawn straight from its law.

    1/[Z^-1]_mm of a unit-power channel is Gamma(delta, rate beta_m).
    """
    shape = _shape(shape) + (cfg.n_streams,)
    draws = rng.gamma(cfg.diversity, 1.0 / stats.beta, shape)
    return 1.0 / draws


def sample_schur_complements(cfg, stats, n, rng):
    """n draws per stream of 1/[Z^-1]_mm for channels of power sigma_h^2."""
    channels = sample_channel(cfg, stats, rng, n)
    amps, degenerate = zf_amplification_batch(channels, stats.precoder)
    amps, _ = redraw_degenerate(cfg, stats, rng, amps, degenerate)
    return 1.0 / amps
