"""Zero-forcing detection and the SIC decoding rule.

Noise amplifications ``amps`` are arranged (trial, user slot, stream) and
already include the channel power, i.e. they are sigma_h^2 [Z^-1]_mm.
Outage flags are arranged (trial, stream, user slot).
"""
import numpy as np

from core.channel import path_loss
from core.exceptions import ConsistencyFault, DegenerateDrawError

CONDITION_LIMIT = 1e12
# relative distance to the threshold below which rounding may flip a flag
BOUNDARY_TOLERANCE = 1e-9


def zf_amplification_batch(channels, precoder):
    """Diagonal of (V^H H^H H V)^-1 for a stack of channels.

    Returns ``(amps, degenerate)``; entries of degenerate draws are
    placeholders and must be redrawn.
    """
    effective = channels @ precoder
    n_streams = effective.shape[-1]
    if effective.size == 0:
        batch = effective.shape[:-2]
        return np.ones(batch + (n_streams,)), np.zeros(batch, dtype=bool)
    gram = effective.conj().swapaxes(-1, -2) @ effective
    gram = 0.5 * (gram + gram.conj().swapaxes(-1, -2))
    eig = np.linalg.eigvalsh(gram)
    smallest, largest = eig[..., 0], eig[..., -1]
    with np.errstate(divide='ignore', invalid='ignore'):
        degenerate = ~(smallest > 0) | (largest / smallest > CONDITION_LIMIT)

    identity = np.eye(n_streams)
    gram = np.where(degenerate[..., None, None], identity, gram)
    lower = np.linalg.cholesky(gram)
    lower_inv = np.linalg.solve(lower, np.broadcast_to(identity, lower.shape))
    # Z^-1 = L^-H L^-1, so [Z^-1]_mm is the squared norm of column m of L^-1
    amps = np.sum(np.abs(lower_inv) ** 2, axis=-2)
    return amps, degenerate


def zf_noise_amplification(channel, precoder):
    amps, degenerate = zf_amplification_batch(
        np.asarray(channel, dtype=complex), np.asarray(precoder, dtype=complex)
    )
    if degenerate:
        raise DegenerateDrawError('H V is numerically rank deficient')
    return amps


def _plan_tables(cfg, plan):
    group_cap, n_streams = cfg.group_cap, cfg.n_streams
    zeta = np.zeros((group_cap + 1, group_cap))
    before = np.zeros((group_cap + 1, group_cap))
    theta = np.full((group_cap + 1, n_streams, group_cap), np.inf)
    for group_size in range(1, group_cap + 1):
        coeffs = np.array(plan.allocation(group_size).coeffs)
        zeta[group_size, :group_size] = coeffs
        before[group_size, :group_size] = np.cumsum(coeffs) - coeffs
        theta[group_size, :, :group_size] = (
            plan.thresholds_for(group_size).theta
        )
    return zeta, before, theta


def _union_flags(served, gain, amps, zeta, before, rates):
    """User k fails if any message i >= k it has to decode misses its rate."""
    n_trials, group_cap = served.shape
    n_streams = amps.shape[1]
    flags = np.zeros((n_trials, n_streams, group_cap), dtype=bool)
    for k in range(group_cap):
        signal = gain[:, k, None]
        noise = amps[:, :, k]
        for i in range(k, group_cap):
            sinr = zeta[:, i, None] * signal / (
                before[:, i, None] * signal + noise
            )
            missed = np.log2(1.0 + sinr) < rates[None, :, i]
            flags[:, :, k] |= missed & served[:, i, None]
    return flags


def block_outage_flags(counts, distances, amps, cfg, plan):
    """Outage flags of a block of trials, checked in two independent forms."""
    counts = np.asarray(counts)
    group_cap = cfg.group_cap
    served = np.arange(group_cap)[None, :] < counts[:, None]
    gain = cfg.avg_snr * path_loss(
        np.where(served, distances, cfg.radius), cfg
    )
    amps = np.swapaxes(amps, 1, 2)
    zeta, before, theta = _plan_tables(cfg, plan)

    bound = gain[:, None, :] * theta[counts]
    threshold = served[:, None, :] & (amps > bound)
    union = _union_flags(
        served, gain, amps, zeta[counts], before[counts], cfg.rates,
    )
    union &= served[:, None, :]

    mismatch = threshold != union
    if mismatch.any():
        ratio = amps[mismatch] / bound[mismatch]
        if np.any(np.abs(ratio - 1.0) > BOUNDARY_TOLERANCE):
            trial, stream, user = np.argwhere(mismatch)[0]
            raise ConsistencyFault(
                f'union and threshold outage forms disagree for trial '
                f'{trial}, stream {stream + 1}, user {user + 1}'
            )
    return threshold


def outage_flags(distances, amps, cfg, plan):
    """Flags (stream, user) of a single trial with len(distances) users."""
    count = len(distances)
    padded = np.full((1, cfg.group_cap), np.inf)
    padded[0, :count] = distances
    padded_amps = np.ones((1, cfg.group_cap, cfg.n_streams))
    padded_amps[0, :count] = amps
    flags = block_outage_flags([count], padded, padded_amps, cfg, plan)
    return flags[0, :, :count]
