import logging

import numpy as np
from scipy import linalg

from .exceptions import (
    DegeneratePrecoderError, ParameterDomainError, SingularDistanceError
)
from .models import EffectiveChannelStats

logger = logging.getLogger(__name__)

UNIT_NORM_TOLERANCE = 1e-12


def build_exponential_correlation(n, rho):
    """Transmit correlation R_T with entries rho^|i-j|."""
    if n < 1:
        raise ParameterDomainError('antenna count must be >= 1')
    if not 0 <= rho < 1:
        raise ParameterDomainError(f'rho={rho!r} outside [0, 1)')
    index = np.arange(n)
    return np.power(float(rho), np.abs(index[:, None] - index[None, :]))


def default_precoder(n_tx, n_streams):
    """First M columns of the N_t x N_t identity."""
    return np.eye(n_tx, n_streams, dtype=complex)


def effective_stats(corr_tx, precoder):
    corr_tx = np.asarray(corr_tx, dtype=complex)
    precoder = np.asarray(precoder, dtype=complex)
    if precoder.shape[1] > corr_tx.shape[0]:
        raise ParameterDomainError('more streams than transmit antennas')
    norms = np.linalg.norm(precoder, axis=0)
    if np.any(np.abs(norms - 1.0) > UNIT_NORM_TOLERANCE):
        raise ParameterDomainError(
            f'precoder columns must have unit norm, got {norms}'
        )

    eff_cov = precoder.conj().T @ corr_tx @ precoder
    eff_cov = 0.5 * (eff_cov + eff_cov.conj().T)
    try:
        factor = linalg.cho_factor(eff_cov, lower=True)
    except linalg.LinAlgError as exc:
        raise DegeneratePrecoderError(
            'V^H R_T V is not positive definite; precoder columns are '
            'linearly dependent under R_T'
        ) from exc
    inverse = linalg.cho_solve(factor, np.eye(eff_cov.shape[0]))
    beta = np.real(np.diag(inverse))
    if not np.all(np.isfinite(beta)) or np.any(beta <= 0):
        raise DegeneratePrecoderError(f'non-positive beta: {beta}')
    logger.debug('effective stats: beta=%s', beta)
    return EffectiveChannelStats(
        corr_tx=corr_tx, precoder=precoder, eff_cov=eff_cov, beta=beta,
    )


def stats_for(cfg):
    corr_tx = build_exponential_correlation(cfg.n_tx, cfg.corr_coeff)
    precoder = cfg.precoder
    if precoder is None:
        precoder = default_precoder(cfg.n_tx, cfg.n_streams)
    return effective_stats(corr_tx, precoder)


def path_loss(d, cfg):
    """Friis path loss K d^-alpha; works elementwise on arrays."""
    d = np.asarray(d, dtype=float)
    if np.any(d <= 0):
        raise SingularDistanceError('path loss is undefined at d <= 0')
    loss = cfg.path_loss_ref * np.power(d, -cfg.path_loss_exp)
    return float(loss) if loss.ndim == 0 else loss
