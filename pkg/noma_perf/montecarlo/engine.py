"""Trial loop: blocks of trials run on a thread pool and merge in order."""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from core.exceptions import ParameterDomainError

from .detection import block_outage_flags, outage_flags
from .intervals import normal_interval, wilson_interval
from .records import Estimate, TrialRecord
from .sampling import (
    channel_amplification, sample_gamma_amplification, sample_group,
    sample_groups
)
from .streams import TRIALS, block_generator, block_sizes

logger = logging.getLogger(__name__)

DEFAULT_BLOCK = 4096
MIN_TRIALS = 1000


@dataclass
class SimulationTally:
    """Sufficient statistics of a run; blocks are merged with ``add``."""

    n_streams: int
    group_cap: int
    seed: int = 0
    n_trials: int = 0
    redraws: int = 0
    payoff_sum: float = 0.0
    payoff_sumsq: float = 0.0
    outage_counts: np.ndarray = field(default=None)
    group_counts: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.outage_counts is None:
            self.outage_counts = np.zeros(
                (self.n_streams, self.group_cap), dtype=np.int64
            )
        if self.group_counts is None:
            self.group_counts = np.zeros(self.group_cap + 1, dtype=np.int64)

    def add(self, other):
        self.n_trials += other.n_trials
        self.redraws += other.redraws
        self.payoff_sum += other.payoff_sum
        self.payoff_sumsq += other.payoff_sumsq
        self.outage_counts += other.outage_counts
        self.group_counts += other.group_counts
        return self

    def outage(self, stream, user_order):
        failures = int(self.outage_counts[stream - 1, user_order - 1])
        lo, hi = wilson_interval(failures, self.n_trials)
        return Estimate(
            mean=failures / self.n_trials, ci_lo=lo, ci_hi=hi,
            n_trials=self.n_trials, seed=self.seed,
        )

    def goodput(self):
        lo, hi = normal_interval(
            self.payoff_sum, self.payoff_sumsq, self.n_trials,
        )
        mean = self.payoff_sum / self.n_trials
        return Estimate(
            mean=mean, ci_lo=min(lo, mean), ci_hi=max(hi, mean),
            n_trials=self.n_trials, seed=self.seed,
        )


def _run_block(cfg, stats, plan, seed, block, size, gamma_fast_path,
               outage_free):
    rng = block_generator(seed, TRIALS, block)
    counts, distances = sample_groups(cfg, rng, size)
    shape = (size, cfg.group_cap)
    redraws = 0
    if gamma_fast_path:
        amps = sample_gamma_amplification(cfg, stats, rng, shape)
    else:
        amps, redraws = channel_amplification(cfg, stats, rng, shape)

    served = np.arange(cfg.group_cap)[None, :] < counts[:, None]
    if outage_free:
        flags = np.zeros((size, cfg.n_streams, cfg.group_cap), dtype=bool)
    else:
        flags = block_outage_flags(counts, distances, amps, cfg, plan)
    delivered = served[:, None, :] & ~flags
    payoff = np.sum(delivered * cfg.rates[None, :, :], axis=(1, 2))

    return SimulationTally(
        n_streams=cfg.n_streams,
        group_cap=cfg.group_cap,
        seed=seed,
        n_trials=size,
        redraws=redraws,
        payoff_sum=float(np.sum(payoff)),
        payoff_sumsq=float(np.sum(payoff ** 2)),
        outage_counts=flags.sum(axis=0).astype(np.int64),
        group_counts=np.bincount(counts, minlength=cfg.group_cap + 1),
    )


def simulate(cfg, stats, plan, n_trials, seed, threads=1,
             block_size=DEFAULT_BLOCK, gamma_fast_path=False,
             outage_free=False):
    """Run ``n_trials`` trials and tally outage of every (m, k) and goodput.

    The result depends on (cfg, n_trials, seed, block_size) only, not on the
    number of threads.
    """
    if n_trials < 1:
        raise ParameterDomainError('n_trials must be >= 1')
    if block_size < 1 or threads < 1:
        raise ParameterDomainError('block_size and threads must be >= 1')
    sizes = block_sizes(n_trials, block_size)
    logger.info(
        'simulating %d trials in %d blocks on %d threads (seed %d)',
        n_trials, len(sizes), threads, seed,
    )

    def run(item):
        block, size = item
        return _run_block(
            cfg, stats, plan, seed, block, size, gamma_fast_path, outage_free,
        )

    tally = SimulationTally(cfg.n_streams, cfg.group_cap, seed=seed)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(run, enumerate(sizes)):
            tally.add(part)
    logger.info(
        'simulation done: %d trials, %d redrawn channels',
        tally.n_trials, tally.redraws,
    )
    return tally


def _check_trials(n_trials):
    if n_trials < MIN_TRIALS:
        raise ParameterDomainError(f'n_trials must be >= {MIN_TRIALS}')


def estimate_outage(cfg, stats, plan, stream, user_order, n_trials, seed,
                    **options):
    """Outage of user k on stream m; trials with fewer than k users count 0."""
    _check_trials(n_trials)
    if not 1 <= stream <= cfg.n_streams or not (
        1 <= user_order <= cfg.group_cap
    ):
        raise ParameterDomainError(
            f'(m, k) = ({stream}, {user_order}) outside the system'
        )
    tally = simulate(cfg, stats, plan, n_trials, seed, **options)
    return tally.outage(stream, user_order)


def estimate_goodput(cfg, stats, plan, n_trials, seed, **options):
    _check_trials(n_trials)
    return simulate(cfg, stats, plan, n_trials, seed, **options).goodput()


def run_trial(cfg, stats, plan, rng):
    """A single realization with its noise amplifications and outage flags."""
    count, distances = sample_group(cfg, rng)
    amps, _ = channel_amplification(cfg, stats, rng, count)
    flags = outage_flags(distances, amps, cfg, plan)
    return TrialRecord(
        user_count=count,
        distances=distances,
        zf_noise_amp=amps,
        outage_flags=flags,
    )
