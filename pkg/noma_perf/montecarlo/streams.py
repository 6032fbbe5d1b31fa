"""Counter-based random streams.

Every block of trials gets its own Philox generator keyed by
(master seed, purpose, block index); the stream a block sees does not depend
on which worker runs it or in what order.
"""
import numpy as np

TRIALS = 0
SCHUR_SAMPLES = 1


def block_generator(seed, purpose, block):
    sequence = np.random.SeedSequence(int(seed), spawn_key=(purpose, block))
    return np.random.Generator(np.random.Philox(sequence))


def block_sizes(n_trials, block_size):
    """Sizes of the consecutive blocks covering n_trials."""
    full, rest = divmod(n_trials, block_size)
    return [block_size] * full + ([rest] if rest else [])
