from fractions import Fraction
from math import comb

from core.exceptions import ParameterDomainError

IDENTITY_LIMIT = 60


def combinatorial_identity(group_size, k):
    """C(K,k) sum_j (-1)^j C(K-k,j) k/(k+j), in exact rationals; always 1.

    The same alternating sum turns the large-D residues into
    1 - (correction), so checking it guards that expansion.
    """
    if not 1 <= k <= group_size <= IDENTITY_LIMIT:
        raise ParameterDomainError(
            f'need 1 <= k <= K <= {IDENTITY_LIMIT}, got k={k}, K={group_size}'
        )
    total = sum(
        Fraction((-1) ** j * comb(group_size - k, j) * k, k + j)
        for j in range(group_size - k + 1)
    )
    return comb(group_size, k) * total
