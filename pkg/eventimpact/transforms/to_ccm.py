"""
Transformations of the three CCF types into Component Characteristics Matrices.

- Orderings use the exponential transfer function ``m_ij = 9 ** (s_i - s_j)``
  on the inverted, normalized substitutes ``s_i = (n - o(i)) / (n - 1)``.
- Ratings use the ratio family ``m_ij = (u_i / u_j) ** z``, followed by the
  range normalization of :py:mod:`~eventimpact.transforms.normalization`.
- Pairwise comparisons are completed by reciprocity, ``m_ji = 1 / m_ij``.

Orderings and ratings are computed from antisymmetric differences
(``s_i - s_j``, ``log u_i - log u_j``): two tied items therefore produce
bit-identical rows, and reciprocity holds up to floating-point rounding.
"""

import logging
from typing import Optional

import numpy as np

from eventimpact.structures import (Ordering, PairwiseComparison, Rating,
                                    ReciprocalMatrix, SAATY_BOUND)
from .normalization import normalize_logs
from .transform_config import TransformConfig

logger = logging.getLogger(__name__)


def substitutes(ordering: Ordering) -> np.ndarray:
    """
    The inverted, normalized substitute values of an ordering.

    The best item (rank 1) gets ``1``, the worst (rank ``n``) gets ``0``.
    """
    n = ordering.n
    ranks = np.asarray(ordering.ranks, dtype=np.float64)
    return (n - ranks) / (n - 1)


def ordering_to_ccm(ordering: Ordering) -> ReciprocalMatrix:
    """
    Transform an :py:class:`.Ordering` (CCFO) into a CCM.

    The result is fully consistent, and the best-ranked item is exactly
    ``9`` times more important than the worst-ranked one.
    """
    s = substitutes(ordering)
    values = np.power(SAATY_BOUND, s[:, None] - s[None, :])
    return ReciprocalMatrix(ordering.items, values, SAATY_BOUND)


def _rating_logs(rating: Rating, z: float) -> np.ndarray:
    logs = np.log(np.asarray(rating.utilities, dtype=np.float64))
    return z * (logs[:, None] - logs[None, :])


def ratio_matrix(rating: Rating, z: float = 1.0) -> ReciprocalMatrix:
    """
    The raw ratio matrix ``(u_i / u_j) ** z``, before range normalization.

    Its entries are not bounded: with durations between 172s and 562s, the
    largest entry is ``562 / 172 ~ 3.27``; with years of experience between
    1 and 30, it is ``30``.
    """
    config = TransformConfig(z=z)
    return ReciprocalMatrix(rating.items,
                            np.exp(_rating_logs(rating, config.z)),
                            bound=None)


def rating_to_ccm(rating: Rating,
                  config: Optional[TransformConfig] = None) -> ReciprocalMatrix:
    """
    Transform a :py:class:`.Rating` (CCFR) into a CCM.

    :param rating: The utility values.
    :param config: The exponent ``z`` and whether to normalize the range.
        By default, ``z = 1`` and the range is normalized.

    :return: A consistent reciprocal matrix. When normalization is enabled
        (the default), the largest ratio is mapped to exactly ``9``, unless
        all utilities are equal (the result is then the all-ones matrix).
        Without normalization, the matrix keeps its raw ratios and is only
        bounded by 9 if they happen to fit.
    """
    if config is None:
        config = TransformConfig()
    logs = _rating_logs(rating, config.z)
    if config.normalize:
        logs = normalize_logs(logs)
        bound = SAATY_BOUND
    else:
        fits = np.max(logs) <= np.log(SAATY_BOUND) + 1e-12
        bound = SAATY_BOUND if fits else None
    logger.debug('Rating over %d items transformed with %s', rating.n, config)
    return ReciprocalMatrix(rating.items, np.exp(logs), bound)


def pairwise_to_ccm(comparison: PairwiseComparison) -> ReciprocalMatrix:
    """
    Transform a :py:class:`.PairwiseComparison` (CCFP) into a CCM.

    The lower triangle is filled with the reciprocals of the upper triangle.
    The result may be inconsistent (even intransitive): this is accepted.
    """
    n = comparison.n
    values = np.ones((n, n))
    rows, cols = np.triu_indices(n, k=1)
    upper = np.asarray(comparison.upper, dtype=np.float64)
    values[rows, cols] = upper
    values[cols, rows] = 1.0 / upper
    return ReciprocalMatrix(comparison.items, values, SAATY_BOUND)
