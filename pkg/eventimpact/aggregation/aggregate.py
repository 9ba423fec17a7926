"""
Combination of several CCMs into a Collective CCM (CCCM).
"""

import logging
from typing import Optional, Sequence

import numpy as np

from eventimpact.errors import EmptyInput
from eventimpact.structures import ReciprocalMatrix
from .operator import AggregationOperator, GeometricMean

logger = logging.getLogger(__name__)


def aggregate(matrices: Sequence[ReciprocalMatrix],
              operator: Optional[AggregationOperator] = None) -> ReciprocalMatrix:
    """
    Combine ``r`` reciprocal matrices entrywise: ``m^c_ij = op(m^1_ij, ..., m^r_ij)``.

    :param matrices: The matrices to combine. They must all share the same
        items, in the same order. Their order in the list does not matter
        for a symmetric operator such as the geometric mean.
    :param operator: The aggregation operator. By default, the geometric
        mean.

    :raises EmptyInput: if ``matrices`` is empty.
    :raises ItemSetMismatch: if the matrices do not share their items; the
        error names the first divergent label.

    :return: The collective matrix. Its bound is the largest bound of the
        inputs (``None`` if any input is unbounded).
    """
    if len(matrices) == 0:
        raise EmptyInput('Cannot aggregate an empty list of matrices')
    if operator is None:
        operator = GeometricMean()
    reference = matrices[0]
    for matrix in matrices[1:]:
        reference.items.check_same(matrix.items)
    logs = np.stack([np.log(matrix.values) for matrix in matrices])
    values = np.exp(operator.combine_logs(logs, axis=0))
    bounds = [matrix.bound for matrix in matrices]
    bound = None if any(b is None for b in bounds) else max(bounds)
    logger.debug('Aggregated %d matrices over %d items with %s',
                 len(matrices), reference.n, operator)
    return ReciprocalMatrix(reference.items, values, bound)
