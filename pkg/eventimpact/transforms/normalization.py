"""
Range normalization of reciprocal matrices.

A ratio matrix whose entries lie in ``[1/m, m]`` is mapped into the
``[1/9, 9]`` range of CCMs with the power function

    ``norm(x) = x ** (1 / log_9(m))``

which sends ``m`` to ``9``, ``1/m`` to ``1/9``, keeps ``1`` in place, and
preserves both reciprocity (``norm(1/x) = 1 / norm(x)``) and consistency
(it is a power, so ``norm(xy) = norm(x) norm(y)``).

The bound ``m`` is taken as the largest entry of the matrix, i.e., the
tightest embedding into the Saaty range.
"""

import logging

import numpy as np

from eventimpact.structures import ReciprocalMatrix, SAATY_BOUND

logger = logging.getLogger(__name__)

FLAT_LOG_TOLERANCE = 1e-12
"""
Matrices whose largest log-entry is below this value are considered flat
(all ones): the normalization exponent would be undefined, or would blow up
rounding noise, so they are left untouched.
"""


def normalize_logs(logs: np.ndarray) -> np.ndarray:
    """
    Apply the range normalization in the log domain.

    In the log domain, ``norm`` is a simple scaling: ``log(norm(x)) =
    log(x) * log(9) / log(m)``.

    :param logs: The (antisymmetric) matrix of ``log(m_ij)``.

    :return: The scaled logs, whose largest value is ``log(9)``. A flat
        matrix is returned unchanged.
    """
    log_max = float(np.max(logs))
    if log_max <= FLAT_LOG_TOLERANCE:
        return logs
    return logs * (np.log(SAATY_BOUND) / log_max)


def normalize_reciprocal(matrix: ReciprocalMatrix) -> ReciprocalMatrix:
    """
    Rescale a reciprocal matrix into the ``[1/9, 9]`` range.

    The largest entry ``m_max`` is mapped to exactly ``9`` when
    ``m_max > 1``. The all-ones matrix is returned unchanged (the exponent
    ``1 / log_9(1)`` is undefined), as is a matrix that already spans
    ``[1/9, 9]`` (the exponent is 1).

    :param matrix: A reciprocal matrix with any (or no) bound.

    :return: A CCM, i.e., a ReciprocalMatrix bounded by 9.
    """
    logs = normalize_logs(np.log(matrix.values))
    logger.debug('Normalized %s (max entry %g)', matrix, matrix.max_entry())
    return ReciprocalMatrix(matrix.items, np.exp(logs), SAATY_BOUND)
