"""
Event Impact Factors (EIF) computed from a collective matrix.

For each event ``i``, the impact value is

    ``I_i = 1/2 * (1 + log_9(phi(m_i1, ..., m_in)))``

where ``phi`` is the geometric mean of the ``i``-th row (the diagonal
included). Since entries lie in ``[1/9, 9]``, ``log_9`` of the row mean lies
in ``[-1, 1]`` and ``I_i`` in ``[0, 1]``. The values are then normalized so
that they sum to 1: these normalized values are the EIFs.
"""

import dataclasses
import logging
from typing import Dict, Optional, Tuple

import numpy as np

from eventimpact.aggregation import AggregationOperator, GeometricMean
from eventimpact.errors import DegenerateImpact, ValidationError, ValueOutOfScale
from eventimpact.structures import ItemSet, ReciprocalMatrix, SAATY_BOUND

logger = logging.getLogger(__name__)

SUM_TOLERANCE = 1e-9
"""Tolerance on the sum of normalized values (which must be 1)."""


@dataclasses.dataclass(frozen=True)
class ImpactVector:
    """
    Raw impact values and normalized Event Impact Factors, per item.
    """

    items: ItemSet
    """The events, in the order of the collective matrix."""

    raw: Tuple[float, ...]
    """The raw impact values ``I_i``, each in ``[0, 1]``."""

    normalized: Tuple[float, ...]
    """The EIFs: raw values divided by their sum, hence summing to 1."""

    def __post_init__(self):
        raw = tuple(float(v) for v in self.raw)
        normalized = tuple(float(v) for v in self.normalized)
        if not len(raw) == len(normalized) == len(self.items):
            raise ValidationError(f'Expected {len(self.items)} raw and '
                                  f'normalized values, found {len(raw)} and '
                                  f'{len(normalized)}')
        if any(not 0.0 <= v <= 1.0 for v in raw):
            raise ValidationError(f'Raw impact values must lie in [0, 1], '
                                  f'found {raw}')
        if any(v < 0.0 for v in normalized) or \
                abs(sum(normalized) - 1.0) > SUM_TOLERANCE:
            raise ValidationError(f'Normalized impact values must be '
                                  f'non-negative and sum to 1, found '
                                  f'{normalized}')
        object.__setattr__(self, 'raw', raw)
        object.__setattr__(self, 'normalized', normalized)

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.items.labels

    def eif(self, label: str) -> float:
        """The Event Impact Factor of a single event."""
        return self.normalized[self.items.index(label)]

    def as_dict(self) -> Dict[str, float]:
        """Map each label to its EIF, in the items' order."""
        return dict(zip(self.labels, self.normalized))


def impact_vector(matrix: ReciprocalMatrix,
                  operator: Optional[AggregationOperator] = None) -> ImpactVector:
    """
    Compute the impact of each item of a (collective) reciprocal matrix.

    :param matrix: A CCM or CCCM, with entries in ``[1/9, 9]``.
    :param operator: The operator applied to each row. By default, the
        geometric mean.

    :raises ValueOutOfScale: if the matrix holds entries outside ``[1/9, 9]``
        (e.g., a raw ratio matrix that was not normalized).
    :raises DegenerateImpact: if all raw values are zero, which reciprocity
        actually forbids.

    :return: The raw impact values and their L1-normalized version (EIF).
    """
    if operator is None:
        operator = GeometricMean()
    if matrix.max_entry() > SAATY_BOUND + 1e-9:
        raise ValueOutOfScale(f'Impact requires entries in [1/9, 9], found a '
                              f'maximum of {matrix.max_entry()}',
                              value=matrix.max_entry())
    row_logs = operator.combine_logs(np.log(matrix.values), axis=1)
    raw = 0.5 * (1.0 + row_logs / np.log(SAATY_BOUND))
    # Entries may exceed the range by rounding errors only.
    raw = np.clip(raw, 0.0, 1.0)
    total = float(np.sum(raw))
    if total <= 0.0:
        raise DegenerateImpact(f'All raw impact values are zero for {matrix}')
    normalized = raw / total
    logger.debug('Impact computed for %d items (max EIF %.4f)',
                 matrix.n, float(np.max(normalized)))
    return ImpactVector(matrix.items, tuple(raw), tuple(normalized))
