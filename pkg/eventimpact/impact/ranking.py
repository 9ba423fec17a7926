"""
Ranking and selection of events by their impact.
"""

from typing import List, Tuple

import numpy as np

from eventimpact.errors import SOutOfRange
from .impact_vector import ImpactVector


def rank_events(vector: ImpactVector) -> List[Tuple[str, float]]:
    """
    Sort the events by decreasing EIF.

    Ties are broken by the items' order (the sort is stable), so the result
    is deterministic: a uniform vector keeps the original order.

    :return: A list of ``(label, eif)`` pairs, the most impactful first.
    """
    normalized = np.asarray(vector.normalized)
    order = np.argsort(-normalized, kind='stable')
    return [(vector.items[k], float(normalized[k])) for k in order]


def select_best(vector: ImpactVector, s: int) -> List[str]:
    """
    Select the ``s`` most impactful events.

    :raises SOutOfRange: if ``s`` is not in ``[1, n]``.

    :return: The ``s`` first labels of :py:func:`rank_events`.
    """
    n = len(vector.items)
    if isinstance(s, bool) or not isinstance(s, (int, np.integer)) \
            or not 1 <= s <= n:
        raise SOutOfRange(f'The number of events to select must be an '
                          f'integer in [1, {n}], found {s!r}', value=s)
    return [label for label, _ in rank_events(vector)[:s]]
