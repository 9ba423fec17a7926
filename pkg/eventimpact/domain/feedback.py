"""
Ranking of usability feedback by the impact of the situation it was given in.

Feedback collected during an intervention (e.g., "the screen was too far
from the assistant during clipping") is tagged with the phase and role it
refers to. Ordering feedback by the EIF of that cell lets developers work on
the most critical situations first.
"""

import dataclasses
from typing import List, Sequence, Tuple

import numpy as np

from .impact_table import ImpactTable


@dataclasses.dataclass(frozen=True)
class FeedbackItem:
    text: str
    phase: str
    role: str


def rank_feedback(table: ImpactTable,
                  items: Sequence[FeedbackItem]) -> List[Tuple[FeedbackItem, float]]:
    """
    Sort feedback items by decreasing EIF of their ``(role, phase)`` cell.

    Items with the same EIF keep their input order.

    :raises UnknownLabel: if an item refers to an unknown phase or role.
    """
    eifs = np.array([table.cell(item.role, item.phase) for item in items],
                    dtype=np.float64)
    order = np.argsort(-eifs, kind='stable')
    return [(items[k], float(eifs[k])) for k in order]
