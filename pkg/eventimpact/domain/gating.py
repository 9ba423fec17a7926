"""
Call gating: refusing interruptions (e.g., phone calls) to a person when
the current event is too impactful.

A call to ``role`` during ``phase`` is rejected when the EIF of that cell is
strictly greater than ``threshold_fraction * max(table)``. With the default
fraction of 0.98, only the few most critical cells block calls; a fraction
of 1 never rejects anything.
"""

import dataclasses
import enum
from typing import List

from eventimpact.errors import ValidationError
from .impact_table import ImpactTable
from .scenario import DEFAULT_THRESHOLD_FRACTION, check_threshold_fraction


class GateAction(enum.Enum):
    ACCEPT = 'accept'
    REJECT = 'reject'


@dataclasses.dataclass(frozen=True)
class GateDecision:
    """The decision for a call, with the values it was based on."""

    role: str
    phase: str
    eif: float
    threshold: float
    action: GateAction

    def __post_init__(self):
        object.__setattr__(self, 'action', GateAction(self.action))
        expected = GateAction.REJECT if self.eif > self.threshold else GateAction.ACCEPT
        if self.action is not expected:
            raise ValidationError(f'Action {self.action.value} contradicts '
                                  f'eif={self.eif} and threshold={self.threshold}')

    @property
    def rejected(self) -> bool:
        return self.action is GateAction.REJECT


def gate_threshold(table: ImpactTable,
                   threshold_fraction: float = DEFAULT_THRESHOLD_FRACTION) -> float:
    """The EIF above which calls are rejected."""
    return check_threshold_fraction(threshold_fraction) * table.max_cell()


def gate_call(table: ImpactTable,
              role: str,
              phase: str,
              threshold_fraction: float = DEFAULT_THRESHOLD_FRACTION) -> GateDecision:
    """
    Decide whether a call to ``role`` during ``phase`` should go through.

    :raises UnknownLabel: if the role or the phase is not in the table.
    :raises InvalidThresholdFraction: if the fraction is not in ``]0, 1]``.
    """
    threshold = gate_threshold(table, threshold_fraction)
    eif = table.cell(role, phase)
    action = GateAction.REJECT if eif > threshold else GateAction.ACCEPT
    return GateDecision(role, phase, eif, threshold, action)


def gate_table(table: ImpactTable,
               threshold_fraction: float = DEFAULT_THRESHOLD_FRACTION
               ) -> List[GateDecision]:
    """Decisions for every cell, role by role, then phase by phase."""
    return [
        gate_call(table, role, phase, threshold_fraction)
        for role in table.roles
        for phase in table.phases
    ]
