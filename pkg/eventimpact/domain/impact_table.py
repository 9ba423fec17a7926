"""
The impact look-up table: the EIFs of the event grid, reordered with one
row per role and one column per phase.
"""

import dataclasses
from typing import List, Tuple

import numpy as np

from eventimpact.errors import LengthMismatch, ValidationError
from eventimpact.impact import ImpactVector
from eventimpact.impact.impact_vector import SUM_TOLERANCE
from eventimpact.structures import ItemSet
from .view import EventGrid


@dataclasses.dataclass(frozen=True, eq=False)
class ImpactTable:
    """
    A ``q x p`` table of EIFs: ``cells[b, a]`` is the EIF of the event
    ``phases[a]×roles[b]``. Cells sum to 1.
    """

    roles: ItemSet
    phases: ItemSet
    cells: np.ndarray

    def __post_init__(self):
        roles, phases = self.roles, self.phases
        if not isinstance(roles, ItemSet):
            roles = ItemSet(roles, min_size=1)
        if not isinstance(phases, ItemSet):
            phases = ItemSet(phases, min_size=1)
        cells = np.array(self.cells, dtype=np.float64)
        if cells.shape != (len(roles), len(phases)):
            raise LengthMismatch(f'Expected a {len(roles)}x{len(phases)} table, '
                                 f'found shape {cells.shape}', value=cells.shape)
        if np.any(cells < 0) or abs(float(np.sum(cells)) - 1.0) > SUM_TOLERANCE:
            raise ValidationError(f'Table cells must be non-negative and sum '
                                  f'to 1, found a sum of {np.sum(cells)}')
        cells.setflags(write=False)
        object.__setattr__(self, 'roles', roles)
        object.__setattr__(self, 'phases', phases)
        object.__setattr__(self, 'cells', cells)

    @classmethod
    def from_vector(cls, grid: EventGrid, vector: ImpactVector) -> 'ImpactTable':
        """
        Reorder an impact vector over the grid's events into a table.

        :raises ItemSetMismatch: if the vector is not over the grid's events.
        """
        grid.events.check_same(vector.items)
        cells = np.asarray(vector.normalized).reshape(grid.p, grid.q).T
        return cls(grid.roles, grid.phases, cells)

    def cell(self, role: str, phase: str) -> float:
        """
        The EIF of the event ``phase×role``.

        :raises UnknownLabel: if the role or the phase does not exist.
        """
        return float(self.cells[self.roles.index(role), self.phases.index(phase)])

    def max_cell(self) -> float:
        return float(np.max(self.cells))

    def argmax(self) -> Tuple[str, str]:
        """The ``(role, phase)`` of the highest cell (first one on ties)."""
        b, a = np.unravel_index(int(np.argmax(self.cells)), self.cells.shape)
        return self.roles[b], self.phases[a]

    def rows(self) -> List[Tuple[str, List[float]]]:
        """One ``(role, cells)`` entry per row."""
        return [(role, self.cells[b].tolist()) for b, role in enumerate(self.roles)]

    def __eq__(self, other):
        if not isinstance(other, ImpactTable):
            return NotImplemented
        return self.roles == other.roles and self.phases == other.phases and \
            np.array_equal(self.cells, other.cells)

    __hash__ = None

    def __str__(self):
        return 'ImpactTable<{}x{}>'.format(len(self.roles), len(self.phases))

    __repr__ = __str__
