"""
Meta-components bundle the CCFs that describe one aspect of the events, and
expand their collective matrix onto the event grid.

Components of an event are its phase and its role; a meta-component may
combine information about several of them. In the operating room use case:

- the *surgical workflow* meta-component scores phases only (durations,
  survey);
- the *human role* meta-component scores roles only (survey, experience);
- the *roles by phase* meta-component scores every ``(phase, role)`` couple
  (per-phase orderings of the roles).

Matrices of different sizes (7x7, 5x5, 35x35) must be resampled to the size
of the event grid before they can be aggregated together.
"""

import dataclasses
import enum
import logging
from typing import Optional, Tuple

import numpy as np

from eventimpact.aggregation import AggregationOperator, aggregate
from eventimpact.errors import (CharacteristicError, DuplicateLabel,
                                EmptyInput, EmptyLabel, EventImpactError,
                                ItemSetMismatch, UnknownLabel)
from eventimpact.structures import ReciprocalMatrix
from .characteristics import CharacteristicFunction, LookupTableCCF
from .view import EventGrid

logger = logging.getLogger(__name__)


class Target(enum.Enum):
    """Which coordinate(s) of events a meta-component scores."""

    PHASE = 'phase'
    ROLE = 'role'
    PHASE_ROLE = 'phase_role'


@dataclasses.dataclass(frozen=True)
class MetaComponent:
    """
    A named bundle of CCFs over the same target.

    All CCFs must share exactly the same items: the phases for a
    :py:attr:`Target.PHASE` meta-component, the roles for
    :py:attr:`Target.ROLE`, and the ``phase×role`` events for
    :py:attr:`Target.PHASE_ROLE` (which only accepts look-up table CCFs).
    """

    name: str
    target: Target
    ccfs: Tuple[CharacteristicFunction, ...]

    def __post_init__(self):
        if not isinstance(self.name, str) or self.name.strip() == '':
            raise EmptyLabel(f'Meta-component names must be non-empty '
                             f'strings, found {self.name!r}', value=self.name)
        object.__setattr__(self, 'target', Target(self.target))
        ccfs = tuple(self.ccfs)
        if len(ccfs) == 0:
            raise EmptyInput(f'Meta-component {self.name!r} holds no CCF')
        names = set()
        for ccf in ccfs:
            if ccf.name in names:
                raise DuplicateLabel(f'CCF name {ccf.name!r} is used twice in '
                                     f'meta-component {self.name!r}',
                                     label=ccf.name)
            names.add(ccf.name)
            is_lookup = isinstance(ccf, LookupTableCCF)
            if is_lookup != (self.target is Target.PHASE_ROLE):
                raise ItemSetMismatch(f'CCF {ccf.name!r} ({ccf.kind}) cannot be '
                                      f'used in a {self.target.value} '
                                      f'meta-component', label=ccf.name)
        for ccf in ccfs[1:]:
            try:
                ccfs[0].items.check_same(ccf.items)
            except ItemSetMismatch as e:
                raise ItemSetMismatch(f'CCF {ccf.name!r} of {self.name!r}: '
                                      f'{e.message}', label=e.label) from e
        object.__setattr__(self, 'ccfs', ccfs)

    def ccf(self, name: str) -> CharacteristicFunction:
        for ccf in self.ccfs:
            if ccf.name == name:
                return ccf
        raise UnknownLabel(f'No CCF named {name!r} in meta-component '
                           f'{self.name!r}', label=name)

    def replace_ccf(self, ccf: CharacteristicFunction) -> 'MetaComponent':
        """Return a copy where the CCF of the same name is replaced."""
        self.ccf(ccf.name)
        ccfs = tuple(ccf if c.name == ccf.name else c for c in self.ccfs)
        return dataclasses.replace(self, ccfs=ccfs)

    def __str__(self):
        return 'MetaComponent<{};{};{} CCFs>'.format(
            self.name, self.target.value, len(self.ccfs))

    __repr__ = __str__


def ccf_to_ccm(meta_component: MetaComponent,
               ccf: CharacteristicFunction) -> ReciprocalMatrix:
    """
    Transform a CCF into its CCM, adding provenance to any error.

    :raises CharacteristicError: wrapping the original error.
    """
    try:
        return ccf.to_ccm()
    except EventImpactError as e:
        raise CharacteristicError(meta_component.name, ccf.name, e) from e


def build_meta_component(meta_component: MetaComponent,
                         operator: Optional[AggregationOperator] = None
                         ) -> ReciprocalMatrix:
    """
    Transform every CCF of a meta-component and aggregate them.

    :return: The collective matrix over the meta-component's own target
        (e.g., 7x7 for phases).
    """
    ccms = [ccf_to_ccm(meta_component, ccf) for ccf in meta_component.ccfs]
    collective = aggregate(ccms, operator)
    logger.debug('Built %s as %s', meta_component, collective)
    return collective


def expand_matrix(matrix: ReciprocalMatrix,
                  target: Target,
                  grid: EventGrid) -> ReciprocalMatrix:
    """
    Resample a matrix over phases, roles, or events onto the event grid.

    For two events ``a = (ph_a, r_a)`` and ``b = (ph_b, r_b)``:

    - a phase matrix yields ``m_ab = m(ph_a, ph_b)``, which is ``1`` for two
      events of the same phase;
    - a role matrix yields ``m_ab = m(r_a, r_b)``, which is ``1`` for two
      events of the same role;
    - an event matrix is already defined over the grid and is returned as-is.

    The result is reciprocal, and consistent whenever the input is.

    :raises ItemSetMismatch: if the matrix items are not the phases, roles,
        or events of the grid (in the grid's order).
    """
    target = Target(target)
    if target is Target.PHASE_ROLE:
        grid.events.check_same(matrix.items)
        return matrix
    if target is Target.PHASE:
        grid.phases.check_same(matrix.items)
        indices = grid.phase_indices
    else:
        grid.roles.check_same(matrix.items)
        indices = grid.role_indices
    values = matrix.values[np.ix_(indices, indices)]
    return ReciprocalMatrix(grid.events, values, matrix.bound)


def expand_meta_component(meta_component: MetaComponent,
                          grid: EventGrid,
                          operator: Optional[AggregationOperator] = None
                          ) -> ReciprocalMatrix:
    """
    Build the collective matrix of a meta-component, and expand it onto the
    event grid.

    :return: A ``p*q x p*q`` reciprocal matrix over the grid's events.
    """
    return expand_matrix(build_meta_component(meta_component, operator),
                         meta_component.target, grid)
