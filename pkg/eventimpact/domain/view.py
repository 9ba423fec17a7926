"""
Views of the OR domain and the event grid built from two of them.

A *view* is one perspective on the intervention: the surgical workflow
(its phases), the human roles, the target device, ... Its *elements* are the
labels that components of events take in that view.

The *event grid* crosses two views, the workflow phases and the human roles:
every combination ``(phase, role)`` is a virtual event. With 7 phases and 5
roles, the grid holds 35 events.
"""

import dataclasses
from typing import Tuple

import numpy as np

from eventimpact.errors import EmptyLabel, TooFewItems
from eventimpact.structures import ItemSet

EVENT_SEPARATOR = '×'
"""Separator between the phase and the role in event labels."""


def event_label(phase: str, role: str) -> str:
    """The label of the virtual event ``(phase, role)``, e.g., ``Prep×nurse``."""
    return f'{phase}{EVENT_SEPARATOR}{role}'


@dataclasses.dataclass(frozen=True)
class View:
    """
    A named perspective on the domain, and its elements.

    Contrary to preference structures, a view may hold a single element
    (e.g., a single role when only phases are studied).
    """

    name: str
    """Name of the view, unique within a scenario, e.g., ``workflow``."""

    elements: ItemSet
    """The elements of the view, e.g., the 7 workflow phases."""

    def __post_init__(self):
        if not isinstance(self.name, str) or self.name.strip() == '':
            raise EmptyLabel(f'View names must be non-empty strings, found '
                             f'{self.name!r}', value=self.name)
        elements = self.elements
        if not isinstance(elements, ItemSet):
            elements = ItemSet(elements, min_size=1)
        object.__setattr__(self, 'elements', elements)

    def __len__(self):
        return len(self.elements)

    def __str__(self):
        return 'View<{};{}>'.format(self.name, len(self))

    __repr__ = __str__


@dataclasses.dataclass(frozen=True)
class EventGrid:
    """
    The cross product of a phase view (``p`` phases) and a role view
    (``q`` roles).

    Events are labelled ``phase×role`` and ordered row-major, phase first:
    the event ``(phases[a], roles[b])`` has index ``a * q + b``.
    """

    phase_view: View
    role_view: View

    events: ItemSet = dataclasses.field(init=False)
    """The ``p * q`` event labels."""

    def __post_init__(self):
        if self.p * self.q < 2:
            raise TooFewItems(f'The event grid needs at least 2 events, found '
                              f'{self.p} phase(s) and {self.q} role(s)',
                              value=self.p * self.q)
        events = ItemSet(
            event_label(phase, role)
            for phase in self.phases
            for role in self.roles
        )
        object.__setattr__(self, 'events', events)

    @property
    def phases(self) -> ItemSet:
        return self.phase_view.elements

    @property
    def roles(self) -> ItemSet:
        return self.role_view.elements

    @property
    def p(self) -> int:
        """Number of phases."""
        return len(self.phase_view)

    @property
    def q(self) -> int:
        """Number of roles."""
        return len(self.role_view)

    @property
    def phase_indices(self) -> np.ndarray:
        """For each event (in order), the index of its phase."""
        return np.repeat(np.arange(self.p), self.q)

    @property
    def role_indices(self) -> np.ndarray:
        """For each event (in order), the index of its role."""
        return np.tile(np.arange(self.q), self.p)

    def event_index(self, phase: str, role: str) -> int:
        return self.phases.index(phase) * self.q + self.roles.index(role)

    def coordinates(self, index: int) -> Tuple[str, str]:
        """The ``(phase, role)`` of an event, from its index."""
        a, b = divmod(index, self.q)
        return self.phases[a], self.roles[b]

    def __str__(self):
        return 'EventGrid<{}x{}>'.format(self.p, self.q)

    __repr__ = __str__
