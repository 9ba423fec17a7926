"""
The ItemSet is the ordered list of labels that every structure refers to.
"""

import dataclasses
from typing import Iterable, Iterator, Tuple

from eventimpact.errors import (DuplicateLabel, EmptyLabel, ItemSetMismatch,
                                TooFewItems, UnknownLabel)


@dataclasses.dataclass(frozen=True, init=False)
class ItemSet:
    """
    An ordered set of ``n >= 2`` distinct, non-empty labels.

    Items are the *events* (or *view elements*, such as workflow phases or
    human roles) that a preference structure talks about. The order matters:
    the ``i``-th value of an Ordering, a Rating, or the ``i``-th row of a
    matrix, always refers to the ``i``-th label.
    """

    labels: Tuple[str, ...]
    """The labels, in their reference order."""

    def __init__(self, labels: Iterable[str], min_size: int = 2):
        """
        :param labels: The labels, in their reference order.
        :param min_size: Minimal number of labels. Preference structures need
            at least 2 items; a view of the event grid may hold a single one.
        """
        # Accept any iterable (lists, generators, ...) but store a tuple to
        # keep the dataclass hashable and immutable.
        object.__setattr__(self, 'labels', tuple(labels))
        self._validate(min_size)

    def _validate(self, min_size: int):
        seen = set()
        for label in self.labels:
            if not isinstance(label, str) or label.strip() == '':
                raise EmptyLabel(f'Item labels must be non-empty strings, '
                                 f'found {label!r}', label=label, value=label)
            if label in seen:
                raise DuplicateLabel(f'Label {label!r} appears more than once',
                                     label=label, value=label)
            seen.add(label)
        if len(self.labels) < min_size:
            raise TooFewItems(f'At least {min_size} item(s) are required, found '
                              f'{len(self.labels)}', value=len(self.labels))

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __contains__(self, label) -> bool:
        return label in self.labels

    def __getitem__(self, i: int) -> str:
        return self.labels[i]

    def index(self, label: str) -> int:
        """
        Return the position of a label.

        :raises UnknownLabel: if the label is not part of this set.
        """
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(f'Unknown label {label!r}; expected one of '
                               f'{list(self.labels)}', label=label) from None

    def check_same(self, other: 'ItemSet'):
        """
        Ensure that ``other`` has exactly the same labels, in the same order.

        :raises ItemSetMismatch: naming the first label that differs.
        """
        if self.labels == other.labels:
            return
        for mine, theirs in zip(self.labels, other.labels):
            if mine != theirs:
                raise ItemSetMismatch(f'Item sets differ: expected {mine!r}, '
                                      f'found {theirs!r}', label=theirs)
        raise ItemSetMismatch(f'Item sets differ in size: {len(self)} and '
                              f'{len(other)} items', value=len(other))

    def __str__(self):
        return 'ItemSet<{}>'.format(', '.join(self.labels))

    __repr__ = __str__
