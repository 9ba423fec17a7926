"""
Component Characteristic Functions (CCF), as used within meta-components.

Each CCF wraps a preference structure (or a prebuilt matrix) under a name,
together with the parameters of its transformation, and knows how to turn
itself into a CCM through :py:meth:`CharacteristicFunction.to_ccm`.

Two families exist:

- CCFs over a single view (phases, or roles): :py:class:`OrderingCCF`,
  :py:class:`RatingCCF`, :py:class:`PairwiseCCF`, :py:class:`MatrixCCF`,
  and :py:class:`CollectiveCCF` (a survey, i.e., several CCFs aggregated and
  used directly as a CCM).
- *Look-up table* CCFs over the phase×role grid, which give a utility to
  every ``(phase, role)`` couple: :py:class:`PhaseOrderingsCCF` (one role
  ordering per phase) and :py:class:`PhaseRatingsCCF` (one role rating per
  phase).

To implement a new CCF, extend :py:class:`CharacteristicFunction` and
implement :py:attr:`~CharacteristicFunction.items` and
:py:meth:`~CharacteristicFunction.to_ccm`.
"""

import dataclasses
import warnings
from abc import ABC, abstractmethod
from typing import Optional, Sequence, Tuple

import numpy as np

from eventimpact.aggregation import aggregate, get_operator
from eventimpact.errors import EmptyInput, LengthMismatch, ValueOutOfScale
from eventimpact.impact import impact_vector
from eventimpact.structures import (ItemSet, Ordering, PairwiseComparison,
                                    Rating, ReciprocalMatrix, SAATY_BOUND)
from eventimpact.transforms import (TransformConfig, ordering_to_ccm,
                                    pairwise_to_ccm, rating_to_ccm)
from .view import event_label


class CharacteristicFunction(ABC):
    """
    A named CCF, that can be transformed into a CCM.

    Subclasses are frozen dataclasses whose first field is the ``name``.
    """

    name: str
    """Name of the CCF, unique within its meta-component, e.g., ``durations``."""

    kind: str = 'ccf'
    """The tag of this CCF type in scenario files."""

    @property
    @abstractmethod
    def items(self) -> ItemSet:
        """The items over which the CCM of this CCF is defined."""
        pass

    @abstractmethod
    def to_ccm(self) -> ReciprocalMatrix:
        """
        Transform this CCF into a CCM.

        :return: A ReciprocalMatrix over :py:attr:`items`, bounded by 9.
        """
        pass

    @property
    def z(self) -> Optional[float]:
        """The exponent used by this CCF, or ``None`` if it does not use any."""
        return None

    def with_z(self, z: float) -> 'CharacteristicFunction':
        """
        Return a copy of this CCF that uses the exponent ``z``.

        CCFs that do not rely on ratios are returned unchanged.
        """
        return self

    def __str__(self):
        return '{}<{}>'.format(type(self).__name__, self.name)

    __repr__ = __str__


@dataclasses.dataclass(frozen=True, repr=False)
class OrderingCCF(CharacteristicFunction):
    """A CCFO: a strict ranking of the items, transformed through the exponential transfer function."""

    name: str
    ordering: Ordering

    kind = 'ordering'

    @property
    def items(self) -> ItemSet:
        return self.ordering.items

    def to_ccm(self) -> ReciprocalMatrix:
        return ordering_to_ccm(self.ordering)


@dataclasses.dataclass(frozen=True, repr=False)
class RatingCCF(CharacteristicFunction):
    """A CCFR: utility values, transformed through their ratios."""

    name: str
    rating: Rating
    config: TransformConfig = TransformConfig()

    kind = 'rating'

    @property
    def items(self) -> ItemSet:
        return self.rating.items

    @property
    def z(self) -> Optional[float]:
        return self.config.z

    def with_z(self, z: float) -> 'RatingCCF':
        config = dataclasses.replace(self.config, z=z)
        return dataclasses.replace(self, config=config)

    def to_ccm(self) -> ReciprocalMatrix:
        return rating_to_ccm(self.rating, self.config)


@dataclasses.dataclass(frozen=True, repr=False)
class PairwiseCCF(CharacteristicFunction):
    """A CCFP: upper-triangular judgements, completed by reciprocity."""

    name: str
    comparison: PairwiseComparison

    kind = 'pairwise'

    @property
    def items(self) -> ItemSet:
        return self.comparison.items

    def to_ccm(self) -> ReciprocalMatrix:
        return pairwise_to_ccm(self.comparison)


@dataclasses.dataclass(frozen=True, repr=False)
class MatrixCCF(CharacteristicFunction):
    """
    A prebuilt CCM, e.g., the result of a survey computed elsewhere.

    The matrix is used directly, without any re-normalization. Only its
    upper triangle (and diagonal) is kept, the lower triangle is rebuilt by
    reciprocity, as when it is read from a scenario file.
    """

    name: str
    matrix: ReciprocalMatrix

    kind = 'matrix'

    def __post_init__(self):
        if self.matrix.max_entry() > SAATY_BOUND + 1e-9:
            raise ValueOutOfScale(f'Prebuilt matrix {self.name!r} must have '
                                  f'entries in [1/9, 9], found a maximum of '
                                  f'{self.matrix.max_entry()}',
                                  value=self.matrix.max_entry())
        matrix = ReciprocalMatrix.from_upper_rows(self.matrix.items,
                                                  self.matrix.upper_rows(),
                                                  SAATY_BOUND)
        object.__setattr__(self, 'matrix', matrix)

    @property
    def items(self) -> ItemSet:
        return self.matrix.items

    def with_z(self, z: float) -> 'MatrixCCF':
        warnings.warn(f'The exponent z={z} is ignored by the prebuilt matrix '
                      f'{self.name!r}, which is used directly.')
        return self

    def to_ccm(self) -> ReciprocalMatrix:
        return self.matrix


@dataclasses.dataclass(frozen=True, repr=False)
class CollectiveCCF(CharacteristicFunction):
    """
    A survey: several CCFs (e.g., one per expert) over the same items,
    aggregated into a collective CCM.

    The collective matrix is used directly as the CCM of this CCF, without
    re-normalization; it is the *collective* of an expert panel, rather
    than one more opinion among the other CCFs of the meta-component.
    """

    name: str
    members: Tuple[CharacteristicFunction, ...]
    operator: str = 'geometric_mean'

    kind = 'collective'

    def __post_init__(self):
        members = tuple(self.members)
        if len(members) == 0:
            raise EmptyInput(f'Collective {self.name!r} holds no member')
        for member in members[1:]:
            members[0].items.check_same(member.items)
        # Fail early on unknown operators.
        get_operator(self.operator)
        object.__setattr__(self, 'members', members)

    @property
    def items(self) -> ItemSet:
        return self.members[0].items

    @property
    def z(self) -> Optional[float]:
        zs = [member.z for member in self.members if member.z is not None]
        return zs[0] if len(zs) > 0 else None

    def with_z(self, z: float) -> 'CollectiveCCF':
        members = tuple(member.with_z(z) for member in self.members)
        return dataclasses.replace(self, members=members)

    def to_ccm(self) -> ReciprocalMatrix:
        ccms = [member.to_ccm() for member in self.members]
        return aggregate(ccms, get_operator(self.operator))


def derive_rating_from_orderings(orderings: Sequence[Ordering]) -> np.ndarray:
    """
    Turn one role ordering per phase into a table of utilities.

    Each ordering is transformed into a CCM, whose raw impact values
    (before normalization) become the utilities of the roles for
    that phase. Raw values lie in ``]0, 1[`` for orderings and preserve the
    order: the best role of a phase gets the highest utility.

    For instance, the ordering ``[1, 4, 2, 5, 3]`` yields the utilities
    ``[0.75, 0.375, 0.625, 0.25, 0.5]``.

    :param orderings: ``p`` orderings, all over the same ``q`` roles (in the
        same order).

    :raises EmptyInput: if no ordering is given.
    :raises ItemSetMismatch: if the orderings do not share their roles.

    :return: A ``p x q`` array, ``table[a, b]`` being the utility of the
        ``b``-th role in the ``a``-th phase.
    """
    if len(orderings) == 0:
        raise EmptyInput('At least one ordering is required')
    roles = orderings[0].items
    rows = []
    for ordering in orderings:
        roles.check_same(ordering.items)
        rows.append(impact_vector(ordering_to_ccm(ordering)).raw)
    return np.array(rows, dtype=np.float64)


class LookupTableCCF(CharacteristicFunction, ABC):
    """
    A CCF that gives a utility to every ``(phase, role)`` couple.

    The look-up table is flattened (row-major, phase first) into a rating
    over the virtual events ``phase×role``, and transformed through its
    ratios followed by the range normalization.
    """

    phases: ItemSet
    config: TransformConfig

    @property
    @abstractmethod
    def roles(self) -> ItemSet:
        pass

    @abstractmethod
    def utilities(self) -> np.ndarray:
        """The ``p x q`` table of utilities."""
        pass

    @property
    def items(self) -> ItemSet:
        return ItemSet(
            event_label(phase, role)
            for phase in self.phases
            for role in self.roles
        )

    @property
    def z(self) -> Optional[float]:
        return self.config.z

    def with_z(self, z: float) -> 'LookupTableCCF':
        config = dataclasses.replace(self.config, z=z)
        return dataclasses.replace(self, config=config)

    def to_ccm(self) -> ReciprocalMatrix:
        rating = Rating(self.items, tuple(self.utilities().ravel()))
        return rating_to_ccm(rating, self.config)

    def _check_phases(self, n_rows: int, what: str):
        phases = self.phases
        if not isinstance(phases, ItemSet):
            phases = ItemSet(phases, min_size=1)
            object.__setattr__(self, 'phases', phases)
        if n_rows != len(phases):
            raise LengthMismatch(f'Expected one {what} per phase '
                                 f'({len(phases)}) in {self.name!r}, found '
                                 f'{n_rows}', value=n_rows)


@dataclasses.dataclass(frozen=True, repr=False)
class PhaseOrderingsCCF(LookupTableCCF):
    """
    One ordering of the roles per phase, e.g., the importance of each
    actor in each workflow phase, as ranked by an expert.

    See :py:func:`derive_rating_from_orderings`.
    """

    name: str
    phases: ItemSet
    orderings: Tuple[Ordering, ...]
    config: TransformConfig = TransformConfig()

    kind = 'phase_orderings'

    def __post_init__(self):
        object.__setattr__(self, 'orderings', tuple(self.orderings))
        self._check_phases(len(self.orderings), 'ordering')
        derive_rating_from_orderings(self.orderings)

    @property
    def roles(self) -> ItemSet:
        return self.orderings[0].items

    def utilities(self) -> np.ndarray:
        return derive_rating_from_orderings(self.orderings)


@dataclasses.dataclass(frozen=True, repr=False)
class PhaseRatingsCCF(LookupTableCCF):
    """
    One rating of the roles per phase, given directly as utilities.
    """

    name: str
    phases: ItemSet
    ratings: Tuple[Rating, ...]
    config: TransformConfig = TransformConfig()

    kind = 'phase_ratings'

    def __post_init__(self):
        object.__setattr__(self, 'ratings', tuple(self.ratings))
        self._check_phases(len(self.ratings), 'rating')
        if len(self.ratings) == 0:
            raise EmptyInput(f'{self.name!r} holds no rating')
        for rating in self.ratings[1:]:
            self.ratings[0].items.check_same(rating.items)

    @property
    def roles(self) -> ItemSet:
        return self.ratings[0].items

    def utilities(self) -> np.ndarray:
        return np.array([rating.utilities for rating in self.ratings],
                        dtype=np.float64)
