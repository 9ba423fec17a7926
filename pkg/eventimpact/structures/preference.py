"""
The three kinds of Component Characteristic Functions (CCF).

A CCF turns the text labels of a component into numeric characteristics.
Depending on how the information was obtained, it takes one of three forms:

- :py:class:`Ordering` (CCFO): a strict ranking of the ``n`` items. The least
  discriminative, but the easiest to obtain from a survey.
- :py:class:`Rating` (CCFR): a positive utility value per item, e.g., a
  duration in seconds or years of experience. Ties are allowed.
- :py:class:`PairwiseComparison` (CCFP): the ``(n-1)n/2`` upper-triangular
  judgements on the 9-step scale. The most detailed, and the only one that
  may be intransitive.

All three are immutable and validated on construction: an instance that
exists is always valid.
"""

import dataclasses
import math
from abc import ABC
from typing import Any, Dict, Iterable, Sequence, Tuple, Union

from eventimpact.errors import (DuplicateRank, LengthMismatch,
                                NonPositiveUtility, RankOutOfRange,
                                TooFewItems, ValueOutOfScale)
from .item_set import ItemSet

SAATY_BOUND = 9.0
"""Upper bound of the comparison scale; its reciprocal is the lower bound."""

SCALE_TOLERANCE = 1e-9
"""Absolute tolerance when checking values against the ``[1/9, 9]`` scale."""

Items = Union[ItemSet, Iterable[str]]


def _as_item_set(items: Items) -> ItemSet:
    if isinstance(items, ItemSet):
        if len(items) < 2:
            raise TooFewItems(f'At least 2 items are required, found '
                              f'{len(items)}', value=len(items))
        return items
    return ItemSet(items)


def _as_float(value) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        # Not a number at all: let the caller reject it as out of range.
        return math.nan


def _is_integral(value) -> bool:
    value = _as_float(value)
    return math.isfinite(value) and value.is_integer()


def _check_length(items: ItemSet, values: Sequence, expected: int, what: str):
    if len(values) != expected:
        raise LengthMismatch(f'Expected {expected} {what} for {len(items)} '
                             f'items, found {len(values)}', value=len(values))


@dataclasses.dataclass(frozen=True)
class PreferenceStructure(ABC):
    """
    Base class of the three CCF types: one view of ``n`` items.
    """

    items: ItemSet

    @property
    def n(self) -> int:
        """Number of items."""
        return len(self.items)

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.items.labels

    def as_dict(self) -> Dict[str, Any]:
        """
        Return a plain dictionary (labels and values), e.g., for serialization.
        """
        d = {'kind': type(self).__name__.lower(), 'labels': list(self.labels)}
        for field in dataclasses.fields(self):
            if field.name != 'items':
                d[field.name] = list(getattr(self, field.name))
        return d


@dataclasses.dataclass(frozen=True)
class Ordering(PreferenceStructure):
    """
    A strict total order over the items (CCFO).

    ``ranks[i]`` is the rank ``o(i)`` of the ``i``-th item; rank 1 designates
    the best item. Ranks must form a permutation of ``{1, ..., n}``: ties are
    rejected, experts that want ties must provide a :py:class:`Rating`.
    """

    ranks: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'items', _as_item_set(self.items))
        _check_length(self.items, self.ranks, self.n, 'ranks')
        ranks = []
        owner = {}
        for label, rank in zip(self.items, self.ranks):
            if isinstance(rank, bool) or not _is_integral(rank):
                raise RankOutOfRange(f'Rank of {label!r} must be an integer, '
                                     f'found {rank!r}', label=label, value=rank)
            rank = int(rank)
            if not 1 <= rank <= self.n:
                raise RankOutOfRange(f'Rank of {label!r} must be in '
                                     f'[1, {self.n}], found {rank}',
                                     label=label, value=rank)
            if rank in owner:
                raise DuplicateRank(f'Rank {rank} is given to both '
                                    f'{owner[rank]!r} and {label!r}',
                                    label=label, value=rank)
            owner[rank] = label
            ranks.append(rank)
        object.__setattr__(self, 'ranks', tuple(ranks))


@dataclasses.dataclass(frozen=True)
class Rating(PreferenceStructure):
    """
    A strictly positive utility value per item (CCFR).

    Higher utilities indicate a higher importance. Utilities are not range
    restricted (they need not be normalized to ``]0, 1]``), but they must be
    positive, as the transformation relies on their ratios.
    """

    utilities: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, 'items', _as_item_set(self.items))
        _check_length(self.items, self.utilities, self.n, 'utilities')
        utilities = []
        for label, u in zip(self.items, self.utilities):
            u = _as_float(u)
            if not (math.isfinite(u) and u > 0):
                raise NonPositiveUtility(f'Utility of {label!r} must be a '
                                         f'finite positive number, found {u}',
                                         label=label, value=u)
            utilities.append(u)
        object.__setattr__(self, 'utilities', tuple(utilities))


@dataclasses.dataclass(frozen=True)
class PairwiseComparison(PreferenceStructure):
    """
    The strictly upper-triangular part of a comparison matrix (CCFP).

    ``upper`` lists the ``(n-1)n/2`` values ``p_ij`` for ``i < j``, row by
    row: ``p_12, p_13, ..., p_1n, p_23, ..., p_(n-1)n``. Each value states how
    much more important item ``i`` is over item ``j``, on the 9-step scale
    (``1`` equal, ``9`` extreme, reciprocals for the opposite).
    The lower triangle is never supplied: it is always derived by reciprocity.
    """

    upper: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, 'items', _as_item_set(self.items))
        _check_length(self.items, self.upper, self.n * (self.n - 1) // 2,
                      'upper-triangular values')
        upper = []
        low, high = 1.0 / SAATY_BOUND, SAATY_BOUND
        for (i, j), p in zip(self.pairs(), self.upper):
            p = _as_float(p)
            if not (low - SCALE_TOLERANCE <= p <= high + SCALE_TOLERANCE):
                raise ValueOutOfScale(
                    f'Comparison of {self.items[i]!r} over {self.items[j]!r} '
                    f'must be in [1/9, 9], found {p}',
                    label=self.items[i], value=p
                )
            upper.append(p)
        object.__setattr__(self, 'upper', tuple(upper))

    def pairs(self) -> Iterable[Tuple[int, int]]:
        """The ``(i, j)`` index pairs, in the same order as ``upper``."""
        for i in range(self.n):
            for j in range(i + 1, self.n):
                yield i, j


def make_ordering(items: Items, ranks: Sequence[int]) -> Ordering:
    """
    Build and validate an :py:class:`Ordering`.

    For example, ``make_ordering(['Troc', 'Prep', 'Clip', 'Det', 'Retr'], [1, 4, 2, 5, 3])``
    ranks *Troc* first and *Det* last.

    :raises LengthMismatch: if there is not one rank per item.
    :raises RankOutOfRange: if a rank is not an integer in ``[1, n]``.
    :raises DuplicateRank: if two items share a rank.
    """
    return Ordering(_as_item_set(items), tuple(ranks))


def make_rating(items: Items, utilities: Sequence[float]) -> Rating:
    """
    Build and validate a :py:class:`Rating`.

    :raises LengthMismatch: if there is not one utility per item.
    :raises NonPositiveUtility: if a utility is not strictly positive.
    """
    return Rating(_as_item_set(items), tuple(utilities))


def make_pairwise(items: Items, upper: Sequence[float]) -> PairwiseComparison:
    """
    Build and validate a :py:class:`PairwiseComparison`.

    :raises LengthMismatch: if ``upper`` does not hold ``(n-1)n/2`` values.
    :raises ValueOutOfScale: if a value is outside ``[1/9, 9]``.
    """
    return PairwiseComparison(_as_item_set(items), tuple(upper))
