"""
The multiplicative-reciprocal matrix, the common form of all CCFs.
"""

import dataclasses
from typing import List, Optional, Sequence

import numpy as np

from eventimpact.errors import LengthMismatch, NotReciprocal, ValueOutOfScale
from .item_set import ItemSet
from .preference import SAATY_BOUND, SCALE_TOLERANCE, Items, _as_item_set

RECIPROCITY_TOLERANCE = 1e-9
"""Relative tolerance on ``m_ij * m_ji = 1`` and on the unit diagonal."""


@dataclasses.dataclass(frozen=True, eq=False)
class ReciprocalMatrix:
    """
    An ``n x n`` multiplicative-reciprocal matrix over an :py:class:`ItemSet`.

    Every element ``m_ij`` represents the relative importance of item ``i``
    over item ``j``: ``1`` means indifference, ``9`` a high importance of
    ``i`` over ``j``, and ``1/9`` the opposite. The matrix satisfies:

    - ``m_ii = 1``;
    - ``m_ij * m_ji = 1`` (within :py:data:`RECIPROCITY_TOLERANCE`);
    - ``1/bound <= m_ij <= bound``.

    A *Component Characteristics Matrix* (CCM), and its collective version
    (CCCM), is a ReciprocalMatrix whose :py:attr:`bound` is ``9``. Raw ratio
    matrices, before their range is normalized, use ``bound=None``: only
    positivity is then enforced.

    The ``values`` array is read-only; the instance can be shared freely.
    """

    items: ItemSet
    """The items, in the order of rows (and columns)."""

    values: np.ndarray
    """The ``n x n`` float64 matrix."""

    bound: Optional[float] = SAATY_BOUND
    """
    The range bound ``m``: all entries lie in ``[1/m, m]``.
    ``None`` for unbounded (raw) matrices.
    """

    def __post_init__(self):
        object.__setattr__(self, 'items', _as_item_set(self.items))
        values = np.array(self.values, dtype=np.float64)
        n = len(self.items)
        if values.shape != (n, n):
            raise LengthMismatch(f'Expected a {n}x{n} matrix for {n} items, '
                                 f'found shape {values.shape}', value=values.shape)
        if not np.all(np.isfinite(values)) or np.any(values <= 0):
            i, j = np.argwhere(~(np.isfinite(values) & (values > 0)))[0]
            raise NotReciprocal(f'Entry ({self.items[i]!r}, {self.items[j]!r}) '
                                f'must be finite and positive, found '
                                f'{values[i, j]}', label=self.items[i],
                                value=float(values[i, j]))
        diagonal = np.diag(values)
        if not np.allclose(diagonal, 1.0, rtol=0, atol=RECIPROCITY_TOLERANCE):
            i = int(np.argmax(np.abs(diagonal - 1.0)))
            raise NotReciprocal(f'Diagonal entry of {self.items[i]!r} must be '
                                f'1, found {diagonal[i]}', label=self.items[i],
                                value=float(diagonal[i]))
        products = values * values.T
        if not np.allclose(products, 1.0, rtol=0, atol=RECIPROCITY_TOLERANCE):
            i, j = np.unravel_index(np.argmax(np.abs(products - 1.0)), products.shape)
            raise NotReciprocal(f'Entries ({self.items[i]!r}, {self.items[j]!r}) '
                                f'and ({self.items[j]!r}, {self.items[i]!r}) are '
                                f'not reciprocal: {values[i, j]} * {values[j, i]}'
                                f' = {products[i, j]}', label=self.items[i],
                                value=float(values[i, j]))
        if self.bound is not None:
            high = float(self.bound)
            object.__setattr__(self, 'bound', high)
            outside = (values > high + SCALE_TOLERANCE) | \
                (values < 1.0 / high - SCALE_TOLERANCE)
            if np.any(outside):
                i, j = np.argwhere(outside)[0]
                raise ValueOutOfScale(f'Entry ({self.items[i]!r}, '
                                      f'{self.items[j]!r}) must be in '
                                      f'[1/{high:g}, {high:g}], found '
                                      f'{values[i, j]}', label=self.items[i],
                                      value=float(values[i, j]))
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @classmethod
    def ones(cls, items: Items) -> 'ReciprocalMatrix':
        """The total indifference matrix."""
        items = _as_item_set(items)
        return cls(items, np.ones((len(items), len(items))))

    @classmethod
    def from_upper_rows(cls,
                        items: Items,
                        rows: Sequence[Sequence[float]],
                        bound: Optional[float] = SAATY_BOUND) -> 'ReciprocalMatrix':
        """
        Rebuild a matrix from its upper triangle plus diagonal.

        :param items: The items of the matrix.
        :param rows: ``n`` rows, the ``i``-th one holding ``m_ii, ..., m_in``
            (i.e., ``n - i`` values, starting with the diagonal).
        :param bound: See :py:attr:`bound`.

        :return: The full matrix, the lower triangle being derived by
            reciprocity.
        """
        items = _as_item_set(items)
        n = len(items)
        if len(rows) != n:
            raise LengthMismatch(f'Expected {n} rows, found {len(rows)}',
                                 value=len(rows))
        values = np.ones((n, n))
        for i, row in enumerate(rows):
            if len(row) != n - i:
                raise LengthMismatch(f'Row of {items[i]!r} must hold {n - i} '
                                     f'values (diagonal included), found '
                                     f'{len(row)}', label=items[i], value=len(row))
            row = np.asarray(row, dtype=np.float64)
            if np.any(row <= 0):
                raise NotReciprocal(f'Row of {items[i]!r} holds non-positive '
                                    f'values: {row.tolist()}', label=items[i])
            values[i, i:] = row
            values[i + 1:, i] = 1.0 / row[1:]
        return cls(items, values, bound)

    @property
    def n(self) -> int:
        return len(self.items)

    @property
    def labels(self):
        return self.items.labels

    def index(self, label: str) -> int:
        return self.items.index(label)

    def entry(self, row: str, col: str) -> float:
        """The entry ``m_ij`` for two labels."""
        return float(self.values[self.index(row), self.index(col)])

    def upper_rows(self) -> List[List[float]]:
        """The upper triangle plus diagonal, see :py:meth:`from_upper_rows`."""
        return [self.values[i, i:].tolist() for i in range(self.n)]

    def max_entry(self) -> float:
        return float(np.max(self.values))

    def is_consistent(self, tolerance: float = RECIPROCITY_TOLERANCE) -> bool:
        """
        Whether ``m_ij * m_jk = m_ik`` holds for every triple.

        Matrices produced from orderings and ratings are always consistent;
        pairwise comparisons may not be.
        """
        logs = np.log(self.values)
        # gaps[i, j, k] = log(m_ij) + log(m_jk) - log(m_ik)
        gaps = logs[:, :, None] + logs[None, :, :] - logs[:, None, :]
        return bool(np.all(np.abs(np.expm1(gaps)) <= tolerance))

    def permuted(self, order: Sequence[int]) -> 'ReciprocalMatrix':
        """
        Reorder the items: the ``k``-th item of the result is ``order[k]``.
        """
        order = list(order)
        items = ItemSet(self.items[k] for k in order)
        return ReciprocalMatrix(items, self.values[np.ix_(order, order)], self.bound)

    def allclose(self, other: 'ReciprocalMatrix', rtol: float = 1e-9) -> bool:
        """Same items and entries equal within a relative tolerance."""
        return self.items == other.items and \
            np.allclose(self.values, other.values, rtol=rtol, atol=0)

    def __eq__(self, other):
        if not isinstance(other, ReciprocalMatrix):
            return NotImplemented
        return self.items == other.items and self.bound == other.bound and \
            np.array_equal(self.values, other.values)

    __hash__ = None

    def __str__(self):
        return 'ReciprocalMatrix<n={};bound={}>'.format(self.n, self.bound)

    __repr__ = __str__
