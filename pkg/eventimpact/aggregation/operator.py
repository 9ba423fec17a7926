"""
Aggregation operators combine several positive values into one.

They are used entrywise to combine several CCMs into a collective matrix
(CCCM), and row-wise to compute impact values.

Any operator must satisfy three properties so that combining reciprocal
matrices yields a reciprocal matrix in the same range:

- *reciprocity-compatible*: ``op(1/x_1, ..., 1/x_r) = 1 / op(x_1, ..., x_r)``;
- *idempotent*: ``op(x, ..., x) = x``;
- *bounded*: ``min(x_k) <= op(x_1, ..., x_r) <= max(x_k)``.

The unweighted geometric mean, the special case of the *ordered weighted
geometric* (OWG) operators, is the only one provided. Other operators (e.g.,
OWG with weights derived from linguistic quantifiers) can be added by
extending :py:class:`AggregationOperator` and registering them in
:py:data:`OPERATORS`.
"""

from abc import ABC, abstractmethod
from typing import Dict, Type

import numpy as np

from eventimpact.errors import UnknownOperator


class AggregationOperator(ABC):
    """
    Combines ``r`` positive values into one, along an axis of an array.

    An operator is identified by its :py:attr:`name` (by default, the class
    name), which is the key used in scenario files.
    """

    name: str
    """Uniquely identifying, human-readable name for this operator."""

    def __init__(self, name: str = None):
        if name is None:
            name = type(self).__name__
        self.name = name

    @abstractmethod
    def combine(self, values: np.ndarray, axis: int = 0) -> np.ndarray:
        """
        Combine positive values along ``axis``.

        :param values: An array of strictly positive values, e.g., a stack of
            ``r`` matrices of shape ``(r, n, n)``.
        :param axis: The axis along which values are combined (removed).

        :return: The combined values, with ``axis`` removed from the shape.
        """
        pass

    def combine_logs(self, logs: np.ndarray, axis: int = 0) -> np.ndarray:
        """
        Same as :py:meth:`combine`, for values given as their logarithms.

        The result is also a logarithm. The default implementation goes
        through the exponential; log-domain operators should override it.
        """
        return np.log(self.combine(np.exp(logs), axis=axis))

    def __str__(self):
        return 'AggregationOperator<{}>'.format(self.name)

    __repr__ = __str__


class GeometricMean(AggregationOperator):
    """
    The geometric mean, ``(x_1 * ... * x_r) ** (1/r)``.

    It is computed in the log domain (mean of the logs, then exponential),
    which avoids overflows of the product and keeps precision near the
    range endpoints.
    """

    def __init__(self):
        super().__init__('geometric_mean')

    def combine(self, values: np.ndarray, axis: int = 0) -> np.ndarray:
        return np.exp(self.combine_logs(np.log(values), axis=axis))

    def combine_logs(self, logs: np.ndarray, axis: int = 0) -> np.ndarray:
        return np.mean(logs, axis=axis)


OPERATORS: Dict[str, Type[AggregationOperator]] = {
    'geometric_mean': GeometricMean,
}
"""Registered operators, by name."""


def get_operator(name: str) -> AggregationOperator:
    """
    Instantiate a registered operator from its name.

    :raises UnknownOperator: if no operator is registered under this name.
    """
    if not isinstance(name, str) or name not in OPERATORS:
        raise UnknownOperator(f'Unknown aggregation operator {name!r}; '
                              f'available: {sorted(OPERATORS)}', value=name)
    return OPERATORS[name]()
