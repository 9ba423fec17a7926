"""
Errors raised when building, transforming or combining preference structures.

Every invariant violation maps to exactly one named error, so that callers
(and the scenario parser, which locates them in the source document) can
react on the error type rather than on its message.

The hierarchy is:

- :py:class:`EventImpactError` : root of all errors raised by this package.

  - :py:class:`ValidationError` : an input violates an invariant. It is also
    a :py:class:`ValueError`, so generic code catching ``ValueError`` still
    works. One subclass exists per invariant.
  - :py:class:`DegenerateImpact` : the impact vector cannot be normalized.
  - :py:class:`CharacteristicError` : wraps any error raised while building
    a CCF inside a pipeline, adding the meta-component and CCF names.
  - :py:class:`ScenarioError` : a scenario document could not be parsed;
    holds the list of located issues.
"""

from dataclasses import dataclass
from typing import Any, List, Optional


class EventImpactError(Exception):
    """Root of all errors raised by the :py:mod:`eventimpact` package."""


class ValidationError(EventImpactError, ValueError):
    """
    An input violates one of the invariants of its type.

    :param message: Human-readable description of the violation.
    :param label: The offending item label, if the violation can be tied to
        a single item (e.g., the label holding a non-positive utility).
    :param value: The offending value, if any.
    """

    def __init__(self, message: str, label: Optional[str] = None, value: Any = None):
        super().__init__(message)
        self.message = message
        self.label = label
        self.value = value


class EmptyLabel(ValidationError):
    """An item label is empty (or only whitespace)."""


class DuplicateLabel(ValidationError):
    """The same label appears twice in an item set."""


class TooFewItems(ValidationError):
    """An item set holds fewer than 2 items."""


class LengthMismatch(ValidationError):
    """The number of values does not match the number of items."""


class DuplicateRank(ValidationError):
    """Two items share the same rank in an ordering."""


class RankOutOfRange(ValidationError):
    """A rank is outside ``{1, ..., n}``."""


class NonPositiveUtility(ValidationError):
    """A utility value is zero or negative."""


class ValueOutOfScale(ValidationError):
    """A comparison value is outside the ``[1/9, 9]`` scale."""


class NotReciprocal(ValidationError):
    """A matrix breaks the multiplicative-reciprocal invariants."""


class InvalidTransformConfig(ValidationError):
    """A transform parameter is invalid (e.g., ``z <= 0``)."""


class EmptyInput(ValidationError):
    """An aggregation received no matrix at all."""


class ItemSetMismatch(ValidationError):
    """Two structures that should share their items do not."""


class SOutOfRange(ValidationError):
    """The number of best events to select is not in ``[1, n]``."""


class UnknownLabel(ValidationError):
    """A label was requested that does not exist."""


class InvalidThresholdFraction(ValidationError):
    """The gating threshold fraction is not in ``]0, 1]``."""


class UnknownOperator(ValidationError):
    """No aggregation operator is registered under the requested name."""


class DegenerateImpact(EventImpactError, ArithmeticError):
    """All raw impact values are zero, they cannot be normalized."""


class CharacteristicError(EventImpactError):
    """
    An error raised while building a CCF within a meta-component.

    The original error is kept as ``__cause__`` (raised with ``from``).
    """

    def __init__(self, meta_component: str, ccf: str, cause: Exception):
        super().__init__(f'[{meta_component}/{ccf}] {cause}')
        self.meta_component = meta_component
        self.ccf = ccf
        self.cause = cause


@dataclass(frozen=True)
class ScenarioIssue:
    """A single problem found in a scenario document."""

    field: str
    """Dotted path to the offending field, e.g., ``meta_components[1].ccfs[0].values``."""

    message: str
    """What is wrong with this field."""

    line: Optional[int] = None
    """1-based line number in the document, when it is known."""

    def __str__(self):
        where = f'line {self.line}' if self.line is not None else 'unknown line'
        return f'{where}, {self.field}: {self.message}'


class ScenarioError(EventImpactError):
    """A scenario document could not be turned into a valid Scenario."""

    def __init__(self, issues: List[ScenarioIssue]):
        assert len(issues) > 0
        self.issues = list(issues)
        lines = '\n'.join(f'  - {issue}' for issue in self.issues)
        super().__init__(f'{len(self.issues)} problem(s) in scenario:\n{lines}')
