"""
The Scenario describes a full use case: views, event grid, meta-components,
and the parameters of aggregation and gating.

Scenarios are usually loaded from a YAML file
(:py:func:`eventimpact.io.parse_scenario`), or built with
:py:func:`eventimpact.make_scenario.load_bundled_scenario` for the operating
room use case.
"""

import dataclasses
from typing import Any, Dict, Mapping, Optional, Tuple

from eventimpact.aggregation import get_operator
from eventimpact.errors import (DuplicateLabel, InvalidThresholdFraction,
                                ItemSetMismatch, UnknownLabel, ValidationError)
from .characteristics import CharacteristicFunction
from .meta_component import MetaComponent, Target
from .view import EventGrid, View

DEFAULT_THRESHOLD_FRACTION = 0.98
"""Calls are rejected above 98% of the maximum EIF, by default."""

NORMALIZATIONS = ('l1',)
"""Accepted normalization modes for impact vectors."""


def check_threshold_fraction(fraction: float) -> float:
    """
    :raises InvalidThresholdFraction: if ``fraction`` is not in ``]0, 1]``.
    """
    try:
        value = float(fraction)
    except (TypeError, ValueError):
        value = float('nan')
    if not 0.0 < value <= 1.0:
        raise InvalidThresholdFraction(f'The threshold fraction must be in '
                                       f']0, 1], found {fraction!r}',
                                       value=fraction)
    return value


@dataclasses.dataclass(frozen=True)
class WhatIfPatch:
    """Replaces some data fields of one CCF, in a scenario document."""

    meta_component: str
    ccf: str
    fields: Mapping[str, Any]
    """The replaced fields, as they would be written in the document."""


@dataclasses.dataclass(frozen=True)
class WhatIf:
    """A named set of patches, e.g., two surgeons switching roles."""

    name: str
    patches: Tuple[WhatIfPatch, ...]


@dataclasses.dataclass(frozen=True)
class Scenario:
    """
    A complete, validated description of a use case.
    """

    name: str

    views: Tuple[View, ...]
    """All declared views; only the two views of the grid are used."""

    grid: EventGrid

    meta_components: Tuple[MetaComponent, ...]

    operator: str = 'geometric_mean'
    """Name of the aggregation operator, see :py:data:`~eventimpact.aggregation.OPERATORS`."""

    normalization: str = 'l1'

    threshold_fraction: float = DEFAULT_THRESHOLD_FRACTION

    what_ifs: Tuple[WhatIf, ...] = ()
    """The what-if overrides declared by the scenario document."""

    applied_what_if: Optional[str] = None
    """Name of the what-if that was applied to obtain this scenario, if any."""

    source_hash: Optional[str] = dataclasses.field(default=None, compare=False)
    """SHA-256 of the document this scenario was parsed from."""

    def __post_init__(self):
        views = tuple(self.views)
        names = [view.name for view in views]
        for view in views:
            if names.count(view.name) > 1:
                raise DuplicateLabel(f'View {view.name!r} is declared twice',
                                     label=view.name)
        for view in (self.grid.phase_view, self.grid.role_view):
            if view not in views:
                raise UnknownLabel(f'Grid view {view.name!r} is not one of the '
                                   f'declared views {names}', label=view.name)
        object.__setattr__(self, 'views', views)

        meta_components = tuple(self.meta_components)
        if len(meta_components) == 0:
            raise ValidationError('A scenario needs at least one meta-component')
        seen = set()
        for mc in meta_components:
            if mc.name in seen:
                raise DuplicateLabel(f'Meta-component {mc.name!r} is declared '
                                     f'twice', label=mc.name)
            seen.add(mc.name)
            self._check_target(mc)
        object.__setattr__(self, 'meta_components', meta_components)

        get_operator(self.operator)
        if self.normalization not in NORMALIZATIONS:
            raise ValidationError(f'Unknown normalization {self.normalization!r}; '
                                  f'available: {list(NORMALIZATIONS)}',
                                  value=self.normalization)
        object.__setattr__(self, 'threshold_fraction',
                           check_threshold_fraction(self.threshold_fraction))
        object.__setattr__(self, 'what_ifs', tuple(self.what_ifs))

    def _check_target(self, mc: MetaComponent):
        expected = {
            Target.PHASE: self.grid.phases,
            Target.ROLE: self.grid.roles,
            Target.PHASE_ROLE: self.grid.events,
        }[mc.target]
        try:
            expected.check_same(mc.ccfs[0].items)
        except ItemSetMismatch as e:
            raise ItemSetMismatch(f'Meta-component {mc.name!r} does not match '
                                  f'the {mc.target.value} items of the grid: '
                                  f'{e.message}', label=e.label) from e

    @property
    def phase_view(self) -> View:
        return self.grid.phase_view

    @property
    def role_view(self) -> View:
        return self.grid.role_view

    def view(self, name: str) -> View:
        for view in self.views:
            if view.name == name:
                return view
        raise UnknownLabel(f'No view named {name!r}', label=name)

    def meta_component(self, name: str) -> MetaComponent:
        for mc in self.meta_components:
            if mc.name == name:
                return mc
        raise UnknownLabel(f'No meta-component named {name!r}', label=name)

    def what_if(self, name: str) -> WhatIf:
        for what_if in self.what_ifs:
            if what_if.name == name:
                return what_if
        raise UnknownLabel(f'No what-if named {name!r}; available: '
                           f'{[w.name for w in self.what_ifs]}', label=name)

    def replace_ccf(self,
                    meta_component: str,
                    ccf: CharacteristicFunction) -> 'Scenario':
        """
        Return a copy of the scenario where one CCF is replaced, e.g., to
        study a what-if situation programmatically.
        """
        self.meta_component(meta_component)
        mcs = tuple(
            mc.replace_ccf(ccf) if mc.name == meta_component else mc
            for mc in self.meta_components
        )
        return dataclasses.replace(self, meta_components=mcs, source_hash=None)

    def with_z(self, z: float) -> 'Scenario':
        """Return a copy where every CCF uses the exponent ``z``."""
        mcs = tuple(
            dataclasses.replace(mc, ccfs=tuple(ccf.with_z(z) for ccf in mc.ccfs))
            for mc in self.meta_components
        )
        return dataclasses.replace(self, meta_components=mcs, source_hash=None)

    def z_values(self) -> Dict[str, Optional[float]]:
        """The exponent of each CCF, keyed by ``meta_component/ccf``."""
        return {
            f'{mc.name}/{ccf.name}': ccf.z
            for mc in self.meta_components
            for ccf in mc.ccfs
        }

    def __str__(self):
        return 'Scenario<{};{};{} meta-components>'.format(
            self.name, self.grid, len(self.meta_components))

    __repr__ = __str__
