"""
The operating room domain: views, event grid, meta-components, and the
pipeline that computes the impact look-up table of a Scenario.

This includes:

- :py:class:`~eventimpact.domain.view.View` and
  :py:class:`~eventimpact.domain.view.EventGrid`
- The CCFs, see :py:mod:`~eventimpact.domain.characteristics`
- :py:class:`~eventimpact.domain.meta_component.MetaComponent` and its
  expansion onto the grid
- :py:class:`~eventimpact.domain.scenario.Scenario`
- The pipeline stages, see :py:mod:`~eventimpact.domain.pipeline`
- :py:class:`~eventimpact.domain.impact_table.ImpactTable`
- Call gating and feedback ranking, the two applications of the table.
"""

from .view import View, EventGrid, event_label, EVENT_SEPARATOR
from .characteristics import (CharacteristicFunction, OrderingCCF, RatingCCF,
                              PairwiseCCF, MatrixCCF, CollectiveCCF,
                              LookupTableCCF, PhaseOrderingsCCF,
                              PhaseRatingsCCF, derive_rating_from_orderings)
from .meta_component import (Target, MetaComponent, build_meta_component,
                             expand_matrix, expand_meta_component)
from .scenario import (Scenario, WhatIf, WhatIfPatch,
                       DEFAULT_THRESHOLD_FRACTION, check_threshold_fraction)
from .impact_table import ImpactTable
from .pipeline import (ccf_matrices, meta_component_matrices,
                       expanded_matrices, collective_matrix,
                       compute_impact_vector, compute_impact_table)
from .gating import GateAction, GateDecision, gate_call, gate_table
from .feedback import FeedbackItem, rank_feedback
