"""
The full computation, from a Scenario to the impact look-up table.

1. every CCF is transformed into a CCM, then normalized;
2. the CCMs of each meta-component are aggregated;
3. each meta-component's matrix is expanded onto the event grid;
4. the expanded matrices are aggregated into the collective matrix;
5. the impact of each event is computed and normalized;
6. the impact vector is reordered into a ``roles x phases`` table.

Each stage is exposed on its own, so that intermediate results can be
inspected (this is what the ``transform`` and ``aggregate`` commands do).
The pipeline is deterministic: the same scenario always gives bit-identical
results.
"""

import logging
from typing import Dict, Tuple

from eventimpact.aggregation import aggregate, get_operator
from eventimpact.impact import ImpactVector, impact_vector
from eventimpact.structures import ReciprocalMatrix
from .impact_table import ImpactTable
from .meta_component import build_meta_component, ccf_to_ccm, expand_matrix
from .scenario import Scenario

logger = logging.getLogger(__name__)


def ccf_matrices(scenario: Scenario) -> Dict[Tuple[str, str], ReciprocalMatrix]:
    """
    The CCM of every CCF, keyed by ``(meta_component, ccf)`` names.

    :raises CharacteristicError: if a CCF cannot be transformed.
    """
    return {
        (mc.name, ccf.name): ccf_to_ccm(mc, ccf)
        for mc in scenario.meta_components
        for ccf in mc.ccfs
    }


def meta_component_matrices(scenario: Scenario) -> Dict[str, ReciprocalMatrix]:
    """The collective matrix of every meta-component, over its own target."""
    operator = get_operator(scenario.operator)
    return {
        mc.name: build_meta_component(mc, operator)
        for mc in scenario.meta_components
    }


def expanded_matrices(scenario: Scenario) -> Dict[str, ReciprocalMatrix]:
    """The matrix of every meta-component, expanded onto the event grid."""
    matrices = meta_component_matrices(scenario)
    return {
        mc.name: expand_matrix(matrices[mc.name], mc.target, scenario.grid)
        for mc in scenario.meta_components
    }


def collective_matrix(scenario: Scenario) -> ReciprocalMatrix:
    """The collective matrix over all events of the grid (e.g., 35x35)."""
    expanded = expanded_matrices(scenario)
    logger.debug('Aggregating %d expanded matrices for %s', len(expanded), scenario)
    return aggregate(list(expanded.values()), get_operator(scenario.operator))


def compute_impact_vector(scenario: Scenario) -> ImpactVector:
    """The EIF of every event of the grid."""
    vector = impact_vector(collective_matrix(scenario),
                           get_operator(scenario.operator))
    logger.debug('Impact vector of %s computed', scenario)
    return vector


def compute_impact_table(scenario: Scenario) -> ImpactTable:
    """
    Run the full pipeline.

    :raises CharacteristicError: if a CCF cannot be transformed; the error
        names the meta-component and the CCF.

    :return: The ``q x p`` impact look-up table, whose cells sum to 1.
    """
    return ImpactTable.from_vector(scenario.grid, compute_impact_vector(scenario))
