"""
The eventimpact package computes Event Impact Factors (EIF): it transforms
orderings, ratings and pairwise comparisons into reciprocal matrices,
aggregates them, and derives the impact of each event, an impact look-up
table, and call-gating decisions.
"""

__version__ = '1.0.0'

from .make_scenario import load_bundled_scenario, find_scenario_file

# Packages imported to simplify usage
from .structures import (ItemSet, Ordering, Rating, PairwiseComparison,
                         ReciprocalMatrix, make_ordering, make_rating,
                         make_pairwise)
from .transforms import (TransformConfig, ordering_to_ccm, rating_to_ccm,
                         pairwise_to_ccm, normalize_reciprocal)
from .aggregation import AggregationOperator, GeometricMean, aggregate
from .impact import ImpactVector, impact_vector, rank_events, select_best
from .domain import (Scenario, ImpactTable, compute_impact_table, gate_call,
                     gate_table, derive_rating_from_orderings,
                     expand_meta_component)
from .io import parse_scenario, load_scenario, dump_scenario
