"""
This package computes the Event Impact Factors (EIF) from a collective
matrix, and ranks or selects events based on them.
"""

from .impact_vector import ImpactVector, impact_vector
from .ranking import rank_events, select_best
