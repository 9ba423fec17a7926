"""
This package combines several CCMs into a collective one (CCCM), through an
aggregation operator (the geometric mean by default).
"""

from .operator import (AggregationOperator, GeometricMean, OPERATORS,
                       get_operator)
from .aggregate import aggregate
