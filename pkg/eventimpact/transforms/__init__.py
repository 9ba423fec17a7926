"""
This package transforms each preference structure into a reciprocal matrix
(CCM), the common form on which aggregation and impact calculation work.
"""

from .transform_config import TransformConfig
from .normalization import normalize_reciprocal
from .to_ccm import (ordering_to_ccm, rating_to_ccm, pairwise_to_ccm,
                     ratio_matrix, substitutes)
