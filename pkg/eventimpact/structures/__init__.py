"""
This package defines the preference structures, i.e., the inputs of the
method, and the reciprocal matrix into which all of them are transformed.

This includes:

- :py:class:`~eventimpact.structures.item_set.ItemSet`
- The three Component Characteristic Function types:
   * :py:class:`~eventimpact.structures.preference.Ordering` (CCFO)
   * :py:class:`~eventimpact.structures.preference.Rating` (CCFR)
   * :py:class:`~eventimpact.structures.preference.PairwiseComparison` (CCFP)
- :py:class:`~eventimpact.structures.reciprocal_matrix.ReciprocalMatrix`
  (CCM and CCCM)
"""

from .item_set import ItemSet
from .preference import (PreferenceStructure, Ordering, Rating,
                         PairwiseComparison, make_ordering, make_rating,
                         make_pairwise, SAATY_BOUND)
from .reciprocal_matrix import ReciprocalMatrix, RECIPROCITY_TOLERANCE
