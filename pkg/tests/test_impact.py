import unittest

import numpy as np

from eventimpact.errors import SOutOfRange, ValidationError, ValueOutOfScale
from eventimpact.impact import (ImpactVector, impact_vector, rank_events,
                                select_best)
from eventimpact.structures import (ItemSet, ReciprocalMatrix, make_ordering,
                                    make_pairwise, make_rating)
from eventimpact.transforms import (ordering_to_ccm, pairwise_to_ccm,
                                    ratio_matrix)


class TestImpactVector(unittest.TestCase):

    def test_indifference(self):
        vector = impact_vector(ReciprocalMatrix.ones(['a', 'b', 'c']))
        np.testing.assert_allclose(vector.raw, [0.5, 0.5, 0.5])
        np.testing.assert_allclose(vector.normalized, [1 / 3, 1 / 3, 1 / 3])

    def test_ordering(self):
        vector = impact_vector(ordering_to_ccm(make_ordering(['a', 'b', 'c'], [1, 2, 3])))
        np.testing.assert_allclose(vector.raw, [0.75, 0.5, 0.25], rtol=0, atol=1e-12)
        np.testing.assert_allclose(vector.normalized, [0.5, 1 / 3, 1 / 6],
                                   rtol=0, atol=1e-12)
        self.assertAlmostEqual(vector.eif('b'), 1 / 3, delta=1e-12)
        self.assertEqual(list(vector.as_dict()), ['a', 'b', 'c'])

    def test_single_pair(self):
        vector = impact_vector(pairwise_to_ccm(make_pairwise(['a', 'b'], [9])))
        np.testing.assert_allclose(vector.raw, [0.75, 0.25], rtol=0, atol=1e-12)

    def test_out_of_scale(self):
        raw = ratio_matrix(make_rating(['a', 'b'], [1, 30]))
        with self.assertRaises(ValueOutOfScale):
            impact_vector(raw)

    def test_invalid_vector(self):
        items = ItemSet(['a', 'b'])
        with self.assertRaises(ValidationError):
            ImpactVector(items, (0.5, 0.5), (0.6, 0.6))
        with self.assertRaises(ValidationError):
            ImpactVector(items, (1.5, 0.5), (0.5, 0.5))
        with self.assertRaises(ValidationError):
            ImpactVector(items, (0.5,), (1.0,))


class TestRanking(unittest.TestCase):

    def setUp(self):
        self.ccm = ordering_to_ccm(make_ordering(['a', 'b', 'c'], [1, 2, 3]))
        self.vector = impact_vector(self.ccm)

    def test_rank_events(self):
        ranking = rank_events(self.vector)
        self.assertEqual([label for label, _ in ranking], ['a', 'b', 'c'])
        self.assertAlmostEqual(ranking[0][1], 0.5, delta=1e-12)

    def test_ties_keep_order(self):
        vector = impact_vector(ReciprocalMatrix.ones(['c', 'a', 'b', 'd']))
        self.assertEqual([label for label, _ in rank_events(vector)],
                         ['c', 'a', 'b', 'd'])

    def test_permutation(self):
        # Swapping a and b in the matrix swaps them in the ranking
        swapped = impact_vector(self.ccm.permuted([1, 0, 2]))
        self.assertEqual([label for label, _ in rank_events(swapped)],
                         ['a', 'b', 'c'])
        self.assertEqual(swapped.labels, ('b', 'a', 'c'))
        self.assertAlmostEqual(swapped.eif('a'), self.vector.eif('a'), delta=1e-12)

    def test_select_best(self):
        self.assertEqual(select_best(self.vector, 3), ['a', 'b', 'c'])
        self.assertEqual(select_best(self.vector, 1), ['a'])
        for s in [0, 4, -1, 1.0, True]:
            with self.subTest(s=s):
                with self.assertRaises(SOutOfRange):
                    select_best(self.vector, s)


if __name__ == '__main__':
    unittest.main()
