import unittest

import numpy as np

from eventimpact.aggregation import aggregate
from eventimpact.domain import (CharacteristicFunction, CollectiveCCF,
                                EventGrid, MatrixCCF, MetaComponent,
                                OrderingCCF, PhaseOrderingsCCF,
                                PhaseRatingsCCF, RatingCCF, Scenario, Target,
                                View, build_meta_component,
                                compute_impact_table, compute_impact_vector,
                                derive_rating_from_orderings, event_label,
                                expand_matrix, expand_meta_component)
from eventimpact.domain.meta_component import ccf_to_ccm
from eventimpact.errors import (CharacteristicError, DuplicateLabel,
                                EmptyInput, EmptyLabel, ItemSetMismatch,
                                LengthMismatch, TooFewItems, UnknownLabel,
                                UnknownOperator, ValidationError,
                                ValueOutOfScale)
from eventimpact.impact import impact_vector
from eventimpact.structures import (ItemSet, ReciprocalMatrix, make_ordering,
                                    make_rating)
from eventimpact.transforms import TransformConfig, ordering_to_ccm, rating_to_ccm

PHASES = ['Troc', 'Prep', 'Clip', 'Det', 'Retr', 'Hemo', 'Clos']
ROLES = ['main_surgeon', 'assistant_surgeon', 'nurse', 'circulator', 'anesthetist']


def make_grid(phases=PHASES, roles=ROLES) -> EventGrid:
    return EventGrid(View('workflow', phases), View('roles', roles))


class BrokenCCF(CharacteristicFunction):
    """A CCF whose transformation always fails."""

    kind = 'broken'

    def __init__(self, name, items):
        self.name = name
        self._items = ItemSet(items)

    @property
    def items(self) -> ItemSet:
        return self._items

    def to_ccm(self) -> ReciprocalMatrix:
        raise ValueOutOfScale('Entry (a, b) must be in [1/9, 9], found 12', value=12)


class TestEventGrid(unittest.TestCase):

    def test_labels_and_order(self):
        grid = make_grid()
        self.assertEqual((grid.p, grid.q), (7, 5))
        self.assertEqual(len(grid.events), 35)
        self.assertEqual(grid.events[0], 'Troc×main_surgeon')
        self.assertEqual(grid.events[1], 'Troc×assistant_surgeon')
        self.assertEqual(grid.events[5], 'Prep×main_surgeon')
        self.assertEqual(grid.events[34], 'Clos×anesthetist')
        self.assertEqual(event_label('Prep', 'nurse'), 'Prep×nurse')

    def test_indices(self):
        grid = make_grid()
        self.assertEqual(grid.event_index('Prep', 'nurse'), 7)
        self.assertEqual(grid.coordinates(7), ('Prep', 'nurse'))
        for k in range(35):
            with self.subTest(k=k):
                phase, role = grid.coordinates(k)
                self.assertEqual(grid.event_index(phase, role), k)
                self.assertEqual(grid.phases[grid.phase_indices[k]], phase)
                self.assertEqual(grid.roles[grid.role_indices[k]], role)

    def test_single_role(self):
        grid = make_grid(roles=['solo'])
        self.assertEqual(grid.events.labels, tuple(f'{p}×solo' for p in PHASES))

    def test_too_small(self):
        with self.assertRaises(TooFewItems):
            make_grid(['Troc'], ['solo'])

    def test_invalid_views(self):
        with self.assertRaises(EmptyLabel):
            View('', ['a'])
        with self.assertRaises(DuplicateLabel):
            View('roles', ['a', 'a'])
        with self.assertRaises(TooFewItems):
            View('roles', [])


class TestDerivedRatings(unittest.TestCase):

    def test_worked_orderings(self):
        orderings = [
            make_ordering(ROLES, [1, 4, 2, 5, 3]),
            make_ordering(ROLES, [1, 2, 3, 5, 4]),
        ]
        table = derive_rating_from_orderings(orderings)
        self.assertEqual(table.shape, (2, 5))
        np.testing.assert_allclose(table[0], [0.75, 0.375, 0.625, 0.25, 0.5],
                                   rtol=0, atol=1e-12)
        np.testing.assert_allclose(table[1], [0.75, 0.625, 0.5, 0.25, 0.375],
                                   rtol=0, atol=1e-12)

    def test_order_preserved(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            ranks = rng.permutation(5) + 1
            utilities = derive_rating_from_orderings([make_ordering(ROLES, ranks)])[0]
            for i in range(5):
                for j in range(5):
                    self.assertEqual(ranks[i] < ranks[j], utilities[i] > utilities[j])

    def test_invalid(self):
        with self.assertRaises(EmptyInput):
            derive_rating_from_orderings([])
        with self.assertRaises(ItemSetMismatch):
            derive_rating_from_orderings([make_ordering(['a', 'b'], [1, 2]),
                                          make_ordering(['a', 'c'], [1, 2])])


class TestCharacteristics(unittest.TestCase):

    def test_phase_orderings_raw_ratio(self):
        orderings = [make_ordering(ROLES, [1, 4, 2, 5, 3]) for _ in range(2)]
        ccf = PhaseOrderingsCCF('role_orderings', ItemSet(['Troc', 'Prep']),
                                orderings, TransformConfig(normalize=False))
        self.assertEqual(ccf.items[0], 'Troc×main_surgeon')
        self.assertEqual(len(ccf.items), 10)
        ccm = ccf.to_ccm()
        self.assertAlmostEqual(ccm.entry('Troc×main_surgeon', 'Troc×circulator'),
                               3.0, delta=1e-12)
        self.assertAlmostEqual(ccm.entry('Troc×main_surgeon', 'Prep×main_surgeon'),
                               1.0, delta=1e-12)

    def test_phase_orderings_normalized(self):
        orderings = [make_ordering(ROLES, [1, 4, 2, 5, 3])]
        ccm = PhaseOrderingsCCF('role_orderings', ['Troc'], orderings).to_ccm()
        self.assertAlmostEqual(ccm.max_entry(), 9.0, delta=1e-9)
        self.assertTrue(ccm.is_consistent())

    def test_lookup_length(self):
        with self.assertRaises(LengthMismatch):
            PhaseOrderingsCCF('x', ItemSet(['Troc', 'Prep']),
                              [make_ordering(ROLES, [1, 2, 3, 4, 5])])
        with self.assertRaises(LengthMismatch):
            PhaseRatingsCCF('x', ItemSet(['Troc'], min_size=1),
                            [make_rating(ROLES, [1, 2, 3, 4, 5])] * 2)

    def test_phase_ratings(self):
        ratings = [make_rating(['a', 'b'], [1, 2]), make_rating(['a', 'b'], [4, 8])]
        ccf = PhaseRatingsCCF('r', ItemSet(['P', 'Q']), ratings)
        np.testing.assert_array_equal(ccf.utilities(), [[1, 2], [4, 8]])
        self.assertEqual(ccf.items.labels, ('P×a', 'P×b', 'Q×a', 'Q×b'))
        self.assertAlmostEqual(ccf.to_ccm().entry('Q×b', 'P×a'), 9.0, delta=1e-9)

    def test_rating_with_z(self):
        ccf = RatingCCF('durations', make_rating(['a', 'b'], [1, 2]))
        self.assertEqual(ccf.z, 1.0)
        other = ccf.with_z(2)
        self.assertEqual(other.z, 2.0)
        self.assertEqual(ccf.z, 1.0)
        self.assertEqual(str(ccf), 'RatingCCF<durations>')

    def test_ordering_has_no_z(self):
        ccf = OrderingCCF('rank', make_ordering(['a', 'b'], [2, 1]))
        self.assertIsNone(ccf.z)
        self.assertIs(ccf.with_z(3), ccf)

    def test_matrix(self):
        matrix = ReciprocalMatrix.from_upper_rows(['a', 'b'], [[1, 4], [1]])
        ccf = MatrixCCF('prebuilt', matrix)
        self.assertEqual(ccf.to_ccm(), matrix)
        with self.assertWarns(UserWarning):
            self.assertIs(ccf.with_z(2), ccf)
        raw = ReciprocalMatrix.from_upper_rows(['a', 'b'], [[1, 12], [1]], bound=None)
        with self.assertRaises(ValueOutOfScale):
            MatrixCCF('prebuilt', raw)

    def test_collective(self):
        a = RatingCCF('expert_1', make_rating(['x', 'y', 'z'], [5, 10, 9]))
        b = RatingCCF('expert_2', make_rating(['x', 'y', 'z'], [4, 9, 9]))
        survey = CollectiveCCF('survey', (a, b))
        expected = aggregate([a.to_ccm(), b.to_ccm()])
        self.assertTrue(survey.to_ccm().allclose(expected, rtol=1e-12))
        self.assertEqual(survey.z, 1.0)
        self.assertEqual({m.z for m in survey.with_z(2).members}, {2.0})

    def test_collective_invalid(self):
        a = RatingCCF('expert_1', make_rating(['x', 'y'], [5, 10]))
        b = RatingCCF('expert_2', make_rating(['x', 'z'], [4, 9]))
        with self.assertRaises(EmptyInput):
            CollectiveCCF('survey', ())
        with self.assertRaises(ItemSetMismatch):
            CollectiveCCF('survey', (a, b))
        with self.assertRaises(UnknownOperator):
            CollectiveCCF('survey', (a,), 'median')


class TestMetaComponent(unittest.TestCase):

    def setUp(self):
        self.durations = RatingCCF('durations', make_rating(PHASES, [179, 419, 390, 562, 390, 337, 172]))
        self.ranks = OrderingCCF('ranks', make_ordering(PHASES, [7, 1, 2, 3, 4, 5, 6]))

    def test_build(self):
        mc = MetaComponent('surgical_workflow', 'phase', (self.durations, self.ranks))
        self.assertIs(mc.target, Target.PHASE)
        expected = aggregate([self.durations.to_ccm(), self.ranks.to_ccm()])
        self.assertTrue(build_meta_component(mc).allclose(expected, rtol=1e-12))
        self.assertIs(mc.ccf('ranks'), self.ranks)

    def test_invalid(self):
        with self.assertRaises(EmptyLabel):
            MetaComponent(' ', Target.PHASE, (self.durations,))
        with self.assertRaises(EmptyInput):
            MetaComponent('mc', Target.PHASE, ())
        with self.assertRaises(DuplicateLabel):
            MetaComponent('mc', Target.PHASE, (self.durations, self.durations))
        with self.assertRaises(ValueError):
            MetaComponent('mc', 'device', (self.durations,))
        other = RatingCCF('other', make_rating(ROLES, [1, 2, 3, 4, 5]))
        with self.assertRaises(ItemSetMismatch):
            MetaComponent('mc', Target.PHASE, (self.durations, other))
        lookup = PhaseOrderingsCCF('lookup', ['Troc'], [make_ordering(ROLES, [1, 2, 3, 4, 5])])
        with self.assertRaises(ItemSetMismatch):
            MetaComponent('mc', Target.PHASE, (lookup,))
        with self.assertRaises(ItemSetMismatch):
            MetaComponent('mc', Target.PHASE_ROLE, (self.durations,))
        mc = MetaComponent('mc', Target.PHASE, (self.durations,))
        with self.assertRaises(UnknownLabel):
            mc.ccf('survey')

    def test_replace_ccf(self):
        mc = MetaComponent('mc', Target.PHASE, (self.durations, self.ranks))
        ranks = OrderingCCF('ranks', make_ordering(PHASES, [1, 2, 3, 4, 5, 6, 7]))
        replaced = mc.replace_ccf(ranks)
        self.assertIs(replaced.ccf('ranks'), ranks)
        self.assertIs(mc.ccf('ranks'), self.ranks)
        with self.assertRaises(UnknownLabel):
            mc.replace_ccf(OrderingCCF('other', ranks.ordering))

    def test_error_provenance(self):
        mc = MetaComponent('human_role', Target.ROLE, (BrokenCCF('survey', ROLES),))
        with self.assertRaises(CharacteristicError) as context:
            build_meta_component(mc)
        error = context.exception
        self.assertEqual(error.meta_component, 'human_role')
        self.assertEqual(error.ccf, 'survey')
        self.assertIsInstance(error.__cause__, ValueOutOfScale)
        self.assertIn('[human_role/survey]', str(error))
        with self.assertRaises(CharacteristicError):
            ccf_to_ccm(mc, mc.ccfs[0])


class TestExpansion(unittest.TestCase):

    def setUp(self):
        self.grid = make_grid(['P0', 'P1', 'P2'], ['R0', 'R1'])

    def test_phase_entries(self):
        matrix = ordering_to_ccm(make_ordering(['P0', 'P1', 'P2'], [1, 2, 3]))
        expanded = expand_matrix(matrix, Target.PHASE, self.grid)
        self.assertEqual(expanded.items, self.grid.events)
        self.assertEqual(expanded.entry('P0×R0', 'P1×R1'), matrix.entry('P0', 'P1'))
        self.assertEqual(expanded.entry('P2×R1', 'P0×R0'), matrix.entry('P2', 'P0'))
        self.assertEqual(expanded.entry('P1×R0', 'P1×R1'), 1.0)
        self.assertTrue(expanded.is_consistent())

    def test_role_entries(self):
        matrix = rating_to_ccm(make_rating(['R0', 'R1'], [3, 1]))
        expanded = expand_matrix(matrix, Target.ROLE, self.grid)
        self.assertAlmostEqual(expanded.entry('P0×R0', 'P2×R1'), 9.0, delta=1e-9)
        self.assertEqual(expanded.entry('P0×R0', 'P2×R0'), 1.0)

    def test_mismatch(self):
        matrix = ReciprocalMatrix.ones(['R0', 'R1'])
        with self.assertRaises(ItemSetMismatch):
            expand_matrix(matrix, Target.PHASE, self.grid)
        with self.assertRaises(ItemSetMismatch):
            expand_matrix(matrix, Target.PHASE_ROLE, self.grid)

    def test_meta_component(self):
        mc = MetaComponent('roles', Target.ROLE,
                           (RatingCCF('experience', make_rating(['R0', 'R1'], [30, 1])),))
        expanded = expand_meta_component(mc, self.grid)
        self.assertEqual(expanded.n, 6)
        self.assertAlmostEqual(expanded.entry('P1×R0', 'P1×R1'), 9.0, delta=1e-9)


class TestScenario(unittest.TestCase):

    def setUp(self):
        self.phases = View('workflow', ['P0', 'P1', 'P2'])
        self.roles = View('roles', ['R0', 'R1'])
        self.grid = EventGrid(self.phases, self.roles)
        self.durations = RatingCCF('durations', make_rating(self.grid.phases, [3, 2, 1]))
        self.mc = MetaComponent('workflow', Target.PHASE, (self.durations,))

    def make(self, **kwargs) -> Scenario:
        values = dict(name='small', views=(self.phases, self.roles), grid=self.grid,
                      meta_components=(self.mc,))
        values.update(kwargs)
        return Scenario(**values)

    def test_valid(self):
        scenario = self.make()
        self.assertIs(scenario.view('roles'), self.roles)
        self.assertIs(scenario.meta_component('workflow'), self.mc)
        self.assertEqual(scenario.z_values(), {'workflow/durations': 1.0})
        self.assertEqual(scenario.with_z(3).z_values(), {'workflow/durations': 3.0})

    def test_invalid(self):
        with self.assertRaises(DuplicateLabel):
            self.make(views=(self.phases, self.roles, View('roles', ['x'])))
        with self.assertRaises(UnknownLabel):
            self.make(views=(self.phases,))
        with self.assertRaises(ValidationError):
            self.make(meta_components=())
        with self.assertRaises(DuplicateLabel):
            self.make(meta_components=(self.mc, self.mc))
        with self.assertRaises(UnknownOperator):
            self.make(operator='median')
        with self.assertRaises(ValidationError):
            self.make(normalization='l2')
        with self.assertRaises(ValidationError):
            self.make(threshold_fraction=0)
        wrong = MetaComponent('roles', Target.ROLE,
                              (RatingCCF('x', make_rating(['R1', 'R0'], [1, 2])),))
        with self.assertRaises(ItemSetMismatch):
            self.make(meta_components=(wrong,))

    def test_lookups(self):
        scenario = self.make()
        for method in (scenario.view, scenario.meta_component, scenario.what_if):
            with self.subTest(method=method.__name__):
                with self.assertRaises(UnknownLabel):
                    method('missing')
        with self.assertRaises(UnknownLabel):
            scenario.replace_ccf('missing', self.durations)

    def test_replace_ccf(self):
        scenario = self.make()
        flat = RatingCCF('durations', make_rating(self.grid.phases, [1, 1, 1]))
        replaced = scenario.replace_ccf('workflow', flat)
        np.testing.assert_allclose(compute_impact_table(replaced).cells, 1 / 6,
                                   rtol=0, atol=1e-12)
        self.assertIs(scenario.meta_component('workflow').ccf('durations'), self.durations)

    def test_single_role_matches_phase_vector(self):
        grid = EventGrid(self.phases, View('roles', ['solo']))
        scenario = Scenario('solo', (self.phases, grid.role_view), grid, (self.mc,))
        phase_vector = impact_vector(build_meta_component(self.mc))
        vector = compute_impact_vector(scenario)
        np.testing.assert_allclose(vector.normalized, phase_vector.normalized,
                                   rtol=0, atol=1e-12)
        table = compute_impact_table(scenario)
        self.assertEqual(table.cells.shape, (1, 3))
        self.assertEqual(table.argmax(), ('solo', 'P0'))


if __name__ == '__main__':
    unittest.main()
