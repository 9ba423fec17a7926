import hashlib
import os
import tempfile
import unittest

from eventimpact import load_bundled_scenario
from eventimpact.domain import (MatrixCCF, PairwiseCCF, PhaseOrderingsCCF,
                                RatingCCF, Target)
from eventimpact.errors import ScenarioError
from eventimpact.io import dump_scenario, load_scenario, parse_scenario
from eventimpact.make_scenario import find_scenario_file, resolve_scenario

SMALL = """\
version: 1
name: small
views:
  workflow: [Troc, Prep, Clip]
  roles: [main_surgeon, nurse]
grid:
  phases: workflow
  roles: roles
gate:
  threshold_fraction: 0.9
meta_components:
  - name: surgical_workflow
    target: phase
    ccfs:
      - name: durations
        type: rating
        values: [179, 419, 390]
  - name: roles_by_phase
    target: phase_role
    ccfs:
      - name: role_orderings
        type: ordering
        by_phase:
          Troc: [1, 2]
          Prep: [1, 2]
          Clip: [2, 1]
what_if:
  swap:
    - meta_component: surgical_workflow
      ccf: durations
      values: [419, 179, 390]
"""


def issues_of(document, what_if=None):
    try:
        parse_scenario(document, what_if)
    except ScenarioError as e:
        return e.issues
    raise AssertionError('The document was accepted')


class TestParse(unittest.TestCase):

    def test_small(self):
        scenario = parse_scenario(SMALL)
        self.assertEqual(scenario.name, 'small')
        self.assertEqual(scenario.grid.phases.labels, ('Troc', 'Prep', 'Clip'))
        self.assertEqual(scenario.threshold_fraction, 0.9)
        durations = scenario.meta_component('surgical_workflow').ccf('durations')
        self.assertIsInstance(durations, RatingCCF)
        self.assertEqual(durations.rating.utilities, (179.0, 419.0, 390.0))
        lookup = scenario.meta_component('roles_by_phase').ccf('role_orderings')
        self.assertIsInstance(lookup, PhaseOrderingsCCF)
        self.assertEqual([o.ranks for o in lookup.orderings], [(1, 2), (1, 2), (2, 1)])
        self.assertEqual(scenario.meta_component('roles_by_phase').target, Target.PHASE_ROLE)
        self.assertEqual([w.name for w in scenario.what_ifs], ['swap'])
        self.assertIsNone(scenario.applied_what_if)

    def test_source_hash(self):
        scenario = parse_scenario(SMALL)
        self.assertEqual(scenario.source_hash,
                         hashlib.sha256(SMALL.encode('utf-8')).hexdigest())

    def test_fractions(self):
        document = SMALL.replace(
            '        values: [179, 419, 390]\n',
            '        values: [179, 419, 390]\n'
            '      - name: survey\n'
            '        type: pairwise\n'
            '        upper: ["1/3", 5, 3]\n')
        ccf = parse_scenario(document).meta_component('surgical_workflow').ccf('survey')
        self.assertIsInstance(ccf, PairwiseCCF)
        self.assertEqual(ccf.comparison.upper, (1 / 3, 5.0, 3.0))

    def test_matrix_ignores_z(self):
        document = SMALL.replace(
            '        values: [179, 419, 390]\n',
            '        values: [179, 419, 390]\n'
            '      - name: prebuilt\n'
            '        type: matrix\n'
            '        rows: [[1, 3, 5], [1, 2], [1]]\n'
            '        z: 2\n')
        with self.assertWarns(UserWarning):
            scenario = parse_scenario(document)
        ccf = scenario.meta_component('surgical_workflow').ccf('prebuilt')
        self.assertIsInstance(ccf, MatrixCCF)
        self.assertAlmostEqual(ccf.matrix.entry('Clip', 'Troc'), 0.2, delta=1e-15)

    def test_what_if(self):
        scenario = parse_scenario(SMALL, 'swap')
        self.assertEqual(scenario.applied_what_if, 'swap')
        durations = scenario.meta_component('surgical_workflow').ccf('durations')
        self.assertEqual(durations.rating.utilities, (419.0, 179.0, 390.0))
        self.assertEqual(parse_scenario(SMALL + 'apply_what_if: swap\n'), scenario)


class TestLocatedErrors(unittest.TestCase):

    def test_duplicate_label(self):
        issues = issues_of(SMALL.replace('[Troc, Prep, Clip]', '[Troc, Prep, Troc]'))
        duplicate = [i for i in issues if i.field == 'views.workflow[2]']
        self.assertEqual(len(duplicate), 1)
        self.assertEqual(duplicate[0].line, 4)
        self.assertTrue(duplicate[0].message.startswith('DuplicateLabel'))

    def test_non_positive_utility(self):
        issues = issues_of(SMALL.replace('[179, 419, 390]', '[179, 0, 390]'))
        self.assertEqual(len(issues), 1)
        self.assertEqual(issues[0].field, 'meta_components[0].ccfs[0].values[1]')
        self.assertEqual(issues[0].line, 17)
        self.assertIn('NonPositiveUtility', issues[0].message)
        self.assertTrue(str(issues[0]).startswith(
            'line 17, meta_components[0].ccfs[0].values[1]: '))

    def test_syntax(self):
        issues = issues_of(SMALL.replace('[Troc, Prep, Clip]', '[Troc, Prep, Clip'))
        self.assertEqual(len(issues), 1)
        self.assertEqual(issues[0].field, '<document>')
        self.assertTrue(issues[0].message.startswith('invalid YAML'))
        self.assertIsNotNone(issues[0].line)

    def test_unknown_key(self):
        issues = issues_of(SMALL + 'colour: red\n')
        self.assertEqual([(i.field, i.line) for i in issues], [('colour', 32)])

    def test_version(self):
        issues = issues_of(SMALL.replace('version: 1', 'version: 2'))
        self.assertEqual([(i.field, i.line) for i in issues], [('version', 1)])

    def test_several_issues(self):
        document = SMALL.replace('version: 1', 'version: 2') \
            .replace('[179, 419, 390]', '[179, 0, 390]') \
            .replace('Clip: [2, 1]', 'Clip: [2, 2]')
        fields = [i.field for i in issues_of(document)]
        self.assertEqual(len(fields), 3)
        self.assertIn('version', fields)
        self.assertIn('meta_components[0].ccfs[0].values[1]', fields)
        self.assertIn('meta_components[1].ccfs[0].by_phase.Clip[1]', fields)

    def test_missing_phase(self):
        issues = issues_of(SMALL.replace('          Clip: [2, 1]\n', ''))
        self.assertEqual(len(issues), 1)
        self.assertEqual(issues[0].field, 'meta_components[1].ccfs[0].by_phase')
        self.assertIn("'Clip'", issues[0].message)

    def test_unknown_what_if(self):
        issues = issues_of(SMALL, 'nope')
        self.assertEqual([i.field for i in issues], ['what_if'])
        self.assertIn("'swap'", issues[0].message)

    def test_error_in_patch(self):
        issues = issues_of(SMALL.replace('[419, 179, 390]', '[419, 0, 390]'), 'swap')
        self.assertEqual(len(issues), 1)
        self.assertEqual(issues[0].field, 'meta_components[0].ccfs[0].values[1]')
        self.assertEqual(issues[0].line, 31)

    def test_unknown_type(self):
        issues = issues_of(SMALL.replace('type: rating', 'type: survey'))
        self.assertEqual([(i.field, i.line) for i in issues],
                         [('meta_components[0].ccfs[0].type', 16)])

    def test_grid_view(self):
        issues = issues_of(SMALL.replace('phases: workflow', 'phases: device'))
        self.assertEqual([i.field for i in issues], ['grid.phases'])

    def test_missing_sections(self):
        views = '  workflow: [Troc, Prep, Clip]\n  roles: [main_surgeon, nurse]\n'
        grid = '  phases: workflow\n  roles: roles\n'
        missing_meta = SMALL[:SMALL.index('meta_components:')] \
            + SMALL[SMALL.index('what_if:'):]
        cases = {
            'grid': (SMALL.replace('grid:\n' + grid, ''), ['grid']),
            'views': (SMALL.replace('views:\n' + views, ''),
                      ['views', 'grid.phases', 'grid.roles']),
            'meta_components': (missing_meta, ['<document>']),
        }
        for section, (document, fields) in cases.items():
            with self.subTest(section=section):
                issues = issues_of(document)
                self.assertEqual([i.field for i in issues], fields)
                self.assertEqual(issues[0].line, 1)
        issues = issues_of(missing_meta)
        self.assertIn("missing field 'meta_components'", issues[0].message)

    def test_list_instead_of_name(self):
        collective = ('      - name: durations\n'
                      '        type: collective\n'
                      '        aggregation: [geometric_mean]\n'
                      '        members:\n'
                      '          - name: expert\n'
                      '            type: rating\n'
                      '            values: [179, 419, 390]\n')
        cases = [
            (SMALL + 'aggregation: [geometric_mean]\n', 'aggregation', 32),
            (SMALL.replace('phases: workflow', 'phases: [workflow]'),
             'grid.phases', 7),
            (SMALL.replace('type: rating', 'type: [rating]'),
             'meta_components[0].ccfs[0].type', 16),
            (SMALL.replace('      - name: durations\n'
                           '        type: rating\n'
                           '        values: [179, 419, 390]\n', collective),
             'meta_components[0].ccfs[0].aggregation', 17),
        ]
        for document, field, line in cases:
            with self.subTest(field=field):
                issues = issues_of(document)
                self.assertEqual([(i.field, i.line) for i in issues], [(field, line)])


class TestDump(unittest.TestCase):

    def test_round_trip(self):
        for scenario in [parse_scenario(SMALL), parse_scenario(SMALL, 'swap'),
                         load_bundled_scenario(), load_bundled_scenario('trainee_swap')]:
            with self.subTest(scenario=scenario.name, what_if=scenario.applied_what_if):
                text = dump_scenario(scenario)
                self.assertEqual(parse_scenario(text), scenario)

    def test_round_trip_with_z(self):
        scenario = load_bundled_scenario().with_z(2)
        self.assertEqual(parse_scenario(dump_scenario(scenario)), scenario)


class TestFiles(unittest.TestCase):

    def test_load(self):
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, 'small.yaml')
            with open(path, 'w', encoding='utf-8') as f:
                f.write(SMALL)
            self.assertEqual(load_scenario(path), parse_scenario(SMALL))
            self.assertEqual(resolve_scenario(path), path)

    def test_bundled(self):
        path = find_scenario_file('cholecystectomy')
        self.assertTrue(path.endswith('cholecystectomy.yaml'))
        self.assertEqual(resolve_scenario('cholecystectomy.yaml'), path)
        with self.assertRaises(FileNotFoundError):
            find_scenario_file('no_such_scenario')


if __name__ == '__main__':
    unittest.main()
