"""
Command-line interface.

Usage::

    eventimpact validate --scenario cholecystectomy
    eventimpact transform --scenario my_scenario.yaml --format json
    eventimpact aggregate --scenario cholecystectomy --collective
    eventimpact impact --scenario cholecystectomy --format csv
    eventimpact table --scenario cholecystectomy --what-if trainee_swap
    eventimpact gate --scenario cholecystectomy --role main_surgeon --phase Prep
    eventimpact rank-feedback --scenario cholecystectomy --feedback items.csv

``--scenario`` accepts a path, or the name of a bundled scenario. Results are
written to the standard output (or ``--output``), diagnostics to the
standard error. The exit code is 0 on success, 1 when the scenario (or an
input) is invalid, and 2 on usage errors.
"""

import argparse
import logging
import sys
from typing import List, Optional

from eventimpact.domain import (Scenario, ccf_matrices, collective_matrix,
                                compute_impact_table, compute_impact_vector,
                                gate_call, gate_table, meta_component_matrices,
                                rank_feedback)
from eventimpact.errors import EventImpactError, ScenarioError
from eventimpact.io import (FORMATS, ResultDocument, feedback_document,
                            gate_document, impact_table_document,
                            impact_vector_document, load_feedback,
                            load_scenario, matrices_document, render)
from eventimpact.make_scenario import BUNDLED_SCENARIO, resolve_scenario

logger = logging.getLogger('eventimpact')

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-s', '--scenario', default=BUNDLED_SCENARIO,
                        help='Path to a scenario file, or name of a bundled '
                             'scenario (default: %(default)s)')
    common.add_argument('-f', '--format', choices=FORMATS, default='text',
                        help='Output format (default: %(default)s)')
    common.add_argument('-o', '--output', default=None,
                        help='Path to the output file (default: standard output)')
    common.add_argument('--what-if', default=None,
                        help='Name of a what-if override declared in the scenario')
    common.add_argument('--z', type=float, default=None,
                        help='Exponent used by every rating-based CCF')
    common.add_argument('--fraction', type=float, default=None,
                        help='Gating threshold fraction, in ]0, 1] '
                             '(default: the scenario value)')
    common.add_argument('--debug', action='store_true',
                        help='Log the intermediate steps')
    return common


def make_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog='eventimpact',
        description='Compute Event Impact Factors from a scenario file.'
    )
    subparsers = parser.add_subparsers(dest='command', required=True)
    subparsers.add_parser('validate', parents=[common],
                          help='Check a scenario file and list its problems')
    transform = subparsers.add_parser('transform', parents=[common],
                                      help='Print the CCM of every CCF')
    transform.add_argument('--meta-component', default=None,
                           help='Only the CCFs of this meta-component')
    aggregate = subparsers.add_parser('aggregate', parents=[common],
                                      help='Print the collective matrix of '
                                           'every meta-component')
    aggregate.add_argument('--collective', action='store_true',
                           help='Also print the collective matrix over all events')
    subparsers.add_parser('impact', parents=[common],
                          help='Print the EIF of every event')
    subparsers.add_parser('table', parents=[common],
                          help='Print the impact look-up table')
    gate = subparsers.add_parser('gate', parents=[common],
                                 help='Decide whether calls should be rejected')
    gate.add_argument('--role', action='append', default=[],
                      help='Role of the called person (repeatable, paired '
                           'with --phase)')
    gate.add_argument('--phase', action='append', default=[],
                      help='Current phase (repeatable, paired with --role)')
    feedback = subparsers.add_parser('rank-feedback', parents=[common],
                                     help='Sort usability feedback by impact')
    feedback.add_argument('--feedback', required=True,
                          help='Path to a CSV file with phase,role,text columns')
    return parser


def _load(args) -> Scenario:
    scenario = load_scenario(resolve_scenario(args.scenario), args.what_if)
    if args.z is not None:
        scenario = scenario.with_z(args.z)
    return scenario


def _fraction(args, scenario: Scenario) -> float:
    return scenario.threshold_fraction if args.fraction is None else args.fraction


def _run(args, scenario: Scenario) -> Optional[ResultDocument]:
    if args.command == 'validate':
        return None
    if args.command == 'transform':
        matrices = {
            f'{mc}/{ccf}': matrix
            for (mc, ccf), matrix in ccf_matrices(scenario).items()
            if args.meta_component is None or mc == args.meta_component
        }
        if len(matrices) == 0:
            raise EventImpactError(f'No meta-component named {args.meta_component!r}')
        return matrices_document(scenario, matrices)
    if args.command == 'aggregate':
        matrices = meta_component_matrices(scenario)
        if args.collective:
            matrices['collective'] = collective_matrix(scenario)
        return matrices_document(scenario, matrices)
    if args.command == 'impact':
        return impact_vector_document(scenario, compute_impact_vector(scenario))
    table = compute_impact_table(scenario)
    if args.command == 'table':
        return impact_table_document(scenario, table)
    fraction = _fraction(args, scenario)
    if args.command == 'gate':
        if len(args.role) == 0:
            decisions = gate_table(table, fraction)
        else:
            decisions = [gate_call(table, role, phase, fraction)
                         for role, phase in zip(args.role, args.phase)]
        return gate_document(scenario, decisions, fraction)
    ranked = rank_feedback(table, load_feedback(args.feedback))
    return feedback_document(scenario, ranked)


def _emit(text: str, output: Optional[str]):
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
        logger.info('Result written to %s', output)


def main(argv: Optional[List[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    if args.command == 'gate' and len(args.role) != len(args.phase):
        parser.print_usage(sys.stderr)
        print(f'eventimpact gate: error: --role and --phase must be given in '
              f'pairs ({len(args.role)} and {len(args.phase)} found)',
              file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(level=logging.DEBUG if args.debug else logging.INFO,
                        format='%(levelname)s %(name)s: %(message)s')

    try:
        scenario = _load(args)
        document = _run(args, scenario)
    except OSError as e:
        print(f'eventimpact: cannot read {e.filename}: {e.strerror}', file=sys.stderr)
        return EXIT_USAGE
    except ScenarioError as e:
        print(f'eventimpact: invalid scenario {args.scenario}', file=sys.stderr)
        for issue in e.issues:
            print(f'  {issue}', file=sys.stderr)
        return EXIT_INVALID
    except EventImpactError as e:
        print(f'eventimpact: {e}', file=sys.stderr)
        return EXIT_INVALID

    if document is None:
        _emit(f'{scenario.name}: valid ({scenario.grid.p} phases, '
              f'{scenario.grid.q} roles, {len(scenario.meta_components)} '
              f'meta-components)\n', args.output)
    else:
        _emit(render(document, args.format), args.output)
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
