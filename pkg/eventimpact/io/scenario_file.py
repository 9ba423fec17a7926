"""
Reading and writing scenario files.

Scenario files are YAML documents (format version 1)::

    version: 1
    name: cholecystectomy
    views:
      workflow: [Troc, Prep, Clip, Det, Retr, Hemo, Clos]
      roles: [main_surgeon, assistant_surgeon, nurse, circulator, anesthetist]
    grid:
      phases: workflow
      roles: roles
    aggregation: geometric_mean
    normalization: l1
    gate:
      threshold_fraction: 0.98
    meta_components:
      - name: surgical_workflow
        target: phase
        ccfs:
          - name: durations
            type: rating
            values: [179, 419, 390, 562, 390, 337, 172]
    what_if:
      trainee_swap:
        - meta_component: human_role
          ccf: experience
          values: [1, 30, 1, 5, 10]

The items of a CCF are never repeated: they are the elements of the view
targeted by its meta-component. CCFs of a ``phase_role`` meta-component give
their data ``by_phase``, one list per phase.

Parsing either returns a valid :py:class:`.Scenario`, or raises a
:py:class:`.ScenarioError` listing every problem found, each one located by
its line and field path.
"""

import copy
import hashlib
import logging
import math
import re
import warnings
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence

import yaml

from eventimpact.aggregation import get_operator
from eventimpact.domain import (CharacteristicFunction, CollectiveCCF,
                                EventGrid, LookupTableCCF, MatrixCCF,
                                MetaComponent, OrderingCCF, PairwiseCCF,
                                PhaseOrderingsCCF, PhaseRatingsCCF, RatingCCF,
                                Scenario, Target, View, WhatIf, WhatIfPatch)
from eventimpact.domain.scenario import (DEFAULT_THRESHOLD_FRACTION,
                                         check_threshold_fraction)
from eventimpact.errors import (DuplicateLabel, ScenarioError, ScenarioIssue,
                                ValidationError)
from eventimpact.structures import (ItemSet, Ordering, PairwiseComparison,
                                    Rating, ReciprocalMatrix)
from eventimpact.transforms import TransformConfig

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1

TOP_LEVEL_KEYS = {'version', 'name', 'views', 'grid', 'aggregation',
                  'normalization', 'gate', 'meta_components', 'what_if',
                  'apply_what_if'}

CCF_KEYS = {
    'ordering': {'ranks', 'by_phase', 'z', 'normalize'},
    'rating': {'values', 'by_phase', 'z', 'normalize'},
    'pairwise': {'upper'},
    'matrix': {'rows', 'z'},
    'collective': {'members', 'aggregation'},
}
"""Accepted data keys per CCF type (besides ``name`` and ``type``)."""

_LAST_STEP = re.compile(r'(\.[^.\[\]]+|\[\d+\])$')


def _join(path: str, key) -> str:
    if isinstance(key, int):
        return f'{path}[{key}]'
    return f'{path}.{key}' if path else str(key)


def _parent(path: str) -> str:
    # Top-level fields have the document itself as parent.
    parent = _LAST_STEP.sub('', path)
    return '' if parent == path else parent


def _node_lines(node: yaml.Node, path: str, lines: Dict[str, int]):
    lines[path] = node.start_mark.line + 1
    if isinstance(node, yaml.MappingNode):
        for key_node, value_node in node.value:
            child = _join(path, str(key_node.value))
            _node_lines(value_node, child, lines)
            # Point at the key rather than at the (possibly next-line) value.
            lines[child] = key_node.start_mark.line + 1
    elif isinstance(node, yaml.SequenceNode):
        for i, item in enumerate(node.value):
            _node_lines(item, _join(path, i), lines)


def _number(value) -> float:
    """A float from a number or a fraction string such as ``"1/3"``."""
    if isinstance(value, bool):
        return math.nan
    if isinstance(value, (int, float)):
        return float(value)
    try:
        return float(Fraction(str(value).strip()))
    except (ValueError, ZeroDivisionError):
        return math.nan


class _ScenarioParser:
    """
    Turns a loaded YAML document into a Scenario, collecting located issues.
    """

    def __init__(self, lines: Dict[str, int]):
        self.lines = lines
        self.issues: List[ScenarioIssue] = []

    def line(self, path: str) -> Optional[int]:
        while True:
            if path in self.lines:
                return self.lines[path]
            if path == '':
                return None
            path = _parent(path)

    def issue(self, path: str, message: str):
        self.issues.append(ScenarioIssue(path or '<document>', message, self.line(path)))

    def fail(self):
        raise ScenarioError(self.issues)

    # Helpers

    def mapping(self, value, path: str) -> Optional[Mapping]:
        if not isinstance(value, dict):
            self.issue(path, f'expected a mapping, found {value!r}')
            return None
        return value

    def sequence(self, value, path: str) -> Optional[list]:
        if not isinstance(value, list):
            self.issue(path, f'expected a list, found {value!r}')
            return None
        return value

    def text(self, value, path: str) -> Optional[str]:
        if not isinstance(value, str) or value.strip() == '':
            self.issue(path, f'expected a non-empty string, found {value!r}')
            return None
        return value

    def unknown_keys(self, doc: Mapping, path: str, allowed):
        for key in doc:
            if key not in allowed:
                self.issue(_join(path, key), f'unknown field {key!r}')

    def validation(self, path: str, error: ValidationError,
                   values: Optional[Sequence] = None):
        """Locate a validation error on the offending element, if possible."""
        if values is not None and error.label is not None:
            positions = [i for i, v in enumerate(values) if v == error.label]
            if isinstance(error, DuplicateLabel) and len(positions) > 1:
                path = _join(path, positions[1])
            elif len(positions) > 0:
                path = _join(path, positions[0])
        self.issue(path, f'{type(error).__name__}: {error.message}')

    def operator(self, name, path: str) -> Optional[str]:
        try:
            get_operator(name)
        except ValidationError as e:
            self.issue(path, f'{type(e).__name__}: {e.message}')
            return None
        return name

    def labelled(self, path: str, error: ValidationError, items: ItemSet):
        """Locate an error on the value of the offending item."""
        if error.label is not None and error.label in items:
            path = _join(path, items.index(error.label))
        self.issue(path, f'{type(error).__name__}: {error.message}')

    # Sections

    def views(self, doc, path: str = 'views') -> Dict[str, View]:
        views = {}
        doc = self.mapping(doc, path)
        if doc is None:
            return views
        for name, labels in doc.items():
            view_path = _join(path, name)
            labels = self.sequence(labels, view_path)
            if labels is None:
                continue
            try:
                views[name] = View(name, ItemSet(labels, min_size=1))
            except ValidationError as e:
                self.validation(view_path, e, labels)
        return views

    def grid(self, doc, views: Dict[str, View], path: str = 'grid') -> Optional[EventGrid]:
        doc = self.mapping(doc, path)
        if doc is None:
            return None
        self.unknown_keys(doc, path, {'phases', 'roles'})
        chosen = []
        for key in ('phases', 'roles'):
            name = doc.get(key)
            if not isinstance(name, str) or name not in views:
                self.issue(_join(path, key), f'expected the name of a declared '
                                             f'view, found {name!r}')
            else:
                chosen.append(views[name])
        if len(chosen) != 2:
            return None
        try:
            return EventGrid(*chosen)
        except ValidationError as e:
            self.issue(path, f'{type(e).__name__}: {e.message}')
            return None

    def config(self, doc: Mapping, path: str) -> Optional[TransformConfig]:
        z = doc.get('z', 1.0)
        normalize = doc.get('normalize', True)
        if not isinstance(normalize, bool):
            self.issue(_join(path, 'normalize'), f'expected a boolean, found '
                                                 f'{normalize!r}')
            return None
        try:
            return TransformConfig(_number(z), normalize)
        except ValidationError as e:
            self.issue(_join(path, 'z'), f'{type(e).__name__}: {e.message}')
            return None

    def ccf_header(self, doc, path: str):
        doc = self.mapping(doc, path)
        if doc is None:
            return None, None, None
        name = self.text(doc.get('name'), _join(path, 'name'))
        kind = doc.get('type')
        if not isinstance(kind, str) or kind not in CCF_KEYS:
            self.issue(_join(path, 'type'), f'expected one of {sorted(CCF_KEYS)}, '
                                            f'found {kind!r}')
            return doc, name, None
        self.unknown_keys(doc, path, {'name', 'type'} | CCF_KEYS[kind])
        return doc, name, kind

    def require(self, doc: Mapping, path: str, key: str):
        if key not in doc:
            self.issue(path, f'missing field {key!r}')
            return None
        return self.sequence(doc[key], _join(path, key))

    def ccf(self, doc, path: str, items: ItemSet) -> Optional[CharacteristicFunction]:
        """A CCF over a single view (phases or roles)."""
        doc, name, kind = self.ccf_header(doc, path)
        if name is None or kind is None:
            return None
        if 'by_phase' in doc:
            self.issue(_join(path, 'by_phase'), 'by_phase data is only accepted '
                                                'in phase_role meta-components')
            return None
        if kind == 'matrix' and 'z' in doc:
            warnings.warn(f'{path}: the exponent z is ignored by the prebuilt '
                          f'matrix {name!r}, which is used directly.')
        elif kind == 'ordering' and ('z' in doc or 'normalize' in doc):
            warnings.warn(f'{path}: z and normalize are ignored by the '
                          f'ordering {name!r} outside of by_phase data.')
        try:
            if kind == 'ordering':
                ranks = self.require(doc, path, 'ranks')
                if ranks is None:
                    return None
                try:
                    return OrderingCCF(name, Ordering(items, tuple(ranks)))
                except ValidationError as e:
                    self.labelled(_join(path, 'ranks'), e, items)
                    return None
            if kind == 'rating':
                values = self.require(doc, path, 'values')
                config = self.config(doc, path)
                if values is None or config is None:
                    return None
                rating = self._rating(items, values, _join(path, 'values'))
                return None if rating is None else RatingCCF(name, rating, config)
            if kind == 'pairwise':
                upper = self.require(doc, path, 'upper')
                if upper is None:
                    return None
                comparison = PairwiseComparison(items, tuple(_number(p) for p in upper))
                return PairwiseCCF(name, comparison)
            if kind == 'matrix':
                rows = self.require(doc, path, 'rows')
                if rows is None:
                    return None
                if not all(isinstance(row, list) for row in rows):
                    self.issue(_join(path, 'rows'), 'expected a list of lists')
                    return None
                rows = [[_number(v) for v in row] for row in rows]
                return MatrixCCF(name, ReciprocalMatrix.from_upper_rows(items, rows))
            # collective
            members = self.require(doc, path, 'members')
            if members is None:
                return None
            built = [self.ccf(member, _join(_join(path, 'members'), i), items)
                     for i, member in enumerate(members)]
            if any(member is None for member in built):
                return None
            operator = self.operator(doc.get('aggregation', 'geometric_mean'),
                                     _join(path, 'aggregation'))
            if operator is None:
                return None
            return CollectiveCCF(name, tuple(built), operator)
        except ValidationError as e:
            key = {'pairwise': 'upper', 'matrix': 'rows',
                   'collective': 'members'}.get(kind, '')
            self.issue(_join(path, key) if key else path,
                       f'{type(e).__name__}: {e.message}')
            return None

    def _rating(self, items: ItemSet, values: Sequence, path: str) -> Optional[Rating]:
        try:
            return Rating(items, tuple(_number(v) for v in values))
        except ValidationError as e:
            self.labelled(path, e, items)
            return None

    def lookup_ccf(self, doc, path: str, grid: EventGrid) -> Optional[LookupTableCCF]:
        """A CCF over the phase×role grid, given ``by_phase``."""
        doc, name, kind = self.ccf_header(doc, path)
        if name is None or kind is None:
            return None
        if kind not in ('ordering', 'rating') or 'by_phase' not in doc:
            self.issue(path, 'phase_role meta-components only accept ordering '
                             'or rating CCFs given by_phase')
            return None
        by_phase_path = _join(path, 'by_phase')
        by_phase = self.mapping(doc['by_phase'], by_phase_path)
        config = self.config(doc, path)
        if by_phase is None or config is None:
            return None
        for phase in by_phase:
            if phase not in grid.phases:
                self.issue(_join(by_phase_path, phase), f'unknown phase {phase!r}')
        rows = []
        for phase in grid.phases:
            row_path = _join(by_phase_path, phase)
            if phase not in by_phase:
                self.issue(by_phase_path, f'missing phase {phase!r}')
                continue
            data = self.sequence(by_phase[phase], row_path)
            if data is None:
                continue
            if kind == 'ordering':
                try:
                    rows.append(Ordering(grid.roles, tuple(data)))
                except ValidationError as e:
                    self.labelled(row_path, e, grid.roles)
            else:
                rating = self._rating(grid.roles, data, row_path)
                if rating is not None:
                    rows.append(rating)
        if len(rows) != len(grid.phases):
            return None
        try:
            if kind == 'ordering':
                return PhaseOrderingsCCF(name, grid.phases, tuple(rows), config)
            return PhaseRatingsCCF(name, grid.phases, tuple(rows), config)
        except ValidationError as e:
            self.issue(path, f'{type(e).__name__}: {e.message}')
            return None

    def meta_component(self, doc, path: str, grid: EventGrid) -> Optional[MetaComponent]:
        doc = self.mapping(doc, path)
        if doc is None:
            return None
        self.unknown_keys(doc, path, {'name', 'target', 'ccfs'})
        name = self.text(doc.get('name'), _join(path, 'name'))
        try:
            target = Target(doc.get('target'))
        except ValueError:
            self.issue(_join(path, 'target'), f'expected one of '
                                              f'{[t.value for t in Target]}, '
                                              f'found {doc.get("target")!r}')
            return None
        ccf_docs = self.require(doc, path, 'ccfs')
        if name is None or ccf_docs is None:
            return None
        ccfs = []
        for i, ccf_doc in enumerate(ccf_docs):
            ccf_path = _join(_join(path, 'ccfs'), i)
            if target is Target.PHASE_ROLE:
                ccfs.append(self.lookup_ccf(ccf_doc, ccf_path, grid))
            else:
                items = grid.phases if target is Target.PHASE else grid.roles
                if len(items) < 2:
                    self.issue(ccf_path, f'the {target.value} view holds a single '
                                         f'element, it cannot be scored')
                    return None
                ccfs.append(self.ccf(ccf_doc, ccf_path, items))
        if any(ccf is None for ccf in ccfs):
            return None
        try:
            return MetaComponent(name, target, tuple(ccfs))
        except ValidationError as e:
            self.issue(path, f'{type(e).__name__}: {e.message}')
            return None

    def what_ifs(self, doc, path: str = 'what_if') -> List[WhatIf]:
        what_ifs = []
        doc = self.mapping(doc, path)
        if doc is None:
            return what_ifs
        for name, patches in doc.items():
            patches_path = _join(path, name)
            patches = self.sequence(patches, patches_path)
            if patches is None:
                continue
            parsed = []
            for i, patch in enumerate(patches):
                patch_path = _join(patches_path, i)
                patch = self.mapping(patch, patch_path)
                if patch is None:
                    continue
                mc = self.text(patch.get('meta_component'),
                               _join(patch_path, 'meta_component'))
                ccf = self.text(patch.get('ccf'), _join(patch_path, 'ccf'))
                fields = {k: v for k, v in patch.items()
                          if k not in ('meta_component', 'ccf')}
                for key in ('name', 'type'):
                    if key in fields:
                        self.issue(_join(patch_path, key), f'the CCF {key} '
                                                           f'cannot be patched')
                if mc is not None and ccf is not None:
                    parsed.append(WhatIfPatch(mc, ccf, fields))
            what_ifs.append(WhatIf(str(name), tuple(parsed)))
        return what_ifs

    def apply(self, doc: dict, what_if: WhatIf) -> dict:
        """
        Replace the patched fields in a copy of the document, and move their
        line numbers to the patch.
        """
        doc = copy.deepcopy(doc)
        mc_docs = doc.get('meta_components')
        if not isinstance(mc_docs, list):
            return doc
        for k, patch in enumerate(what_if.patches):
            patch_path = _join(_join('what_if', what_if.name), k)
            target = None
            for i, mc_doc in enumerate(mc_docs):
                if isinstance(mc_doc, dict) and mc_doc.get('name') == patch.meta_component:
                    for j, ccf_doc in enumerate(mc_doc.get('ccfs') or []):
                        if isinstance(ccf_doc, dict) and ccf_doc.get('name') == patch.ccf:
                            target = (ccf_doc, f'meta_components[{i}].ccfs[{j}]')
            if target is None:
                self.issue(patch_path, f'no CCF {patch.ccf!r} in a '
                                       f'meta-component {patch.meta_component!r}')
                continue
            ccf_doc, ccf_path = target
            for key, value in patch.fields.items():
                ccf_doc[key] = copy.deepcopy(value)
                # Forget lines of the replaced field, then point at the patch.
                old = _join(ccf_path, key)
                for p in [p for p in self.lines if p == old or p.startswith(old + '.')
                          or p.startswith(old + '[')]:
                    del self.lines[p]
                new = _join(patch_path, key)
                for p, line in list(self.lines.items()):
                    if p == new or p.startswith(new + '.') or p.startswith(new + '['):
                        self.lines[old + p[len(new):]] = line
            logger.debug('Applied %s of what-if %r', patch, what_if.name)
        return doc

    def parse(self, doc, what_if: Optional[str]) -> Scenario:
        doc = self.mapping(doc, '')
        if doc is None:
            self.fail()
        self.unknown_keys(doc, '', TOP_LEVEL_KEYS)
        version = doc.get('version')
        if version != FORMAT_VERSION:
            self.issue('version', f'expected format version {FORMAT_VERSION}, '
                                  f'found {version!r}')
        name = self.text(doc.get('name', 'scenario'), 'name')
        views = self.views(doc.get('views'))
        grid = self.grid(doc.get('grid'), views)

        operator = self.operator(doc.get('aggregation', 'geometric_mean'),
                                 'aggregation')
        normalization = doc.get('normalization', 'l1')
        if normalization != 'l1':
            self.issue('normalization', f"only 'l1' is supported, found "
                                        f"{normalization!r}")
        fraction = DEFAULT_THRESHOLD_FRACTION
        gate = self.mapping(doc.get('gate', {}), 'gate')
        if gate is not None:
            self.unknown_keys(gate, 'gate', {'threshold_fraction'})
            try:
                fraction = check_threshold_fraction(
                    gate.get('threshold_fraction', DEFAULT_THRESHOLD_FRACTION))
            except ValidationError as e:
                self.issue('gate.threshold_fraction',
                           f'{type(e).__name__}: {e.message}')

        what_ifs = self.what_ifs(doc.get('what_if', {}))
        applied = what_if if what_if is not None else doc.get('apply_what_if')
        if applied is not None:
            chosen = [w for w in what_ifs if w.name == applied]
            if len(chosen) == 0:
                self.issue('what_if', f'unknown what-if {applied!r}; available: '
                                      f'{[w.name for w in what_ifs]}')
            else:
                doc = self.apply(doc, chosen[0])

        meta_components = []
        mc_docs = self.require(doc, '', 'meta_components')
        if mc_docs is not None and grid is not None:
            for i, mc_doc in enumerate(mc_docs):
                mc = self.meta_component(mc_doc, _join('meta_components', i), grid)
                if mc is not None:
                    meta_components.append(mc)
        if len(self.issues) > 0:
            self.fail()
        try:
            return Scenario(name, tuple(views.values()), grid,
                            tuple(meta_components), operator, normalization,
                            fraction, tuple(what_ifs), applied)
        except ValidationError as e:
            self.issue('', f'{type(e).__name__}: {e.message}')
            self.fail()


def parse_scenario(document: str, what_if: Optional[str] = None) -> Scenario:
    """
    Parse a scenario document.

    :param document: The YAML text of the scenario.
    :param what_if: Name of a what-if override to apply, if any. It takes
        precedence over the ``apply_what_if`` field of the document.

    :raises ScenarioError: listing every problem found, with its line and
        field path.

    :return: The validated Scenario. Its ``source_hash`` is the SHA-256 of
        the document.
    """
    try:
        root = yaml.compose(document, Loader=yaml.SafeLoader)
        doc = yaml.safe_load(document)
    except yaml.YAMLError as e:
        mark = getattr(e, 'problem_mark', None)
        line = mark.line + 1 if mark is not None else None
        problem = getattr(e, 'problem', None) or str(e)
        raise ScenarioError([ScenarioIssue('<document>', f'invalid YAML: {problem}',
                                           line)]) from e
    lines: Dict[str, int] = {}
    if root is not None:
        _node_lines(root, '', lines)
    scenario = _ScenarioParser(lines).parse(doc, what_if)
    digest = hashlib.sha256(document.encode('utf-8')).hexdigest()
    logger.debug('Parsed %s (sha256 %s)', scenario, digest)
    object.__setattr__(scenario, 'source_hash', digest)
    return scenario


def load_scenario(path: str, what_if: Optional[str] = None) -> Scenario:
    """Read and parse a scenario file, see :py:func:`parse_scenario`."""
    with open(path, 'r', encoding='utf-8') as f:
        return parse_scenario(f.read(), what_if)


def _ccf_document(ccf: CharacteristicFunction) -> Dict[str, Any]:
    doc: Dict[str, Any] = {'name': ccf.name}
    if isinstance(ccf, OrderingCCF):
        doc.update(type='ordering', ranks=list(ccf.ordering.ranks))
    elif isinstance(ccf, RatingCCF):
        doc.update(type='rating', values=list(ccf.rating.utilities))
    elif isinstance(ccf, PairwiseCCF):
        doc.update(type='pairwise', upper=list(ccf.comparison.upper))
    elif isinstance(ccf, MatrixCCF):
        doc.update(type='matrix', rows=ccf.matrix.upper_rows())
    elif isinstance(ccf, CollectiveCCF):
        doc.update(type='collective',
                   members=[_ccf_document(member) for member in ccf.members])
        if ccf.operator != 'geometric_mean':
            doc['aggregation'] = ccf.operator
    elif isinstance(ccf, PhaseOrderingsCCF):
        doc.update(type='ordering', by_phase={
            phase: list(ordering.ranks)
            for phase, ordering in zip(ccf.phases, ccf.orderings)
        })
    elif isinstance(ccf, PhaseRatingsCCF):
        doc.update(type='rating', by_phase={
            phase: list(rating.utilities)
            for phase, rating in zip(ccf.phases, ccf.ratings)
        })
    else:
        raise TypeError(f'Cannot serialize {ccf}')
    config = getattr(ccf, 'config', None)
    if config is not None:
        doc['z'] = config.z
        if not config.normalize:
            doc['normalize'] = False
    return doc


def scenario_document(scenario: Scenario) -> Dict[str, Any]:
    """The plain data (dicts and lists) of a scenario document."""
    doc: Dict[str, Any] = {
        'version': FORMAT_VERSION,
        'name': scenario.name,
        'views': {view.name: list(view.elements) for view in scenario.views},
        'grid': {'phases': scenario.phase_view.name,
                 'roles': scenario.role_view.name},
        'aggregation': scenario.operator,
        'normalization': scenario.normalization,
        'gate': {'threshold_fraction': scenario.threshold_fraction},
        'meta_components': [
            {
                'name': mc.name,
                'target': mc.target.value,
                'ccfs': [_ccf_document(ccf) for ccf in mc.ccfs],
            }
            for mc in scenario.meta_components
        ],
    }
    if len(scenario.what_ifs) > 0:
        doc['what_if'] = {
            what_if.name: [
                {'meta_component': patch.meta_component, 'ccf': patch.ccf,
                 **copy.deepcopy(dict(patch.fields))}
                for patch in what_if.patches
            ]
            for what_if in scenario.what_ifs
        }
    if scenario.applied_what_if is not None:
        doc['apply_what_if'] = scenario.applied_what_if
    return doc


def dump_scenario(scenario: Scenario) -> str:
    """
    Write a scenario as a YAML document.

    Parsing the result gives back an equal Scenario. If a what-if was
    applied, the patched data is written along with the ``apply_what_if``
    field; applying the same patch again leaves the data unchanged.
    """
    return yaml.safe_dump(scenario_document(scenario), sort_keys=False,
                          allow_unicode=True)
