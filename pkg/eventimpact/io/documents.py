"""
Result documents: the outputs of the pipeline, with their provenance, and
their renderings as JSON, CSV, or human-readable text.

- JSON keeps the full precision of floats (re-reading a JSON document with
  :py:func:`read_result` gives back the exact same values) and the full
  provenance: scenario name and hash, aggregation operator, exponents,
  threshold fraction, applied what-if.
- CSV holds the data only, with values written with 6 significant digits,
  and rows ended by CRLF.
- Text is meant for humans, with EIFs written with 4 decimals.
"""

import csv
import dataclasses
import io
import json
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from eventimpact.domain import FeedbackItem, GateDecision, ImpactTable, Scenario
from eventimpact.errors import EventImpactError
from eventimpact.impact import ImpactVector
from eventimpact.structures import ReciprocalMatrix

KINDS = ('impact_vector', 'impact_table', 'gate', 'matrices', 'feedback')

FORMATS = ('text', 'csv', 'json')


@dataclasses.dataclass(frozen=True)
class ResultDocument:
    """A machine-readable result, with the provenance of its values."""

    kind: str
    """One of :py:data:`KINDS`."""

    provenance: Dict[str, Any]
    data: Dict[str, Any]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise EventImpactError(f'Unknown result kind {self.kind!r}; '
                                   f'expected one of {list(KINDS)}')


def provenance(scenario: Scenario,
               threshold_fraction: Optional[float] = None) -> Dict[str, Any]:
    """Where the values of a result come from."""
    return {
        'scenario': scenario.name,
        'scenario_hash': scenario.source_hash,
        'what_if': scenario.applied_what_if,
        'operator': scenario.operator,
        'normalization': scenario.normalization,
        'z': scenario.z_values(),
        'threshold_fraction': (scenario.threshold_fraction
                               if threshold_fraction is None
                               else threshold_fraction),
    }


def impact_vector_document(scenario: Scenario, vector: ImpactVector) -> ResultDocument:
    return ResultDocument('impact_vector', provenance(scenario), {
        'labels': list(vector.labels),
        'raw': list(vector.raw),
        'eif': list(vector.normalized),
    })


def impact_table_document(scenario: Scenario, table: ImpactTable) -> ResultDocument:
    return ResultDocument('impact_table', provenance(scenario), {
        'roles': list(table.roles),
        'phases': list(table.phases),
        'cells': table.cells.tolist(),
    })


def gate_document(scenario: Scenario,
                  decisions: Sequence[GateDecision],
                  threshold_fraction: float) -> ResultDocument:
    return ResultDocument('gate', provenance(scenario, threshold_fraction), {
        'decisions': [
            {
                'role': d.role,
                'phase': d.phase,
                'eif': d.eif,
                'threshold': d.threshold,
                'action': d.action.value,
            }
            for d in decisions
        ],
    })


def matrices_document(scenario: Scenario,
                      matrices: Mapping[str, ReciprocalMatrix]) -> ResultDocument:
    """
    A set of named matrices (e.g., the CCM of every CCF), each one written as
    its upper triangle plus diagonal.
    """
    return ResultDocument('matrices', provenance(scenario), {
        'matrices': [
            {
                'name': name,
                'labels': list(matrix.labels),
                'bound': matrix.bound,
                'rows': matrix.upper_rows(),
            }
            for name, matrix in matrices.items()
        ],
    })


def feedback_document(scenario: Scenario,
                      ranked: Sequence[Tuple[FeedbackItem, float]]) -> ResultDocument:
    return ResultDocument('feedback', provenance(scenario), {
        'feedback': [
            {'phase': item.phase, 'role': item.role, 'text': item.text, 'eif': eif}
            for item, eif in ranked
        ],
    })


def document_matrices(document: ResultDocument) -> Dict[str, ReciprocalMatrix]:
    """Rebuild the matrices of a ``matrices`` document."""
    return {
        m['name']: ReciprocalMatrix.from_upper_rows(m['labels'], m['rows'], m['bound'])
        for m in document.data['matrices']
    }


# Renderings

def to_json(document: ResultDocument) -> str:
    return json.dumps({
        'kind': document.kind,
        'provenance': document.provenance,
        'data': document.data,
    }, indent=2, ensure_ascii=False)


def read_result(text: str) -> ResultDocument:
    """
    Read back a JSON result document.

    :raises EventImpactError: if the text is not a result document.
    """
    try:
        content = json.loads(text)
        return ResultDocument(content['kind'], content['provenance'], content['data'])
    except (ValueError, KeyError, TypeError) as e:
        raise EventImpactError(f'Not a result document: {e}') from e


def _g(value: float) -> str:
    return f'{value:.6g}'


def _csv_rows(document: ResultDocument) -> List[List[str]]:
    data = document.data
    if document.kind == 'impact_vector':
        rows = [['event', 'raw', 'eif']]
        rows += [[label, _g(raw), _g(eif)]
                 for label, raw, eif in zip(data['labels'], data['raw'], data['eif'])]
    elif document.kind == 'impact_table':
        rows = [['role'] + data['phases']]
        rows += [[role] + [_g(v) for v in cells]
                 for role, cells in zip(data['roles'], data['cells'])]
    elif document.kind == 'gate':
        rows = [['role', 'phase', 'eif', 'threshold', 'action']]
        rows += [[d['role'], d['phase'], _g(d['eif']), _g(d['threshold']), d['action']]
                 for d in data['decisions']]
    elif document.kind == 'matrices':
        rows = [['matrix', 'row', 'column', 'value']]
        for m in data['matrices']:
            labels = m['labels']
            for i, row in enumerate(m['rows']):
                rows += [[m['name'], labels[i], labels[i + k], _g(v)]
                         for k, v in enumerate(row)]
    else:
        rows = [['rank', 'eif', 'phase', 'role', 'text']]
        rows += [[str(k + 1), _g(f['eif']), f['phase'], f['role'], f['text']]
                 for k, f in enumerate(data['feedback'])]
    return rows


def to_csv(document: ResultDocument) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerows(_csv_rows(document))
    return buffer.getvalue()


def _table_text(header: Sequence[str], rows: Sequence[Sequence[str]]) -> List[str]:
    widths = [max(len(str(row[k])) for row in [header, *rows])
              for k in range(len(header))]
    return [
        '  '.join(str(cell).ljust(width) for cell, width in zip(row, widths)).rstrip()
        for row in [header, *rows]
    ]


def to_text(document: ResultDocument) -> str:
    data = document.data
    p = document.provenance
    lines = [f'# {document.kind} of {p["scenario"]}'
             + (f' (what-if: {p["what_if"]})' if p.get('what_if') else '')]
    if document.kind == 'impact_vector':
        lines += _table_text(['event', 'raw', 'EIF'], [
            [label, f'{raw:.4f}', f'{eif:.4f}']
            for label, raw, eif in zip(data['labels'], data['raw'], data['eif'])
        ])
    elif document.kind == 'impact_table':
        lines += _table_text(['role'] + data['phases'], [
            [role] + [f'{v:.4f}' for v in cells]
            for role, cells in zip(data['roles'], data['cells'])
        ])
    elif document.kind == 'gate':
        for d in data['decisions']:
            sign = '>' if d['action'] == 'reject' else '<='
            lines.append(f'{d["action"].upper():6s} call to {d["role"]} during '
                         f'{d["phase"]} (EIF {d["eif"]:.4f} {sign} threshold '
                         f'{d["threshold"]:.4f})')
    elif document.kind == 'matrices':
        for m in data['matrices']:
            lines.append(f'## {m["name"]}')
            labels = m['labels']
            matrix = ReciprocalMatrix.from_upper_rows(labels, m['rows'], m['bound'])
            lines += _table_text([''] + labels, [
                [labels[i]] + [f'{v:.4f}' for v in matrix.values[i]]
                for i in range(len(labels))
            ])
    else:
        lines += _table_text(['#', 'EIF', 'phase', 'role', 'feedback'], [
            [str(k + 1), f'{f["eif"]:.4f}', f['phase'], f['role'], f['text']]
            for k, f in enumerate(data['feedback'])
        ])
    return '\n'.join(lines) + '\n'


RENDERERS = {
    'text': to_text,
    'csv': to_csv,
    'json': to_json,
}


def render(document: ResultDocument, output_format: str) -> str:
    """Render a document in one of :py:data:`FORMATS`."""
    return RENDERERS[output_format](document)
