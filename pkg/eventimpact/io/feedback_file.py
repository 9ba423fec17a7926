"""
Reading usability feedback items from a CSV file with the columns
``phase``, ``role`` and ``text`` (in any order, with a header row).
"""

import csv
import io
from typing import List

from eventimpact.domain import FeedbackItem
from eventimpact.errors import ScenarioIssue, ValidationError

COLUMNS = ('phase', 'role', 'text')


class FeedbackFileError(ValidationError):
    """A feedback file is malformed; ``issues`` locates each problem."""

    def __init__(self, issues: List[ScenarioIssue]):
        lines = '; '.join(str(issue) for issue in issues)
        super().__init__(f'Invalid feedback file: {lines}')
        self.issues = issues


def parse_feedback(text: str) -> List[FeedbackItem]:
    """
    :raises FeedbackFileError: if a column is missing, or a row is incomplete.
    """
    reader = csv.DictReader(io.StringIO(text))
    missing = [c for c in COLUMNS if c not in (reader.fieldnames or [])]
    if len(missing) > 0:
        raise FeedbackFileError([ScenarioIssue('header', f'missing column(s) '
                                                         f'{missing}', 1)])
    items, issues = [], []
    for row in reader:
        empty = [c for c in COLUMNS if not (row.get(c) or '').strip()]
        if len(empty) > 0:
            issues.append(ScenarioIssue(', '.join(empty), 'empty value',
                                        reader.line_num))
            continue
        items.append(FeedbackItem(row['text'].strip(), row['phase'].strip(),
                                  row['role'].strip()))
    if len(issues) > 0:
        raise FeedbackFileError(issues)
    return items


def load_feedback(path: str) -> List[FeedbackItem]:
    with open(path, 'r', encoding='utf-8', newline='') as f:
        return parse_feedback(f.read())
