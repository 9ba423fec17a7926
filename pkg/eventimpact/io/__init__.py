"""
Input and output: scenario files (YAML), usability feedback files (CSV), and
result documents (JSON, CSV, text).
"""

from .scenario_file import (parse_scenario, load_scenario, dump_scenario,
                            scenario_document, FORMAT_VERSION)
from .documents import (ResultDocument, impact_vector_document,
                        impact_table_document, gate_document,
                        matrices_document, feedback_document,
                        document_matrices, to_json, to_csv, to_text, render,
                        read_result, FORMATS)
from .feedback_file import FeedbackFileError, parse_feedback, load_feedback
