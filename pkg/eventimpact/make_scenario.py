"""
Functions that can be used to load the bundled scenarios, in particular the
laparoscopic cholecystectomy one.
"""

import os
from typing import Optional

from eventimpact.domain import Scenario
from eventimpact.io import load_scenario

BUNDLED_SCENARIO = 'cholecystectomy'
"""Name of the bundled operating room scenario."""


def find_scenario_file(name: str) -> str:
    """
    Finds a scenario file from the data folder.

    The ``data`` folder can be either:

    - accessible through a relative path, e.g., because the source code was
      cloned (``./data/scenarios/<name>.yaml``).
    - accessible through imports, e.g., because the package was installed.

    Relative paths are tried first; otherwise, :py:mod:`importlib.resources`
    gives a path to the file within the installed package.

    :param name: The name of the scenario, with or without the ``.yaml``
        extension, e.g., ``cholecystectomy``.

    :raises FileNotFoundError: if there is no such scenario in the source
        tree, and the package data is not installed.

    :return: A path to the scenario file.
    """
    filename = name if name.endswith('.yaml') else f'{name}.yaml'
    relative_path = os.path.join('data', 'scenarios', filename)
    if os.path.isfile(relative_path):
        return relative_path
    # The file is inside the installed package; importlib returns a context,
    # which must stay open as long as the path is used.
    from contextlib import ExitStack
    from importlib.resources import as_file, files
    import atexit
    try:
        resource = files('eventimpact.data').joinpath('scenarios', filename)
    except ModuleNotFoundError:
        raise FileNotFoundError(2, 'No such scenario', relative_path) from None
    if not resource.is_file():
        raise FileNotFoundError(2, 'No such scenario', relative_path)
    file_manager = ExitStack()
    atexit.register(file_manager.close)
    return str(file_manager.enter_context(as_file(resource)))


def resolve_scenario(path_or_name: str) -> str:
    """A path to an existing file, or to the bundled scenario of that name."""
    if os.path.isfile(path_or_name):
        return path_or_name
    return find_scenario_file(path_or_name)


def load_bundled_scenario(what_if: Optional[str] = None) -> Scenario:
    """
    Load the bundled laparoscopic cholecystectomy scenario.

    It is configured with:

    * 7 workflow phases and 5 roles, hence 35 virtual events.
    * A *surgical workflow* meta-component, combining the mean duration of
      each phase and a (synthetic) survey of 4 experts.
    * A *human role* meta-component, combining a (synthetic) survey of the
      same experts and the years of experience of each team member.
    * A *roles by phase* meta-component, with one ordering of the roles per
      phase.
    * A gating threshold of 98% of the maximum EIF.

    :param what_if: The name of a what-if override, e.g., ``trainee_swap``
        (the trainee and the experienced surgeon switch roles).

    :return: The validated Scenario.
    """
    return load_scenario(find_scenario_file(BUNDLED_SCENARIO), what_if)
