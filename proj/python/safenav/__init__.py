# Copyright 2026 The safenav Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python access to the safenav simulator core."""

import json

from ._safenav import (  # noqa: F401
    Error,
    ValidationError,
    ade,
    awrs,
    convex_hull,
    default_scenario_json,
    fde,
    point_in_hull,
    trilaterate,
    update_heading,
    update_velocity,
    wrap_angle,
    wrs,
)
from ._safenav import plan as _plan
from ._safenav import run_trials as _run_trials


def default_scenario(seed=42):
    return json.loads(default_scenario_json(seed))


def _text(scenario):
    return scenario if isinstance(scenario, str) else json.dumps(scenario)


def plan(scenario, start, goal, beta=1.0, seed=0):
    """Plan from start to goal in the scenario's obstacle field; returns a dict."""
    return _plan(_text(scenario), tuple(start), tuple(goal), beta, seed)


def run_trials(scenario, methods, filters, paths, trials=1, seed=0):
    """Aggregate report rows as a list of dicts. `scenario` is a dict or JSON text."""
    as_list = lambda v: [v] if isinstance(v, str) else list(v)  # noqa: E731
    report = _run_trials(_text(scenario), as_list(methods), as_list(filters), as_list(paths), trials, seed)
    return json.loads(report)["rows"]
