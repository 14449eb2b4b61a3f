# Copyright 2026 The pbitsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the pbitsim p-bit Ising simulator."""

import json

from ._core import (
    AttemptBudgetExceeded,
    FormatError,
    Instance,
    bootstrap_ci,
    chimera_edges,
    generate,
    n_repetitions,
    time_to_solution,
)
from . import _core

__all__ = [
    "AttemptBudgetExceeded",
    "FormatError",
    "Instance",
    "bootstrap_ci",
    "chimera_edges",
    "default_config",
    "generate",
    "n_repetitions",
    "report_csv",
    "run",
    "time_to_solution",
]


def default_config():
    """Default run configuration as a dict."""
    return json.loads(_core.default_config())


def run(instances, **config):
    """Run trials on ``instances`` (a list of Instance or (id, Instance) pairs).

    Keyword arguments override keys of default_config(). Returns one dict per
    trial, instance by instance with trials ascending.
    """
    pairs = []
    for k, item in enumerate(instances):
        pairs.append(item if isinstance(item, tuple) else (f"inst_{k}", item))
    lines = _core.run_trials(json.dumps(config), pairs)
    return [json.loads(line) for line in lines]


def report_csv(records, p_target=0.99, confidence=0.95, resamples=10_000, seed=0):
    """TTS report CSV for records returned by run() or read from a results file."""
    lines = [r if isinstance(r, str) else json.dumps(r) for r in records]
    return _core.report_csv(lines, p_target, confidence, resamples, seed)
