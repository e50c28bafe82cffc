# Copyright 2026 The Permweaver Authors
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

"""Python bindings for the permweaver synthesis library."""

import json

from ._core import (
    MCX_CX_PER_CONTROL,
    InputError,
    StateError,
    avg_adjacent_nonzero,
    conforms,
    fidelity,
    gen_clustered_state,
    hamming,
    mcx_cx_cost,
    permute_labels,
    prepare,
    statevector,
    synthesize,
)
from ._core import run_benchmark_json as _run_benchmark_json

__all__ = [
    "MCX_CX_PER_CONTROL",
    "InputError",
    "StateError",
    "avg_adjacent_nonzero",
    "conforms",
    "fidelity",
    "gen_clustered_state",
    "hamming",
    "mcx_cx_cost",
    "permute_labels",
    "prepare",
    "run_benchmark",
    "statevector",
    "synthesize",
]


def run_benchmark(config, jobs=0):
    """Runs the benchmark described by a config dict and returns the CSV text."""
    return _run_benchmark_json(json.dumps(config), jobs)
