# Copyright 2026 The NDLS Authors
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

"""Node-dependent local smoothing for node classification.

Thin wrapper over the C++ core. Matrices are exchanged as NumPy arrays.
"""

import json as _json

from ._ndls import (  # noqa: F401
    ConfigError,
    DataError,
    Dataset,
    Graph,
    LoadOptions,
    LsiStats,
    LsiVector,
    NdlsError,
    NumericalError,
    PropagationOperator,
    SpectralInfo,
    SpectralOptions,
    SplitMasks,
    StationaryModel,
    compute_lsi_exact,
    compute_lsi_sketch,
    constant_lsi,
    load_graph,
    lsi_statistics,
    ndls_smooth,
    ndls_smooth_labels,
    planted_partition,
    second_eigenvalue,
)
from . import _ndls

__version__ = "0.1.0"


def run_pipeline(config, dataset=None):
    """Runs all four variants and returns the report as a dict.

    `config` is a path to a JSON config file, or a dict when `dataset` is
    given (data paths in the dict are then ignored).
    """
    if dataset is None:
        return _json.loads(_ndls._run_config_file(str(config)))
    return _json.loads(_ndls._run_json(dataset, _json.dumps(dict(config))))
