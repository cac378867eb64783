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

import numpy as np
import pytest

import ndls


def path3():
    return ndls.Graph(3, [(0, 1), (1, 2)])


def test_stationary_row_of_path():
    row = ndls.StationaryModel(path3(), 0.0).row(0)
    np.testing.assert_allclose(row, [2 / 7, 3 / 7, 2 / 7], atol=1e-15)


def test_two_step_propagation_matches_dense_power():
    op = ndls.PropagationOperator(path3(), 0.0)
    x = np.eye(3)
    two = op.propagate(op.propagate(x))
    np.testing.assert_allclose(two[0], [5 / 12, 5 / 12, 1 / 6], atol=1e-15)


def test_spectrum_of_path():
    info = ndls.second_eigenvalue(path3())
    assert info.lambda2 == pytest.approx(0.5, abs=1e-12)
    assert info.lambda_min == pytest.approx(-1 / 6, abs=1e-12)


def test_star_lsi_and_smoothing_paths_agree():
    g = ndls.Graph(3, [(0, 1), (0, 2)])
    op = ndls.PropagationOperator(g, 0.0)
    lsi = ndls.compute_lsi_exact(op, 0.01, 100)
    assert list(lsi.values) == [3, 7, 7]
    y = np.full((3, 2), 0.5)
    y[0] = [0.9, 0.1]
    np.testing.assert_array_equal(ndls.ndls_smooth(op, y, lsi),
                                  ndls.ndls_smooth_labels(op, y, lsi))


def test_zero_lsi_is_identity():
    op = ndls.PropagationOperator(path3())
    x = np.arange(6, dtype=float).reshape(3, 2)
    np.testing.assert_array_equal(ndls.ndls_smooth(op, x, ndls.constant_lsi(3, 0)), x)


def test_errors_map_to_python_exceptions():
    op = ndls.PropagationOperator(path3())
    with pytest.raises(ndls.ConfigError):
        ndls.compute_lsi_exact(op, -1.0, 10)
    with pytest.raises(ndls.DataError):
        ndls.Graph(2, [(0, 5)])
    with pytest.raises(ndls.NdlsError):
        ndls.PropagationOperator(path3(), 2.0)


def test_pipeline_on_planted_partition():
    data = ndls.planted_partition(nodes=600, classes=3, seed=1)
    report = ndls.run_pipeline({"model": {"epochs": 100}, "seed": 3}, dataset=data)
    assert report["num_nodes"] == 600
    for variant in ("mlp", "ndls_f_mlp", "mlp_ndls_l", "ndls"):
        assert 0.0 <= report["variants"][variant]["test_accuracy"] <= 1.0
    assert report["variants"]["ndls"]["test_accuracy"] > report["variants"]["mlp"]["test_accuracy"]
