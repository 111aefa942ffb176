# Copyright 2026 The aqored Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import aqored


def test_grover_gap_two_qubits():
    p = aqored.gap_profile(aqored.GroverPlain(aqored.Driver.GROVER, 2))
    assert p.g_min == pytest.approx(0.5, rel=1e-10)
    assert p.s_star == pytest.approx(0.5, abs=1e-6)
    assert aqored.t_ann_linear(p.g_min) == pytest.approx(4.0)


def test_reduced_spectrum_matches_dense_matrix():
    model = aqored.GroverNoiseStd(n=5, epsilon=0.8, q=2)
    red = aqored.reduced_spectrum(model, 0.35)
    assert red.total_multiplicity() == 32
    np.testing.assert_allclose(red.expanded(), aqored.full_spectrum(model, 0.35), atol=1e-10)
    assert aqored.effective_dimension(model, 0.35) == 6
    assert aqored.dimension_law(model).label == "n+1"


def test_tcomp_point_value_with_python_callable():
    r = aqored.t_comp(10, 0.5, lambda q: math.sqrt(2**10), schedule=aqored.Schedule.GROVER_OVERRIDE)
    assert r.q_star == 5
    assert r.t_comp == pytest.approx(521.7, abs=0.1)


def test_analytic_scaling_and_fit():
    assert aqored.analytic_scaling(2.0) == pytest.approx(0.688722, abs=1e-6)
    fit = aqored.fit_exponent([(n, 0.5 * n + 1) for n in range(40, 161, 8)])
    assert fit.slope == pytest.approx(0.5, abs=1e-12)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        aqored.validate(aqored.GroverNoiseGrv(n=4, epsilon=1.0, q=7))
    with pytest.raises(ValueError):
        aqored.fit_exponent([(1, 1), (2, 2)])
    assert issubclass(aqored.DivergenceError, aqored.AqoredError)


def test_model_dict_round_trip():
    m = aqored.Tunneling([0.25, 1.5, 2.0])
    again = aqored.model_from_dict(aqored.model_to_dict(m))
    assert again.barriers == m.barriers
    assert "tunneling" in repr(m)


def test_verify_and_cli():
    ok, worst = aqored.verify(n_min=3, n_max=4, draws=2, s_points=5)
    assert ok
    assert max(worst.values()) < 1e-10
    code, out, _ = aqored.cli(["tcomp", "--model", "noisy-grover", "--n", "10", "--epsilon", "0.5",
                               "--schedule", "grover-override"])
    assert code == 0
    assert out.splitlines()[1].endswith(",5")
