# Copyright 2026 The Coarse SBM Authors.
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


import math

import pytest

import coarse_sbm as cs


def test_pmf_matches_binomial():
    pmf = cs.pb_pmf(m=3, n_total=3, p=0.4, q=0.9)
    assert len(pmf) == 4
    for x, val in enumerate(pmf):
        assert val == pytest.approx(math.comb(3, x) * 0.4**x * 0.6 ** (3 - x), abs=1e-14)


def test_tail_methods():
    exact = cs.pb_tail(2, 16, 0.7, 0.2, threshold=7.2)
    approx = cs.pb_tail(2, 16, 0.7, 0.2, threshold=7.2, exact_cap=0)
    assert exact["method"] != approx["method"]
    assert approx["lower"] <= exact["mean"] <= approx["upper"]


def test_ch_divergence_symmetry():
    a = cs.ch_divergence([0.2, 0.7], [0.6, 0.1], [0.5, 0.5])
    b = cs.ch_divergence([0.6, 0.1], [0.2, 0.7], [0.5, 0.5])
    assert a[0] == b[0] > 0
    assert cs.ch_divergence([0.3], [0.3], [1.0])[0] == 0.0


def test_extended_model_and_bound():
    model = cs.extended_model(2, 4, 2, 0.7, 0.2, 0.5)
    assert len(model["profiles"]) == 3
    u = cs.u_matrix(2, 4, 2, 0.7, 0.2, 0.5)
    assert u.shape == (3, 3)
    assert (u == u.T).all()
    report = cs.conu_bound(2, 4, 2, 0.7, 0.2, 0.5, l=50)
    assert len(report["variants"]) == 3


def test_threshold_constants_golden():
    c = cs.threshold_constants(500, 50, 2, 0.25, 0.001)
    assert c["delta"] == pytest.approx(0.2114905206253918, rel=1e-12)


def test_co1_bound_clamps():
    assert cs.co1_bound(20, 2, 0.0)["bound_mean"] == 1.0


def test_errors_are_value_errors():
    with pytest.raises(ValueError):
        cs.pb_pmf(1, 2, 1.5, 0.1)
    with pytest.raises(cs.CoarseSbmError):
        cs.run_bound_sweep({"model.bogus": "1"})


def test_mc_is_deterministic():
    cfg = {"model.n": 200, "model.k_communities": 2, "model.alpha": 0.9, "model.beta": 0.05,
           "model.rho": 1, "coarse.l": 5, "coarse.coverage": 4, "coarse.nu": 1, "coarse.tau": 0.5,
           "mc.trials": 50}
    assert cs.run_mc(cfg, threads=1) == cs.run_mc(cfg, threads=3)


def test_regimes_and_selftest():
    rows, report = cs.run_regimes()
    assert len(rows) == 18 == len(report)
    assert all(passed for _, passed, _ in cs.selftest())
