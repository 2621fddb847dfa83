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

"""Coarsened stochastic block model: bounds, recovery conditions, experiments."""

import csv
import io
import json

from ._coarse_sbm import (
    CoarseSbmError,
    ch_divergence,
    pb_pmf,
    pb_tail,
    renyi_half_binomial,
    selftest,
    threshold_constants,
    u_matrix,
)
from . import _coarse_sbm as _ext

__all__ = [
    "CoarseSbmError",
    "ch_divergence",
    "check_conu_recovery",
    "co1_bound",
    "conu_bound",
    "extended_model",
    "pb_pmf",
    "pb_tail",
    "renyi_half_binomial",
    "run_bound_sweep",
    "run_mc",
    "run_regimes",
    "selftest",
    "threshold_constants",
    "u_matrix",
]


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def _config(config):
    return {str(k): str(v) for k, v in (config or {}).items()}


def extended_model(k_communities, coverage, nu, p, q, tau, prior=(), exact_cap=4096):
    return json.loads(
        _ext.extended_model_json(k_communities, coverage, nu, p, q, tau, list(prior), exact_cap)
    )


def conu_bound(k_communities, coverage, nu, p, q, tau, l, prior=(), exact_cap=4096):
    return json.loads(
        _ext.conu_bound_json(k_communities, coverage, nu, p, q, tau, l, list(prior), exact_cap)
    )


def co1_bound(l, k_communities, renyi):
    return json.loads(_ext.co1_bound_json(l, k_communities, renyi))


def check_conu_recovery(coverage, rho, l, n, alpha, beta, nu, tau, rho_bar):
    return json.loads(
        _ext.check_conu_recovery_json(coverage, rho, l, n, alpha, beta, nu, tau, rho_bar)
    )


def run_bound_sweep(config=None):
    """Bound sweep as a list of row dicts (CSV cells are strings)."""
    return _rows(_ext.run_bound_sweep(_config(config)))


def run_mc(config=None, threads=0):
    return _rows(_ext.run_mc(_config(config), threads))


def run_regimes(config=None):
    table, report = _ext.run_regimes(_config(config))
    return _rows(table), json.loads(report)
