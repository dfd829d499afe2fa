// SPDX-License-Identifier: Apache-2.0
//
// agchan - cluster-based characterization and synthesis of time-varying
// air-to-ground multipath channels
// Copyright (C) 2026 the agchan authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef agchan_sage_H
#define agchan_sage_H

#include "agchan/types.hpp"

#include <complex>
#include <vector>

namespace agchan
{

struct EstimatorConfig
{
    int max_paths = 50;
    int delay_grid_oversampling = 8; // grid step = tap spacing / oversampling
    int max_iterations = 50;         // EM sweeps after initialization
    double convergence_tol = 1e-4;   // max relative delay/amplitude change
    double prune_floor_db = -30.0;   // relative to the strongest path
};

struct EstimateResult
{
    std::vector<MultipathComponent> mpcs; // sorted by delay
    double initial_energy = 0.0;
    double residual_energy = 0.0;
    std::vector<double> residual_history; // one entry per EM sweep
};

// Delay/amplitude estimation on one complex CIR snapshot: successive
// cancellation over the oversampled delay grid seeds the paths, then
// expectation-maximization sweeps refine each path against its own signal
// (residual plus own contribution). Candidate sets always contain the
// current delay, so the residual energy never increases; this is asserted.
// Paths weaker than prune_floor_db relative to the strongest are dropped.
EstimateResult estimate_mpcs(const std::vector<std::complex<double>> &cir,
                             double tap_spacing_ns, const EstimatorConfig &cfg = {});

// Forward model: sum of band-limited (sinc) pulses scaled by the complex
// amplitudes. All delays must lie in [0, n_taps * tap_spacing_ns).
std::vector<std::complex<double>> synthesize_cir_from_mpcs(
    const std::vector<MultipathComponent> &mpcs, double tap_spacing_ns, int n_taps);

} // namespace agchan

#endif
