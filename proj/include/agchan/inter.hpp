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

#ifndef agchan_inter_H
#define agchan_inter_H

#include "agchan/distributions.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace agchan
{

// y = a1 * exp(b1 * x) + a2 * exp(b2 * x)
struct DoubleExponentialFit
{
    double a1 = 0.0, b1 = 0.0, a2 = 0.0, b2 = 0.0;
    double rmse = 0.0;

    double eval(double x) const;
};

// Built-in coefficient sets for the suburban air-to-ground campaign: cluster
// delay (ns) as a function of the 1-based cluster index, and cluster mean
// power (dB) as a function of cluster delay.
DoubleExponentialFit delay_index_model();
DoubleExponentialFit power_delay_model();

// Evaluates the delay model at index k >= 1 (the model argument is k - 1).
double delay_from_index(int k, const DoubleExponentialFit &fit);

// Evaluates the power model inside its calibrated delay window; the fit is
// unphysical near tau = 0 (large positive dB), so out-of-window arguments
// raise domain_error.
double power_from_delay(double tau_ns, const DoubleExponentialFit &fit, double tau_lo_ns = 25.0,
                        double tau_hi_ns = 550.0);

// Raised when the damped least-squares loop runs out of iterations; carries
// the best coefficients found so far.
struct fit_failure : std::runtime_error
{
    DoubleExponentialFit best;
    fit_failure(const std::string &what, DoubleExponentialFit b)
        : std::runtime_error(what), best(std::move(b))
    {
    }
};

// Damped Gauss-Newton (Levenberg-Marquardt) least squares from the given
// initialization. Needs >= 6 points with distinct x values.
DoubleExponentialFit fit_double_exponential(const std::vector<double> &xs,
                                            const std::vector<double> &ys,
                                            const DoubleExponentialFit &init);

// Data-driven seed for strictly positive data: least squares of ln y on x
// gives the dominant exponential; the second term starts negligible with a
// faster rate so the optimizer can grow it if the data wants a knee.
DoubleExponentialFit log_linear_init(const std::vector<double> &xs, const std::vector<double> &ys);

// Piecewise cluster-occurrence model: certain presence up to `knee`, then a
// clamped descending line in the cluster index.
struct OccurrenceModel
{
    double slope = -0.115;
    double intercept = 1.361;
    int knee = 4;

    double zero_crossing() const;
};

double occurrence_probability(int k, const OccurrenceModel &m);

// Least-squares occurrence line over the indices whose empirical presence is
// below 1; knee = largest index still at presence 1. All-present input yields
// the flat always-on model; a single sub-unity index cannot fix a line and is
// rejected.
OccurrenceModel fit_occurrence(const std::map<int, double> &presence_by_index);

// Normal fit of a per-snapshot cluster-count sequence. A constant sequence
// returns a fit flagged degenerate (sigma = 0) instead of throwing.
DistributionFit cluster_count_stats(const std::vector<int> &counts);

} // namespace agchan

#endif
