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

#ifndef agchan_distributions_H
#define agchan_distributions_H

#include <functional>
#include <string>
#include <vector>

namespace agchan
{

enum class DistFamily
{
    weibull,     // param1 = scale, param2 = shape
    normal,      // param1 = mean,  param2 = std
    lognormal,   // param1 = mean of ln x, param2 = std of ln x
    laplace,     // param1 = location, param2 = scale
    exponential, // param1 = mean
    rayleigh,    // param1 = sigma
    rician       // param1 = nu (line-of-sight amplitude), param2 = sigma
};

std::string family_name(DistFamily family);
DistFamily family_from_name(const std::string &name);

struct DistributionFit
{
    DistFamily family = DistFamily::normal;
    double param1 = 0.0;
    double param2 = 0.0;
    double ks_statistic = 0.0;
    bool ks_pass = false;
    int n = 0;
    bool degenerate = false; // set when the sample had zero spread (sigma = 0)
};

// Maximum-likelihood fit of one family. Requires n >= 8 finite samples within
// the family's support; constant samples raise degenerate_error. The KS
// verdict uses the asymptotic 5% critical value.
DistributionFit fit_distribution(const std::vector<double> &samples, DistFamily family);

// Fit every family whose support admits the samples and return the one with
// the smallest KS statistic.
DistributionFit select_best_fit(const std::vector<double> &samples);

// Two-sided Kolmogorov-Smirnov statistic of samples against a CDF.
double ks_statistic(const std::vector<double> &samples, const std::function<double(double)> &cdf);

// Asymptotic 5% critical value 1.3581 / sqrt(n).
double ks_critical_value(int n);

double dist_cdf(DistFamily family, double param1, double param2, double x);
double dist_mean(DistFamily family, double param1, double param2);

} // namespace agchan

#endif
