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

#include "agchan/distributions.hpp"
#include "agchan/errors.hpp"
#include "agchan/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace agchan;

namespace
{

std::vector<double> draw(DistFamily family, double p1, double p2, int n, std::uint64_t seed)
{
    RandomStream r(seed);
    std::vector<double> out;
    out.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; i++)
    {
        switch (family)
        {
        case DistFamily::weibull:
            out.push_back(r.weibull(p1, p2));
            break;
        case DistFamily::normal:
            out.push_back(r.normal(p1, p2));
            break;
        case DistFamily::lognormal:
            out.push_back(r.lognormal(p1, p2));
            break;
        case DistFamily::laplace:
            out.push_back(r.laplace(p1, p2));
            break;
        case DistFamily::exponential:
            out.push_back(r.exponential(p1));
            break;
        case DistFamily::rayleigh:
            out.push_back(p1 * std::sqrt(-2.0 * std::log(1.0 - r.uniform01())));
            break;
        case DistFamily::rician:
        {
            const double x = r.normal(p1, p2); // nu along one axis
            const double y = r.normal(0.0, p2);
            out.push_back(std::sqrt(x * x + y * y));
            break;
        }
        }
    }
    return out;
}

} // namespace

TEST_CASE("family names round-trip")
{
    for (auto f : {DistFamily::weibull, DistFamily::normal, DistFamily::lognormal,
                   DistFamily::laplace, DistFamily::exponential, DistFamily::rayleigh,
                   DistFamily::rician})
        CHECK(family_from_name(family_name(f)) == f);
    CHECK_THROWS_AS(family_from_name("cauchy"), std::invalid_argument);
}

TEST_CASE("ks critical value is 1.3581/sqrt(n)")
{
    CHECK(ks_critical_value(100) == doctest::Approx(0.135810));
    CHECK(ks_critical_value(10000) == doctest::Approx(0.013581));
    CHECK_THROWS_AS(ks_critical_value(0), std::invalid_argument);
}

TEST_CASE("ks statistic against a known cdf: hand-computed two-point case")
{
    // samples {0.25, 0.75} vs uniform: both one-sided gaps reach 0.25
    const std::vector<double> xs = {0.75, 0.25};
    const double d = ks_statistic(xs, [](double x) { return x; });
    CHECK(d == doctest::Approx(0.25));
}

TEST_CASE("cdf evaluations match desk values")
{
    CHECK(dist_cdf(DistFamily::normal, 0.0, 1.0, 0.0) == doctest::Approx(0.5));
    CHECK(dist_cdf(DistFamily::normal, 0.0, 1.0, 1.96) == doctest::Approx(0.9750021));
    // laplace: F(location) = 1/2; F(location + scale) = 1 - e^{-1}/2
    CHECK(dist_cdf(DistFamily::laplace, 2.0, 3.0, 2.0) == doctest::Approx(0.5));
    CHECK(dist_cdf(DistFamily::laplace, 0.0, 1.0, 1.0) ==
          doctest::Approx(1.0 - 0.5 * std::exp(-1.0)));
    // weibull at the scale: 1 - e^{-1}
    CHECK(dist_cdf(DistFamily::weibull, 7.11, 1.47, 7.11) ==
          doctest::Approx(1.0 - std::exp(-1.0)));
    CHECK(dist_cdf(DistFamily::exponential, 2.0, 0.0, 2.0) == doctest::Approx(1.0 - std::exp(-1.0)));
    CHECK(dist_cdf(DistFamily::rayleigh, 1.0, 0.0, 1.0) ==
          doctest::Approx(1.0 - std::exp(-0.5)));
    // lognormal: F(e^mu) = 1/2
    CHECK(dist_cdf(DistFamily::lognormal, 1.87, 0.88, std::exp(1.87)) == doctest::Approx(0.5));
    // rician values from numeric integration of the density
    CHECK(dist_cdf(DistFamily::rician, 1.0, 1.0, 1.0) == doctest::Approx(0.26712020).epsilon(1e-6));
    CHECK(dist_cdf(DistFamily::rician, 2.0, 0.7, 2.5) == doctest::Approx(0.71071190).epsilon(1e-6));
    // rician with nu = 0 degenerates to rayleigh
    CHECK(dist_cdf(DistFamily::rician, 0.0, 1.0, 1.0) ==
          doctest::Approx(dist_cdf(DistFamily::rayleigh, 1.0, 0.0, 1.0)).epsilon(1e-9));
}

TEST_CASE("distribution means match analytic values")
{
    CHECK(dist_mean(DistFamily::normal, -8.68, 5.09) == doctest::Approx(-8.68));
    CHECK(dist_mean(DistFamily::laplace, 1.0, 9.0) == doctest::Approx(1.0));
    CHECK(dist_mean(DistFamily::exponential, 3.0, 0.0) == doctest::Approx(3.0));
    CHECK(dist_mean(DistFamily::weibull, 7.11, 1.47) == doctest::Approx(6.4349).epsilon(1e-4));
    CHECK(dist_mean(DistFamily::lognormal, 1.87, 0.88) ==
          doctest::Approx(std::exp(1.87 + 0.88 * 0.88 / 2.0)));
    CHECK(dist_mean(DistFamily::rayleigh, 1.0, 0.0) == doctest::Approx(1.25331414).epsilon(1e-6));
    // rician means from numeric integration of the density
    CHECK(dist_mean(DistFamily::rician, 2.0, 0.7) == doctest::Approx(2.12742045).epsilon(1e-6));
    CHECK(dist_mean(DistFamily::rician, 0.0, 1.0) == doctest::Approx(1.25331414).epsilon(1e-6));
}

TEST_CASE("weibull refit recovers the generating parameters")
{
    const auto xs = draw(DistFamily::weibull, 25.75, 1.46, 20000, 101);
    const auto fit = fit_distribution(xs, DistFamily::weibull);
    CHECK(fit.param1 == doctest::Approx(25.75).epsilon(0.03));
    CHECK(fit.param2 == doctest::Approx(1.46).epsilon(0.03));
    CHECK(fit.ks_pass);
}

TEST_CASE("normal refit recovers the generating parameters")
{
    const auto xs = draw(DistFamily::normal, -8.68, 5.09, 20000, 102);
    const auto fit = fit_distribution(xs, DistFamily::normal);
    CHECK(fit.param1 == doctest::Approx(-8.68).epsilon(0.03));
    CHECK(fit.param2 == doctest::Approx(5.09).epsilon(0.03));
    CHECK(fit.ks_pass);
}

TEST_CASE("lognormal refit recovers the generating parameters")
{
    const auto xs = draw(DistFamily::lognormal, 1.87, 0.88, 20000, 103);
    const auto fit = fit_distribution(xs, DistFamily::lognormal);
    CHECK(fit.param1 == doctest::Approx(1.87).epsilon(0.03));
    CHECK(fit.param2 == doctest::Approx(0.88).epsilon(0.03));
    CHECK(fit.ks_pass);
}

TEST_CASE("laplace fit is the exact median / mean-absolute-deviation estimator")
{
    const std::vector<double> xs = {-1.0, 0.0, 1.0, 2.0, 4.0, 1.0, 1.0, 1.0};
    const auto fit = fit_distribution(xs, DistFamily::laplace);
    CHECK(fit.param1 == doctest::Approx(1.0)); // median
    // mean |x - 1| = (2 + 1 + 0 + 1 + 3 + 0 + 0 + 0) / 8
    CHECK(fit.param2 == doctest::Approx(7.0 / 8.0));
}

TEST_CASE("rician refit recovers the generating parameters")
{
    const auto xs = draw(DistFamily::rician, 2.0, 0.7, 20000, 104);
    const auto fit = fit_distribution(xs, DistFamily::rician);
    CHECK(fit.param1 == doctest::Approx(2.0).epsilon(0.05));
    CHECK(fit.param2 == doctest::Approx(0.7).epsilon(0.05));
}

TEST_CASE("fitting guards reject unusable samples")
{
    CHECK_THROWS_AS(fit_distribution({1.0, 2.0, 3.0}, DistFamily::normal),
                    std::invalid_argument); // too few
    const std::vector<double> constant(10, 4.2);
    CHECK_THROWS_AS(fit_distribution(constant, DistFamily::normal), degenerate_error);
    const std::vector<double> with_neg = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, -1.0};
    CHECK_THROWS_AS(fit_distribution(with_neg, DistFamily::weibull), std::invalid_argument);
    CHECK_THROWS_AS(fit_distribution(with_neg, DistFamily::lognormal), std::invalid_argument);
}

TEST_CASE("best-fit selection identifies the generating family")
{
    const auto weib = draw(DistFamily::weibull, 7.11, 1.47, 8000, 105);
    CHECK(select_best_fit(weib).ks_pass);

    const auto norm = draw(DistFamily::normal, 0.0, 1.0, 8000, 106);
    const auto pick = select_best_fit(norm);
    // negative samples exclude the positive-support families
    CHECK((pick.family == DistFamily::normal || pick.family == DistFamily::laplace));
    CHECK(pick.ks_pass);
}
