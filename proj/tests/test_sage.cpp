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

#include "agchan/errors.hpp"
#include "agchan/sage.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

using namespace agchan;

namespace
{

double energy(const std::vector<std::complex<double>> &cir)
{
    double e = 0.0;
    for (const auto &t : cir)
        e += std::norm(t);
    return e;
}

} // namespace

TEST_CASE("forward model: single on-grid path occupies one tap")
{
    // a pulse exactly on a tap center samples the sinc at integers: one at
    // its own tap, zero elsewhere
    const auto mpcs = std::vector<MultipathComponent>{
        MultipathComponent::from_power_db(8.0, -6.0, 1.0, 0)};
    const auto cir = synthesize_cir_from_mpcs(mpcs, 2.0, 16);
    REQUIRE(cir.size() == 16);
    CHECK(std::abs(cir[4] - std::polar(std::pow(10.0, -6.0 / 20.0), 1.0)) < 1e-12);
    for (size_t i = 0; i < cir.size(); i++)
        if (i != 4)
            CHECK(std::abs(cir[i]) < 1e-12);
}

TEST_CASE("forward model: delay range is enforced")
{
    const auto late = std::vector<MultipathComponent>{
        MultipathComponent::from_power_db(32.0, 0.0, 0.0, 0)}; // = n_taps * spacing
    CHECK_THROWS_AS(synthesize_cir_from_mpcs(late, 2.0, 16), std::invalid_argument);
    const auto negative = std::vector<MultipathComponent>{
        MultipathComponent::from_power_db(-1.0, 0.0, 0.0, 0)};
    CHECK_THROWS_AS(synthesize_cir_from_mpcs(negative, 2.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(synthesize_cir_from_mpcs({}, 0.0, 16), std::invalid_argument);
}

TEST_CASE("single off-grid path round trip")
{
    const auto truth = std::vector<MultipathComponent>{
        MultipathComponent::from_power_db(13.7, -3.0, 2.1, 0)};
    const auto cir = synthesize_cir_from_mpcs(truth, 2.0, 64);
    const EstimateResult res = estimate_mpcs(cir, 2.0);
    REQUIRE(res.mpcs.size() == 1);
    CHECK(res.mpcs[0].delay_ns == doctest::Approx(13.7).epsilon(0.02));
    CHECK(res.mpcs[0].power_db() == doctest::Approx(-3.0).epsilon(0.05));
    CHECK(res.mpcs[0].phase_rad == doctest::Approx(2.1).epsilon(0.05));
    CHECK(res.residual_energy / res.initial_energy < 1e-4);
}

TEST_CASE("multi-path round trip with well-separated delays")
{
    std::vector<MultipathComponent> truth = {
        MultipathComponent::from_power_db(10.0, 0.0, 0.3, 0),
        MultipathComponent::from_power_db(30.7, -3.0, 1.9, 1),
        MultipathComponent::from_power_db(55.2, -6.0, 4.4, 2),
        MultipathComponent::from_power_db(120.9, -10.0, 5.8, 3),
        MultipathComponent::from_power_db(301.4, -15.0, 0.7, 4)};
    const auto cir = synthesize_cir_from_mpcs(truth, 2.0, 256);
    const EstimateResult res = estimate_mpcs(cir, 2.0);
    REQUIRE(res.mpcs.size() == truth.size());
    for (size_t i = 0; i < truth.size(); i++)
    {
        CHECK(res.mpcs[i].delay_ns == doctest::Approx(truth[i].delay_ns).epsilon(0.01));
        CHECK(std::abs(res.mpcs[i].power_db() - truth[i].power_db()) < 0.1);
    }
    // output is sorted by delay
    for (size_t i = 1; i < res.mpcs.size(); i++)
        CHECK(res.mpcs[i - 1].delay_ns < res.mpcs[i].delay_ns);
    // energy bookkeeping: residual + reconstruction match the input closely
    const auto rebuilt = synthesize_cir_from_mpcs(res.mpcs, 2.0, 256);
    double err = 0.0;
    for (size_t i = 0; i < cir.size(); i++)
        err += std::norm(cir[i] - rebuilt[i]);
    CHECK(err / energy(cir) < 0.01);
}

TEST_CASE("residual history never increases")
{
    std::vector<MultipathComponent> truth = {
        MultipathComponent::from_power_db(11.3, 0.0, 0.3, 0),
        MultipathComponent::from_power_db(14.9, -1.0, 2.9, 1),
        MultipathComponent::from_power_db(21.1, -4.0, 1.2, 2),
        MultipathComponent::from_power_db(44.8, -8.0, 3.6, 3)};
    const auto cir = synthesize_cir_from_mpcs(truth, 2.0, 128);
    const EstimateResult res = estimate_mpcs(cir, 2.0);
    REQUIRE_FALSE(res.residual_history.empty());
    for (size_t i = 1; i < res.residual_history.size(); i++)
        CHECK(res.residual_history[i] <= res.residual_history[i - 1] + 1e-12);
    CHECK(res.residual_history.back() == doctest::Approx(res.residual_energy));
}

TEST_CASE("estimation is deterministic")
{
    std::vector<MultipathComponent> truth = {
        MultipathComponent::from_power_db(17.7, 0.0, 0.3, 0),
        MultipathComponent::from_power_db(83.2, -7.0, 2.9, 1)};
    const auto cir = synthesize_cir_from_mpcs(truth, 2.0, 128);
    const EstimateResult a = estimate_mpcs(cir, 2.0);
    const EstimateResult b = estimate_mpcs(cir, 2.0);
    REQUIRE(a.mpcs.size() == b.mpcs.size());
    for (size_t i = 0; i < a.mpcs.size(); i++)
    {
        CHECK(a.mpcs[i].delay_ns == b.mpcs[i].delay_ns);
        CHECK(a.mpcs[i].magnitude == b.mpcs[i].magnitude);
        CHECK(a.mpcs[i].phase_rad == b.mpcs[i].phase_rad);
    }
}

TEST_CASE("paths below the prune floor are dropped")
{
    std::vector<MultipathComponent> truth = {
        MultipathComponent::from_power_db(20.0, 0.0, 0.0, 0),
        MultipathComponent::from_power_db(100.0, -45.0, 1.0, 1)}; // below -30 dB floor
    const auto cir = synthesize_cir_from_mpcs(truth, 2.0, 128);
    const EstimateResult res = estimate_mpcs(cir, 2.0);
    REQUIRE(res.mpcs.size() == 1);
    CHECK(res.mpcs[0].delay_ns == doctest::Approx(20.0).epsilon(0.01));

    EstimatorConfig deep;
    deep.prune_floor_db = -60.0;
    const EstimateResult res2 = estimate_mpcs(cir, 2.0, deep);
    CHECK(res2.mpcs.size() == 2);
}

TEST_CASE("estimator input guards")
{
    CHECK_THROWS_AS(estimate_mpcs({}, 2.0), std::invalid_argument);
    std::vector<std::complex<double>> cir(16, {0.1, 0.0});
    CHECK_THROWS_AS(estimate_mpcs(cir, 0.0), std::invalid_argument);
    EstimatorConfig bad;
    bad.max_paths = 0;
    CHECK_THROWS_AS(estimate_mpcs(cir, 2.0, bad), std::invalid_argument);
}

TEST_CASE("all-zero input is rejected as degenerate")
{
    const std::vector<std::complex<double>> silent(64, {0.0, 0.0});
    CHECK_THROWS_AS(estimate_mpcs(silent, 2.0), degenerate_error);
}
