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

#include "agchan/types.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace agchan;

TEST_CASE("power conversions are 20*log10 of the field magnitude")
{
    MultipathComponent m;
    m.magnitude = 1.0;
    CHECK(m.power_db() == doctest::Approx(0.0));
    CHECK(m.power_linear() == doctest::Approx(1.0));

    m.magnitude = 0.1;
    CHECK(m.power_db() == doctest::Approx(-20.0));
    CHECK(m.power_linear() == doctest::Approx(0.01));

    const auto r = MultipathComponent::from_power_db(10.0, -6.0, 0.5, 3);
    CHECK(r.delay_ns == 10.0);
    CHECK(r.path_id == 3);
    CHECK(r.phase_rad == 0.5);
    CHECK(r.power_db() == doctest::Approx(-6.0).epsilon(1e-12));
}

TEST_CASE("complex amplitude is magnitude at the stored phase")
{
    MultipathComponent m;
    m.magnitude = 2.0;
    m.phase_rad = 3.141592653589793238462643383279502884 / 2.0;
    const auto a = m.amplitude();
    CHECK(a.real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(a.imag() == doctest::Approx(2.0));
}

TEST_CASE("wrap_phase lands in [0, 2*pi)")
{
    const double two_pi = 2.0 * 3.141592653589793238462643383279502884;
    CHECK(wrap_phase(0.0) == 0.0);
    CHECK(wrap_phase(two_pi + 1.0) == doctest::Approx(1.0));
    CHECK(wrap_phase(-1.0) == doctest::Approx(two_pi - 1.0));
    CHECK(wrap_phase(5.0 * two_pi) == doctest::Approx(0.0));
    CHECK(wrap_phase(-3.0) >= 0.0);
    CHECK(wrap_phase(123.456) < two_pi);
}

TEST_CASE("snapshot validation rejects broken components")
{
    Snapshot snap;
    snap.index = 0;
    snap.link_distance_m = 10.0;
    snap.mpcs.push_back(MultipathComponent::from_power_db(100.0, -10.0));
    CHECK_NOTHROW(validate_snapshot(snap, 550.0));

    SUBCASE("negative magnitude")
    {
        snap.mpcs[0].magnitude = -0.5;
        CHECK_THROWS_AS(validate_snapshot(snap, 550.0), std::invalid_argument);
    }
    SUBCASE("delay beyond the window")
    {
        snap.mpcs[0].delay_ns = 900.0;
        CHECK_THROWS_AS(validate_snapshot(snap, 550.0), std::invalid_argument);
    }
    SUBCASE("negative delay")
    {
        snap.mpcs[0].delay_ns = -1.0;
        CHECK_THROWS_AS(validate_snapshot(snap, 550.0), std::invalid_argument);
    }
    SUBCASE("non-finite fields")
    {
        snap.mpcs[0].magnitude = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(validate_snapshot(snap, 550.0), std::invalid_argument);
    }
}

TEST_CASE("record meta defaults describe the sounding configuration")
{
    RecordMeta meta;
    CHECK(meta.frequency_hz == doctest::Approx(6.5e9));
    CHECK(meta.bandwidth_hz == doctest::Approx(5.0e8));
    CHECK(meta.max_delay_ns == doctest::Approx(550.0));
    CHECK_FALSE(meta.seed.has_value());
}
